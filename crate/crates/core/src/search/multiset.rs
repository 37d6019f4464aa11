use std::collections::BTreeMap;

use crate::coloring::{BipartiteColoring, Color, ColorCode};
use crate::error::{Error, Result};
use crate::verifier::verify_3rainbow;

/// Largest palette `canonical_form` will permute (`8! = 40320` relabelings).
pub const CANONICAL_MAX_K: Color = 8;

/// A coloring up to reordering of the W-vertices.
///
/// Whether a coloring is 3-rainbow depends only on this multiset.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CodeMultiset {
    k: Color,
    counts: BTreeMap<ColorCode, usize>,
}

impl CodeMultiset {
    pub fn new(k: Color, codes: impl IntoIterator<Item = ColorCode>) -> Result<Self> {
        let mut counts = BTreeMap::new();
        for code in codes {
            if code.min_color() == 0 || code.max_color() > k {
                return Err(Error::ColorOutOfRange { color: code.max_color().max(code.min_color()), k });
            }
            *counts.entry(code).or_insert(0) += 1;
        }
        if counts.is_empty() {
            return Err(Error::invalid("a code multiset holds at least one code"));
        }
        Ok(CodeMultiset { k, counts })
    }

    pub fn k(&self) -> Color {
        self.k
    }

    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }

    pub fn multiplicity(&self, code: ColorCode) -> usize {
        self.counts.get(&code).copied().unwrap_or(0)
    }

    /// Codes in ascending order, repeated by multiplicity.
    pub fn sorted_codes(&self) -> Vec<ColorCode> {
        self.counts.iter().flat_map(|(&code, &n)| std::iter::repeat_n(code, n)).collect()
    }

    pub fn to_coloring(&self) -> BipartiteColoring {
        BipartiteColoring::new(self.k, self.sorted_codes()).expect("multiset codes are in range")
    }

    /// Applies `color -> sigma[color - 1]` to every code.
    pub fn permuted(&self, sigma: &[Color]) -> Result<Self> {
        check_permutation(self.k, sigma)?;
        let map = |c: Color| sigma[(c - 1) as usize];
        CodeMultiset::new(
            self.k,
            self.sorted_codes().into_iter().map(|c| ColorCode::new(map(c.a1), map(c.a2))),
        )
    }
}

fn check_permutation(k: Color, sigma: &[Color]) -> Result<()> {
    let mut seen = vec![false; k as usize];
    if sigma.len() != k as usize {
        return Err(Error::invalid("permutation length differs from the palette"));
    }
    for &c in sigma {
        if c == 0 || c > k || std::mem::replace(&mut seen[(c - 1) as usize], true) {
            return Err(Error::invalid("not a permutation of the palette"));
        }
    }
    Ok(())
}

/// Expands the multiset into a coloring with `t = total` and verifies it.
pub fn is_acceptable(codes: &CodeMultiset) -> bool {
    verify_3rainbow(&codes.to_coloring()).passed()
}

/// Every permutation of `0..n`, as index vectors, in lexicographic order.
pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    loop {
        out.push(current.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else { break };
        let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).unwrap();
        current.swap(i - 1, j);
        current[i..].reverse();
    }
    out
}

/// Lexicographically least sorted code list over all relabelings of `1..=k`.
///
/// Two multisets share a canonical form iff one is a relabeling of the other.
pub fn canonical_form(codes: &CodeMultiset) -> Result<CodeMultiset> {
    if codes.k > CANONICAL_MAX_K {
        return Err(Error::Unsupported(format!(
            "canonical form over {} colors (limit {CANONICAL_MAX_K})",
            codes.k
        )));
    }
    let sorted = codes.sorted_codes();
    let mut best = sorted.clone();
    let mut image = Vec::with_capacity(sorted.len());
    for perm in permutations(codes.k as usize) {
        let map = |c: Color| perm[(c - 1) as usize] as Color + 1;
        image.clear();
        image.extend(sorted.iter().map(|c| ColorCode::new(map(c.a1), map(c.a2))));
        image.sort_unstable();
        if image < best {
            best.clone_from(&image);
        }
    }
    CodeMultiset::new(codes.k, best)
}
