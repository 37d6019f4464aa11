//! Rook placements on an `n x n` board: the k = 3 model of acceptable codes.
//!
//! A code `(a, b)` is the square in row `a`, column `b`. Rooks are *isolated*
//! when every three of them sit in pairwise distinct rows or pairwise distinct
//! columns.

use std::collections::BTreeSet;

use crate::coloring::ColorCode;
use crate::error::{Error, Result};
use crate::search::multiset::permutations;
use crate::search::SearchOutcome;

pub const MAX_ROOK_BOARD: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RookPlacement {
    n: usize,
    rooks: BTreeSet<(usize, usize)>,
}

impl RookPlacement {
    /// Squares are 1-indexed `(row, column)`.
    pub fn new(n: usize, rooks: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (r, c) in rooks {
            if !(1..=n).contains(&r) || !(1..=n).contains(&c) {
                return Err(Error::invalid(format!("square ({r},{c}) is off the {n}x{n} board")));
            }
            if !set.insert((r, c)) {
                return Err(Error::invalid(format!("two rooks on ({r},{c})")));
            }
        }
        Ok(RookPlacement { n, rooks: set })
    }

    /// Board for codes over `n` colors.
    pub fn from_codes(n: usize, codes: &[ColorCode]) -> Result<Self> {
        RookPlacement::new(n, codes.iter().map(|c| (c.a1 as usize, c.a2 as usize)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rooks(&self) -> &BTreeSet<(usize, usize)> {
        &self.rooks
    }

    pub fn len(&self) -> usize {
        self.rooks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rooks.is_empty()
    }
}

fn distinct3(a: usize, b: usize, c: usize) -> bool {
    a != b && b != c && a != c
}

fn triple_ok(x: (usize, usize), y: (usize, usize), z: (usize, usize)) -> bool {
    distinct3(x.0, y.0, z.0) || distinct3(x.1, y.1, z.1)
}

pub fn is_isolated(placement: &RookPlacement) -> bool {
    let r: Vec<_> = placement.rooks.iter().copied().collect();
    (0..r.len()).all(|i| (i + 1..r.len()).all(|j| (j + 1..r.len()).all(|l| triple_ok(r[i], r[j], r[l]))))
}

/// Largest isolated placement on an `n x n` board, `n <= 5`.
///
/// Squares are added in row-major order; prefixes that some row/column
/// relabeling sorts lower are skipped, since their extensions are too.
pub fn max_isolated_rooks(n: usize) -> Result<SearchOutcome<usize>> {
    if n > MAX_ROOK_BOARD {
        return Err(Error::Unsupported(format!("rook search on {n}x{n} (limit {MAX_ROOK_BOARD})")));
    }
    if n == 0 {
        return Ok(SearchOutcome { result: 0, candidates_examined: 0 });
    }
    let perms = permutations(n);
    let relabel: Vec<Vec<u8>> = perms
        .iter()
        .flat_map(|rows| perms.iter().map(move |cols| (rows, cols)))
        .skip(1)
        .map(|(rows, cols)| (0..n * n).map(|sq| (rows[sq / n] * n + cols[sq % n]) as u8).collect())
        .collect();

    struct Walk<'a> {
        n: usize,
        relabel: &'a [Vec<u8>],
        seq: Vec<u8>,
        scratch: Vec<u8>,
        best: usize,
        count: u64,
    }

    impl Walk<'_> {
        fn square(&self, idx: u8) -> (usize, usize) {
            (usize::from(idx) / self.n, usize::from(idx) % self.n)
        }

        fn fits(&self, idx: u8) -> bool {
            let z = self.square(idx);
            let s = &self.seq;
            (0..s.len()).all(|i| (i + 1..s.len()).all(|j| triple_ok(self.square(s[i]), self.square(s[j]), z)))
        }

        fn canonical(&mut self) -> bool {
            for map in self.relabel {
                self.scratch.clear();
                self.scratch.extend(self.seq.iter().map(|&i| map[usize::from(i)]));
                self.scratch.sort_unstable();
                if self.scratch < self.seq {
                    return false;
                }
            }
            true
        }

        fn go(&mut self) {
            self.best = self.best.max(self.seq.len());
            let start = self.seq.last().map_or(0, |&l| l + 1);
            for idx in start..(self.n * self.n) as u8 {
                self.count += 1;
                if !self.fits(idx) {
                    continue;
                }
                self.seq.push(idx);
                if self.canonical() {
                    self.go();
                }
                self.seq.pop();
            }
        }
    }

    let mut walk = Walk { n, relabel: &relabel, seq: Vec::new(), scratch: Vec::new(), best: 0, count: 0 };
    walk.go();
    Ok(SearchOutcome { result: walk.best, candidates_examined: walk.count })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isolation_examples() {
        let p = RookPlacement::new(3, [(1, 2), (2, 1), (1, 3), (3, 1)]).unwrap();
        assert!(is_isolated(&p));
        assert!(is_isolated(&RookPlacement::new(4, [(1, 1), (1, 2)]).unwrap()));
        assert!(is_isolated(&RookPlacement::new(4, []).unwrap()));
        assert!(!is_isolated(&RookPlacement::new(2, [(1, 1), (1, 2), (2, 1)]).unwrap()));
    }

    #[test]
    fn placement_validation() {
        assert!(RookPlacement::new(2, [(3, 1)]).is_err());
        assert!(RookPlacement::new(2, [(0, 1)]).is_err());
        assert!(RookPlacement::new(2, [(1, 1), (1, 1)]).is_err());
    }

    #[test]
    fn small_boards() {
        assert_eq!(max_isolated_rooks(1).unwrap().result, 1);
        assert_eq!(max_isolated_rooks(2).unwrap().result, 2);
        assert_eq!(max_isolated_rooks(3).unwrap().result, 4);
        assert!(max_isolated_rooks(6).is_err());
    }
}
