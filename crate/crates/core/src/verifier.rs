//! Exact rainbow S-tree decision for triples in K_{2,t}.
//!
//! Any rainbow S-tree can be pruned until every leaf lies in S, and stays
//! rainbow. In such a tree a W-vertex outside S has degree exactly 2 (its only
//! neighbours are `u1` and `u2`), and two of them would close the 4-cycle
//! `u1 w' u2 w''`. So at most one extra W-vertex ever appears and the possible
//! trees fall into a short, finite catalog of shapes per triple kind. The
//! verifier walks that catalog in order of edge count.

use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coloring::{
    BipartiteColoring, Color, ColorCode, RainbowTreeWitness, TripleKind, Vertex, VertexTriple, WitnessEdge,
};
use crate::error::{Error, Result};
use crate::generic::{check_witness, to_generic_witness, GenericColoredGraph, WitnessDefect};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Attach {
    U1,
    U2,
    Both,
}

impl Attach {
    fn toward(side: u8) -> Self {
        if side == 1 {
            Attach::U1
        } else {
            Attach::U2
        }
    }
}

/// One tree shape: how each W-member of S attaches, and whether an extra
/// W-vertex bridges `u1` and `u2`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Shape {
    pub attach: [Attach; 3],
    pub extra: bool,
    pub edges: u8,
}

fn three_w_catalog() -> &'static [Shape] {
    static CATALOG: OnceLock<Vec<Shape>> = OnceLock::new();
    CATALOG.get_or_init(|| {
        use Attach::*;
        let mut v = vec![
            Shape { attach: [U1, U1, U1], extra: false, edges: 3 },
            Shape { attach: [U2, U2, U2], extra: false, edges: 3 },
        ];
        for connector in 0..3 {
            for (p, q) in [(U1, U1), (U1, U2), (U2, U1), (U2, U2)] {
                let mut attach = [Both; 3];
                let others: Vec<usize> = (0..3).filter(|&i| i != connector).collect();
                attach[others[0]] = p;
                attach[others[1]] = q;
                v.push(Shape { attach, extra: false, edges: 4 });
            }
        }
        for mask in 0..8u8 {
            let side = |bit: u8| if mask & (1 << bit) != 0 { U2 } else { U1 };
            v.push(Shape { attach: [side(2), side(1), side(0)], extra: true, edges: 5 });
        }
        v
    })
}

fn two_w_catalog(side: u8) -> &'static [Shape] {
    static CATALOG: OnceLock<[Vec<Shape>; 2]> = OnceLock::new();
    let tables = CATALOG.get_or_init(|| {
        let build = |s: u8| {
            use Attach::Both;
            let (near, far) = (Attach::toward(s), Attach::toward(3 - s));
            vec![
                Shape { attach: [near, near, Both], extra: false, edges: 2 },
                Shape { attach: [Both, far, Both], extra: false, edges: 3 },
                Shape { attach: [far, Both, Both], extra: false, edges: 3 },
                Shape { attach: [far, far, Both], extra: true, edges: 4 },
                Shape { attach: [near, far, Both], extra: true, edges: 4 },
                Shape { attach: [far, near, Both], extra: true, edges: 4 },
            ]
        };
        [build(1), build(2)]
    });
    &tables[usize::from(side - 1)]
}

fn one_w_catalog() -> &'static [Shape] {
    use Attach::*;
    const CATALOG: [Shape; 3] = [
        Shape { attach: [Both, Both, Both], extra: false, edges: 2 },
        Shape { attach: [U1, Both, Both], extra: true, edges: 3 },
        Shape { attach: [U2, Both, Both], extra: true, edges: 3 },
    ];
    &CATALOG
}

/// A triple reduced to what the catalog needs: its W-members (1-indexed,
/// ascending) and, for the two-W kind, which U-vertex is in S.
#[derive(Debug, Clone, Copy)]
pub(crate) struct TripleShape {
    pub kind: TripleKind,
    pub side: u8,
    pub members: [usize; 3],
}

impl TripleShape {
    pub fn of(s: &VertexTriple) -> Self {
        let mut members = [0; 3];
        for (slot, w) in members.iter_mut().zip(s.w_members()) {
            *slot = w;
        }
        let side = if s.contains(Vertex::U1) { 1 } else { 2 };
        TripleShape { kind: s.kind(), side, members }
    }

    fn member_count(&self) -> usize {
        match self.kind {
            TripleKind::OneW => 1,
            TripleKind::TwoW => 2,
            TripleKind::ThreeW => 3,
        }
    }

    fn catalog(&self) -> &'static [Shape] {
        match self.kind {
            TripleKind::OneW => one_w_catalog(),
            TripleKind::TwoW => two_w_catalog(self.side),
            TripleKind::ThreeW => three_w_catalog(),
        }
    }
}

/// How to satisfy a shape's extra vertex.
#[derive(Debug, Clone, Copy)]
pub(crate) enum ExtraSource {
    /// Scan the coloring's own W-vertices.
    Scan,
    /// Assume any code over a palette of this size could be supplied later.
    Hypothetical(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum ExtraPick {
    None,
    Vertex(usize),
    Hypothetical,
}

/// Up to five edge colors, checked for pairwise distinctness.
struct ColorBag {
    colors: [Color; 5],
    len: usize,
}

impl ColorBag {
    fn new() -> Self {
        ColorBag { colors: [0; 5], len: 0 }
    }

    /// False if the color is already present.
    #[inline]
    fn push(&mut self, c: Color) -> bool {
        if self.colors[..self.len].contains(&c) {
            return false;
        }
        self.colors[self.len] = c;
        self.len += 1;
        true
    }

    fn contains(&self, c: Color) -> bool {
        self.colors[..self.len].contains(&c)
    }
}

fn fixed_colors(codes: &[ColorCode], triple: &TripleShape, shape: &Shape) -> Option<ColorBag> {
    let mut bag = ColorBag::new();
    for (m, attach) in triple.members[..triple.member_count()].iter().zip(shape.attach) {
        let code = codes[m - 1];
        let ok = match attach {
            Attach::U1 => bag.push(code.a1),
            Attach::U2 => bag.push(code.a2),
            Attach::Both => bag.push(code.a1) && bag.push(code.a2),
        };
        if !ok {
            return None;
        }
    }
    Some(bag)
}

fn find_extra(codes: &[ColorCode], exclude: &[usize], bag: &ColorBag) -> Option<usize> {
    codes.iter().enumerate().find_map(|(i, code)| {
        let w = i + 1;
        let fits =
            code.a1 != code.a2 && !bag.contains(code.a1) && !bag.contains(code.a2) && !exclude.contains(&w);
        fits.then_some(w)
    })
}

/// First shape (by edge count, then catalog order) realizable as a rainbow tree.
pub(crate) fn catalog_search(
    codes: &[ColorCode],
    triple: &TripleShape,
    source: ExtraSource,
) -> Option<(&'static Shape, ExtraPick)> {
    let members = &triple.members[..triple.member_count()];
    for shape in triple.catalog() {
        let Some(bag) = fixed_colors(codes, triple, shape) else { continue };
        if !shape.extra {
            return Some((shape, ExtraPick::None));
        }
        match source {
            ExtraSource::Scan => {
                if let Some(w) = find_extra(codes, members, &bag) {
                    return Some((shape, ExtraPick::Vertex(w)));
                }
            }
            ExtraSource::Hypothetical(palette) => {
                if palette >= bag.len + 2 {
                    return Some((shape, ExtraPick::Hypothetical));
                }
            }
        }
    }
    None
}

fn build_witness(
    codes: &[ColorCode],
    triple: &TripleShape,
    shape: &Shape,
    extra: ExtraPick,
) -> RainbowTreeWitness {
    let mut edges = Vec::with_capacity(usize::from(shape.edges));
    let mut push = |side: u8, w: usize| {
        edges.push(WitnessEdge { a: Vertex::u(side), b: Vertex::W(w), color: codes[w - 1].side(side) })
    };
    for (&m, attach) in triple.members[..triple.member_count()].iter().zip(shape.attach) {
        match attach {
            Attach::U1 => push(1, m),
            Attach::U2 => push(2, m),
            Attach::Both => {
                push(1, m);
                push(2, m);
            }
        }
    }
    if let ExtraPick::Vertex(w) = extra {
        push(1, w);
        push(2, w);
    }
    edges.sort_by_key(|e| (e.b, e.a));
    RainbowTreeWitness { edges }
}

fn check_range(coloring: &BipartiteColoring, s: &VertexTriple) -> Result<()> {
    match s.members().into_iter().find(|v| !v.exists_in(coloring.t())) {
        Some(v) => Err(Error::VertexOutOfRange { vertex: v.to_string(), t: coloring.t() }),
        None => Ok(()),
    }
}

/// Exact decision: a rainbow tree containing `s` exists iff a witness is returned.
///
/// The witness has the fewest edges possible; ties go to the earliest catalog
/// shape and then the lowest-numbered extra vertex.
pub fn has_rainbow_tree(
    coloring: &BipartiteColoring,
    s: &VertexTriple,
) -> Result<Option<RainbowTreeWitness>> {
    check_range(coloring, s)?;
    let triple = TripleShape::of(s);
    let witness = catalog_search(coloring.codes(), &triple, ExtraSource::Scan)
        .map(|(shape, extra)| build_witness(coloring.codes(), &triple, shape, extra));
    if let Some(w) = &witness {
        debug_assert_eq!(validate_witness(coloring, s, w), Ok(()), "{s} in {:?}", coloring.codes());
    }
    Ok(witness)
}

/// Sufficient conditions read off the codes of `s` alone.
///
/// `Some(true)`: a rainbow tree certainly exists. `Some(false)`: certainly not
/// (only when the palette has at most 3 colors and three W-vertices need a
/// star). `None`: undecided here.
pub fn lemma22_fast_check(coloring: &BipartiteColoring, s: &VertexTriple) -> Result<Option<bool>> {
    check_range(coloring, s)?;
    Ok(fast_check(coloring.codes(), coloring.k(), &TripleShape::of(s)))
}

pub(crate) fn fast_check(codes: &[ColorCode], k: Color, triple: &TripleShape) -> Option<bool> {
    let code = |i: usize| codes[triple.members[i] - 1];
    match triple.kind {
        TripleKind::OneW => (!code(0).is_diagonal()).then_some(true),
        TripleKind::TwoW => {
            let (x, y) = (code(0), code(1));
            let both_differ = x.a1 != y.a1 && x.a2 != y.a2;
            (both_differ || distinct_count(&[x.a1, x.a2, y.a1, y.a2]) >= 3).then_some(true)
        }
        TripleKind::ThreeW => {
            let (x, y, z) = (code(0), code(1), code(2));
            let star = |a: Color, b: Color, c: Color| a != b && b != c && a != c;
            let wide = k >= 4 && distinct_count(&[x.a1, x.a2, y.a1, y.a2, z.a1, z.a2]) >= 4;
            if star(x.a1, y.a1, z.a1) || star(x.a2, y.a2, z.a2) || wide {
                Some(true)
            } else if k <= 3 {
                Some(false)
            } else {
                None
            }
        }
    }
}

fn distinct_count(colors: &[Color]) -> usize {
    colors.iter().enumerate().filter(|(i, c)| !colors[..*i].contains(c)).count()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub verdict: Verdict,
    pub failing_triple: Option<VertexTriple>,
    pub triples_checked: u64,
    /// Witness for the first triple in canonical order, when the coloring passes.
    #[serde(skip)]
    pub witness_sample: Option<RainbowTreeWitness>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

fn triple_ok(codes: &[ColorCode], k: Color, s: &VertexTriple) -> bool {
    let triple = TripleShape::of(s);
    match fast_check(codes, k, &triple) {
        Some(verdict) => verdict,
        None => catalog_search(codes, &triple, ExtraSource::Scan).is_some(),
    }
}

/// Checks every one of the `C(t+2, 3)` triples, reporting the first failure
/// in canonical order.
pub fn verify_3rainbow(coloring: &BipartiteColoring) -> VerificationReport {
    let (codes, k) = (coloring.codes(), coloring.k());
    let failure = VertexTriple::all(coloring.t()).enumerate().find(|(_, s)| !triple_ok(codes, k, s));
    report(coloring, failure)
}

/// [`verify_3rainbow`] spread over `jobs` worker threads. The report is
/// identical to the sequential one.
pub fn verify_3rainbow_parallel(coloring: &BipartiteColoring, jobs: usize) -> Result<VerificationReport> {
    if jobs <= 1 {
        return Ok(verify_3rainbow(coloring));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::invalid(format!("thread pool: {e}")))?;
    let (codes, k) = (coloring.codes(), coloring.k());
    let triples: Vec<VertexTriple> = VertexTriple::all(coloring.t()).collect();
    let first = pool.install(|| triples.par_iter().position_first(|s| !triple_ok(codes, k, s)));
    Ok(report(coloring, first.map(|i| (i, triples[i]))))
}

fn report(coloring: &BipartiteColoring, failure: Option<(usize, VertexTriple)>) -> VerificationReport {
    match failure {
        Some((i, s)) => VerificationReport {
            verdict: Verdict::Fail,
            failing_triple: Some(s),
            triples_checked: i as u64 + 1,
            witness_sample: None,
        },
        None => {
            let first = VertexTriple::all(coloring.t()).next().expect("t >= 1 has a triple");
            VerificationReport {
                verdict: Verdict::Pass,
                failing_triple: None,
                triples_checked: triple_count(coloring.t()),
                witness_sample: has_rainbow_tree(coloring, &first).ok().flatten(),
            }
        }
    }
}

pub fn triple_count(t: usize) -> u64 {
    let n = t as u64 + 2;
    n * (n - 1) * (n - 2) / 6
}

/// Why a witness fails the [`RainbowTreeWitness`] invariants for K_{2,t}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BipartiteWitnessDefect {
    Generic(WitnessDefect),
    NotBipartiteEdge,
    /// A W-vertex outside S that is not joined to both U-vertices, or more
    /// than one such vertex.
    BadExtraVertex,
}

/// Independent validation of a K_{2,t} witness: edges exist with the stated
/// colors, form a rainbow tree, cover `s`, and use at most one outside
/// W-vertex, of degree 2.
pub fn validate_witness(
    coloring: &BipartiteColoring,
    s: &VertexTriple,
    witness: &RainbowTreeWitness,
) -> std::result::Result<(), BipartiteWitnessDefect> {
    if witness.edges.iter().any(|e| e.a.is_w() == e.b.is_w()) {
        return Err(BipartiteWitnessDefect::NotBipartiteEdge);
    }
    let graph = GenericColoredGraph::from_bipartite(coloring);
    let targets: Vec<usize> = s.members().iter().map(|v| v.index()).collect();
    check_witness(&graph, &targets, &to_generic_witness(witness)).map_err(BipartiteWitnessDefect::Generic)?;

    let outside: Vec<Vertex> =
        witness.vertices().into_iter().filter(|v| v.is_w() && !s.contains(*v)).collect();
    if outside.len() > 1 {
        return Err(BipartiteWitnessDefect::BadExtraVertex);
    }
    for v in outside {
        let degree = witness.edges.iter().filter(|e| e.a == v || e.b == v).count();
        if degree != 2 {
            return Err(BipartiteWitnessDefect::BadExtraVertex);
        }
    }
    Ok(())
}
