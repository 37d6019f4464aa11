//! Brute-force rainbow tree search on arbitrary small edge-colored graphs.
//!
//! Nothing here knows about K_{2,t}. It enumerates edge subsets directly and
//! is used to cross-check the shape-catalog verifier.

use std::collections::{BTreeSet, HashSet};

use crate::coloring::{BipartiteColoring, Color, RainbowTreeWitness, Vertex, WitnessEdge};
use crate::error::{Error, Result};

/// Subset enumeration is `2^|E|`; larger graphs are refused.
pub const GENERIC_EDGE_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericColoredGraph {
    n: usize,
    edges: Vec<WitnessEdge<usize>>,
}

impl GenericColoredGraph {
    /// Vertices are `0..n`. Rejects loops, parallel edges and color 0.
    pub fn new(n: usize, edges: Vec<(usize, usize, Color)>) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut out = Vec::with_capacity(edges.len());
        for (a, b, color) in edges {
            if a >= n || b >= n {
                return Err(Error::invalid(format!("edge ({a},{b}) leaves vertex range 0..{n}")));
            }
            if a == b {
                return Err(Error::invalid(format!("loop at vertex {a}")));
            }
            if color == 0 {
                return Err(Error::invalid("colors are positive"));
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(Error::invalid(format!("parallel edge ({a},{b})")));
            }
            out.push(WitnessEdge { a, b, color });
        }
        Ok(GenericColoredGraph { n, edges: out })
    }

    /// K_{2,t} with vertex numbering given by [`Vertex::index`].
    pub fn from_bipartite(coloring: &BipartiteColoring) -> Self {
        let mut edges = Vec::with_capacity(2 * coloring.t());
        for (i, code) in coloring.codes().iter().enumerate() {
            let w = Vertex::W(i + 1).index();
            edges.push(WitnessEdge { a: 0, b: w, color: code.a1 });
            edges.push(WitnessEdge { a: 1, b: w, color: code.a2 });
        }
        GenericColoredGraph { n: coloring.t() + 2, edges }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[WitnessEdge<usize>] {
        &self.edges
    }

    fn color_of(&self, a: usize, b: usize) -> Option<Color> {
        self.edges.iter().find(|e| (e.a == a && e.b == b) || (e.a == b && e.b == a)).map(|e| e.color)
    }
}

/// Exact rainbow S-tree search by edge-subset enumeration.
///
/// Subsets are tried by increasing size, then lexicographically by edge index,
/// so the returned witness has the fewest edges possible.
pub fn generic_has_rainbow_tree(
    graph: &GenericColoredGraph,
    s: &[usize],
) -> Result<Option<RainbowTreeWitness<usize>>> {
    if graph.edges.len() > GENERIC_EDGE_LIMIT {
        return Err(Error::GraphTooLarge { edges: graph.edges.len(), limit: GENERIC_EDGE_LIMIT });
    }
    let targets: BTreeSet<usize> = s.iter().copied().collect();
    if targets.len() < 2 || targets.len() != s.len() {
        return Err(Error::invalid("S must hold at least two distinct vertices"));
    }
    if let Some(&v) = targets.iter().find(|&&v| v >= graph.n) {
        return Err(Error::invalid(format!("vertex {v} not in graph")));
    }

    let distinct_colors = graph.edges.iter().map(|e| e.color).collect::<BTreeSet<_>>().len();
    let max_size = distinct_colors.min(graph.n - 1);
    let mut chosen = Vec::with_capacity(max_size);
    for size in 1..=max_size {
        if subsets(graph, &targets, size, 0, &mut chosen) {
            let edges = chosen.iter().map(|&i| graph.edges[i]).collect();
            return Ok(Some(RainbowTreeWitness { edges }));
        }
    }
    Ok(None)
}

fn subsets(
    graph: &GenericColoredGraph,
    targets: &BTreeSet<usize>,
    size: usize,
    start: usize,
    chosen: &mut Vec<usize>,
) -> bool {
    if chosen.len() == size {
        let edges: Vec<_> = chosen.iter().map(|&i| graph.edges[i]).collect();
        return is_tree(&edges) && spans(&edges, targets);
    }
    for i in start..graph.edges.len() {
        let color = graph.edges[i].color;
        if chosen.iter().any(|&j| graph.edges[j].color == color) {
            continue;
        }
        chosen.push(i);
        if subsets(graph, targets, size, i + 1, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

fn spans(edges: &[WitnessEdge<usize>], targets: &BTreeSet<usize>) -> bool {
    let touched: BTreeSet<usize> = edges.iter().flat_map(|e| [e.a, e.b]).collect();
    targets.is_subset(&touched)
}

/// Connected and acyclic on the vertices it touches.
fn is_tree(edges: &[WitnessEdge<usize>]) -> bool {
    let verts: Vec<usize> =
        edges.iter().flat_map(|e| [e.a, e.b]).collect::<BTreeSet<_>>().into_iter().collect();
    if edges.len() + 1 != verts.len() {
        return false;
    }
    let pos = |v: usize| verts.binary_search(&v).unwrap();
    let mut parent: Vec<usize> = (0..verts.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for e in edges {
        let (ra, rb) = (find(&mut parent, pos(e.a)), find(&mut parent, pos(e.b)));
        if ra == rb {
            return false;
        }
        parent[ra] = rb;
    }
    true
}

/// Why a claimed witness is not a rainbow S-tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessDefect {
    MissingEdge(usize, usize),
    WrongColor { a: usize, b: usize, claimed: Color, actual: Color },
    NotATree,
    RepeatedColor(Color),
    MissesTarget(usize),
}

/// Checks a witness against the graph directly, without trusting its producer.
pub fn check_witness(
    graph: &GenericColoredGraph,
    s: &[usize],
    witness: &RainbowTreeWitness<usize>,
) -> std::result::Result<(), WitnessDefect> {
    for e in &witness.edges {
        match graph.color_of(e.a, e.b) {
            None => return Err(WitnessDefect::MissingEdge(e.a, e.b)),
            Some(actual) if actual != e.color => {
                return Err(WitnessDefect::WrongColor { a: e.a, b: e.b, claimed: e.color, actual })
            }
            _ => {}
        }
    }
    let mut colors = BTreeSet::new();
    for e in &witness.edges {
        if !colors.insert(e.color) {
            return Err(WitnessDefect::RepeatedColor(e.color));
        }
    }
    if !is_tree(&witness.edges) {
        return Err(WitnessDefect::NotATree);
    }
    let touched = witness.vertices();
    match s.iter().find(|v| !touched.contains(v)) {
        Some(&v) => Err(WitnessDefect::MissesTarget(v)),
        None => Ok(()),
    }
}

/// Re-expresses a K_{2,t} witness on the generic vertex numbering.
pub fn to_generic_witness(w: &RainbowTreeWitness<Vertex>) -> RainbowTreeWitness<usize> {
    RainbowTreeWitness {
        edges: w
            .edges
            .iter()
            .map(|e| WitnessEdge { a: e.a.index(), b: e.b.index(), color: e.color })
            .collect(),
    }
}
