//! Domain types for edge colorings of K_{2,t}.
//!
//! The two U-vertices are `u1`, `u2`; the W-vertices are `w1..wt` (1-indexed).
//! Every edge joins a U-vertex to a W-vertex, so a coloring is fully described
//! by one [`ColorCode`] per W-vertex: the colors of its edges to `u1` and `u2`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Colors are dense integers `1..=k`.
pub type Color = u32;

/// Colors of the edges `(u1 w, u2 w)` at one W-vertex `w`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "(Color, Color)", into = "(Color, Color)")]
pub struct ColorCode {
    pub a1: Color,
    pub a2: Color,
}

impl ColorCode {
    pub const fn new(a1: Color, a2: Color) -> Self {
        ColorCode { a1, a2 }
    }

    /// Color of the edge to `u1` (`side == 1`) or `u2` (`side == 2`).
    #[inline]
    pub fn side(self, side: u8) -> Color {
        if side == 1 {
            self.a1
        } else {
            self.a2
        }
    }

    pub fn is_diagonal(self) -> bool {
        self.a1 == self.a2
    }

    pub fn max_color(self) -> Color {
        self.a1.max(self.a2)
    }

    pub fn min_color(self) -> Color {
        self.a1.min(self.a2)
    }
}

impl From<(Color, Color)> for ColorCode {
    fn from((a1, a2): (Color, Color)) -> Self {
        ColorCode { a1, a2 }
    }
}

impl From<ColorCode> for (Color, Color) {
    fn from(c: ColorCode) -> Self {
        (c.a1, c.a2)
    }
}

impl fmt::Display for ColorCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a1, self.a2)
    }
}

/// A vertex of K_{2,t}. Orders as `w1 < w2 < ... < wt < u1 < u2`, which is
/// the canonical order for triples and failure reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Vertex {
    /// 1-indexed W-vertex.
    W(usize),
    U1,
    U2,
}

impl Vertex {
    pub fn u(side: u8) -> Self {
        if side == 1 {
            Vertex::U1
        } else {
            Vertex::U2
        }
    }

    pub fn is_w(self) -> bool {
        matches!(self, Vertex::W(_))
    }

    /// Dense index: `u1 -> 0`, `u2 -> 1`, `w_i -> i + 1`.
    pub fn index(self) -> usize {
        match self {
            Vertex::U1 => 0,
            Vertex::U2 => 1,
            Vertex::W(i) => i + 1,
        }
    }

    pub fn from_index(index: usize) -> Self {
        match index {
            0 => Vertex::U1,
            1 => Vertex::U2,
            i => Vertex::W(i - 1),
        }
    }

    pub fn exists_in(self, t: usize) -> bool {
        match self {
            Vertex::W(i) => (1..=t).contains(&i),
            _ => true,
        }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::U1 => f.write_str("u1"),
            Vertex::U2 => f.write_str("u2"),
            Vertex::W(i) => write!(f, "w{i}"),
        }
    }
}

impl FromStr for Vertex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::invalid(format!("bad vertex name {s:?}"));
        match s {
            "u1" => Ok(Vertex::U1),
            "u2" => Ok(Vertex::U2),
            _ => {
                let idx: usize = s.strip_prefix('w').ok_or_else(bad)?.parse().map_err(|_| bad())?;
                if idx == 0 {
                    return Err(bad());
                }
                Ok(Vertex::W(idx))
            }
        }
    }
}

impl Serialize for Vertex {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Vertex {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A validated coloring of K_{2,t}: `codes[i]` belongs to `w_{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawColoring", into = "RawColoring")]
pub struct BipartiteColoring {
    k: Color,
    codes: Vec<ColorCode>,
}

#[derive(Serialize, Deserialize)]
struct RawColoring {
    t: usize,
    k: Color,
    codes: Vec<ColorCode>,
}

impl TryFrom<RawColoring> for BipartiteColoring {
    type Error = Error;

    fn try_from(raw: RawColoring) -> Result<Self> {
        make_coloring(raw.t, raw.k, raw.codes)
    }
}

impl From<BipartiteColoring> for RawColoring {
    fn from(c: BipartiteColoring) -> Self {
        RawColoring { t: c.t(), k: c.k, codes: c.codes }
    }
}

/// Validates and builds a coloring.
pub fn make_coloring(t: usize, k: Color, codes: Vec<ColorCode>) -> Result<BipartiteColoring> {
    if t == 0 {
        return Err(Error::invalid("t must be at least 1"));
    }
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    if codes.len() != t {
        return Err(Error::LengthMismatch { expected: t, got: codes.len() });
    }
    for code in &codes {
        for color in [code.a1, code.a2] {
            if color == 0 || color > k {
                return Err(Error::ColorOutOfRange { color, k });
            }
        }
    }
    Ok(BipartiteColoring { k, codes })
}

impl BipartiteColoring {
    /// Shorthand for [`make_coloring`] with `t = codes.len()`.
    pub fn new(k: Color, codes: Vec<ColorCode>) -> Result<Self> {
        make_coloring(codes.len(), k, codes)
    }

    pub fn t(&self) -> usize {
        self.codes.len()
    }

    pub fn k(&self) -> Color {
        self.k
    }

    pub fn codes(&self) -> &[ColorCode] {
        &self.codes
    }

    /// Code of the 1-indexed vertex `w_i`.
    pub fn code(&self, i: usize) -> ColorCode {
        self.codes[i - 1]
    }

    /// Color of the edge `u_side w_i`.
    pub fn edge_color(&self, side: u8, i: usize) -> Color {
        self.code(i).side(side)
    }

    /// Same codes under a larger (or smaller) declared palette.
    pub fn with_palette(&self, k: Color) -> Result<Self> {
        make_coloring(self.t(), k, self.codes.clone())
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        [Vertex::U1, Vertex::U2].into_iter().chain((1..=self.t()).map(Vertex::W))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("coloring serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

/// Distinct colors appearing on some edge.
pub fn colors_used(coloring: &BipartiteColoring) -> BTreeSet<Color> {
    coloring.codes.iter().flat_map(|c| [c.a1, c.a2]).collect()
}

/// Classification of a triple by how many members lie in W.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TripleKind {
    /// `{u1, u2, w}`
    OneW,
    /// `{u, w, w'}`
    TwoW,
    /// `{w, w', w''}`
    ThreeW,
}

/// Three distinct vertices, stored in ascending vertex order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "[Vertex; 3]", into = "[Vertex; 3]")]
pub struct VertexTriple([Vertex; 3]);

impl VertexTriple {
    pub fn new(a: Vertex, b: Vertex, c: Vertex) -> Result<Self> {
        let mut m = [a, b, c];
        m.sort();
        if m[0] == m[1] || m[1] == m[2] {
            return Err(Error::invalid(format!("triple {a},{b},{c} repeats a vertex")));
        }
        if m[0] == Vertex::W(0) {
            return Err(Error::invalid("W-vertices are 1-indexed"));
        }
        Ok(VertexTriple(m))
    }

    pub fn members(&self) -> [Vertex; 3] {
        self.0
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.contains(&v)
    }

    pub fn kind(&self) -> TripleKind {
        match self.0.iter().filter(|v| v.is_w()).count() {
            1 => TripleKind::OneW,
            2 => TripleKind::TwoW,
            _ => TripleKind::ThreeW,
        }
    }

    /// 1-indexed W-members in ascending order.
    pub fn w_members(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().filter_map(|v| match v {
            Vertex::W(i) => Some(*i),
            _ => None,
        })
    }

    /// Largest W index referenced.
    pub fn max_w(&self) -> usize {
        self.w_members().max().unwrap_or(0)
    }

    /// All `C(t+2, 3)` triples of K_{2,t} in canonical (lexicographic) order.
    pub fn all(t: usize) -> impl Iterator<Item = VertexTriple> {
        let n = t + 2;
        let at = move |i: usize| if i < t { Vertex::W(i + 1) } else { Vertex::u((i - t + 1) as u8) };
        (0..n).flat_map(move |i| {
            (i + 1..n).flat_map(move |j| (j + 1..n).map(move |l| VertexTriple([at(i), at(j), at(l)])))
        })
    }
}

impl TryFrom<[Vertex; 3]> for VertexTriple {
    type Error = Error;

    fn try_from(m: [Vertex; 3]) -> Result<Self> {
        VertexTriple::new(m[0], m[1], m[2])
    }
}

impl From<VertexTriple> for [Vertex; 3] {
    fn from(t: VertexTriple) -> Self {
        t.0
    }
}

impl fmt::Display for VertexTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{},{}}}", self.0[0], self.0[1], self.0[2])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct WitnessEdge<V> {
    pub a: V,
    pub b: V,
    pub color: Color,
}

/// Edge list of a rainbow tree certifying that some vertex set is rainbow-connected.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RainbowTreeWitness<V = Vertex> {
    pub edges: Vec<WitnessEdge<V>>,
}

impl<V: Copy + Ord> RainbowTreeWitness<V> {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn vertices(&self) -> BTreeSet<V> {
        self.edges.iter().flat_map(|e| [e.a, e.b]).collect()
    }

    pub fn colors(&self) -> Vec<Color> {
        self.edges.iter().map(|e| e.color).collect()
    }
}
