//! Graphviz rendering of a coloring.

use std::fmt::Write;

use crate::coloring::{BipartiteColoring, Color, Vertex};

/// Rendering colors; color id `c` uses entry `(c - 1) % 12`.
pub const DOT_PALETTE: [&str; 12] = [
    "#e6194b", "#3cb44b", "#4363d8", "#f58231", "#911eb4", "#42d4f4", "#f032e6", "#9a6324", "#800000",
    "#808000", "#000075", "#469990",
];

pub fn dot_color(c: Color) -> &'static str {
    DOT_PALETTE[(c as usize - 1) % DOT_PALETTE.len()]
}

/// `K_{2,t}` as an undirected graph, each edge labeled with its color id.
pub fn to_dot(coloring: &BipartiteColoring) -> String {
    let t = coloring.t();
    let mut out = String::new();
    let _ = writeln!(out, "graph K2_{t} {{");
    let _ = writeln!(out, "  layout=dot;\n  rankdir=TB;");
    let _ = writeln!(out, "  {{ rank=same; u1; u2; }}");
    for i in 1..=t {
        let _ = writeln!(out, "  {} [shape=circle];", Vertex::W(i));
    }
    for (i, code) in coloring.codes().iter().enumerate() {
        let w = Vertex::W(i + 1);
        for (side, c) in [(1u8, code.a1), (2, code.a2)] {
            let _ = writeln!(
                out,
                "  {} -- {w} [label=\"{c}\", color=\"{}\", fontcolor=\"{}\", penwidth=2];",
                Vertex::u(side),
                dot_color(c),
                dot_color(c)
            );
        }
    }
    out.push_str("}\n");
    out
}
