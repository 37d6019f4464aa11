//! Construction, verification and exhaustive cross-checking of 3-rainbow
//! colorings of the complete bipartite graphs K_{2,t}.

pub mod coloring;
pub mod construct;
pub mod dot;
pub mod error;
pub mod generic;
pub mod search;
pub mod verifier;

pub use coloring::{
    colors_used, make_coloring, BipartiteColoring, Color, ColorCode, RainbowTreeWitness, TripleKind, Vertex,
    VertexTriple, WitnessEdge,
};
pub use construct::{construct_coloring, rx3_interval, rx3_value, ValueInterval};
pub use dot::to_dot;
pub use error::{Error, Result};
pub use generic::{generic_has_rainbow_tree, GenericColoredGraph};
pub use verifier::{
    has_rainbow_tree, lemma22_fast_check, validate_witness, verify_3rainbow, verify_3rainbow_parallel,
    Verdict, VerificationReport,
};
