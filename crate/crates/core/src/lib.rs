//! Exact chord diagrams on the rational circle, their intersection graphs,
//! local complementation and vertex minors, circle-graph recognition,
//! automorphism lifting, and the witness algebra of the Rado graph's
//! extension property.

pub mod circle_aut;
pub mod cli;
pub mod cyclic;
pub mod diagram;
pub mod error;
pub mod graph;
pub mod rado;
pub mod recognition;
pub mod selftest;
pub mod svg;
pub mod word;

pub use cyclic::{cyclic_between, insert_between, interleaves, CirclePoint, Rational};
pub use diagram::{intersects, Chord, ChordDiagram, IntersectionMode};
pub use error::{Error, Result};
pub use graph::{CanonicalForm, Graph, VertexSet};
pub use word::DoWord;
