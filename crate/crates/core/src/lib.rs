//! Self-similar graph triples `(G, E, φ)` made computable: exact arithmetic
//! in the inverse semigroup `S(G,E)`, its tight groupoid modelled on
//! eventually periodic infinite paths, equivariant desingularization of
//! sources and infinite receivers, and certificate-producing checkers for
//! Hausdorffness, minimality, topological freeness, simplicity and pure
//! infiniteness.

pub mod checkers;
pub mod cli;
pub mod corpus;
pub mod desing;
pub mod digraph;
pub mod document;
pub mod expr;
pub mod error;
pub mod graph;
pub mod groupoid;
pub mod group;
pub mod lasso;
pub mod report;
pub mod semigroup;
pub mod seq;
pub mod triple;

pub use error::{Error, Result};
pub use graph::{Edge, Graph, Path, Vertex};
pub use group::{Group, GroupElement};
pub use lasso::Lasso;
pub use triple::Triple;
