//! Toolkit for planar graphs of small diameter: exact fractional matching and
//! covering LPs, combinatorial embeddings, pattern detection, lantern
//! machinery, an order-bounding reduction with independently verifiable
//! certificates, and extremal construction search.

pub mod catalog;
pub mod constructions;
pub mod embed;
pub mod frac;
pub mod graph;
pub mod lanterns;
pub mod lp;
pub mod patterns;
pub mod rat;
pub mod reduction;

pub use graph::{Dist, Graph, GraphError, MetricProfile};
pub use rat::Rat;
