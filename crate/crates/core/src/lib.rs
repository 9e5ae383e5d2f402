//! Decision procedures for free pseudosemilattices: the word problem via
//! confluent graph rewriting, the natural order on reduced graphs, canonical
//! identity families, variety comparisons, and finite-model oracles.

pub mod error;
pub mod family;
pub mod finmodel;
pub mod graphs;
pub mod order;
pub mod replay;
pub mod rewrite;
pub mod terms;
pub mod varieties;

pub use error::{Error, Result};
