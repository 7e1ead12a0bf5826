pub mod analyzer;
pub mod bitset;
pub mod canon;
pub mod catalog;
pub mod cli;
pub mod decomposition;
pub mod error;
pub mod graph;
pub mod io;
pub mod p4;
pub mod rules;
pub mod search;
pub mod small;

pub use bitset::VertexSet;
pub use canon::{canonical_code, CanonicalCode};
pub use error::{Error, Result};
pub use graph::{Graph, Mode, Pair, PairSet};
