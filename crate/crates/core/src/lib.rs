//! Continuous universal graphs and the random countable graphs they induce.

pub mod analysis;
pub mod cli;
pub mod error;
pub mod graph;
pub mod graphon;
pub mod intervals;
pub mod patterns;
pub mod rng;
pub mod spec;
pub mod ksfree_graph;
pub mod line_graph;
pub mod measure;

pub use error::{Error, Result};
