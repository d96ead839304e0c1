//! Constructions and exact decision procedures for cubic bridgeless graphs:
//! perfect matching covers and the excessive index, Berge-Fulkerson covers,
//! and the classification of shortest cycle covers around `4m/3`.
//!
//! Every verdict comes with a certificate that can be re-checked against the
//! graph it was computed for.

pub mod certificate;
pub mod constructions;
pub mod covers;
pub mod cyclecover;
pub mod error;
pub mod graph;
pub mod matching;

pub use error::{Error, Result};
pub use graph::{CubicGraph, EdgeSet, GraphId};
