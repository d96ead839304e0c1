use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("vertex {vertex} has degree {degree}, expected 3")]
    NotCubic { vertex: usize, degree: usize },

    #[error("edge {edge} ({u}, {v}) is a loop or repeats an earlier edge")]
    NotSimple { edge: usize, u: usize, v: usize },

    #[error("graph is disconnected: vertex {vertex} is unreachable from vertex 0")]
    NotConnected { vertex: usize },

    #[error("edge index {edge} out of range for a graph with {edge_count} edges")]
    InvalidEdgeIndex { edge: usize, edge_count: usize },

    #[error("vertex {vertex} out of range for a graph with {vertex_count} vertices")]
    InvalidVertex { vertex: usize, vertex_count: usize },

    #[error("cut side must be a nonempty proper subset of the vertex set")]
    EmptySide,

    #[error("k = {k} exceeds girth + 1 = {limit}")]
    KTooLarge { k: usize, limit: usize },

    #[error("edge set is not a perfect matching: vertex {vertex} is covered {count} times")]
    NotPerfectMatching { vertex: usize, count: usize },

    #[error("edge set belongs to graph {found}, expected {expected}")]
    HostMismatch { expected: String, found: String },

    #[error("enumeration stopped after {cap} items")]
    EnumerationCapExceeded { cap: usize },

    #[error("search stopped after {nodes} nodes without a verdict")]
    SearchBudgetExceeded { nodes: u64 },

    #[error("edge {edge} lies in no perfect matching")]
    NoPerfectMatchingCover { edge: usize },

    #[error("({u}, {v}) is not an edge")]
    NotAnEdge { u: usize, v: usize },

    #[error("the endpoints of edge ({x}, {y}) share a neighbor")]
    NeighborsNotDistinct { x: usize, y: usize },

    #[error("graph carries no reduction provenance")]
    ProvenanceMissing,

    #[error("invalid cover: {0}")]
    InvalidCover(String),

    #[error("cover decoding reached a contradiction at {0}")]
    DecodeContradiction(String),

    #[error("invalid three-edge-coloring: {0}")]
    InvalidColoring(String),

    #[error("color normalization failed around edge {edge}")]
    NormalizationImpossible { edge: usize },

    #[error("Berge-Fulkerson extension failed: {0}")]
    ExtensionFailed(String),

    #[error("boundary of H{block} meets the edge set in {count} edges")]
    OddBoundaryIntersection { block: usize, count: usize },

    #[error("invalid multiplicity: {0}")]
    InvalidMultiplicity(String),

    #[error("invalid recipe: {0}")]
    InvalidRecipe(String),

    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
}
