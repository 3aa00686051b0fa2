//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("edge {edge}: boundary is empty")]
    EmptyBoundary { edge: String },

    #[error("vertex {vertex} is isolated")]
    IsolatedVertex { vertex: String },

    #[error("edge {edge} is a loop")]
    Loop { edge: String },

    #[error("edge {edge}: a graph edge must have exactly 2 endpoints, found {ends}")]
    GraphArity { edge: String, ends: usize },

    #[error("unknown vertex id {id}")]
    UnknownVertex { id: String },

    #[error("unknown edge id {id}")]
    UnknownEdge { id: String },

    #[error("duplicate id {id}")]
    DuplicateId { id: String },

    #[error("operands belong to different ambient hypergraphs")]
    AmbientMismatch,

    #[error("edge set {set} is not cyclic")]
    NotCyclic { set: String },

    #[error("edge set {set} is not a single cycle")]
    NotACycle { set: String },

    #[error("edge set {set} is not a glide")]
    NotAGlide { set: String },

    #[error("{what} is not a subset of {of}")]
    NotASubset { what: String, of: String },

    #[error("edges {a} and {b} share a vertex; not a matching")]
    NotAMatching { a: String, b: String },

    #[error("matching {matching} is not perfect")]
    NotPerfect { matching: String },

    #[error("vertex {vertex} is not covered by the matching")]
    Uncovered { vertex: String },

    #[error("matchings {a} and {b} are not congruent")]
    NotCongruent { a: String, b: String },

    #[error("cycle {cycle} does not alternate with {matching}")]
    NotAlternating { cycle: String, matching: String },

    #[error("cycle {cycle} has no halves (odd cycle)")]
    NoHalves { cycle: String },

    #[error("cycle {cycle} has no v-halves")]
    NoVHalves { cycle: String },

    #[error("{half} is not a half of cycle {cycle}")]
    NotAHalf { half: String, cycle: String },

    #[error("{half} is not a v-half of cycle {cycle}")]
    NotAVHalf { half: String, cycle: String },

    #[error("no orientation entry covers cycle {cycle}")]
    MissingHalf { cycle: String },

    #[error("vertex {vertex} does not belong to the complex")]
    VertexNotInComplex { vertex: String },

    #[error("1-cell {a} -- {b} cannot be directed: neither endpoint meets the distinguished half")]
    Unorientable { a: String, b: String },

    #[error("based cube has colliding vertices; the direction set is not cubic")]
    VertexCollision,

    #[error("path is open, expected a loop at {base}")]
    OpenPath { base: String },

    #[error("path endpoint {found} does not match expected {expected}")]
    PathMismatch { expected: String, found: String },

    #[error("graph is not bipartite: odd cycle through vertex {vertex}")]
    NotBipartite { vertex: String },

    #[error("unknown generator {name}")]
    UnknownGenerator { name: String },

    #[error("word letter exponent must be +1 or -1, found {exp}")]
    BadExponent { exp: i64 },

    #[error("not a dimer labeling: vertex {vertex} sees {nonzero} non-zero labels summing to {sum}")]
    NotDimerLabeling {
        vertex: String,
        nonzero: usize,
        sum: String,
    },

    #[error("labeling support contains the odd cycle {cycle}")]
    OddCycleInSupport { cycle: String },

    #[error("residual labeling is not in the perfect-matching component: {reason}")]
    BadResidual { reason: String },

    #[error("operation only defined for graphs (2-endpoint edges), got hypergraph input")]
    GraphOnly,

    #[error("hypergraph too large for exhaustive cycle search ({edges} edges, limit {limit})")]
    TooLarge { edges: usize, limit: usize },

    #[error("invalid value: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
