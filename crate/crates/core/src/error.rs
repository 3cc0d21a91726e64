use thiserror::Error;

use crate::mr_ideal::MinorIndex;
use crate::reconstruct::BadConfiguration;
use crate::trees::Label;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("the three points of a Möbius normalization must be pairwise distinct")]
    DegenerateTriple,
    #[error("evaluation at the pole of a Möbius transformation")]
    PoleEvaluation,

    #[error("internal vertex {vertex} has degree {degree}; stable trees need degree at least 3")]
    UnstableVertex { vertex: usize, degree: usize },
    #[error("not a tree: {0}")]
    NotATree(String),
    #[error("tree is missing the required leaf {0}")]
    MissingLabels(Label),
    #[error("unknown leaf label {0}")]
    UnknownLabel(Label),
    #[error("cannot forget a point from a tree with fewer than four leaves")]
    TooFewLeaves,
    #[error("{nodes} internal edges is infeasible for n = {n} (at most n)")]
    InfeasibleShape { n: u32, nodes: u32 },
    #[error("edge is not an internal edge of the tree")]
    NotAnInternalEdge,
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("invalid point: {0}")]
    InvalidPoint(String),

    #[error("last factor has a zero or repeated entry")]
    NotInterior,
    #[error("point is not in the image of the embedding ({} violated minors)", violated.len())]
    NotInImage { violated: Vec<MinorIndex> },
    #[error("coloring has no edge separating the two colors")]
    NoSeparation,
    #[error("coloring violates strong separation ({} bad configurations)", bad.len())]
    SeparationFailure { bad: Vec<BadConfiguration> },

    #[error("minor {0} does not vanish at the point")]
    NotOnVariety(MinorIndex),
    #[error("branch profile inconsistency: {0}")]
    ProfileMismatch(String),
    #[error("curve is not in the exceptional configuration")]
    NotExceptional,

    #[error("parse error: {0}")]
    Parse(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
