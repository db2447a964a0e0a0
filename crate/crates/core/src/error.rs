use thiserror::Error;

use crate::triple::ValidationReport;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("unknown group element `{0}`")]
    UnknownElement(String),
    #[error("malformed graph: {0}")]
    Graph(String),
    #[error("path is not composable: {0}")]
    Path(String),
    #[error("element is not well typed: {0}")]
    Typing(String),
    #[error("enumeration through infinite receiver `{0}` needs a family bound")]
    UnboundedFamily(String),
    #[error("graph has infinite edge families; operation needs a finite graph")]
    FamiliesPresent,
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("stabilizer element {element} of `{vertex}` moves incoming edge a_{index}")]
    IncompatibleStabilizer { vertex: String, element: String, index: u64 },
    #[error("triple failed validation ({} violations)", .0.violations.len())]
    Invalid(Box<ValidationReport>),
    #[error("twist iteration exceeded budget of {0} steps")]
    Budget(usize),
    #[error("parse error at {line}:{column}: {message}")]
    Parse { line: usize, column: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
