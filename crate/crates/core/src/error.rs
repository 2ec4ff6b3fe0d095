use thiserror::Error;

/// Errors raised while reading text artifacts (edge lists, CSV stages, diagram JSON).
#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("{0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl ParseError {
    pub(crate) fn line(line: usize, message: impl Into<String>) -> Self {
        ParseError::Line {
            line,
            message: message.into(),
        }
    }
}

/// Structural errors: queries against absent vertices or edges, broken complexes.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum StructureError {
    #[error("vertex {vertex} out of range (graph has {n} vertices)")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("edge ({0}, {1}) is not in the graph")]
    MissingEdge(usize, usize),
    #[error("no weight for edge ({0}, {1})")]
    MissingEdgeWeight(usize, usize),
    #[error("graph has {n} vertices; the brute-force oracle accepts at most {max}")]
    TooLargeForOracle { n: usize, max: usize },
    #[error("face {face:?} of simplex {simplex:?} is missing from the complex")]
    MissingFace { face: Vec<usize>, simplex: Vec<usize> },
    #[error("face {face:?} has weight {face_weight} above its coface {coface:?} with weight {coface_weight}")]
    NonMonotone {
        face: Vec<usize>,
        face_weight: f64,
        coface: Vec<usize>,
        coface_weight: f64,
    },
    #[error("simplex {0:?} is malformed (vertices must be distinct, ascending, at most 4)")]
    MalformedSimplex(Vec<usize>),
    #[error("{count} weights supplied for {expected} simplices")]
    WeightCount { count: usize, expected: usize },
    #[error("stage {stage} out of range (complex has {n} stages)")]
    StageOutOfRange { stage: usize, n: usize },
    #[error("filtration is invalid: {0}")]
    InvalidFiltration(String),
}

/// Errors from the random graph generators.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeneratorError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("could not calibrate the disk radius: {0}")]
    Calibration(String),
}

/// Raised when score normalization is asked to work on an edgeless graph.
#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("no edges to normalize")]
pub struct NoEdges;

/// Top-level error for the end-to-end pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Generator(#[from] GeneratorError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
