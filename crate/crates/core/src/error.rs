use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("{what} has size {size}, above the budget of {budget}")]
    TooLarge { what: &'static str, size: usize, budget: usize },

    #[error("embedding failed: {0}")]
    EmbeddingFailure(String),

    #[error("invalid drawing: {0}")]
    InvalidDrawing(String),

    #[error("parameter window: {0}")]
    ParameterWindow(String),

    #[error("layout corruption: {0}")]
    LayoutCorruption(String),

    #[error("window infeasible: {binding}; remedy: {remedy}")]
    Infeasible { binding: String, remedy: String },

    #[error("independent-set restriction refused: atom {atom} has detuning {detuning} >= {limit}")]
    RestrictionUnjustified { atom: usize, detuning: f64, limit: f64 },

    #[error("set is not independent: vertices {0} and {1} are adjacent")]
    NotIndependent(usize, usize),

    #[error("duplicate points {0} and {1}")]
    DuplicatePoint(usize, usize),

    #[error("stage {stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },

    #[error("{0}")]
    Io(String),
}

impl Error {
    pub fn at_stage(self, stage: &'static str) -> Error {
        Error::Stage { stage, source: Box::new(self) }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse { line: e.line(), column: e.column(), message: e.to_string() }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
