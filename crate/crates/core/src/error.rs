use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("degenerate cone: generator matrix is singular")]
    DegenerateCone,
    #[error("matrix is singular")]
    Singular,
    #[error("polytope is unbounded (fan is not complete)")]
    Unbounded,
    #[error("polytope is not full-dimensional")]
    LowerDimensional,
    #[error("empty input: {0}")]
    Empty(&'static str),
    #[error("missing field: {0}")]
    Missing(String),
    #[error("formula not defined: {0}")]
    Formula(String),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("log term cannot be handled: {0}")]
    LogTerm(String),
    #[error("unknown weight context `{0}`")]
    UnknownContext(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("cannot read {0}")]
    Io(String),
    #[error("{}", format_parse_errors(.0))]
    Parse(Vec<ParseError>),
}

/// One problem found while reading an input file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub field: Option<String>,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.field {
            Some(field) => write!(f, "line {}: `{}`: {}", self.line, field, self.message),
            None => write!(f, "line {}: {}", self.line, self.message),
        }
    }
}

fn format_parse_errors(errors: &[ParseError]) -> String {
    let lines: Vec<String> = errors.iter().map(ToString::to_string).collect();
    format!("parse failed:\n  {}", lines.join("\n  "))
}

pub type Result<T> = std::result::Result<T, Error>;
