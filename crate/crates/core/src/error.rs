use thiserror::Error;

/// Errors raised by parsing and analysis.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("symbol {symbol} used with arity {found}, previously {expected}")]
    ArityMismatch {
        symbol: String,
        expected: usize,
        found: usize,
    },
    #[error("left-hand side is a variable: {0}")]
    VariableLhs(String),
    #[error("variable {var} of the right-hand side does not occur on the left in {rule}")]
    ExtraVariable { var: String, rule: String },
    #[error("indeterminate: exploration budget exhausted ({0})")]
    Indeterminate(String),
    #[error("nontermination evidence: {0}")]
    Nontermination(String),
    #[error("term is not ground: {0}")]
    NonGround(String),
    #[error("missing interpretation for symbol {0}")]
    MissingInterpretation(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("simulation failed: {0}")]
    Simulation(String),
}

impl Error {
    pub fn is_indeterminate(&self) -> bool {
        matches!(self, Error::Indeterminate(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
