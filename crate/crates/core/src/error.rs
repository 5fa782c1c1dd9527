//! Error types shared across the crate.

use thiserror::Error;

/// Errors raised while lexing or parsing program text.
#[derive(Debug, Error)]
pub enum ParseError {
    #[error("unexpected character `{ch}` at {line}:{col}")]
    UnexpectedChar { ch: char, line: u32, col: u32 },
    #[error("integer literal `{text}` out of range at {line}:{col}")]
    IntOutOfRange { text: String, line: u32, col: u32 },
    #[error("expected {expected} but found {found} at {line}:{col}")]
    UnexpectedToken { expected: String, found: String, line: u32, col: u32 },
    #[error("duplicate function `{name}` at {line}:{col}")]
    DuplicateFunction { name: String, line: u32, col: u32 },
    #[error("duplicate parameter `{name}` at {line}:{col}")]
    DuplicateParam { name: String, line: u32, col: u32 },
}

/// Errors raised by static checking.
#[derive(Debug, Error)]
pub enum CheckError {
    #[error("unknown variable `{name}` at {line}:{col}")]
    UnknownVariable { name: String, line: u32, col: u32 },
    #[error("variable `{name}` may be used before assignment at {line}:{col}")]
    MaybeUnassigned { name: String, line: u32, col: u32 },
    #[error("type mismatch at {line}:{col}: expected {expected}, found {found}")]
    TypeMismatch { expected: String, found: String, line: u32, col: u32 },
    #[error("variable `{name}` was {first} but is assigned {second} at {line}:{col}")]
    AssignTypeConflict { name: String, first: String, second: String, line: u32, col: u32 },
    #[error("function `{name}` has a path that does not return")]
    MissingReturn { name: String },
    #[error("program has no functions")]
    EmptyProgram,
}

/// A mutant id outside the table.
#[derive(Debug, Clone, Copy, Error)]
#[error("unknown mutant id {id}")]
pub struct UnknownMutant {
    pub id: u32,
}

/// Caller-side errors when invoking a function: these are distinct from
/// runtime outcomes, which are ordinary values.
#[derive(Debug, Error)]
pub enum CallError {
    #[error("unknown function `{name}`")]
    UnknownFunction { name: String },
    #[error("function `{name}` expects {expected} arguments, got {got}")]
    ArityMismatch { name: String, expected: usize, got: usize },
    #[error("argument {index} of `{name}`: expected {expected}, found {found}")]
    ArgTypeMismatch { name: String, index: usize, expected: String, found: String },
}

/// Errors raised while loading a test suite file.
#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("line {line}: duplicate test id `{id}`")]
    DuplicateId { line: usize, id: String },
    #[error("line {line}: unknown function `{name}`")]
    UnknownFunction { line: usize, name: String },
    #[error("line {line}: function `{name}` expects {expected} arguments, got {got}")]
    ArityMismatch { line: usize, name: String, expected: usize, got: usize },
}

/// Errors raised by strong mutation analysis.
#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error("filter `{filter}` requires a preprocessing report")]
    MissingPreprocess { filter: String },
    #[error(transparent)]
    Call(#[from] CallError),
}

/// Errors raised while comparing execution filters.
#[derive(Debug, Error)]
pub enum CompareError {
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
}

/// Errors raised by constraint solving.
#[derive(Debug, Error)]
pub enum SolveError {
    #[error("formula references `{name}` which is not bound by the domain")]
    FreeVariable { name: String },
}

/// Errors raised when deriving a path script from an execution trace.
#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum TraceError {
    #[error("site {site} was never evaluated in this trace")]
    SiteNotExecuted { site: u32 },
}

/// Errors raised by the brute-force equivalence oracle.
#[derive(Debug, Error)]
pub enum OracleError {
    #[error("domain for function `{function}` has {size} assignments, above the oracle cap {cap}")]
    DomainTooLarge { function: String, size: u64, cap: u64 },
}

/// Violations of internal guarantees. These indicate a bug in the analysis,
/// not bad input, and map to a distinct process exit code in the CLI.
#[derive(Debug, Error)]
pub enum InvariantError {
    #[error("infection sets are not nested: {detail}")]
    SetNesting { detail: String },
    #[error("kill sets differ between filters: {detail}")]
    KillSetMismatch { detail: String },
    #[error("path formula for mutant {mutant} is not closed over the parameters: {detail}")]
    OpenFormula { mutant: u32, detail: String },
    #[error("oracle contradicts an equivalence verdict: {detail}")]
    OracleMismatch { detail: String },
}
