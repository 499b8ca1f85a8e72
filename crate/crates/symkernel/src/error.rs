use thiserror::Error;

/// Errors produced by parsing, canonicalization and rewriting.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KernelError {
    #[error("syntax error at {line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },

    #[error("undeclared identifier `{name}` at {line}:{col}")]
    Undeclared { name: String, line: usize, col: usize },

    #[error("duplicate declaration of `{name}`")]
    DuplicateDeclaration { name: String },

    #[error("non-integer exponent at {line}:{col}")]
    NonIntegerExponent { line: usize, col: usize },

    #[error("division by an expression with zero canonical numerator")]
    DivisionByZero,

    #[error("phase of sin/cos must be built from plain symbols, found `{found}`")]
    InvalidPhase { found: String },

    #[error("rewrite budget exceeded after {steps} replacements (non-terminating rule set?)")]
    RewriteBudgetExceeded { steps: usize },

    #[error("`{name}` has kind {kind}, expected {expected}")]
    WrongKind { name: String, kind: String, expected: String },

    #[error("left side of a solve rule must be a single derivative coordinate, got `{got}`")]
    BadRuleLhs { got: String },

    #[error("equation {index} does not reduce to zero under the system's rewrite rules")]
    IncompleteRules { index: usize },

    #[error("{0}")]
    Other(String),
}
