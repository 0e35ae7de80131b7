use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole: denominator vanishes at the evaluation point")]
    Pole,
    #[error("parse error: {0}")]
    Parse(String),
}

#[derive(Error, Debug)]
pub enum AlgebraError {
    #[error("super-Jacobi identity fails: {0}")]
    Jacobi(String),
    #[error("invariant-form solution space has dimension {0}, expected 1")]
    FormNotUnique(usize),
    #[error("level {0} exceeds the depth of the grading")]
    DepthExceeded(usize),
    #[error("the first negative level does not bracket-generate the nilpotent part")]
    NotFundamental,
    #[error("seed level does not embed injectively into map space")]
    SeedNotInjective,
    #[error("span is not bracket-closed: escaping bracket of generators {0} and {1}")]
    NotClosed(usize, usize),
    #[error("subspace has codimension {0}, expected 1")]
    NotHyperplane(usize),
    #[error("correspondence fails at bracket [{0}, {1}]")]
    Correspondence(String, String),
    #[error("non-diagonal Cartan action on basis element {0}")]
    NotDiagonal(String),
    #[error("{0}")]
    Other(String),
}

#[derive(Error, Debug)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("check failed: {0}")]
    CheckFailed(String),
}
