use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("cyclotomic order must be positive")]
    ZeroOrder,
    #[error("division by zero")]
    DivisionByZero,
    #[error("incompatible cyclotomic orders {0} and {1}")]
    IncompatibleOrders(u32, u32),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("not a cochain complex: {0}")]
    NotComplex(String),
    #[error("not an intertwiner: {0}")]
    NotIntertwiner(String),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("move not applicable: {0}")]
    MoveNotApplicable(String),
    #[error("not a homotopy equivalence: {0}")]
    NotEquivalence(String),
    #[error("Hopf/ribbon axioms fail: {0:?}")]
    Axioms(Vec<String>),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
