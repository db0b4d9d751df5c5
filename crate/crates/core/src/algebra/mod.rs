//! Exact and numeric scalar/polynomial arithmetic.

pub mod approx;
pub mod poly;
pub mod quadratic;
pub mod rational;
pub mod ratfunc;
pub mod resultant;
pub mod roots;
pub mod traits;

pub use approx::Approx;
pub use poly::{UniPoly, Var};
pub use quadratic::ParamScalar;
pub use rational::{parse_rational, q, qi, Q};
pub use ratfunc::RatFunc;
pub use resultant::resultant;
pub use roots::{complex_roots, polish_roots_exact, real_roots, refine_root, sturm_isolate, RootInterval};
pub use traits::{Field, OrderedField, Ring};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("division by the zero polynomial or zero scalar")]
    DivisionByZero,
    #[error("division is not exact")]
    InexactDivision,
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("resultant of two constants is undefined")]
    ConstantResultant,
    #[error("polynomial is not square-free")]
    NotSquareFree,
    #[error("interval does not isolate a sign change")]
    NotIsolating,
    #[error("empty interval")]
    EmptyInterval,
    #[error("negative radicand")]
    NegativeRadicand,
}
