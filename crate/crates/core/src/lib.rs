//! Polynomial solutions of linear ODEs with polynomial coefficients by
//! gradation slicing, with the constraint polynomials of Rabi-type models.
//!
//! The crate is `no_std` (it needs `alloc`). The layers are:
//!
//! * [`algebra`] — rationals, the quadratic-extension scalar [`ParamScalar`],
//!   polynomials, rational functions, Sturm isolation and resultants;
//! * [`gradation`] — operators as sums of `coef · z^m · d^l`, slicing by
//!   grade `m − l`, induced multiplicators and classification;
//! * [`recurrence`] — baselines, the downward recurrence for the
//!   coefficients of a polynomial solution and the cleared constraints;
//! * [`models`] — operator builders for the Rabi family, the Kus polynomials
//!   and the Juddian-point search;
//! * [`verification`] — residual, Bethe-ansatz, sum-rule, coefficient-identity
//!   and sl₂ certificates.

#![no_std]

extern crate alloc;

pub mod algebra;
pub mod gradation;
pub mod models;
pub mod recurrence;
pub mod verification;

pub use algebra::{Approx, Field, OrderedField, ParamScalar, RatFunc, Ring, RootInterval, UniPoly, Var, Q};
pub use gradation::{Alternative, GradeSignature, OdeOperator, OdeTerm, Slice};
