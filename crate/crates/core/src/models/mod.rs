//! Rabi-type models: operator builders, coefficient tables, the Kus
//! polynomials and the Juddian-point search.
//!
//! Each model has one *coupling* parameter that can be left symbolic:
//!
//! | model               | coupling `t`              | energy variable |
//! |---------------------|---------------------------|-----------------|
//! | Rabi, driven, Schweber, Koc | `g`               | `E`             |
//! | two-photon          | `Ω = √(1 − 4g²/ω²)`       | `E`             |
//! | two-mode            | `Λ = √(1 − g²/ω²)`        | `E`             |
//! | generalized Rabi    | `κ = √(g₁g₂)/ω`           | `e = E/ω`       |
//!
//! The two-photon and two-mode operators are written in `u = z/g`, which
//! makes their coefficients polynomial in `Ω` (resp. `Λ`); solutions map as
//! `S(z) = S_u(z/g)`. The generalized model is dimensionless (ω = 1) and is
//! parametrized by `(κ, μ, ρ = g₁/g₂)`.

mod juddian;
mod kus;
mod operators;
mod tables;

use alloc::string::String;

use num_traits::{One, Signed, Zero};

use crate::algebra::{q, AlgebraError, Field, ParamScalar, RatFunc, UniPoly, Var, Q};
use crate::gradation::OdeOperator;
use crate::recurrence::RecurrenceError;

pub use juddian::{juddian_points, juddian_points_numeric, sweep_system, JuddianPoint, JuddianSet, NumericPoint, SweepSystem};
pub use kus::{kus_polynomial, kus_sequence, root_count_expectation};
pub use operators::{
    driven_rabi, generalized_couplings, generalized_rabi, generalized_rabi_degenerate, koc, rabi, schweber, two_mode, two_mode_z,
    two_photon, two_photon_z,
};
pub use tables::{coefficient_table, CoefficientTable};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ModelError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("missing parameter `{0}`")]
    MissingParameter(&'static str),
    #[error(transparent)]
    Recurrence(#[from] RecurrenceError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("all constraints vanish identically: every parameter value admits a solution")]
    IdenticallySatisfied,
    #[error("the {0} model has no stated sum rule")]
    NoSumRule(&'static str),
    #[error("μ = {0} is an integer; the root-count law is stated only for k < μ < k+1")]
    IntegerMu(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelKind {
    Rabi,
    DrivenRabi,
    TwoPhoton,
    TwoMode,
    GeneralizedRabi,
    SchweberForm,
    KocForm,
}

impl ModelKind {
    pub const ALL: [ModelKind; 7] = [
        ModelKind::Rabi,
        ModelKind::DrivenRabi,
        ModelKind::TwoPhoton,
        ModelKind::TwoMode,
        ModelKind::GeneralizedRabi,
        ModelKind::SchweberForm,
        ModelKind::KocForm,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ModelKind::Rabi => "rabi",
            ModelKind::DrivenRabi => "driven-rabi",
            ModelKind::TwoPhoton => "two-photon",
            ModelKind::TwoMode => "two-mode",
            ModelKind::GeneralizedRabi => "generalized-rabi",
            ModelKind::SchweberForm => "schweber",
            ModelKind::KocForm => "koc",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        let s = s.to_ascii_lowercase().replace('_', "-");
        Self::ALL.into_iter().find(|k| k.name() == s).or(match s.as_str() {
            "driven" => Some(ModelKind::DrivenRabi),
            "2-photon" | "twophoton" => Some(ModelKind::TwoPhoton),
            "2-mode" | "twomode" => Some(ModelKind::TwoMode),
            "generalized" | "grm" => Some(ModelKind::GeneralizedRabi),
            "schweber-form" => Some(ModelKind::SchweberForm),
            "koc-form" => Some(ModelKind::KocForm),
            _ => None,
        })
    }

    /// Name of the coupling parameter that sweeps use.
    pub fn coupling_name(self) -> &'static str {
        match self {
            ModelKind::TwoPhoton => "Omega",
            ModelKind::TwoMode => "Lambda",
            ModelKind::GeneralizedRabi => "kappa",
            _ => "g",
        }
    }

    /// Second-order models whose solutions obey a sum rule and Bethe
    /// equations.
    pub fn is_rabi_family(self) -> bool {
        matches!(self, ModelKind::Rabi | ModelKind::DrivenRabi | ModelKind::SchweberForm | ModelKind::KocForm)
    }
}

/// Elimination branch. `Plus`/`Minus` select the unprimed/primed driven
/// operator; `Degenerate` selects the generalized model on `ν = −κ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Branch {
    #[default]
    Plus,
    Minus,
    Degenerate,
}

impl Branch {
    pub fn sign(self) -> i64 {
        if self == Branch::Minus {
            -1
        } else {
            1
        }
    }
}

/// Model parameters in a given scalar field. `coupling` is `g`, `Ω`, `Λ` or
/// `κ` according to the model; for the generalized model `delta` holds
/// `μ = Δ/ω` and `omega` is 1.
#[derive(Debug, Clone)]
pub struct Params<F> {
    pub omega: F,
    pub delta: F,
    pub coupling: F,
    pub drive: F,
    pub q: F,
    pub rho: F,
}

/// A model with its fixed parameters. Exactly one of `g` or `(g1, g2)` is
/// used, depending on the model; they may be absent when the coupling is
/// swept.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelSpec {
    pub kind: ModelKind,
    pub omega: Q,
    pub delta: Q,
    pub g: Option<Q>,
    pub g1: Option<Q>,
    pub g2: Option<Q>,
    pub drive: Q,
    pub q: Q,
    pub branch: Branch,
}

impl ModelSpec {
    pub fn new(kind: ModelKind, omega: Q, delta: Q) -> Self {
        let q_default = match kind {
            ModelKind::TwoPhoton => q(1, 4),
            ModelKind::TwoMode => q(1, 2),
            _ => Q::zero(),
        };
        ModelSpec { kind, omega, delta, g: None, g1: None, g2: None, drive: Q::zero(), q: q_default, branch: Branch::Plus }
    }

    pub fn with_g(mut self, g: Q) -> Self {
        self.g = Some(g);
        self
    }

    pub fn with_couplings(mut self, g1: Q, g2: Q) -> Self {
        self.g1 = Some(g1);
        self.g2 = Some(g2);
        self
    }

    pub fn with_drive(mut self, drive: Q) -> Self {
        self.drive = drive;
        self
    }

    pub fn with_q(mut self, q: Q) -> Self {
        self.q = q;
        self
    }

    pub fn with_branch(mut self, branch: Branch) -> Self {
        self.branch = branch;
        self
    }

    fn invalid(msg: &str) -> ModelError {
        ModelError::InvalidParameter(msg.into())
    }

    /// Checks the parameter ranges the model needs.
    pub fn validate(&self) -> Result<(), ModelError> {
        if !self.omega.is_positive() {
            return Err(Self::invalid("ω must be positive"));
        }
        let degenerate = self.kind == ModelKind::GeneralizedRabi && self.branch == Branch::Degenerate;
        if !degenerate && !self.delta.is_positive() {
            return Err(Self::invalid("Δ must be positive"));
        }
        if self.branch == Branch::Degenerate && self.kind != ModelKind::GeneralizedRabi {
            return Err(Self::invalid("the degenerate branch exists only for the generalized Rabi model"));
        }
        match self.kind {
            ModelKind::TwoPhoton => {
                if self.q != q(1, 4) && self.q != q(3, 4) {
                    return Err(Self::invalid("two-photon Bargmann index must be 1/4 or 3/4"));
                }
                if let Some(g) = &self.g {
                    if (g * qi2() / &self.omega).abs() >= Q::one() {
                        return Err(Self::invalid("two-photon coupling needs |2g/ω| < 1"));
                    }
                }
            }
            ModelKind::TwoMode => {
                let twice = &self.q * qi2();
                if !self.q.is_positive() || !twice.is_integer() {
                    return Err(Self::invalid("two-mode Bargmann index must be 1/2, 1, 3/2, …"));
                }
                if let Some(g) = &self.g {
                    if (g / &self.omega).abs() >= Q::one() {
                        return Err(Self::invalid("two-mode coupling needs |g/ω| < 1"));
                    }
                }
            }
            ModelKind::GeneralizedRabi => {
                let (g1, g2) = (self.g1.as_ref(), self.g2.as_ref());
                let (Some(g1), Some(g2)) = (g1, g2) else {
                    return Err(ModelError::MissingParameter("g1/g2"));
                };
                if g1 == g2 {
                    return Err(Self::invalid("g1 = g2 leaves ν undefined"));
                }
                if !(g1 * g2).is_positive() {
                    return Err(Self::invalid("g1·g2 must be positive"));
                }
                if degenerate && g1.abs() >= g2.abs() {
                    return Err(Self::invalid("the degenerate branch ν = −κ needs |g1| < |g2|"));
                }
            }
            _ => {}
        }
        Ok(())
    }

    fn rho(&self) -> Q {
        match (&self.g1, &self.g2) {
            (Some(a), Some(b)) if !b.is_zero() => a / b,
            _ => Q::one(),
        }
    }

    fn mu(&self) -> Q {
        &self.delta / &self.omega
    }

    /// Parameters with the coupling given explicitly (a sweep variable, a
    /// rational value or a float).
    pub fn params_with<F: Field>(&self, coupling: F) -> Params<F> {
        let r = |x: &Q| F::from_rational(x);
        match self.kind {
            ModelKind::GeneralizedRabi => Params {
                omega: F::one(),
                delta: r(&self.mu()),
                coupling,
                drive: F::zero(),
                q: F::zero(),
                rho: r(&self.rho()),
            },
            _ => Params {
                omega: r(&self.omega),
                delta: r(&self.delta),
                coupling,
                drive: r(&self.drive),
                q: r(&self.q),
                rho: F::one(),
            },
        }
    }

    /// Parameters with the coupling as the sweep variable `t`.
    pub fn sweep_params(&self) -> Params<RatFunc<Q>> {
        self.params_with(RatFunc::param(Var::T))
    }

    /// The exact coupling implied by `g` (or `g₁, g₂`): rational for the
    /// Rabi-type models, in general a quadratic surd otherwise.
    pub fn fixed_coupling(&self) -> Result<ParamScalar, ModelError> {
        let g = || self.g.clone().ok_or(ModelError::MissingParameter("g"));
        let w2 = &self.omega * &self.omega;
        Ok(match self.kind {
            ModelKind::TwoPhoton => {
                let g = g()?;
                ParamScalar::sqrt(&(Q::one() - qi4() * &g * &g / &w2))?
            }
            ModelKind::TwoMode => {
                let g = g()?;
                ParamScalar::sqrt(&(Q::one() - &g * &g / &w2))?
            }
            ModelKind::GeneralizedRabi => {
                let g1 = self.g1.clone().ok_or(ModelError::MissingParameter("g1"))?;
                let g2 = self.g2.clone().ok_or(ModelError::MissingParameter("g2"))?;
                ParamScalar::sqrt(&(g1 * g2 / w2))?
            }
            _ => ParamScalar::rational(g()?),
        })
    }

    pub fn fixed_params(&self) -> Result<Params<ParamScalar>, ModelError> {
        self.validate()?;
        let c = self.fixed_coupling()?;
        Ok(self.params_with(c))
    }

    /// Builds the energy-free operator for the given parameters.
    pub fn build<F: Field>(&self, p: &Params<F>) -> OdeOperator<UniPoly<F>> {
        match self.kind {
            ModelKind::Rabi => rabi(&p.omega, &p.delta, &p.coupling),
            ModelKind::DrivenRabi => driven_rabi(&p.omega, &p.delta, &p.coupling, &p.drive, self.branch.sign()),
            ModelKind::TwoPhoton => two_photon(&p.omega, &p.delta, &p.coupling, &p.q),
            ModelKind::TwoMode => two_mode(&p.omega, &p.delta, &p.coupling, &p.q),
            ModelKind::GeneralizedRabi if self.branch == Branch::Degenerate => generalized_rabi_degenerate(&p.coupling, &p.rho).0,
            ModelKind::GeneralizedRabi => generalized_rabi(&p.coupling, &p.delta, &p.rho),
            ModelKind::SchweberForm => schweber(&p.omega, &p.delta, &p.coupling),
            ModelKind::KocForm => koc(&p.omega, &p.delta, &p.coupling),
        }
    }

    /// The physical coupling `g` for a coupling value `t` (for the
    /// generalized model, `κ` itself).
    pub fn physical_coupling(&self, t: f64) -> f64 {
        let w = crate::algebra::OrderedField::to_f64(&self.omega);
        match self.kind {
            ModelKind::TwoPhoton => 0.5 * w * libm::sqrt((1.0 - t * t).max(0.0)),
            ModelKind::TwoMode => w * libm::sqrt((1.0 - t * t).max(0.0)),
            _ => t,
        }
    }

    /// The coupling value corresponding to a physical `g`.
    pub fn coupling_from_g(&self, g: f64) -> f64 {
        let w = crate::algebra::OrderedField::to_f64(&self.omega);
        match self.kind {
            ModelKind::TwoPhoton => libm::sqrt(1.0 - 4.0 * g * g / (w * w)),
            ModelKind::TwoMode => libm::sqrt(1.0 - g * g / (w * w)),
            _ => g,
        }
    }

    /// Default sweep interval for the coupling: `(0, 1)` for `Ω`, `Λ`;
    /// otherwise `(0, 8·max(ω, Δ, 1))`, far beyond every root in practice
    /// (callers that need all roots use the Cauchy bound instead).
    pub fn default_domain(&self) -> (Q, Q) {
        match self.kind {
            ModelKind::TwoPhoton | ModelKind::TwoMode => (Q::zero(), Q::one()),
            _ => {
                let m = [self.omega.clone(), self.delta.clone(), Q::one()].into_iter().max().unwrap();
                (Q::zero(), m * Q::from_integer(8.into()))
            }
        }
    }
}

fn qi2() -> Q {
    Q::from_integer(2.into())
}

fn qi4() -> Q {
    Q::from_integer(4.into())
}
