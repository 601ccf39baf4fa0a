//! Exact-integer workbench for integral binary quartic and cubic forms.
//!
//! The crate implements the computational objects behind the arithmetic
//! statistics of binary quartic forms: the invariants I and J, GL2(Z)
//! reduction and class enumeration, p-adic splitting types and maximality
//! densities, the class-group 2-torsion correspondence for monogenized
//! cubic fields, and the 2-Selmer pipeline for elliptic curves.
//!
//! All arithmetic is exact. Coefficients and invariants are `i128`
//! (overflow checks stay on in every build profile); the handful of
//! invariant computations that could conceivably overflow widen to
//! `BigInt` internally and assert the result fits on the way back.

pub mod cache;
pub mod classgroup;
pub mod embed;
pub mod enumeration;
pub mod forms;
pub mod local;
pub mod reduction;
pub mod roots;
pub mod selmer;
pub mod zint;

pub use forms::{
    CubicForm, InvariantPair, QuarticForm, QuarticFormQ, RationalMap, RootType, UnimodularMap,
};

/// Errors surfaced by fallible operations.
///
/// Internal consistency violations (e.g. 27 failing to divide 4I^3 - J^2 for
/// an integral form) panic instead: they indicate a bug, not bad input.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("discriminant is zero")]
    ZeroDiscriminant,
    #[error("form is reducible over Q")]
    Reducible,
    #[error("invariant pair ({0}, {1}) is not eligible")]
    NotEligible(zint::Z, zint::Z),
    #[error("form vanishes mod {0}")]
    ZeroModP(zint::Z),
    #[error("prime {0} exceeds the exhaustive-enumeration budget for {1}")]
    BudgetExceeded(zint::Z, &'static str),
    #[error("Qp-solubility search undecided at depth bound {0} (p = {1})")]
    SolubilityUndecided(u32, zint::Z),
    #[error("guaranteed invariant reduction at p = {0} could not be realized")]
    MinimizationFailed(zint::Z),
    #[error("curve is non-rigid (I = 0 or J = 0)")]
    NonRigidCurve,
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("cubic for ({0}, {1}) is {2}, class-group counts need an irreducible maximal cubic")]
    BadClassGroupFiber(zint::Z, zint::Z, &'static str),
    #[error("delta must satisfy 0 < delta <= 1/4")]
    BadDelta,
    #[error("cache error: {0}")]
    Cache(String),
}
