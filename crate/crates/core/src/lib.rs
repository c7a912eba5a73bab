//! Exact certification of simultaneous rank-2 quadratic twists of pairs of
//! Legendre elliptic curves.
//!
//! The crate is organised bottom-up:
//!
//! * [`symalg`]: rationals, multivariate polynomials and rational functions
//!   over Q, the quadratic extension `u^2 = q(t)`, square-free parts, an
//!   expression parser and integer square-free kernels.
//! * [`eccore`]: Weierstrass, Legendre, twisted and quartic models, the group
//!   law and the quartic-to-Weierstrass birational map.
//! * [`certify`]: exact infinite-order certificates, mod-p torsion bounds,
//!   relation scans and canonical-height regulator evidence.
//! * [`families`]: the two explicit rank-2 pair families, the derivation
//!   pipeline that produces them and the generator of certified twists.

pub mod certify;
pub mod eccore;
pub mod families;
pub mod symalg;

pub use symalg::rat::{IntZ, Rat};

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid rational literal {0:?}")]
    BadRational(String),
    #[error("gcd of two zero polynomials is undefined")]
    ZeroGcd,
    #[error("the zero polynomial has no square-free part")]
    ZeroPolynomial,
    #[error("expected {expected}, found {found}")]
    WrongShape { expected: &'static str, found: String },
    #[error("degenerate fractional linear map (zero determinant)")]
    DegenerateMap,
    #[error("quadratic extension elements use different moduli")]
    ModulusMismatch,
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("curve is singular")]
    Singular,
    #[error("twist parameter must be nonzero")]
    ZeroTwist,
    #[error("lambda must avoid {{0, 1}}")]
    BadLambda,
    #[error("alpha must avoid {{0, 1, -1}}")]
    BadAlpha,
    #[error("alpha = {0} makes the Legendre pair degenerate or isomorphic")]
    ExcludedAlpha(String),
    #[error("Legendre curves are isomorphic (lambda2 lies in the orbit of lambda1)")]
    IsomorphicPair,
    #[error("point lies in the exceptional locus of the birational map: {0}")]
    ExceptionalLocus(String),
    #[error("identity failed: {0}")]
    IdentityFailure(String),
    #[error("fractional linear map does not permute the roots: {0}")]
    NotRootPermuting(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("coordinate size exceeded the digit budget of {0}")]
    DigitBudget(usize),
    #[error("no usable prime of good reduction was supplied")]
    NoGoodPrime,
    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
