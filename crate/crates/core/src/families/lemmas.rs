//! The pair criterion `(f2 o h2) / (f1 o h1) = M^2` and the degree-6 twist of
//! an arbitrary non-isomorphic Legendre pair.

use num_traits::One;

use crate::eccore::{genus_bound, LegendreCurve};
use crate::symalg::poly::{MPoly, Var};
use crate::symalg::ratfunc::{compose_poly, RatFunc};
use crate::symalg::rat::Rat;
use crate::symalg::sqfree::squarefree_part;
use crate::{Error, Result};

fn check_cubic(f: &MPoly) -> Result<()> {
    if f.degree(Var::X) != 3 {
        return Err(Error::WrongShape { expected: "a cubic in x", found: f.to_string() });
    }
    if squarefree_part(f, Var::X)?.root.contains_var(Var::X) {
        return Err(Error::Degenerate(format!("{f} has a repeated root")));
    }
    Ok(())
}

/// Whether `f2(h2) / f1(h1) = M^2` holds exactly, with `f_i` cubics in `x` and
/// `h_i` arbitrary non-constant rational functions substituted for `x`.
pub fn lemma31_pair_criterion(f1: &MPoly, f2: &MPoly, h1: &RatFunc, h2: &RatFunc, m: &RatFunc) -> Result<bool> {
    check_cubic(f1)?;
    check_cubic(f2)?;
    for h in [h1, h2] {
        if h.as_constant().is_some() {
            return Err(Error::DegenerateMap);
        }
    }
    let lhs = compose_poly(f2, Var::X, h2)?;
    let rhs = &(m * m) * &compose_poly(f1, Var::X, h1)?;
    Ok(lhs == rhs)
}

/// `x(x - 1)(x - lambda)` as a polynomial in `x`.
pub fn legendre_cubic(lambda: &Rat) -> MPoly {
    let x = MPoly::var(Var::X);
    &(&x * &(&x - &MPoly::one())) * &(&x - &MPoly::constant(lambda.clone()))
}

/// `x(x - 1)(x - lambda)` at a rational function `x`.
pub fn legendre_eval(lambda: &RatFunc, x: &RatFunc) -> RatFunc {
    &(x * &(x - &RatFunc::one())) * &(x - lambda)
}

/// Lemma data for a Legendre pair: the sextic `g(u)` and the points
/// `P_i = (x(u), y_i(u))` on `E_i^g` over `Q(u)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PairTwist {
    pub lambda1: Rat,
    pub lambda2: Rat,
    pub g: MPoly,
    /// `x(u) = (lambda1 u^2 - lambda2) / (u^2 - 1)`, the common abscissa.
    pub x: RatFunc,
    pub y1: RatFunc,
    pub y2: RatFunc,
    pub genus_bound: u32,
}

impl PairTwist {
    /// `g y_i^2 - f_i(x)` for `i = 1, 2`.
    pub fn residuals(&self) -> Result<[RatFunc; 2]> {
        let g = RatFunc::from_poly(self.g.clone());
        let mut out = [RatFunc::one(), RatFunc::one()];
        for (k, (lambda, y)) in [(&self.lambda1, &self.y1), (&self.lambda2, &self.y2)].into_iter().enumerate() {
            let f = legendre_cubic(lambda);
            out[k] = &(&g * &(y * y)) - &compose_poly(&f, Var::X, &self.x)?;
        }
        Ok(out)
    }
}

/// Builds and verifies `g(u) = (l1 - l2)(u^2 - 1)(1 - l2 + (l1 - 1) u^2)(l1 u^2 - l2)`
/// with its two points.
pub fn lemma41_construct(lambda1: &Rat, lambda2: &Rat) -> Result<PairTwist> {
    let e1 = LegendreCurve::new(lambda1.clone())?;
    let e2 = LegendreCurve::new(lambda2.clone())?;
    if e1.is_isomorphic_to(&e2) {
        return Err(Error::IsomorphicPair);
    }
    let c = |r: &Rat| MPoly::constant(r.clone());
    let u = MPoly::var(Var::U);
    let u2 = &u * &u;
    let one = MPoly::one();
    let g = &(&(&c(&(lambda1 - lambda2)) * &(&u2 - &one))
        * &(&(&one - &c(lambda2)) + &(&c(&(lambda1 - Rat::one())) * &u2)))
        * &(&(&c(lambda1) * &u2) - &c(lambda2));
    let den = RatFunc::from_poly(&u2 - &one);
    let x = RatFunc::new(&(&c(lambda1) * &u2) - &c(lambda2), &u2 - &one)?;
    let y1 = (&den * &den).inv()?;
    let y2 = &RatFunc::var(Var::U) * &y1;
    let genus_bound = genus_bound(&g, Var::U)?;
    let out = PairTwist { lambda1: lambda1.clone(), lambda2: lambda2.clone(), g, x, y1, y2, genus_bound };
    for (i, r) in out.residuals()?.iter().enumerate() {
        if !r.is_zero() {
            return Err(Error::IdentityFailure(format!("P{} is not on E{}^g: residual {r}", i + 1, i + 1)));
        }
    }
    Ok(out)
}
