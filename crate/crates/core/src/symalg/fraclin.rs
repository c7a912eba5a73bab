//! Fractional linear maps `t -> (a t + b) / (c t + d)` with coefficients in a
//! rational function field.

use std::fmt;


use super::poly::{MPoly, Var};
use super::ratfunc::{compose_poly, RatFunc};
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct FracLinMap {
    pub a: RatFunc,
    pub b: RatFunc,
    pub c: RatFunc,
    pub d: RatFunc,
    /// The variable the map acts on.
    pub var: Var,
}

impl FracLinMap {
    pub fn new(a: RatFunc, b: RatFunc, c: RatFunc, d: RatFunc, var: Var) -> Result<Self> {
        let m = Self { a, b, c, d, var };
        if m.determinant().is_zero() {
            return Err(Error::DegenerateMap);
        }
        Ok(m)
    }

    pub fn identity(var: Var) -> Self {
        Self { a: RatFunc::one(), b: RatFunc::zero(), c: RatFunc::zero(), d: RatFunc::one(), var }
    }

    /// Reads the coefficients off a rational function of degree at most one in `var`.
    pub fn from_ratfunc(r: &RatFunc, var: Var) -> Result<Self> {
        let num = r.num().to_univariate(var);
        let den = r.den().to_univariate(var);
        if num.len() > 2 || den.len() > 2 {
            return Err(Error::WrongShape { expected: "a fractional linear map", found: r.to_string() });
        }
        let coeff = |v: &Vec<MPoly>, k: usize| RatFunc::from_poly(v.get(k).cloned().unwrap_or_default());
        Self::new(coeff(&num, 1), coeff(&num, 0), coeff(&den, 1), coeff(&den, 0), var)
    }

    pub fn determinant(&self) -> RatFunc {
        &(&self.a * &self.d) - &(&self.b * &self.c)
    }

    pub fn as_ratfunc(&self) -> RatFunc {
        let t = RatFunc::var(self.var);
        let num = &(&self.a * &t) + &self.b;
        let den = &(&self.c * &t) + &self.d;
        &num / &den
    }

    /// Image of a point; `None` for the pole.
    pub fn apply(&self, value: &RatFunc) -> Option<RatFunc> {
        let num = &(&self.a * value) + &self.b;
        let den = &(&self.c * value) + &self.d;
        num.checked_div(&den).ok()
    }

    /// True when the map sends the given set of points onto itself.
    pub fn permutes(&self, points: &[RatFunc]) -> bool {
        points.iter().all(|p| match self.apply(p) {
            Some(img) => points.contains(&img),
            None => false,
        })
    }

    /// The form `(alpha0 t + beta) / (t + delta)` when `c != 0`.
    pub fn normalized(&self) -> Option<(RatFunc, RatFunc, RatFunc)> {
        if self.c.is_zero() {
            return None;
        }
        let cinv = self.c.inv().ok()?;
        Some((&self.a * &cinv, &self.b * &cinv, &self.d * &cinv))
    }
}

/// `f(h(t))` as a reduced rational function.
pub fn compose_fraclin(f: &MPoly, h: &FracLinMap) -> Result<RatFunc> {
    if h.determinant().is_zero() {
        return Err(Error::DegenerateMap);
    }
    compose_poly(f, h.var, &h.as_ratfunc())
}

impl fmt::Display for FracLinMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.var, self.as_ratfunc())
    }
}

impl fmt::Debug for FracLinMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FracLinMap({})", self)
    }
}
