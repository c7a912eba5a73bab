//! Arithmetic in `K[u] / (u^2 - q)` where `K` is the rational function field
//! and `q` a fixed non-square polynomial. Elements are `a + b*u`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;


use super::poly::{MPoly, Var};
use super::rat::Rat;
use super::ratfunc::RatFunc;
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct QuadExtElem {
    a: RatFunc,
    b: RatFunc,
    modulus: Arc<MPoly>,
}

impl QuadExtElem {
    pub fn new(a: RatFunc, b: RatFunc, modulus: Arc<MPoly>) -> Self {
        Self { a, b, modulus }
    }

    pub fn from_base(a: RatFunc, modulus: &Arc<MPoly>) -> Self {
        Self::new(a, RatFunc::zero(), modulus.clone())
    }

    /// The generator `u`.
    pub fn generator(modulus: &Arc<MPoly>) -> Self {
        Self::new(RatFunc::zero(), RatFunc::one(), modulus.clone())
    }

    /// Interprets every occurrence of the variable `u` in `r` as the generator.
    pub fn from_ratfunc(r: &RatFunc, modulus: &Arc<MPoly>) -> Result<Self> {
        let num = Self::from_poly_in_u(r.num(), modulus);
        let den = Self::from_poly_in_u(r.den(), modulus);
        num.checked_div(&den)
    }

    fn from_poly_in_u(p: &MPoly, modulus: &Arc<MPoly>) -> Self {
        let mut a = MPoly::zero();
        let mut b = MPoly::zero();
        let mut q_pow = MPoly::one();
        for (k, c) in p.to_univariate(Var::U).iter().enumerate() {
            if k >= 2 && k % 2 == 0 {
                q_pow = &q_pow * modulus.as_ref();
            }
            if c.is_zero() {
                continue;
            }
            let term = c * &q_pow;
            if k % 2 == 0 {
                a = &a + &term;
            } else {
                b = &b + &term;
            }
        }
        Self::new(RatFunc::from_poly(a), RatFunc::from_poly(b), modulus.clone())
    }

    pub fn a(&self) -> &RatFunc {
        &self.a
    }

    pub fn b(&self) -> &RatFunc {
        &self.b
    }

    pub fn modulus(&self) -> &Arc<MPoly> {
        &self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Image under the automorphism `u -> -u`.
    pub fn conjugate(&self) -> Self {
        Self::new(self.a.clone(), -&self.b, self.modulus.clone())
    }

    /// `a^2 - b^2 q`, the product with the conjugate.
    pub fn norm(&self) -> RatFunc {
        let q = RatFunc::from_poly(self.modulus.as_ref().clone());
        &(&self.a * &self.a) - &(&(&self.b * &self.b) * &q)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.modulus, &other.modulus) || self.modulus == other.modulus {
            Ok(())
        } else {
            Err(Error::ModulusMismatch)
        }
    }

    pub fn ext_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self::new(&self.a + &other.a, &self.b + &other.b, self.modulus.clone()))
    }

    pub fn ext_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self::new(&self.a - &other.a, &self.b - &other.b, self.modulus.clone()))
    }

    pub fn ext_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let q = RatFunc::from_poly(self.modulus.as_ref().clone());
        let a = &(&self.a * &other.a) + &(&(&self.b * &other.b) * &q);
        let b = &(&self.a * &other.b) + &(&self.b * &other.a);
        Ok(Self::new(a, b, self.modulus.clone()))
    }

    pub fn ext_eq(&self, other: &Self) -> Result<bool> {
        self.check(other)?;
        Ok(self.a == other.a && self.b == other.b)
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let ninv = n.inv()?;
        Ok(Self::new(&self.a * &ninv, -&(&self.b * &ninv), self.modulus.clone()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.ext_mul(&other.inv()?)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut result = Self::from_base(RatFunc::one(), &self.modulus);
        for _ in 0..n {
            result = &result * self;
        }
        result
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        Self::new(&self.a * c, &self.b * c, self.modulus.clone())
    }

    /// Substitutes rationals for the base variables, with `u_value^2 = q` checked.
    pub fn eval(&self, assignment: &[(Var, Rat)], u_value: &Rat) -> Result<Rat> {
        let q = self.modulus.eval_vars(assignment).constant_value().ok_or_else(|| Error::WrongShape {
            expected: "fully specialised modulus",
            found: self.modulus.to_string(),
        })?;
        if (u_value * u_value) != q {
            return Err(Error::NotOnCurve);
        }
        let a = self.a.eval_rat(assignment)?;
        let b = self.b.eval_rat(assignment)?;
        Ok(a + b * u_value)
    }

    /// Specialises base variables to rationals, keeping `u` symbolic.
    pub fn specialize(&self, assignment: &[(Var, Rat)]) -> Result<Self> {
        let modulus = Arc::new(self.modulus.eval_vars(assignment));
        Ok(Self::new(self.a.eval_vars(assignment)?, self.b.eval_vars(assignment)?, modulus))
    }
}

impl Add<&QuadExtElem> for &QuadExtElem {
    type Output = QuadExtElem;
    fn add(self, rhs: &QuadExtElem) -> QuadExtElem {
        self.ext_add(rhs).expect("matching moduli")
    }
}

impl Sub<&QuadExtElem> for &QuadExtElem {
    type Output = QuadExtElem;
    fn sub(self, rhs: &QuadExtElem) -> QuadExtElem {
        self.ext_sub(rhs).expect("matching moduli")
    }
}

impl Mul<&QuadExtElem> for &QuadExtElem {
    type Output = QuadExtElem;
    fn mul(self, rhs: &QuadExtElem) -> QuadExtElem {
        self.ext_mul(rhs).expect("matching moduli")
    }
}

impl Neg for &QuadExtElem {
    type Output = QuadExtElem;
    fn neg(self) -> QuadExtElem {
        QuadExtElem::new(-&self.a, -&self.b, self.modulus.clone())
    }
}

impl fmt::Display for QuadExtElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ({})*u", self.a, self.b)
    }
}

impl fmt::Debug for QuadExtElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuadExtElem[{}; u^2 = {}]", self, self.modulus)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symalg::parse::{parse_expr, parse_poly};

    fn q_alpha() -> Arc<MPoly> {
        Arc::new(parse_poly("α^2*t^4 - (α^2+1)^2*t^2 + 4*α^2").unwrap())
    }

    fn e(s: &str, q: &Arc<MPoly>) -> QuadExtElem {
        QuadExtElem::from_ratfunc(&parse_expr(s).unwrap(), q).unwrap()
    }

    #[test]
    fn defining_relation() {
        let q = q_alpha();
        let u = QuadExtElem::generator(&q);
        let uu = &u * &u;
        assert_eq!(uu.a(), &RatFunc::from_poly(q.as_ref().clone()));
        assert!(uu.b().is_zero());
        let p = &(&e("1", &q) + &u) * &(&e("1", &q) - &u);
        assert_eq!(p, e("1", &q).ext_sub(&QuadExtElem::from_base(RatFunc::from_poly(q.as_ref().clone()), &q)).unwrap());
        let u4 = u.pow(4);
        assert_eq!(u4.a(), &RatFunc::from_poly(q.as_ref() * q.as_ref()));
    }

    #[test]
    fn inverse_and_parsing_agree() {
        let q = q_alpha();
        let x = e("(t^4+4)*(α^2+1)^2/(4*u^2)", &q);
        assert!(x.b().is_zero());
        let y = e("(t^2-2)/(8*t^3*(α^2-1)*u)", &q);
        assert!(y.a().is_zero());
        let w = e("(1 + t*u)/(2 - u)", &q);
        let back = &w * &e("2 - u", &q);
        assert_eq!(back, e("1 + t*u", &q));
    }

    #[test]
    fn modulus_mismatch_is_reported() {
        let q1 = q_alpha();
        let q2 = Arc::new(parse_poly("t^3 + 1").unwrap());
        let a = QuadExtElem::generator(&q1);
        let b = QuadExtElem::generator(&q2);
        assert_eq!(a.ext_mul(&b), Err(Error::ModulusMismatch));
        assert_eq!(a.ext_eq(&b), Err(Error::ModulusMismatch));
    }
}
