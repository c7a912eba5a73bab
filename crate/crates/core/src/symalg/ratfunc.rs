//! Rational functions over Q in canonical reduced form.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::gcd::gcd;
use super::poly::{MPoly, Var};
use super::rat::Rat;
use crate::{Error, Result};

/// `num / den` with `gcd(num, den) = 1` and the lexicographically leading
/// coefficient of `den` equal to 1. Zero is `0 / 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: MPoly,
    den: MPoly,
}

impl RatFunc {
    pub fn new(num: MPoly, den: MPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: MPoly, den: MPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if let Some(c) = den.constant_value() {
            return Self::normalized(num.scale(&c.recip()), MPoly::one());
        }
        let g = gcd(&num, &den);
        if g.is_one() {
            Self::normalized(num, den)
        } else {
            Self::normalized(num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        }
    }

    /// Rescales an already coprime pair so the denominator's leading coefficient is 1.
    fn normalized(num: MPoly, den: MPoly) -> Self {
        let l = den.lead_rat();
        if l.is_one() {
            Self { num, den }
        } else {
            let inv = l.recip();
            Self { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn zero() -> Self {
        Self { num: MPoly::zero(), den: MPoly::one() }
    }

    pub fn one() -> Self {
        Self::from_poly(MPoly::one())
    }

    pub fn from_poly(p: MPoly) -> Self {
        Self { num: p, den: MPoly::one() }
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_poly(MPoly::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_poly(MPoly::from_int(n))
    }

    pub fn var(v: Var) -> Self {
        Self::from_poly(MPoly::var(v))
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_poly(&self) -> Option<&MPoly> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn as_constant(&self) -> Option<Rat> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn vars(&self) -> Vec<Var> {
        Var::ALL
            .into_iter()
            .filter(|&v| self.num.contains_var(v) || self.den.contains_var(v))
            .collect()
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.num.contains_var(v) || self.den.contains_var(v)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, n: i32) -> Result<Self> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let k = n.unsigned_abs();
        Ok(Self::normalized(base.num.pow(k), base.den.pow(k)))
    }

    /// Substitutes a rational for `v`; fails when the denominator vanishes.
    pub fn eval_var(&self, v: Var, value: &Rat) -> Result<Self> {
        Self::new(self.num.eval_var(v, value), self.den.eval_var(v, value))
    }

    pub fn eval_vars(&self, assignment: &[(Var, Rat)]) -> Result<Self> {
        Self::new(self.num.eval_vars(assignment), self.den.eval_vars(assignment))
    }

    /// Evaluates to a rational; every variable present must be assigned.
    pub fn eval_rat(&self, assignment: &[(Var, Rat)]) -> Result<Rat> {
        let r = self.eval_vars(assignment)?;
        r.as_constant().ok_or_else(|| Error::WrongShape {
            expected: "a constant after substitution",
            found: r.to_string(),
        })
    }

    /// Substitutes the rational function `value` for `v`.
    pub fn substitute(&self, v: Var, value: &RatFunc) -> Result<Self> {
        let n = compose_poly(&self.num, v, value)?;
        let d = compose_poly(&self.den, v, value)?;
        n.checked_div(&d)
    }

    pub fn derivative(&self, v: Var) -> Self {
        let n = &(&self.num.derivative(v) * &self.den) - &(&self.num * &self.den.derivative(v));
        Self::reduce(n, &self.den * &self.den)
    }

    fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return Self::from_poly(&self.num * &other.num);
        }
        let g1 = gcd(&self.num, &other.den);
        let g2 = gcd(&other.num, &self.den);
        let a = self.num.div_exact(&g1).unwrap();
        let d = other.den.div_exact(&g1).unwrap();
        let c = other.num.div_exact(&g2).unwrap();
        let b = self.den.div_exact(&g2).unwrap();
        Self::normalized(&a * &c, &b * &d)
    }

    fn add_ref(&self, other: &Self, negate: bool) -> Self {
        let c = if negate { -&other.num } else { other.num.clone() };
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return Self { num: c, den: other.den.clone() };
        }
        if self.den == other.den {
            return Self::reduce(&self.num + &c, self.den.clone());
        }
        if self.den.is_one() {
            return Self::normalized(&(&self.num * &other.den) + &c, other.den.clone());
        }
        if other.den.is_one() {
            return Self::normalized(&self.num + &(&c * &self.den), self.den.clone());
        }
        let g = gcd(&self.den, &other.den);
        let b1 = self.den.div_exact(&g).unwrap();
        let d1 = other.den.div_exact(&g).unwrap();
        let num = &(&self.num * &d1) + &(&c * &b1);
        if num.is_zero() {
            return Self::zero();
        }
        let den = &self.den * &d1;
        if g.is_one() {
            return Self::normalized(num, den);
        }
        // Only factors of g can cancel.
        let g2 = gcd(&num, &g);
        if g2.is_one() {
            Self::normalized(num, den)
        } else {
            Self::normalized(num.div_exact(&g2).unwrap(), den.div_exact(&g2).unwrap())
        }
    }
}

/// `p(value)` for a polynomial `p` in `v`, computed by homogenising over the
/// denominator of `value`.
pub fn compose_poly(p: &MPoly, v: Var, value: &RatFunc) -> Result<RatFunc> {
    if !p.contains_var(v) {
        return Ok(RatFunc::from_poly(p.clone()));
    }
    let coeffs = p.to_univariate(v);
    let n = coeffs.len() - 1;
    let (a, b) = (&value.num, &value.den);
    // sum_k c_k a^k b^(n-k) / b^n
    let mut a_pows = vec![MPoly::one()];
    let mut b_pows = vec![MPoly::one()];
    for _ in 0..n {
        a_pows.push(a_pows.last().unwrap() * a);
        b_pows.push(b_pows.last().unwrap() * b);
    }
    let mut num = MPoly::zero();
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        num = &num + &(&(c * &a_pows[k]) * &b_pows[n - k]);
    }
    RatFunc::new(num, b_pows[n].clone())
}

impl Add<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        self.add_ref(rhs, false)
    }
}

impl Sub<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self.add_ref(rhs, true)
    }
}

impl Mul<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        self.mul_ref(rhs)
    }
}

/// Panics on division by zero, like integer division; see [`RatFunc::checked_div`].
impl Div<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self.checked_div(rhs).expect("rational function division by zero")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: &RatFunc) -> RatFunc {
                (&self).$m(rhs)
            }
        }
        impl $tr<RatFunc> for &RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc::one()
    }
}

impl From<MPoly> for RatFunc {
    fn from(p: MPoly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl From<Rat> for RatFunc {
    fn from(c: Rat) -> Self {
        RatFunc::constant(c)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({})", self)
    }
}
