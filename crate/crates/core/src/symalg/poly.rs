//! Sparse multivariate polynomials over Q in a fixed set of named variables.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rat::{rat_int, Rat};

/// The variables that may appear in expressions.
///
/// The declaration order is the lexicographic monomial order (`x` most
/// significant), which also decides the leading term used for
/// normalisation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    X,
    Z,
    BigT,
    T,
    U,
    Alpha,
}

pub const NVARS: usize = 6;

pub type Exponents = [u32; NVARS];

impl Var {
    pub const ALL: [Var; NVARS] = [Var::X, Var::Z, Var::BigT, Var::T, Var::U, Var::Alpha];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Z => "z",
            Var::BigT => "T",
            Var::T => "t",
            Var::U => "u",
            Var::Alpha => "α",
        }
    }

    pub fn from_name(s: &str) -> Option<Var> {
        Some(match s {
            "x" => Var::X,
            "z" => Var::Z,
            "T" => Var::BigT,
            "t" => Var::T,
            "u" => Var::U,
            "α" | "alpha" => Var::Alpha,
            _ => return None,
        })
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn unit_exponents(v: Var, k: u32) -> Exponents {
    let mut e = [0; NVARS];
    e[v.index()] = k;
    e
}

fn add_exponents(a: &Exponents, b: &Exponents) -> Exponents {
    let mut e = *a;
    for (x, y) in e.iter_mut().zip(b) {
        *x += y;
    }
    e
}

fn divides(a: &Exponents, b: &Exponents) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// A polynomial with rational coefficients; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MPoly {
    terms: BTreeMap<Exponents, Rat>,
}

impl MPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = Self::zero();
        p.add_term([0; NVARS], c);
        p
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(rat_int(n))
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(unit_exponents(v, 1), Rat::one())
    }

    pub fn monomial(e: Exponents, c: Rat) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c);
        p
    }

    /// Univariate polynomial from coefficients, lowest degree first.
    pub fn from_coeffs(v: Var, coeffs: &[Rat]) -> Self {
        let mut p = Self::zero();
        for (k, c) in coeffs.iter().enumerate() {
            p.add_term(unit_exponents(v, k as u32), c.clone());
        }
        p
    }

    pub(crate) fn add_term(&mut self, e: Exponents, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponents, &Rat)> {
        self.terms.iter()
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&k| k == 0))
    }

    /// The value of a constant polynomial (zero included).
    pub fn constant_value(&self) -> Option<Rat> {
        if self.is_zero() {
            return Some(Rat::zero());
        }
        if self.is_constant() {
            return self.terms.values().next().cloned();
        }
        None
    }

    /// Coefficient of the monomial `1`.
    pub fn constant_term(&self) -> Rat {
        self.terms.get(&[0; NVARS]).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn degree(&self, v: Var) -> u32 {
        self.terms.keys().map(|e| e[v.index()]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.terms.keys().any(|e| e[v.index()] > 0)
    }

    /// The variables that actually occur, in the canonical order.
    pub fn vars(&self) -> Vec<Var> {
        Var::ALL.into_iter().filter(|&v| self.contains_var(v)).collect()
    }

    /// Lexicographically leading term.
    pub fn lead(&self) -> Option<(&Exponents, &Rat)> {
        self.terms.last_key_value()
    }

    /// Rational coefficient of the lexicographically leading term (zero for the zero polynomial).
    pub fn lead_rat(&self) -> Rat {
        self.lead().map(|(_, c)| c.clone()).unwrap_or_else(Rat::zero)
    }

    /// Scales so that the leading rational coefficient is 1.
    pub fn monic(&self) -> MPoly {
        match self.lead() {
            None => MPoly::zero(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    pub fn scale(&self, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(e, k)| (*e, k * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> MPoly {
        let mut result = MPoly::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn derivative(&self, v: Var) -> MPoly {
        let i = v.index();
        let mut out = MPoly::zero();
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut e2 = *e;
                e2[i] -= 1;
                out.add_term(e2, c * rat_int(e[i] as i64));
            }
        }
        out
    }

    /// Coefficients in `v`, lowest degree first; each coefficient is free of `v`.
    pub fn to_univariate(&self, v: Var) -> Vec<MPoly> {
        let i = v.index();
        let mut out = vec![MPoly::zero(); self.degree(v) as usize + 1];
        for (e, c) in &self.terms {
            let mut e2 = *e;
            e2[i] = 0;
            out[e[i] as usize].add_term(e2, c.clone());
        }
        if self.is_zero() {
            out.clear();
        }
        out
    }

    pub fn from_univariate(v: Var, coeffs: &[MPoly]) -> MPoly {
        let mut out = MPoly::zero();
        for (k, c) in coeffs.iter().enumerate() {
            for (e, r) in &c.terms {
                let mut e2 = *e;
                e2[v.index()] += k as u32;
                out.add_term(e2, r.clone());
            }
        }
        out
    }

    /// Leading coefficient in `v` (a polynomial free of `v`).
    pub fn lead_coeff_in(&self, v: Var) -> MPoly {
        self.to_univariate(v).pop().unwrap_or_default()
    }

    /// Substitutes the rational `value` for `v`.
    pub fn eval_var(&self, v: Var, value: &Rat) -> MPoly {
        let i = v.index();
        let mut powers: Vec<Rat> = vec![Rat::one()];
        let mut out = MPoly::zero();
        for (e, c) in &self.terms {
            let k = e[i] as usize;
            while powers.len() <= k {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            let mut e2 = *e;
            e2[i] = 0;
            out.add_term(e2, c * &powers[k]);
        }
        out
    }

    /// Substitutes several rational values at once.
    pub fn eval_vars(&self, assignment: &[(Var, Rat)]) -> MPoly {
        assignment.iter().fold(self.clone(), |p, (v, r)| p.eval_var(*v, r))
    }

    /// Substitutes the polynomial `value` for `v`.
    pub fn substitute(&self, v: Var, value: &MPoly) -> MPoly {
        let coeffs = self.to_univariate(v);
        let mut acc = MPoly::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * value) + c;
        }
        acc
    }

    /// Componentwise minimum of the exponent vectors (the largest monomial dividing `self`).
    pub fn monomial_content(&self) -> Exponents {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return [0; NVARS];
        };
        let mut m = *first;
        for e in it {
            for (a, b) in m.iter_mut().zip(e) {
                *a = (*a).min(*b);
            }
        }
        m
    }

    pub fn div_monomial(&self, m: &Exponents) -> MPoly {
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e2 = *e;
                    for (a, b) in e2.iter_mut().zip(m) {
                        *a -= b;
                    }
                    (e2, c.clone())
                })
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Exponents) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(e, c)| (add_exponents(e, m), c.clone())).collect(),
        }
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &MPoly) -> Option<MPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(MPoly::zero());
        }
        if let Some(c) = d.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        let mut bound = [0u32; NVARS];
        for v in Var::ALL {
            let (ds, dd) = (self.degree(v), d.degree(v));
            if dd > ds {
                return None;
            }
            bound[v.index()] = ds - dd;
        }
        let (d_lead_e, d_lead_c) = d.lead().map(|(e, c)| (*e, c.clone())).unwrap();
        let mut rem = self.clone();
        let mut quot = MPoly::zero();
        while let Some((re, rc)) = rem.lead().map(|(e, c)| (*e, c.clone())) {
            if !divides(&d_lead_e, &re) {
                return None;
            }
            let mut qe = re;
            for (a, b) in qe.iter_mut().zip(&d_lead_e) {
                *a -= b;
            }
            if qe.iter().zip(&bound).any(|(a, b)| a > b) {
                return None;
            }
            let qc = rc / &d_lead_c;
            for (de, dc) in &d.terms {
                rem.add_term(add_exponents(&qe, de), -(dc * &qc));
            }
            quot.add_term(qe, qc);
        }
        Some(quot)
    }

    /// Evaluates a polynomial in which only `v` may occur.
    pub fn eval_univariate(&self, v: Var, value: &Rat) -> Rat {
        self.eval_var(v, value).constant_term()
    }

    /// Dense rational coefficients of a univariate polynomial (lowest first), or `None`
    /// if other variables occur.
    pub fn univariate_coeffs(&self, v: Var) -> Option<Vec<Rat>> {
        self.to_univariate(v).into_iter().map(|c| c.constant_value()).collect()
    }

    fn mul_ref(&self, other: &MPoly) -> MPoly {
        if self.is_zero() || other.is_zero() {
            return MPoly::zero();
        }
        if let Some(c) = self.constant_value() {
            return other.scale(&c);
        }
        if let Some(c) = other.constant_value() {
            return self.scale(&c);
        }
        let mut out = MPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(add_exponents(e1, e2), c1 * c2);
            }
        }
        out
    }

    fn add_ref(&self, other: &MPoly, negate: bool) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, if negate { -c.clone() } else { c.clone() });
        }
        out
    }
}

impl Add<&MPoly> for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        self.add_ref(rhs, false)
    }
}

impl Sub<&MPoly> for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        self.add_ref(rhs, true)
    }
}

impl Mul<&MPoly> for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        self.mul_ref(rhs)
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(&-Rat::one())
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<MPoly> for MPoly {
            type Output = MPoly;
            fn $m(self, rhs: MPoly) -> MPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&MPoly> for MPoly {
            type Output = MPoly;
            fn $m(self, rhs: &MPoly) -> MPoly {
                (&self).$m(rhs)
            }
        }
        impl $tr<MPoly> for &MPoly {
            type Output = MPoly;
            fn $m(self, rhs: MPoly) -> MPoly {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

fn write_monomial(f: &mut fmt::Formatter<'_>, e: &Exponents) -> fmt::Result {
    let mut first = true;
    for v in Var::ALL {
        let k = e[v.index()];
        if k == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        if k == 1 {
            write!(f, "{}", v)?;
        } else {
            write!(f, "{}^{}", v, k)?;
        }
    }
    Ok(())
}

/// Renders in the grammar accepted by [`super::parse::parse_expr`], leading term first.
impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let is_unit_monomial = e.iter().all(|&k| k == 0);
            if is_unit_monomial {
                write!(f, "{}", mag)?;
            } else {
                if !mag.is_one() {
                    write!(f, "{}*", mag)?;
                }
                write_monomial(f, e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly({})", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symalg::rat::rat;

    fn x() -> MPoly {
        MPoly::var(Var::X)
    }

    fn t() -> MPoly {
        MPoly::var(Var::T)
    }

    #[test]
    fn expansion_and_degrees() {
        let one = MPoly::one();
        let p = &(&x() * &(&x() - &one)) * &(&x() - &MPoly::from_int(2));
        assert_eq!(p.to_string(), "x^3 - 3*x^2 + 2*x");
        assert_eq!(p.degree(Var::X), 3);
        assert_eq!(p.vars(), vec![Var::X]);
        assert_eq!(p.derivative(Var::X).to_string(), "3*x^2 - 6*x + 2");
    }

    #[test]
    fn exact_division() {
        let a = &x() + &t();
        let b = &x() - &t().scale(&rat(1, 2));
        let p = &a * &b;
        assert_eq!(p.div_exact(&a), Some(b.clone()));
        assert_eq!(p.div_exact(&b), Some(a.clone()));
        assert_eq!(p.div_exact(&(&x() + &MPoly::one())), None);
        assert_eq!(MPoly::zero().div_exact(&a), Some(MPoly::zero()));
    }

    #[test]
    fn substitution_and_evaluation() {
        let p = &t().pow(2) - &MPoly::one();
        let q = p.substitute(Var::T, &(&x() + &MPoly::one()));
        assert_eq!(q.to_string(), "x^2 + 2*x");
        assert_eq!(p.eval_univariate(Var::T, &rat(3, 2)), rat(5, 4));
    }

    #[test]
    fn univariate_views_round_trip() {
        let p = &(&x().pow(2) * &t()) + &(&t().pow(3) - &x());
        let cs = p.to_univariate(Var::X);
        assert_eq!(cs.len(), 3);
        assert_eq!(MPoly::from_univariate(Var::X, &cs), p);
        assert_eq!(p.lead_coeff_in(Var::X), t());
    }
}
