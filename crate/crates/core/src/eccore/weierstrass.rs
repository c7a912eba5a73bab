//! Long Weierstrass curves `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6` and
//! the chord-tangent group law.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::symalg::rat::{parse_rat, rat_sqrt_exact, rat_to_string, Rat};
use crate::symalg::Field;
use crate::{Error, Result};

/// A point of a curve: the identity at infinity or an affine pair.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Point<F = Rat> {
    Infinity,
    Affine(F, F),
}

pub type ProjPoint = Point<Rat>;
pub type AffinePoint = (Rat, Rat);

impl<F> Point<F> {
    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }

    pub fn x(&self) -> Option<&F> {
        match self {
            Point::Affine(x, _) => Some(x),
            Point::Infinity => None,
        }
    }

    pub fn y(&self) -> Option<&F> {
        match self {
            Point::Affine(_, y) => Some(y),
            Point::Infinity => None,
        }
    }
}

impl<F: fmt::Display> fmt::Display for Point<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Infinity => write!(f, "O"),
            Point::Affine(x, y) => write!(f, "({x}, {y})"),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum PointRepr {
    Affine { x: String, y: String },
    Infinity(String),
}

impl Serialize for Point<Rat> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Point::Infinity => PointRepr::Infinity("infinity".into()),
            Point::Affine(x, y) => PointRepr::Affine { x: rat_to_string(x), y: rat_to_string(y) },
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Point<Rat> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        match PointRepr::deserialize(d)? {
            PointRepr::Infinity(tag) if tag == "infinity" => Ok(Point::Infinity),
            PointRepr::Infinity(tag) => Err(D::Error::custom(format!("unknown point tag {tag:?}"))),
            PointRepr::Affine { x, y } => Ok(Point::Affine(
                parse_rat(&x).map_err(D::Error::custom)?,
                parse_rat(&y).map_err(D::Error::custom)?,
            )),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct WeierstrassCurve<F = Rat> {
    pub a1: F,
    pub a2: F,
    pub a3: F,
    pub a4: F,
    pub a6: F,
}

impl<F: Field> WeierstrassCurve<F> {
    pub fn new(a1: F, a2: F, a3: F, a4: F, a6: F) -> Result<Self> {
        let c = Self { a1, a2, a3, a4, a6 };
        if c.discriminant().is_zero() {
            return Err(Error::Singular);
        }
        Ok(c)
    }

    /// `y^2 = x^3 + A x + B`.
    pub fn short(a: F, b: F) -> Result<Self> {
        Self::new(F::zero(), F::zero(), F::zero(), a, b)
    }

    pub fn is_short(&self) -> bool {
        self.a1.is_zero() && self.a2.is_zero() && self.a3.is_zero()
    }

    pub fn b_invariants(&self) -> [F; 4] {
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        let four = F::from_i64(4);
        let b2 = a1.clone() * a1.clone() + four.clone() * a2.clone();
        let b4 = F::from_i64(2) * a4.clone() + a1.clone() * a3.clone();
        let b6 = a3.clone() * a3.clone() + four.clone() * a6.clone();
        let b8 = a1.clone() * a1.clone() * a6.clone() + four * a2.clone() * a6.clone()
            - a1.clone() * a3.clone() * a4.clone()
            + a2.clone() * a3.clone() * a3.clone()
            - a4.clone() * a4.clone();
        [b2, b4, b6, b8]
    }

    pub fn c4_c6(&self) -> (F, F) {
        let [b2, b4, b6, _] = self.b_invariants();
        let c4 = b2.clone() * b2.clone() - F::from_i64(24) * b4.clone();
        let c6 = -(b2.clone() * b2.clone() * b2.clone()) + F::from_i64(36) * b2 * b4 - F::from_i64(216) * b6;
        (c4, c6)
    }

    pub fn discriminant(&self) -> F {
        let [b2, b4, b6, b8] = self.b_invariants();
        -(b2.clone() * b2.clone() * b8) - F::from_i64(8) * b4.clone() * b4.clone() * b4.clone()
            - F::from_i64(27) * b6.clone() * b6.clone()
            + F::from_i64(9) * b2 * b4 * b6
    }

    pub fn j_invariant(&self) -> Result<F> {
        let disc = self.discriminant();
        if disc.is_zero() {
            return Err(Error::Singular);
        }
        let (c4, _) = self.c4_c6();
        Ok(c4.clone() * c4.clone() * c4 * disc.inverse()?)
    }

    /// The isomorphic model `y^2 = x^3 - c4/48 x - c6/864`.
    pub fn short_model(&self) -> WeierstrassCurve<F> {
        let (c4, c6) = self.c4_c6();
        let a = -(c4 * F::from_i64(48).inverse().expect("nonzero"));
        let b = -(c6 * F::from_i64(864).inverse().expect("nonzero"));
        WeierstrassCurve { a1: F::zero(), a2: F::zero(), a3: F::zero(), a4: a, a6: b }
    }

    /// Maps a point of `self` to [`Self::short_model`].
    pub fn to_short(&self, p: &Point<F>) -> Point<F> {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => {
                let [b2, ..] = self.b_invariants();
                let half = F::from_i64(2).inverse().expect("nonzero");
                let twelfth = F::from_i64(12).inverse().expect("nonzero");
                let xs = x.clone() + b2 * twelfth;
                let ys = y.clone() + (self.a1.clone() * x.clone() + self.a3.clone()) * half;
                Point::Affine(xs, ys)
            }
        }
    }

    /// Inverse of [`Self::to_short`].
    pub fn from_short(&self, p: &Point<F>) -> Point<F> {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine(xs, ys) => {
                let [b2, ..] = self.b_invariants();
                let half = F::from_i64(2).inverse().expect("nonzero");
                let twelfth = F::from_i64(12).inverse().expect("nonzero");
                let x = xs.clone() - b2 * twelfth;
                let y = ys.clone() - (self.a1.clone() * x.clone() + self.a3.clone()) * half;
                Point::Affine(x, y)
            }
        }
    }

    /// Left side minus right side of the curve equation at `(x, y)`.
    pub fn equation_residual(&self, x: &F, y: &F) -> F {
        let lhs = y.clone() * y.clone() + self.a1.clone() * x.clone() * y.clone() + self.a3.clone() * y.clone();
        let rhs = ((x.clone() + self.a2.clone()) * x.clone() + self.a4.clone()) * x.clone() + self.a6.clone();
        lhs - rhs
    }

    pub fn contains(&self, p: &Point<F>) -> bool {
        match p {
            Point::Infinity => true,
            Point::Affine(x, y) => self.equation_residual(x, y).is_zero(),
        }
    }

    pub fn check(&self, p: &Point<F>) -> Result<()> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(Error::NotOnCurve)
        }
    }

    pub fn neg(&self, p: &Point<F>) -> Point<F> {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => {
                Point::Affine(x.clone(), -y.clone() - self.a1.clone() * x.clone() - self.a3.clone())
            }
        }
    }

    /// Group law without the membership check; callers guarantee both points lie on the curve.
    pub fn add_unchecked(&self, p: &Point<F>, q: &Point<F>) -> Point<F> {
        let (x1, y1, x2, y2) = match (p, q) {
            (Point::Infinity, _) => return q.clone(),
            (_, Point::Infinity) => return p.clone(),
            (Point::Affine(x1, y1), Point::Affine(x2, y2)) => (x1, y1, x2, y2),
        };
        let (lambda, nu) = if x1 == x2 {
            let denom = y1.clone() + y2.clone() + self.a1.clone() * x2.clone() + self.a3.clone();
            if denom.is_zero() {
                return Point::Infinity;
            }
            let inv = denom.inverse().expect("nonzero");
            let num_l = F::from_i64(3) * x1.clone() * x1.clone() + F::from_i64(2) * self.a2.clone() * x1.clone()
                + self.a4.clone()
                - self.a1.clone() * y1.clone();
            let num_n = -(x1.clone() * x1.clone() * x1.clone()) + self.a4.clone() * x1.clone()
                + F::from_i64(2) * self.a6.clone()
                - self.a3.clone() * y1.clone();
            (num_l * inv.clone(), num_n * inv)
        } else {
            let inv = (x2.clone() - x1.clone()).inverse().expect("distinct x");
            let lambda = (y2.clone() - y1.clone()) * inv.clone();
            let nu = (y1.clone() * x2.clone() - y2.clone() * x1.clone()) * inv;
            (lambda, nu)
        };
        let x3 = lambda.clone() * lambda.clone() + self.a1.clone() * lambda.clone()
            - self.a2.clone()
            - x1.clone()
            - x2.clone();
        let y3 = -((lambda + self.a1.clone()) * x3.clone()) - nu - self.a3.clone();
        Point::Affine(x3, y3)
    }

    pub fn add(&self, p: &Point<F>, q: &Point<F>) -> Result<Point<F>> {
        self.check(p)?;
        self.check(q)?;
        Ok(self.add_unchecked(p, q))
    }

    pub fn double(&self, p: &Point<F>) -> Result<Point<F>> {
        self.add(p, p)
    }

    /// `n * p` by double-and-add; negative `n` uses the inverse.
    pub fn mul_unchecked(&self, n: i64, p: &Point<F>) -> Point<F> {
        let base = if n < 0 { self.neg(p) } else { p.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = Point::Infinity;
        let mut run = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add_unchecked(&acc, &run);
            }
            k >>= 1;
            if k > 0 {
                run = self.add_unchecked(&run, &run);
            }
        }
        acc
    }

    pub fn mul(&self, n: i64, p: &Point<F>) -> Result<Point<F>> {
        self.check(p)?;
        Ok(self.mul_unchecked(n, p))
    }

    /// `a*p + b*q`.
    pub fn linear_combination(&self, a: i64, p: &Point<F>, b: i64, q: &Point<F>) -> Result<Point<F>> {
        self.check(p)?;
        self.check(q)?;
        Ok(self.add_unchecked(&self.mul_unchecked(a, p), &self.mul_unchecked(b, q)))
    }
}

/// How two curves over Q relate once both are put in short form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShortRelation {
    /// `(x, y) -> (u^2 x, u^3 y)` maps the first short model onto the second.
    Isomorphic { u: Rat },
    /// The second curve is the quadratic twist of the first by `d` (not a square).
    Twist { d: Rat },
    Unrelated,
}

impl WeierstrassCurve<Rat> {
    /// Searches for `u` with `A2 = u^4 A1`, `B2 = u^6 B1` between the short models.
    pub fn relation_to(&self, other: &WeierstrassCurve<Rat>) -> ShortRelation {
        let s1 = self.short_model();
        let s2 = other.short_model();
        let (a1, b1, a2, b2) = (&s1.a4, &s1.a6, &s2.a4, &s2.a6);
        let zero = |r: &Rat| r.is_zero();
        if zero(a1) != zero(a2) || zero(b1) != zero(b2) {
            return ShortRelation::Unrelated;
        }
        // u^2 is determined up to the choices the zero coefficients leave open.
        let candidates: Vec<Rat> = if !zero(a1) && !zero(b1) {
            vec![(b2 / b1) * (a1 / a2)]
        } else if zero(a1) {
            // u^6 = B2/B1: u^2 is a rational cube root of it, or the class is a sextic twist.
            rational_cube_root(&(b2 / b1)).into_iter().collect()
        } else {
            // u^4 = A2/A1: u^2 = +- sqrt.
            match rat_sqrt_exact(&(a2 / a1)) {
                Some(r) => vec![r.clone(), -r],
                None => vec![],
            }
        };
        for u2 in candidates {
            if &(u2.clone() * &u2 * a1) != a2 || &(u2.clone() * &u2 * &u2 * b1) != b2 {
                continue;
            }
            return match rat_sqrt_exact(&u2) {
                Some(u) => ShortRelation::Isomorphic { u },
                None => ShortRelation::Twist { d: u2 },
            };
        }
        ShortRelation::Unrelated
    }

    pub fn is_isomorphic_to(&self, other: &WeierstrassCurve<Rat>) -> bool {
        matches!(self.relation_to(other), ShortRelation::Isomorphic { .. })
    }
}

fn rational_cube_root(r: &Rat) -> Option<Rat> {
    let n = r.numer().cbrt();
    let d = r.denom().cbrt();
    let c = Rat::new(n, d);
    (&(c.clone() * &c * &c) == r).then_some(c)
}

#[derive(Serialize, Deserialize)]
struct CurveRepr {
    a1: String,
    a2: String,
    a3: String,
    a4: String,
    a6: String,
}

impl Serialize for WeierstrassCurve<Rat> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CurveRepr {
            a1: rat_to_string(&self.a1),
            a2: rat_to_string(&self.a2),
            a3: rat_to_string(&self.a3),
            a4: rat_to_string(&self.a4),
            a6: rat_to_string(&self.a6),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeierstrassCurve<Rat> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = CurveRepr::deserialize(d)?;
        let p = |s: &str| parse_rat(s).map_err(D::Error::custom);
        WeierstrassCurve::new(p(&r.a1)?, p(&r.a2)?, p(&r.a3)?, p(&r.a4)?, p(&r.a6)?).map_err(D::Error::custom)
    }
}

/// `head + (c1)*m1 + ...`, skipping zero coefficients.
pub(crate) fn write_terms<F: fmt::Display + Field>(
    f: &mut fmt::Formatter<'_>,
    head: &str,
    terms: &[(&F, &str)],
) -> fmt::Result {
    f.write_str(head)?;
    for (c, m) in terms {
        if c.is_zero() {
            continue;
        }
        if m.is_empty() {
            write!(f, " + ({c})")?;
        } else {
            write!(f, " + ({c})*{m}")?;
        }
    }
    Ok(())
}

impl<F: fmt::Display + Field> fmt::Display for WeierstrassCurve<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, "y^2", &[(&self.a1, "x*y"), (&self.a3, "y")])?;
        write_terms(f, " = x^3", &[(&self.a2, "x^2"), (&self.a4, "x"), (&self.a6, "")])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symalg::rat::{rat, rat_int};

    fn short(a: i64, b: i64) -> WeierstrassCurve {
        WeierstrassCurve::short(rat_int(a), rat_int(b)).unwrap()
    }

    fn pt(x: Rat, y: Rat) -> ProjPoint {
        Point::Affine(x, y)
    }

    #[test]
    fn j_invariant_examples() {
        assert_eq!(short(0, 1).j_invariant().unwrap(), rat_int(0));
        assert_eq!(short(1, 0).j_invariant().unwrap(), rat_int(1728));
        assert_eq!(WeierstrassCurve::short(rat_int(0), rat_int(0)), Err(Error::Singular));
    }

    #[test]
    fn identity_and_inverse() {
        let e = short(-2, 1);
        let p = pt(rat_int(0), rat_int(1));
        assert_eq!(e.add(&p, &Point::Infinity).unwrap(), p);
        assert_eq!(e.add(&p, &e.neg(&p)).unwrap(), Point::Infinity);
        assert_eq!(e.mul(1, &p).unwrap(), p);
        assert_eq!(e.mul(0, &p).unwrap(), Point::Infinity);
        assert_eq!(e.add(&p, &pt(rat_int(1), rat_int(1))), Err(Error::NotOnCurve));
    }

    #[test]
    fn aux_curve_seed_doubles_on_curve() {
        let e = short(-37611, 2266650);
        let x = rat(92625, 64);
        let rhs = &x * &x * &x - rat_int(37611) * &x + rat_int(2266650);
        let y = rat_sqrt_exact(&rhs).expect("the printed abscissa is on the curve");
        let p = pt(x, y);
        let q = e.double(&p).unwrap();
        assert!(e.contains(&q));
        assert_eq!(e.add(&e.mul(3, &p).unwrap(), &e.mul(-2, &p).unwrap()).unwrap(), p);
    }

    #[test]
    fn two_torsion_on_legendre() {
        // y^2 = x(x-1)(x-3)
        let e = WeierstrassCurve::new(rat_int(0), rat_int(-4), rat_int(0), rat_int(3), rat_int(0)).unwrap();
        assert_eq!(e.mul(2, &pt(rat_int(0), rat_int(0))).unwrap(), Point::Infinity);
    }

    #[test]
    fn long_form_short_model_round_trip() {
        // 11a1: y^2 + y = x^3 - x^2 - 10x - 20, with the 5-torsion point (5, 5).
        let e = WeierstrassCurve::new(rat_int(0), rat_int(-1), rat_int(1), rat_int(-10), rat_int(-20)).unwrap();
        let p = pt(rat_int(5), rat_int(5));
        assert!(e.contains(&p));
        assert_eq!(e.mul(5, &p).unwrap(), Point::Infinity);
        let s = e.short_model();
        let ps = e.to_short(&p);
        assert!(s.contains(&ps));
        assert_eq!(e.from_short(&ps), p);
        assert_eq!(s.j_invariant().unwrap(), e.j_invariant().unwrap());
        assert_eq!(e.discriminant(), rat_int(-161051));
    }

    #[test]
    fn isomorphism_and_twist_detection() {
        let e = short(-37611, 2266650);
        let scaled = WeierstrassCurve::short(rat_int(-37611) * rat_int(81), rat_int(2266650) * rat_int(729)).unwrap();
        assert_eq!(e.relation_to(&scaled), ShortRelation::Isomorphic { u: rat_int(3) });
        let twisted = WeierstrassCurve::short(rat_int(-37611) * rat_int(4), rat_int(2266650) * rat_int(-8)).unwrap();
        assert_eq!(e.relation_to(&twisted), ShortRelation::Twist { d: rat_int(-2) });
        assert_eq!(e.relation_to(&short(1, 1)), ShortRelation::Unrelated);
    }

    #[test]
    fn serde_round_trip() {
        let p = pt(rat(-3, 7), rat(22, 5));
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"x":"-3/7","y":"22/5"}"#);
        assert_eq!(serde_json::from_str::<ProjPoint>(&s).unwrap(), p);
        let inf = serde_json::to_string(&ProjPoint::Infinity).unwrap();
        assert_eq!(serde_json::from_str::<ProjPoint>(&inf).unwrap(), Point::Infinity);
        let e = short(-2, 1);
        let back: WeierstrassCurve = serde_json::from_str(&serde_json::to_string(&e).unwrap()).unwrap();
        assert_eq!(back, e);
    }
}
