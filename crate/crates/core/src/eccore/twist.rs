//! Quadratic twists `d y^2 = f(x)` of curves given by a cubic `f`.

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::legendre::LegendreCurve;
use super::weierstrass::{Point, ProjPoint, WeierstrassCurve};
use crate::symalg::rat::{lcm_int, parse_rat, rat_to_string, IntZ, Rat};
use crate::{Error, Result};

/// Discriminant of `c3 x^3 + c2 x^2 + c1 x + c0`.
pub fn cubic_discriminant(f: &[Rat; 4]) -> Rat {
    let [a, b, c, d] = f;
    let n = |k: i64| Rat::from_integer(k.into());
    b * b * c * c - n(4) * a * c * c * c - n(4) * b * b * b * d - n(27) * a * a * d * d + n(18) * a * b * c * d
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TwistedCurve {
    /// `[c3, c2, c1, c0]`.
    pub f: [Rat; 4],
    pub d: Rat,
}

/// The model `d y^2 = f(x)`.
pub fn twist(f: &[Rat; 4], d: &Rat) -> Result<TwistedCurve> {
    TwistedCurve::new(f.clone(), d.clone())
}

impl TwistedCurve {
    pub fn new(f: [Rat; 4], d: Rat) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::ZeroTwist);
        }
        if f[0].is_zero() {
            return Err(Error::WrongShape { expected: "a cubic", found: "leading coefficient 0".into() });
        }
        if cubic_discriminant(&f).is_zero() {
            return Err(Error::Singular);
        }
        Ok(Self { f, d })
    }

    pub fn from_legendre(e: &LegendreCurve, d: &Rat) -> Result<Self> {
        Self::new(e.cubic(), d.clone())
    }

    pub fn eval_f(&self, x: &Rat) -> Rat {
        let [c3, c2, c1, c0] = &self.f;
        ((c3 * x + c2) * x + c1) * x + c0
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        match p {
            Point::Infinity => true,
            Point::Affine(x, y) => &self.d * y * y == self.eval_f(x),
        }
    }

    pub fn check(&self, p: &ProjPoint) -> Result<()> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(Error::NotOnCurve)
        }
    }

    /// `Y^2 = X^3 + c2 d X^2 + c1 c3 d^2 X + c0 c3^2 d^3` via `X = c3 d x`, `Y = c3 d^2 y`.
    pub fn weierstrass(&self) -> WeierstrassCurve {
        let [c3, c2, c1, c0] = &self.f;
        let d = &self.d;
        WeierstrassCurve::new(
            Rat::zero(),
            c2 * d,
            Rat::zero(),
            c1 * c3 * d * d,
            c0 * c3 * c3 * d * d * d,
        )
        .expect("nonsingular cubic and nonzero twist")
    }

    pub fn to_weierstrass(&self, p: &ProjPoint) -> ProjPoint {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => {
                let s = &self.f[0] * &self.d;
                Point::Affine(&s * x, &s * &self.d * y)
            }
        }
    }

    pub fn from_weierstrass(&self, p: &ProjPoint) -> ProjPoint {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => {
                let s = &self.f[0] * &self.d;
                Point::Affine(x / &s, y / (&s * &self.d))
            }
        }
    }

    pub fn j_invariant(&self) -> Rat {
        self.weierstrass().j_invariant().expect("nonsingular")
    }

    /// The same curve written as an untwisted `y^2 = f_d(x)` via `(x, y) -> (d x, d^2 y)`.
    pub fn as_base(&self) -> TwistedCurve {
        let [c3, c2, c1, c0] = &self.f;
        let d = &self.d;
        TwistedCurve { f: [c3.clone(), c2 * d, c1 * d * d, c0 * d * d * d], d: Rat::one() }
    }

    pub fn as_base_point(&self, p: &ProjPoint) -> ProjPoint {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => Point::Affine(&self.d * x, &self.d * &self.d * y),
        }
    }

    /// Twist of [`Self::as_base`] by `d2`; lies in the class of the `d * d2` twist.
    pub fn twist(&self, d2: &Rat) -> Result<TwistedCurve> {
        let mut base = self.as_base();
        if d2.is_zero() {
            return Err(Error::ZeroTwist);
        }
        base.d = d2.clone();
        Ok(base)
    }

    /// `E^d` is `E^(d / c^2)` via `(x, y) -> (x, c y)`.
    pub fn rescale(&self, c: &Rat) -> Result<TwistedCurve> {
        if c.is_zero() {
            return Err(Error::ZeroTwist);
        }
        TwistedCurve::new(self.f.clone(), &self.d / (c * c))
    }

    pub fn rescale_point(p: &ProjPoint, c: &Rat) -> ProjPoint {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => Point::Affine(x.clone(), y * c),
        }
    }

    /// A short model with integer coefficients and the maps to and from it.
    pub fn integral_model(&self) -> IntegralModel {
        let long = self.weierstrass();
        let three = Rat::from_integer(3.into());
        let shift = &long.a2 / &three;
        let a = &long.a4 - &long.a2 * &long.a2 / &three;
        let b = Rat::from_integer(2.into()) * &long.a2 * &long.a2 * &long.a2 / Rat::from_integer(27.into())
            - &long.a2 * &long.a4 / &three
            + &long.a6;
        let u = Rat::from_integer(lcm_int(a.denom(), b.denom()));
        let u2 = &u * &u;
        let u3 = &u2 * &u;
        let curve = WeierstrassCurve::short(&u2 * &u2 * a, &u3 * &u3 * b).expect("nonsingular");
        IntegralModel { twisted: self.clone(), curve, shift, u }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct IntegralModel {
    pub twisted: TwistedCurve,
    /// `y^2 = x^3 + A x + B` with `A, B` integers.
    pub curve: WeierstrassCurve,
    shift: Rat,
    u: Rat,
}

impl IntegralModel {
    pub fn coefficients(&self) -> (IntZ, IntZ) {
        (self.curve.a4.to_integer(), self.curve.a6.to_integer())
    }

    pub fn map(&self, p: &ProjPoint) -> ProjPoint {
        match self.twisted.to_weierstrass(p) {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => {
                let u2 = &self.u * &self.u;
                Point::Affine(&u2 * (x + &self.shift), &u2 * &self.u * y)
            }
        }
    }

    pub fn unmap(&self, p: &ProjPoint) -> ProjPoint {
        let q = match p {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => {
                let u2 = &self.u * &self.u;
                Point::Affine(x / &u2 - &self.shift, y / (&u2 * &self.u))
            }
        };
        self.twisted.from_weierstrass(&q)
    }
}

#[derive(Serialize, Deserialize)]
struct TwistRepr {
    f: Vec<String>,
    d: String,
}

impl Serialize for TwistedCurve {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TwistRepr { f: self.f.iter().map(rat_to_string).collect(), d: rat_to_string(&self.d) }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for TwistedCurve {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = TwistRepr::deserialize(d)?;
        let f: Vec<Rat> = r.f.iter().map(|s| parse_rat(s)).collect::<Result<_>>().map_err(D::Error::custom)?;
        let f: [Rat; 4] = f.try_into().map_err(|_| D::Error::custom("a cubic needs four coefficients"))?;
        TwistedCurve::new(f, parse_rat(&r.d).map_err(D::Error::custom)?).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eccore::weierstrass::ShortRelation;
    use crate::symalg::rat::{is_integral, rat, rat_int};

    fn legendre(l: Rat) -> [Rat; 4] {
        LegendreCurve::new(l).unwrap().cubic()
    }

    #[test]
    fn twist_by_one_is_the_base_curve() {
        let f = legendre(rat(-25, 9));
        let e = twist(&f, &rat_int(1)).unwrap();
        assert_eq!(e.as_base(), e);
        assert_eq!(twist(&f, &rat_int(0)), Err(Error::ZeroTwist));
    }

    #[test]
    fn twisting_back_gives_a_square_class() {
        let f = legendre(rat(25, 16));
        let base = twist(&f, &rat_int(1)).unwrap().weierstrass();
        let e = twist(&f, &rat(-7, 3)).unwrap();
        let back = e.twist(&rat(-3, 7)).unwrap();
        assert!(back.weierstrass().is_isomorphic_to(&base));
        let e6 = e.twist(&rat_int(5)).unwrap();
        assert_eq!(
            twist(&f, &rat(-35, 3)).unwrap().weierstrass().relation_to(&e6.weierstrass()),
            ShortRelation::Isomorphic { u: rat_int(1) }
        );
    }

    #[test]
    fn square_rescale_moves_points() {
        let f = legendre(rat_int(3));
        // 12 * 1^2 = f(4) = 4 * 3 * 1
        let e = twist(&f, &rat_int(12)).unwrap();
        let p = Point::Affine(rat_int(4), rat_int(1));
        assert!(e.contains(&p));
        let e3 = e.rescale(&rat_int(2)).unwrap();
        assert_eq!(e3.d, rat_int(3));
        assert!(e3.contains(&TwistedCurve::rescale_point(&p, &rat_int(2))));
    }

    #[test]
    fn j_is_twist_invariant() {
        let f = legendre(rat(34, 9));
        let j = twist(&f, &rat_int(1)).unwrap().j_invariant();
        for d in [rat_int(-1), rat(5, 7), rat_int(1155), rat(-2, 9)] {
            assert_eq!(twist(&f, &d).unwrap().j_invariant(), j);
        }
    }

    #[test]
    fn integral_model_maps_points() {
        let f = legendre(rat(-25, 9));
        let e = twist(&f, &rat(-7, 5)).unwrap();
        let m = e.integral_model();
        assert!(is_integral(&m.curve.a4) && is_integral(&m.curve.a6));
        let p = Point::Affine(rat_int(0), rat_int(0));
        let q = m.map(&p);
        assert!(m.curve.contains(&q));
        assert_eq!(m.unmap(&q), p);
        assert_eq!(m.curve.j_invariant().unwrap(), e.j_invariant());
    }

    #[test]
    fn serde_round_trip() {
        let e = twist(&legendre(rat(-9, 16)), &rat(-11, 4)).unwrap();
        let s = serde_json::to_string(&e).unwrap();
        assert_eq!(serde_json::from_str::<TwistedCurve>(&s).unwrap(), e);
    }
}
