//! Genus-one quartics `v^2 = c4 t^4 + c3 t^3 + c2 t^2 + c1 t + c0` and their
//! birational maps to Weierstrass form.

use std::fmt;

use super::weierstrass::{Point, WeierstrassCurve};
use crate::symalg::Field;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuarticCurve<F> {
    /// `[c4, c3, c2, c1, c0]`.
    pub c: [F; 5],
}

fn n<F: Field>(k: i64) -> F {
    F::from_i64(k)
}

impl<F: Field> QuarticCurve<F> {
    pub fn new(c: [F; 5]) -> Result<Self> {
        let q = Self { c };
        if q.c[0].is_zero() && q.c[1].is_zero() {
            return Err(Error::WrongShape { expected: "a quartic or cubic", found: "degree below 3".into() });
        }
        if q.discriminant().is_zero() {
            return Err(Error::Singular);
        }
        Ok(q)
    }

    pub fn eval(&self, t: &F) -> F {
        self.c.iter().fold(F::zero(), |acc, ci| acc * t.clone() + ci.clone())
    }

    pub fn contains(&self, t: &F, v: &F) -> bool {
        (v.clone() * v.clone() - self.eval(t)).is_zero()
    }

    /// The invariants `I = 12ae - 3bd + c^2`, `J = 72ace + 9bcd - 27ad^2 - 27eb^2 - 2c^3`.
    pub fn invariants(&self) -> (F, F) {
        let [a, b, c, d, e] = self.c.clone();
        let i = n::<F>(12) * a.clone() * e.clone() - n::<F>(3) * b.clone() * d.clone() + c.clone() * c.clone();
        let j = n::<F>(72) * a.clone() * c.clone() * e.clone() + n::<F>(9) * b.clone() * c.clone() * d.clone()
            - n::<F>(27) * a * d.clone() * d
            - n::<F>(27) * e * b.clone() * b
            - n::<F>(2) * c.clone() * c.clone() * c;
        (i, j)
    }

    /// `(4 I^3 - J^2) / 27`.
    pub fn discriminant(&self) -> F {
        let (i, j) = self.invariants();
        (n::<F>(4) * i.clone() * i.clone() * i - j.clone() * j) * n::<F>(27).inverse().expect("nonzero")
    }

    /// `6912 I^3 / (4 I^3 - J^2)`, the j-invariant of the Jacobian.
    pub fn j_invariant(&self) -> Result<F> {
        let (i, j) = self.invariants();
        let i3 = i.clone() * i.clone() * i;
        let den = n::<F>(4) * i3.clone() - j.clone() * j;
        if den.is_zero() {
            return Err(Error::Singular);
        }
        Ok(n::<F>(6912) * i3 * den.inverse()?)
    }

    /// Coefficients of the quartic in `s = t - t0`, by repeated synthetic division.
    pub fn shifted(&self, t0: &F) -> [F; 5] {
        let mut b = self.c.clone();
        for i in 0..4 {
            for j in 1..5 - i {
                b[j] = b[j].clone() + t0.clone() * b[j - 1].clone();
            }
        }
        b
    }

    /// Birational map to a Weierstrass curve sending `seed` to the identity.
    pub fn to_weierstrass(&self, seed: (&F, &F)) -> Result<QuarticMap<F>> {
        let (t0, v0) = seed;
        if !self.contains(t0, v0) {
            return Err(Error::NotOnCurve);
        }
        let [a, b, c, d, e] = self.shifted(t0);
        if !v0.is_zero() {
            let q = v0.clone();
            debug_assert!((q.clone() * q.clone() - e.clone()).is_zero());
            let qi = q.inverse()?;
            let a1 = d.clone() * qi.clone();
            let a2 = c.clone() - d.clone() * d.clone() * qi.clone() * qi.clone() * n::<F>(4).inverse()?;
            let a3 = n::<F>(2) * q.clone() * b.clone();
            let a4 = -(n::<F>(4) * q.clone() * q.clone() * a.clone());
            let a6 = a2.clone() * a4.clone();
            let curve = WeierstrassCurve::new(a1, a2, a3, a4, a6)?;
            let companion = {
                let x = -c.clone() + d.clone() * d.clone() * qi.clone() * qi.clone() * n::<F>(4).inverse()?;
                let y = -(n::<F>(2) * b.clone() * q.clone()) + c.clone() * d.clone() * qi.clone()
                    - d.clone() * d.clone() * d.clone() * qi.clone() * qi.clone() * qi.clone() * n::<F>(4).inverse()?;
                Point::Affine(x, y)
            };
            Ok(QuarticMap {
                quartic: self.clone(),
                t0: t0.clone(),
                v0: v0.clone(),
                shifted: [a, b, c, d, e],
                curve,
                kind: MapKind::RationalValue { companion },
            })
        } else {
            // v0 = 0: t0 is a root, e = 0; Y^2 = X^3 + e2 X^2 + e1 e3 X + e0 e3^2.
            let (e0, e1, e2, e3) = (a, b, c, d);
            if e3.is_zero() {
                return Err(Error::Singular);
            }
            let curve = WeierstrassCurve::new(
                F::zero(),
                e2.clone(),
                F::zero(),
                e1.clone() * e3.clone(),
                e0.clone() * e3.clone() * e3.clone(),
            )?;
            Ok(QuarticMap {
                quartic: self.clone(),
                t0: t0.clone(),
                v0: v0.clone(),
                shifted: [e0, e1, e2, e3, F::zero()],
                curve,
                kind: MapKind::Root,
            })
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum MapKind<F> {
    /// Seed with `v0 != 0`; the other point above `t0` maps to `companion`.
    RationalValue { companion: Point<F> },
    /// Seed at a root of the quartic.
    Root,
}

/// The output of [`QuarticCurve::to_weierstrass`].
#[derive(Clone, Debug, PartialEq)]
pub struct QuarticMap<F> {
    pub quartic: QuarticCurve<F>,
    pub t0: F,
    pub v0: F,
    shifted: [F; 5],
    pub curve: WeierstrassCurve<F>,
    kind: MapKind<F>,
}

impl<F: Field> QuarticMap<F> {
    /// Image of the second point above the seed abscissa, when there is one.
    pub fn companion(&self) -> Option<&Point<F>> {
        match &self.kind {
            MapKind::RationalValue { companion } => Some(companion),
            MapKind::Root => None,
        }
    }

    pub fn forward(&self, t: &F, v: &F) -> Result<Point<F>> {
        if !self.quartic.contains(t, v) {
            return Err(Error::NotOnCurve);
        }
        let s = t.clone() - self.t0.clone();
        let [_, _, c, d, _] = self.shifted.clone();
        match &self.kind {
            MapKind::RationalValue { companion } => {
                let q = self.v0.clone();
                if s.is_zero() {
                    return Ok(if *v == q { Point::Infinity } else { companion.clone() });
                }
                let si = s.inverse()?;
                let two = n::<F>(2);
                let x = (two.clone() * q.clone() * (v.clone() + q.clone()) + d.clone() * s.clone()) * si.clone() * si.clone();
                let y = (n::<F>(4) * q.clone() * q.clone() * (v.clone() + q.clone())
                    + two.clone() * q.clone() * (d.clone() * s.clone() + c * s.clone() * s.clone())
                    - d.clone() * d * s.clone() * s.clone() * (two * q).inverse()?)
                    * si.clone()
                    * si.clone()
                    * si;
                Ok(Point::Affine(x, y))
            }
            MapKind::Root => {
                if s.is_zero() {
                    return Ok(Point::Infinity);
                }
                let si = s.inverse()?;
                let e3 = d;
                Ok(Point::Affine(e3.clone() * si.clone(), e3 * v.clone() * si.clone() * si))
            }
        }
    }

    /// Inverse map; points where it is undefined are reported as exceptional.
    pub fn inverse(&self, p: &Point<F>) -> Result<(F, F)> {
        self.curve.check(p)?;
        let (x, y) = match p {
            Point::Infinity => return Ok((self.t0.clone(), self.v0.clone())),
            Point::Affine(x, y) => (x, y),
        };
        let [_, _, c, d, _] = self.shifted.clone();
        match &self.kind {
            MapKind::RationalValue { companion } => {
                let q = self.v0.clone();
                if p == companion {
                    return Ok((self.t0.clone(), -q));
                }
                if y.is_zero() {
                    return Err(Error::ExceptionalLocus(format!("{p} has Y = 0")));
                }
                let two = n::<F>(2);
                let s = (two.clone() * q.clone() * (x.clone() + c) - d.clone() * d.clone() * (two.clone() * q.clone()).inverse()?)
                    * y.inverse()?;
                if s.is_zero() {
                    return Err(Error::ExceptionalLocus(format!("{p} maps above the seed abscissa")));
                }
                let v = -q.clone() + s.clone() * (s.clone() * x.clone() - d) * (two * q).inverse()?;
                let t = self.t0.clone() + s;
                if !self.quartic.contains(&t, &v) {
                    return Err(Error::ExceptionalLocus(format!("{p} is a point at infinity of the quartic")));
                }
                Ok((t, v))
            }
            MapKind::Root => {
                if x.is_zero() {
                    return Err(Error::ExceptionalLocus(format!("{p} has X = 0")));
                }
                let e3 = d;
                let xi = x.inverse()?;
                Ok((self.t0.clone() + e3.clone() * xi.clone(), y.clone() * e3 * xi.clone() * xi))
            }
        }
    }
}

impl<F: Field> fmt::Display for QuarticCurve<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d, e] = &self.c;
        let terms = [(b, "t^3"), (c, "t^2"), (d, "t"), (e, "")];
        super::weierstrass::write_terms(f, &format!("v^2 = ({a})*t^4"), &terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symalg::rat::{rat, rat_int, Rat};
    use crate::symalg::parse::parse_constant;

    fn c_alpha(alpha: &Rat) -> QuarticCurve<Rat> {
        let a2 = alpha * alpha;
        let s = &a2 + rat_int(1);
        QuarticCurve::new([a2.clone(), rat_int(0), -(&s * &s), rat_int(0), rat_int(4) * &a2]).unwrap()
    }

    /// Small rational points of a quartic by brute force.
    fn small_points(q: &QuarticCurve<Rat>, bound: i64) -> Vec<(Rat, Rat)> {
        let mut out = Vec::new();
        for den in 1..=bound {
            for num in -bound..=bound {
                let t = rat(num, den);
                if t.denom() != &den.into() {
                    continue;
                }
                if let Some(v) = crate::symalg::rat::rat_sqrt_exact(&q.eval(&t)) {
                    out.push((t.clone(), v.clone()));
                    out.push((t, -v));
                }
            }
        }
        out
    }

    #[test]
    fn shift_matches_direct_expansion() {
        let q = QuarticCurve::new([rat_int(2), rat_int(-1), rat_int(3), rat_int(5), rat_int(-7)]).unwrap();
        let t0 = rat(3, 2);
        let sh = QuarticCurve::new(q.shifted(&t0)).unwrap();
        for s in [rat_int(0), rat_int(1), rat(-5, 3)] {
            assert_eq!(sh.eval(&s), q.eval(&(&s + &t0)));
        }
    }

    #[test]
    fn aux_curve_at_two() {
        let q = c_alpha(&rat_int(2));
        assert_eq!(q.c, [rat_int(4), rat_int(0), rat_int(-25), rat_int(0), rat_int(16)]);
        let m = q.to_weierstrass((&rat_int(0), &rat_int(4))).unwrap();
        let target = WeierstrassCurve::short(rat_int(-37611), rat_int(2266650)).unwrap();
        assert_eq!(m.curve.j_invariant().unwrap(), target.j_invariant().unwrap());
        assert_eq!(q.j_invariant().unwrap(), target.j_invariant().unwrap());
        assert!(m.curve.short_model().is_isomorphic_to(&target));
        // The companion (0, -4) is a point of order two.
        let comp = m.forward(&rat_int(0), &rat_int(-4)).unwrap();
        assert!(m.curve.contains(&comp));
        assert_eq!(m.curve.mul(2, &comp).unwrap(), Point::Infinity);
        assert_eq!(m.inverse(&comp).unwrap(), (rat_int(0), rat_int(-4)));
    }

    #[test]
    fn round_trips_for_small_points() {
        for alpha in ["2", "3", "5/2", "-4", "7/3"] {
            let q = c_alpha(&parse_constant(alpha).unwrap());
            let seed = (rat_int(0), parse_constant(alpha).unwrap() * rat_int(2));
            let m = q.to_weierstrass((&seed.0, &seed.1)).unwrap();
            for (t, v) in small_points(&q, 12) {
                let p = m.forward(&t, &v).unwrap();
                assert!(m.curve.contains(&p), "alpha={alpha} t={t}");
                assert_eq!(m.inverse(&p).unwrap(), (t, v));
            }
        }
    }

    #[test]
    fn seed_at_a_root() {
        // v^2 = (t - 1)(t^3 + 2t + 5): t0 = 1 is a root.
        let q = QuarticCurve::new([rat_int(1), rat_int(-1), rat_int(2), rat_int(3), rat_int(-5)]).unwrap();
        let m = q.to_weierstrass((&rat_int(1), &rat_int(0))).unwrap();
        assert_eq!(m.forward(&rat_int(1), &rat_int(0)).unwrap(), Point::Infinity);
        for (t, v) in small_points(&q, 20) {
            let p = m.forward(&t, &v).unwrap();
            assert!(m.curve.contains(&p));
            if t != rat_int(1) {
                assert_eq!(m.inverse(&p).unwrap(), (t, v));
            }
        }
        assert_eq!(m.curve.j_invariant().unwrap(), q.j_invariant().unwrap());
    }

    #[test]
    fn errors() {
        let q = c_alpha(&rat_int(2));
        assert_eq!(q.to_weierstrass((&rat_int(0), &rat_int(3))).unwrap_err(), Error::NotOnCurve);
        // (t^2 - 1)^2 is not separable.
        assert_eq!(
            QuarticCurve::new([rat_int(1), rat_int(0), rat_int(-2), rat_int(0), rat_int(1)]).unwrap_err(),
            Error::Singular
        );
    }
}
