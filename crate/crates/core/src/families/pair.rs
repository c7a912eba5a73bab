//! The two explicit rank-2 pair families over `Q(alpha)(t)[u] / (u^2 - q_alpha(t))`.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::certify::verify_function_field_independence;
use crate::eccore::{genus_bound, LegendreCurve, SymbolicPoint, SymbolicTwist};
use crate::symalg::factor::rational_roots;
use crate::symalg::fraclin::FracLinMap;
use crate::symalg::parse::{parse_expr, parse_poly};
use crate::symalg::poly::{MPoly, Var};
use crate::symalg::rat::Rat;
use crate::symalg::ratfunc::RatFunc;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyId {
    Thm51,
    Thm53,
}

impl FamilyId {
    pub fn build(self, alpha: Option<&Rat>) -> Result<PairFamily> {
        match self {
            FamilyId::Thm51 => family_theorem51(alpha),
            FamilyId::Thm53 => family_theorem53(alpha),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FamilyId::Thm51 => "thm51",
            FamilyId::Thm53 => "thm53",
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for FamilyId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "thm51" => Ok(FamilyId::Thm51),
            "thm53" => Ok(FamilyId::Thm53),
            other => Err(Error::Invalid(format!("unknown family {other:?}"))),
        }
    }
}

/// Outcome of one exact identity check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub name: String,
    pub passed: bool,
}

/// A pair of Legendre curves `E_i: y^2 = x(x-1)(x-lambda_i)` with a twist
/// polynomial `g` and two points on each twist `g y^2 = f_i(x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PairFamily {
    pub id: FamilyId,
    /// `None` while alpha is symbolic.
    pub alpha: Option<Rat>,
    pub lambda1: RatFunc,
    pub lambda2: RatFunc,
    /// Root-permuting maps in `z` used to derive the family.
    pub h1: FracLinMap,
    pub h2: FracLinMap,
    /// `g = prod g_factors`; a constant factor carries the sign.
    pub g_factors: Vec<MPoly>,
    pub g: MPoly,
    /// `q_alpha(t)`, with `u^2 = q`.
    pub q: Arc<MPoly>,
    /// `[P1, P2]` on `E_1^g` and `[P3, P4]` on `E_2^g`.
    pub points: [SymbolicPoint; 4],
    /// Rational alpha where the pair degenerates or becomes isomorphic.
    pub excluded_alpha: Vec<Rat>,
}

pub const Q_ALPHA: &str = "α^2*t^4 - (α^2+1)^2*t^2 + 4*α^2";

/// `(a t + b) / (c t + d)` in `z`.
fn fraclin(a: &RatFunc, b: &RatFunc, c: &RatFunc, d: &RatFunc) -> Result<FracLinMap> {
    FracLinMap::new(a.clone(), b.clone(), c.clone(), d.clone(), Var::Z)
}

struct Printed {
    lambda1: &'static str,
    lambda2: &'static str,
    g_factors: &'static [&'static str],
    points: [(&'static str, &'static str); 4],
}

const THM51: Printed = Printed {
    lambda1: "-(α^2+1)^2/(α^2-1)^2",
    lambda2: "(α^2+1)^2/(4*α^2)",
    g_factors: &["t^4+4", "t^4*(α^2-1)^2 + 4*t^2*(α^2+1)^2 + 4*(α^2-1)^2", Q_ALPHA],
    points: [
        ("(t^4+4)*(α^2+1)^2/(4*u^2)", "(t^2-2)*(α^2+1)^3/(8*(α^2-1)*u^4)"),
        ("t^2/4 + 1/t^2", "(t^2-2)/(8*t^3*(α^2-1)*u)"),
        ("(t^4+4)*(α^2+1)^2/(4*u^2)", "t*(α^2+1)^3/(8*α*u^4)"),
        ("(t^4+4)/(t^2+2)^2", "t/((t^2+2)^3*α*u)"),
    ],
};

const THM53: Printed = Printed {
    lambda1: "2*(1+α^4)/(α^2-1)^2",
    lambda2: "-(α^2-1)^2/(4*α^2)",
    g_factors: &["-1", "t^4+4", "(α^2-1)^2*t^4 + 4*(α^2+1)^2*t^2 + 4*(α^2-1)^2", Q_ALPHA],
    points: [
        ("-(t^4*(α^2-1)^2 + 4*t^2*(α^2+1)^2 + 4*(α^2-1)^2)/(4*u^2)", "(t^2-2)*(α^2+1)^3/(8*(α^2-1)*u^4)"),
        ("-(t^2-2)^2/(4*t^2)", "(t^2-2)/(8*t^3*(α^2-1)*u)"),
        ("-(t^4*(α^2-1)^2 + 4*t^2*(α^2+1)^2 + 4*(α^2-1)^2)/(4*u^2)", "t*(α^2+1)^3/(8*α*u^4)"),
        ("4*t^2/(t^2+2)^2", "t/((t^2+2)^3*α*u)"),
    ],
};

/// Rejects alpha in `{0, 1, -1}`.
pub fn check_alpha(alpha: &Rat) -> Result<()> {
    if alpha.is_zero() || alpha.is_one() || (-alpha).is_one() {
        return Err(Error::BadAlpha);
    }
    Ok(())
}

fn orbit_images(l: &RatFunc) -> Result<Vec<RatFunc>> {
    let one = RatFunc::one();
    let oml = &one - l;
    Ok(vec![
        l.clone(),
        oml.clone(),
        l.inv()?,
        oml.inv()?,
        l.checked_div(&(l - &one))?,
        (l - &one).checked_div(l)?,
    ])
}

fn alpha_roots(r: &RatFunc, out: &mut BTreeSet<Rat>) -> Result<()> {
    for p in [r.num(), r.den()] {
        if p.is_zero() {
            continue;
        }
        let coeffs = p.univariate_coeffs(Var::Alpha).ok_or_else(|| Error::WrongShape {
            expected: "a polynomial in alpha only",
            found: p.to_string(),
        })?;
        out.extend(rational_roots(&coeffs)?);
    }
    Ok(())
}

/// Rational alpha for which `lambda1`, `lambda2` stop defining two
/// non-isomorphic Legendre curves: poles, `lambda in {0, 1}` and the six
/// coincidences `lambda2 = sigma(lambda1)`.
pub fn excluded_alphas(lambda1: &RatFunc, lambda2: &RatFunc) -> Result<Vec<Rat>> {
    let mut out = BTreeSet::new();
    let one = RatFunc::one();
    for l in [lambda1, lambda2] {
        alpha_roots(l, &mut out)?;
        alpha_roots(&(l - &one), &mut out)?;
    }
    for s in orbit_images(lambda1)? {
        let diff = lambda2 - &s;
        if diff.is_zero() {
            return Err(Error::IsomorphicPair);
        }
        alpha_roots(&diff, &mut out)?;
    }
    Ok(out.into_iter().collect())
}

fn build(id: FamilyId, printed: &Printed, maps: fn(&RatFunc) -> Result<FracLinMap>, alpha: Option<&Rat>) -> Result<PairFamily> {
    if let Some(a) = alpha {
        check_alpha(a)?;
    }
    let lambda1 = parse_expr(printed.lambda1)?;
    let lambda2 = parse_expr(printed.lambda2)?;
    let excluded_alpha = excluded_alphas(&lambda1, &lambda2)?;
    if let Some(a) = alpha {
        if excluded_alpha.contains(a) {
            return Err(Error::ExcludedAlpha(a.to_string()));
        }
    }
    let q = Arc::new(parse_poly(Q_ALPHA)?);
    let g_factors = printed.g_factors.iter().map(|s| parse_poly(s)).collect::<Result<Vec<_>>>()?;
    let g = g_factors.iter().fold(MPoly::one(), |acc, f| &acc * f);
    let mut points = Vec::with_capacity(4);
    for (x, y) in printed.points {
        points.push(SymbolicPoint::from_ratfuncs(&parse_expr(x)?, &parse_expr(y)?, &q)?);
    }
    let family = PairFamily {
        id,
        alpha: None,
        h1: maps(&lambda1)?,
        h2: maps(&lambda2)?,
        lambda1,
        lambda2,
        g_factors,
        g,
        q,
        points: points.try_into().expect("four points"),
        excluded_alpha,
    };
    let family = match alpha {
        Some(a) => family.specialize(a)?,
        None => family,
    };
    family.verify()?;
    Ok(family)
}

/// `lambda1 = -(a^2+1)^2/(a^2-1)^2`, `lambda2 = (a^2+1)^2/(4a^2)` with the
/// degree-12 `g_alpha` and four points; symbolic when `alpha` is `None`.
pub fn family_theorem51(alpha: Option<&Rat>) -> Result<PairFamily> {
    // h(z) = l z / ((l + 1) z - l) sends 0, 1, l to 0, l, 1.
    build(FamilyId::Thm51, &THM51, |l| fraclin(l, &RatFunc::zero(), &(l + &RatFunc::one()), &-l), alpha)
}

/// `lambda1 = 2(1+a^4)/(a^2-1)^2`, `lambda2 = -(a^2-1)^2/(4a^2)` with
/// `-g_alpha` of the first family; symbolic when `alpha` is `None`.
pub fn family_theorem53(alpha: Option<&Rat>) -> Result<PairFamily> {
    // h(z) = (z - l) / ((2 - l) z - 1).
    build(
        FamilyId::Thm53,
        &THM53,
        |l| fraclin(&RatFunc::one(), &-l, &(&RatFunc::from_int(2) - l), &RatFunc::from_int(-1)),
        alpha,
    )
}

fn specialize_point(p: &SymbolicPoint, assignment: &[(Var, Rat)]) -> Result<SymbolicPoint> {
    Ok(SymbolicPoint { x: p.x.specialize(assignment)?, y: p.y.specialize(assignment)? })
}

impl PairFamily {
    /// Cubic coefficients `[1, -(1 + lambda), lambda, 0]` of `E_i`, `i in {1, 2}`.
    pub fn cubic(&self, i: usize) -> [RatFunc; 4] {
        let l = if i == 1 { &self.lambda1 } else { &self.lambda2 };
        [RatFunc::one(), -&(&RatFunc::one() + l), l.clone(), RatFunc::zero()]
    }

    /// `E_i^g` over the extension ring.
    pub fn twisted(&self, i: usize) -> SymbolicTwist {
        SymbolicTwist { f: self.cubic(i), d: RatFunc::from_poly(self.g.clone()), modulus: self.q.clone() }
    }

    /// Substitutes a rational alpha in every field.
    pub fn specialize(&self, alpha: &Rat) -> Result<PairFamily> {
        check_alpha(alpha)?;
        let asg = [(Var::Alpha, alpha.clone())];
        let ev = |r: &RatFunc| r.eval_vars(&asg);
        let evm = |m: &FracLinMap| FracLinMap::new(ev(&m.a)?, ev(&m.b)?, ev(&m.c)?, ev(&m.d)?, m.var);
        let mut points = Vec::with_capacity(4);
        for p in &self.points {
            points.push(specialize_point(p, &asg)?);
        }
        let q = Arc::new(self.q.eval_vars(&asg));
        for p in &mut points {
            // share one modulus allocation
            *p = SymbolicPoint {
                x: crate::symalg::QuadExtElem::new(p.x.a().clone(), p.x.b().clone(), q.clone()),
                y: crate::symalg::QuadExtElem::new(p.y.a().clone(), p.y.b().clone(), q.clone()),
            };
        }
        Ok(PairFamily {
            id: self.id,
            alpha: Some(alpha.clone()),
            lambda1: ev(&self.lambda1)?,
            lambda2: ev(&self.lambda2)?,
            h1: evm(&self.h1)?,
            h2: evm(&self.h2)?,
            g_factors: self.g_factors.iter().map(|f| f.eval_vars(&asg)).collect(),
            g: self.g.eval_vars(&asg),
            q,
            points: points.try_into().expect("four points"),
            excluded_alpha: self.excluded_alpha.clone(),
        })
    }

    /// The Legendre curves at a rational alpha.
    pub fn legendre(&self) -> Result<[LegendreCurve; 2]> {
        let l1 = self.lambda1.as_constant().ok_or(Error::Invalid("alpha is symbolic".into()))?;
        let l2 = self.lambda2.as_constant().ok_or(Error::Invalid("alpha is symbolic".into()))?;
        Ok([LegendreCurve::new(l1)?, LegendreCurve::new(l2)?])
    }

    /// The four point-on-curve identities and the two automorphism checks.
    pub fn identity_checks(&self) -> Result<Vec<IdentityCheck>> {
        let mut out = Vec::new();
        let curves = [self.twisted(1), self.twisted(2)];
        for (k, p) in self.points.iter().enumerate() {
            let c = &curves[k / 2];
            out.push(IdentityCheck {
                name: format!("{}: P{} on E{}^g", self.id, k + 1, k / 2 + 1),
                passed: c.contains(p)?,
            });
        }
        for (i, c) in curves.iter().enumerate() {
            let passed = match verify_function_field_independence(c, &self.points[2 * i], &self.points[2 * i + 1]) {
                Ok(b) => b,
                Err(Error::IdentityFailure(_)) => false,
                Err(e) => return Err(e),
            };
            out.push(IdentityCheck {
                name: format!("{}: u -> -u fixes P{} and negates P{}", self.id, 2 * i + 1, 2 * i + 2),
                passed,
            });
        }
        Ok(out)
    }

    /// Fails with [`Error::IdentityFailure`] naming the first failing check.
    pub fn verify(&self) -> Result<()> {
        match self.identity_checks()?.into_iter().find(|c| !c.passed) {
            Some(c) => Err(Error::IdentityFailure(c.name)),
            None => Ok(()),
        }
    }

    /// `(deg g - 1) / 2` for `g` as a polynomial in `t`.
    pub fn genus_bound(&self) -> Result<u32> {
        genus_bound(&self.g, Var::T)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symalg::rat::{rat, rat_int};

    #[test]
    fn symbolic_identities_hold() {
        for id in [FamilyId::Thm51, FamilyId::Thm53] {
            let f = id.build(None).unwrap();
            assert!(f.identity_checks().unwrap().iter().all(|c| c.passed));
            assert_eq!(f.g.degree(Var::T), 12);
        }
    }

    #[test]
    fn specialised_lambdas() {
        let f = family_theorem51(Some(&rat_int(2))).unwrap();
        assert_eq!(f.lambda1.as_constant(), Some(rat(-25, 9)));
        assert_eq!(f.lambda2.as_constant(), Some(rat(25, 16)));
        let f = family_theorem53(Some(&rat_int(2))).unwrap();
        assert_eq!(f.lambda1.as_constant(), Some(rat(34, 9)));
        assert_eq!(f.lambda2.as_constant(), Some(rat(-9, 16)));
        let [e1, e2] = f.legendre().unwrap();
        assert!(!e1.is_isomorphic_to(&e2));
    }

    #[test]
    fn excluded_sets() {
        for id in [FamilyId::Thm51, FamilyId::Thm53] {
            let f = id.build(Some(&rat(5, 2))).unwrap();
            assert_eq!(f.excluded_alpha, vec![rat_int(-1), rat_int(0), rat_int(1)]);
            assert_eq!(f.genus_bound().unwrap(), 5);
        }
        assert_eq!(family_theorem51(Some(&rat_int(1))).unwrap_err(), Error::BadAlpha);
        assert_eq!(family_theorem53(Some(&rat_int(0))).unwrap_err(), Error::BadAlpha);
        assert_eq!(family_theorem53(Some(&rat_int(-1))).unwrap_err().to_string(), "alpha must avoid {0, 1, -1}");
    }

    #[test]
    fn perturbed_lambda_fails_only_its_curve() {
        let mut f = family_theorem51(Some(&rat_int(3))).unwrap();
        f.lambda1 = &f.lambda1 + &RatFunc::constant(rat(1, 1000));
        let checks = f.identity_checks().unwrap();
        let failed: Vec<_> = checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
        assert_eq!(failed.len(), 3, "{failed:?}");
        assert!(checks[2].passed && checks[3].passed && checks[5].passed);
        assert!(matches!(f.verify(), Err(Error::IdentityFailure(_))));
    }

    #[test]
    fn negative_twist_is_accepted() {
        let f = family_theorem53(Some(&rat_int(2))).unwrap();
        let g1 = f.g.eval_vars(&[(Var::T, rat_int(0))]).constant_value().unwrap();
        assert!(g1 < Rat::zero());
    }
}
