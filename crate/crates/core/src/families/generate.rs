//! Certified twists from rational points of `C_alpha`.
//!
//! The walk runs over `n Q0 + m Q1` on the Weierstrass model of `C_alpha`
//! (`Q0` the 2-torsion image of `(0, -2 alpha)`, `Q1` the printed point),
//! ordered by `|n| + |m|` and then lexicographically. Each point is pulled
//! back to `(t, u)`, the family is specialised there, and candidates with a
//! new square class of `d = g_alpha(t)` are certified in parallel.

use std::collections::VecDeque;

use log::{debug, info, warn};
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::aux::{aux_curve, AuxCurve};
use super::pair::{FamilyId, PairFamily};
use crate::certify::{
    mazur_infinite_order, regulator_evidence, relation_scan, CertifyConfig, IndependenceReport, IndependenceVerdict,
    OrderCertificate,
};
use crate::eccore::{Point, ProjPoint, TwistedCurve};
use crate::symalg::factor::{rational_square_free, FactorBudget};
use crate::symalg::poly::Var;
use crate::symalg::rat::{is_rat_square, serde_rat, Rat};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GenerateConfig {
    pub family: FamilyId,
    pub certify: CertifyConfig,
    pub factor: FactorBudget,
    /// Walk points examined before giving up.
    pub max_candidates: usize,
}

impl Default for GenerateConfig {
    fn default() -> Self {
        Self {
            family: FamilyId::Thm51,
            certify: CertifyConfig::default(),
            factor: FactorBudget::default(),
            max_candidates: 400,
        }
    }
}

/// One certified output: `d`, both twists, four points and their certificates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwistRecord {
    pub family: FamilyId,
    #[serde(with = "serde_rat")]
    pub alpha: Rat,
    /// `[n, m]` for the walk point `n Q0 + m Q1`.
    pub walk: [i64; 2],
    #[serde(with = "serde_rat")]
    pub t: Rat,
    #[serde(with = "serde_rat")]
    pub u: Rat,
    #[serde(with = "serde_rat")]
    pub d_raw: Rat,
    #[serde(with = "serde_rat")]
    pub d_squarefree: Rat,
    /// `c` with `d_raw = d_squarefree * c^2`; points carry `y` scaled by `c`.
    #[serde(with = "serde_rat")]
    pub square_root: Rat,
    pub reduction_complete: bool,
    /// `E_1^d` and `E_2^d` as `d y^2 = f_i(x)` with `d = d_squarefree`.
    pub curves: [TwistedCurve; 2],
    /// Two points on each curve, on the models in `curves`.
    pub points: [ProjPoint; 4],
    /// Exact scans, run on the integral short model of each curve.
    pub orders: [OrderCertificate; 4],
    pub independence: [IndependenceReport; 2],
}

impl TwistRecord {
    pub fn fully_certified(&self) -> bool {
        self.orders.iter().all(|o| o.is_infinite_order())
            && self.independence.iter().all(|r| r.verdict == IndependenceVerdict::IndependentEvidence)
    }
}

#[derive(Clone, Debug)]
struct Candidate {
    walk: [i64; 2],
    t: Rat,
    u: Rat,
    factors: Vec<Rat>,
    d_raw: Rat,
    /// Points on `d_raw y^2 = f_i(x)`.
    points: [ProjPoint; 4],
}

/// `(n, m)` by `|n| + |m|`, then lexicographically.
fn walk_order() -> impl Iterator<Item = (i64, i64)> {
    (0i64..).flat_map(|s| {
        (-s..=s).flat_map(move |n| {
            let r = s - n.abs();
            let ms = if r == 0 { vec![0] } else { vec![-r, r] };
            ms.into_iter().map(move |m| (n, m))
        })
    })
}

fn specialise(family: &PairFamily, aux: &AuxCurve, walk: [i64; 2], t: Rat, u: Rat) -> Result<Option<Candidate>> {
    let alpha = &aux.alpha;
    if t.is_zero() || u.is_zero() {
        return Ok(None);
    }
    // T = (a^2 - 1) t / (a (t^2 - 2)) must avoid +-1; t^2 = 2 has no rational solution.
    let one = Rat::one();
    let big_t = (alpha * alpha - &one) * &t / (alpha * (&t * &t - Rat::from_integer(2.into())));
    if big_t == one || big_t == -one {
        return Ok(None);
    }
    let asg = [(Var::T, t.clone())];
    let factors: Vec<Rat> = family
        .g_factors
        .iter()
        .map(|f| f.eval_vars(&asg).constant_value().expect("g is a polynomial in t"))
        .collect();
    let d_raw = factors.iter().fold(Rat::one(), |acc, f| acc * f);
    if d_raw.is_zero() {
        return Ok(None);
    }
    let mut points = Vec::with_capacity(4);
    for p in &family.points {
        match (p.x.eval(&asg, &u), p.y.eval(&asg, &u)) {
            (Ok(x), Ok(y)) => points.push(Point::Affine(x, y)),
            (Err(Error::DivisionByZero), _) | (_, Err(Error::DivisionByZero)) => return Ok(None),
            (Err(e), _) | (_, Err(e)) => return Err(e),
        }
    }
    Ok(Some(Candidate { walk, t, u, factors, d_raw, points: points.try_into().expect("four points") }))
}

fn certify_candidate(family: &PairFamily, alpha: &Rat, c: &Candidate, cfg: &GenerateConfig) -> Result<TwistRecord> {
    let (kernel, scale) = rational_square_free(&c.factors, &cfg.factor)?;
    let d_squarefree = Rat::from_integer(kernel.kernel.clone());
    // The kernel is in the square class of d_raw even when it is not proven
    // square-free, and keeps the models small.
    let (d, root) = (d_squarefree.clone(), scale);
    let [e1, e2] = family.legendre()?;
    let curves = [TwistedCurve::from_legendre(&e1, &d)?, TwistedCurve::from_legendre(&e2, &d)?];
    let points: Vec<ProjPoint> = c.points.iter().map(|p| TwistedCurve::rescale_point(p, &root)).collect();
    for (k, p) in points.iter().enumerate() {
        if !curves[k / 2].contains(p) {
            return Err(Error::IdentityFailure(format!("t = {}: P{} is not on E{}^d", c.t, k + 1, k / 2 + 1)));
        }
    }
    if curves[0].weierstrass().is_isomorphic_to(&curves[1].weierstrass()) {
        return Err(Error::Degenerate(format!("t = {}: the two twists are isomorphic", c.t)));
    }
    let (orders, independence) = certify_points(&curves, &points, &cfg.certify)?;
    Ok(TwistRecord {
        family: family.id,
        alpha: alpha.clone(),
        walk: c.walk,
        t: c.t.clone(),
        u: c.u.clone(),
        d_raw: c.d_raw.clone(),
        d_squarefree,
        square_root: root,
        reduction_complete: kernel.complete,
        curves,
        points: points.try_into().expect("four points"),
        orders,
        independence,
    })
}

/// Mazur scans of all four points and independence evidence for each pair,
/// on the integral short models.
pub fn certify_points(
    curves: &[TwistedCurve; 2],
    points: &[ProjPoint],
    cfg: &CertifyConfig,
) -> Result<([OrderCertificate; 4], [IndependenceReport; 2])> {
    let mut orders = Vec::with_capacity(4);
    let mut reports = Vec::with_capacity(2);
    for (i, curve) in curves.iter().enumerate() {
        let model = curve.integral_model();
        let p = model.map(&points[2 * i]);
        let q = model.map(&points[2 * i + 1]);
        orders.push(mazur_infinite_order(&model.curve, &p)?);
        orders.push(mazur_infinite_order(&model.curve, &q)?);
        reports.push(regulator_evidence(&model.curve, &p, &q, cfg)?);
    }
    Ok((orders.try_into().expect("four"), reports.try_into().expect("two")))
}

/// A lazy stream of certified records in walk order.
pub struct TwistStream {
    family: PairFamily,
    aux: AuxCurve,
    cfg: GenerateConfig,
    count: usize,
    emitted: usize,
    walk: Box<dyn Iterator<Item = (i64, i64)> + Send>,
    examined: usize,
    /// `d_raw` of every class already handed to certification.
    seen: Vec<Rat>,
    buffer: VecDeque<TwistRecord>,
    exhausted: bool,
}

/// Streams up to `count` fully certified twists with pairwise distinct square classes.
pub fn generate_twists(alpha: &Rat, count: usize, cfg: &GenerateConfig) -> Result<TwistStream> {
    let family = cfg.family.build(Some(alpha))?;
    let aux = aux_curve(alpha)?;
    Ok(TwistStream {
        family,
        aux,
        cfg: cfg.clone(),
        count,
        emitted: 0,
        walk: Box::new(walk_order()),
        examined: 0,
        seen: Vec::new(),
        buffer: VecDeque::new(),
        exhausted: false,
    })
}

impl TwistStream {
    pub fn family(&self) -> &PairFamily {
        &self.family
    }

    pub fn aux(&self) -> &AuxCurve {
        &self.aux
    }

    fn next_candidates(&mut self, want: usize) -> Result<Vec<Candidate>> {
        let mut out = Vec::new();
        let curve = &self.aux.map.curve;
        while out.len() < want {
            if self.examined >= self.cfg.max_candidates {
                self.exhausted = true;
                break;
            }
            let (n, m) = self.walk.next().expect("the walk is infinite");
            self.examined += 1;
            let r = curve.add_unchecked(&curve.mul_unchecked(n, &self.aux.q0), &curve.mul_unchecked(m, &self.aux.q1));
            if r.is_infinity() {
                continue;
            }
            let (t, u) = match self.aux.map.inverse(&r) {
                Ok(tu) => tu,
                Err(Error::ExceptionalLocus(why)) => {
                    debug!("walk ({n}, {m}) skipped: {why}");
                    continue;
                }
                Err(e) => return Err(e),
            };
            let Some(c) = specialise(&self.family, &self.aux, [n, m], t, u)? else {
                debug!("walk ({n}, {m}) skipped: degenerate t");
                continue;
            };
            if self.seen.iter().any(|d| is_rat_square(&(d * &c.d_raw))) {
                continue;
            }
            self.seen.push(c.d_raw.clone());
            out.push(c);
        }
        Ok(out)
    }
}

impl Iterator for TwistStream {
    type Item = Result<TwistRecord>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            if let Some(r) = self.buffer.pop_front() {
                self.emitted += 1;
                return Some(Ok(r));
            }
            if self.emitted >= self.count || self.exhausted {
                return None;
            }
            let batch = match self.next_candidates(self.count - self.emitted) {
                Ok(b) => b,
                Err(e) => return Some(Err(e)),
            };
            if batch.is_empty() {
                warn!("walk budget of {} points exhausted", self.cfg.max_candidates);
                return None;
            }
            let (family, alpha, cfg) = (&self.family, &self.aux.alpha, &self.cfg);
            let results: Vec<Result<TwistRecord>> =
                batch.par_iter().map(|c| certify_candidate(family, alpha, c, cfg)).collect();
            for (c, r) in batch.iter().zip(results) {
                match r {
                    Ok(rec) if rec.fully_certified() => {
                        info!("t = {} certified", rec.t);
                        self.buffer.push_back(rec);
                    }
                    Ok(_) => warn!("t = {}: certification inconclusive, skipped", c.t),
                    Err(e @ Error::IdentityFailure(_)) => return Some(Err(e)),
                    Err(e) => warn!("t = {}: {e}, skipped", c.t),
                }
            }
        }
    }
}

/// Re-verifies a record from its serialised data. Returns the list of
/// discrepancies; empty means every check reproduced.
pub fn recheck_record(rec: &TwistRecord, cfg: &CertifyConfig, with_heights: bool) -> Result<Vec<String>> {
    let mut bad = Vec::new();
    let family = rec.family.build(Some(&rec.alpha))?;
    let asg = [(Var::T, rec.t.clone())];
    let q = family.q.eval_vars(&asg).constant_value().expect("q is a polynomial in t");
    if &rec.u * &rec.u != q {
        bad.push("u^2 != q(t)".to_string());
    }
    let g = family.g.eval_vars(&asg).constant_value().expect("g is a polynomial in t");
    if g != rec.d_raw {
        bad.push("d_raw != g(t)".to_string());
    }
    let root2 = &rec.square_root * &rec.square_root;
    if rec.square_root.is_zero() || rec.d_squarefree.is_zero() || &rec.d_squarefree * &root2 != rec.d_raw {
        bad.push("d_raw != d_squarefree * c^2".to_string());
    }
    let d = &rec.d_squarefree;
    let [e1, e2] = family.legendre()?;
    let expected = [TwistedCurve::from_legendre(&e1, d)?, TwistedCurve::from_legendre(&e2, d)?];
    if rec.curves != expected {
        bad.push("curves differ from the family at d".to_string());
    }
    for (k, p) in rec.points.iter().enumerate() {
        if !rec.curves[k / 2].contains(p) {
            bad.push(format!("P{} is not on E{}^d", k + 1, k / 2 + 1));
        }
        let sym = &family.points[k];
        let formula = match (sym.x.eval(&asg, &rec.u), sym.y.eval(&asg, &rec.u)) {
            (Ok(x), Ok(y)) => TwistedCurve::rescale_point(&Point::Affine(x, y), &rec.square_root),
            _ => Point::Infinity,
        };
        if &formula != p {
            bad.push(format!("P{} differs from the family formula at (t, u)", k + 1));
        }
    }
    if !bad.is_empty() {
        return Ok(bad);
    }
    for (i, curve) in rec.curves.iter().enumerate() {
        let model = curve.integral_model();
        let p = model.map(&rec.points[2 * i]);
        let q = model.map(&rec.points[2 * i + 1]);
        for (k, pt) in [(2 * i, &p), (2 * i + 1, &q)] {
            if mazur_infinite_order(&model.curve, pt)? != rec.orders[k] {
                bad.push(format!("order certificate of P{} does not reproduce", k + 1));
            }
        }
        let stored = &rec.independence[i];
        let redo = if with_heights {
            let mut c = cfg.clone();
            c.relation_bound = stored.relation_scan_bound;
            c.tolerance = stored.regulator_tolerance;
            regulator_evidence(&model.curve, &p, &q, &c)?
        } else {
            relation_scan(&model.curve, &p, &q, stored.relation_scan_bound, &cfg.primes)?
        };
        if redo.points != stored.points || redo.relations_found != stored.relations_found {
            bad.push(format!("relation scan on E{}^d does not reproduce", i + 1));
        }
        if with_heights && redo != *stored {
            bad.push(format!("regulator evidence on E{}^d does not reproduce", i + 1));
        }
    }
    if !rec.fully_certified() {
        bad.push("record is not fully certified".to_string());
    }
    Ok(bad)
}
