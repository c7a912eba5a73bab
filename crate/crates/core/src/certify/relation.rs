use log::debug;

use super::heights::height_gram;
use super::modp::{good_primes_from, reduction_excludes_torsion};
use super::order::mazur_infinite_order;
use super::{round_sig, CertifyConfig, IndependenceReport, IndependenceVerdict, OrderVerdict};
use crate::eccore::{Point, ProjPoint, WeierstrassCurve};
use crate::symalg::rat::is_integral;
use crate::{Error, Result};

/// Primes used to rule out torsion by reduction before an exact scan. Above
/// 100 a reduced order rarely lands in Mazur's list by accident.
const FILTER_PRIMES: usize = 8;
const FILTER_START: u64 = 101;

/// Nagell-Lutz: on a short model with integral coefficients a torsion point
/// has integral coordinates.
fn integrality_excludes_torsion(curve: &WeierstrassCurve, pt: &ProjPoint) -> bool {
    let integral_model = curve.is_short() && is_integral(&curve.a4) && is_integral(&curve.a6);
    match pt {
        Point::Affine(x, y) => integral_model && !(is_integral(x) && is_integral(y)),
        Point::Infinity => false,
    }
}

/// Pairs `(a, b)` with `0 < max(|a|, |b|) <= bound`, one of each `+-` pair,
/// ordered by `max(|a|, |b|)` and then lexicographically.
pub fn relation_pairs(bound: u32) -> Vec<(i64, i64)> {
    let b = bound as i64;
    let mut out = Vec::new();
    for m in 1..=b {
        for a in 0..=m {
            for c in -m..=m {
                if a.abs().max(c.abs()) != m || (a == 0 && c <= 0) {
                    continue;
                }
                out.push((a, c));
            }
        }
    }
    out
}

/// Exact scan for `a P1 + b P2` torsion with `|a|, |b| <= bound`.
///
/// Each combination is formed exactly. Integrality and reduction at good primes
/// prove most of
/// them non-torsion; the remaining ones get the full exact Mazur scan.
pub fn relation_scan(
    curve: &WeierstrassCurve,
    p1: &ProjPoint,
    p2: &ProjPoint,
    bound: u32,
    primes: &[u64],
) -> Result<IndependenceReport> {
    curve.check(p1)?;
    curve.check(p2)?;
    let primes: Vec<u64> = if primes.is_empty() { good_primes_from(curve, FILTER_START, FILTER_PRIMES) } else { primes.to_vec() };
    let b = bound as i64;
    let mult1: Vec<ProjPoint> = (0..=b).map(|k| curve.mul_unchecked(k, p1)).collect();
    let mult2: Vec<ProjPoint> = (0..=b).map(|k| curve.mul_unchecked(k, p2)).collect();
    let times2 = |k: i64| if k >= 0 { mult2[k as usize].clone() } else { curve.neg(&mult2[(-k) as usize]) };
    let mut relations = Vec::new();
    for (a, c) in relation_pairs(bound) {
        let r = curve.add_unchecked(&mult1[a as usize], &times2(c));
        let torsion = if r.is_infinity() {
            true
        } else if integrality_excludes_torsion(curve, &r) || reduction_excludes_torsion(curve, &r, &primes) {
            false
        } else {
            debug!("relation scan: exact Mazur scan for ({a}, {c})");
            matches!(mazur_infinite_order(curve, &r)?.verdict, OrderVerdict::TorsionOfOrder(_))
        };
        if torsion {
            relations.push((a, c));
        }
    }
    let verdict = match relations.first() {
        Some(&(a, c)) => IndependenceVerdict::RelationFound(a, c),
        None => IndependenceVerdict::Inconclusive,
    };
    Ok(IndependenceReport {
        points: [p1.clone(), p2.clone()],
        relation_scan_bound: bound,
        relations_found: relations,
        regulator_estimate: None,
        gram: None,
        regulator_tolerance: 0.0,
        verdict,
    })
}

/// Relation scan followed by the height-pairing determinant.
pub fn regulator_evidence(
    curve: &WeierstrassCurve,
    p1: &ProjPoint,
    p2: &ProjPoint,
    cfg: &CertifyConfig,
) -> Result<IndependenceReport> {
    let mut report = relation_scan(curve, p1, p2, cfg.relation_bound, &cfg.primes)?;
    report.regulator_tolerance = cfg.tolerance;
    if !report.relations_found.is_empty() {
        return Ok(report);
    }
    match height_gram(curve, p1, p2, cfg.doublings, cfg.digit_budget) {
        Ok(g) => {
            let g = [[round_sig(g[0][0]), round_sig(g[0][1])], [round_sig(g[1][0]), round_sig(g[1][1])]];
            let det = round_sig(g[0][0] * g[1][1] - g[0][1] * g[1][0]);
            report.gram = Some(g);
            report.regulator_estimate = Some(det);
            report.verdict = if det > cfg.tolerance {
                IndependenceVerdict::IndependentEvidence
            } else {
                IndependenceVerdict::Inconclusive
            };
        }
        Err(Error::DigitBudget(limit)) => {
            debug!("regulator estimate exceeded the digit budget {limit}");
            report.verdict = IndependenceVerdict::Inconclusive;
        }
        Err(e) => return Err(e),
    }
    Ok(report)
}
