use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::modp::FpCurve;
use super::{OrderCertificate, OrderMethod, OrderVerdict, MAZUR_ORDERS};
use crate::eccore::{Point, ProjPoint, WeierstrassCurve};
use crate::{Error, Result};

/// Exact check of `n P` for every `n` in [`MAZUR_ORDERS`].
///
/// Only `P, ..., 6P` are formed: `n P = O` iff `k P = -(n - k) P` for `k = n / 2`.
pub fn mazur_infinite_order(curve: &WeierstrassCurve, p: &ProjPoint) -> Result<OrderCertificate> {
    curve.check(p)?;
    let mut multiples = vec![Point::Infinity, p.clone()];
    for k in 2..=6 {
        let next = curve.add_unchecked(&multiples[k - 1], p);
        multiples.push(next);
    }
    let vanishes = |n: usize| -> bool {
        if n <= 6 {
            multiples[n].is_infinity()
        } else {
            let k = n / 2;
            multiples[k] == curve.neg(&multiples[n - k])
        }
    };
    let verdict = match MAZUR_ORDERS.iter().find(|&&n| vanishes(n as usize)) {
        Some(&n) => OrderVerdict::TorsionOfOrder(n),
        None => OrderVerdict::InfiniteOrder,
    };
    Ok(OrderCertificate {
        point: p.clone(),
        verdict,
        method: OrderMethod::MazurScan,
        witnesses: MAZUR_ORDERS.iter().map(|&n| n as u64).collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModPBound {
    /// gcd of the group orders; the rational torsion order divides it.
    pub bound: u64,
    /// `(p, #E(F_p))` for each accepted prime.
    pub counts: Vec<(u64, u64)>,
    /// Supplied primes that were even, composite or of bad reduction.
    pub rejected: Vec<u64>,
}

/// gcd of `#E(F_p)` over the supplied primes of good reduction.
pub fn modp_torsion_bound(curve: &WeierstrassCurve, primes: &[u64]) -> Result<ModPBound> {
    let mut counts = Vec::new();
    let mut rejected = Vec::new();
    for &p in primes {
        match FpCurve::reduce(curve, p) {
            Some(fc) => counts.push((p, fc.count_points())),
            None => rejected.push(p),
        }
    }
    if counts.is_empty() {
        return Err(Error::NoGoodPrime);
    }
    let bound = counts.iter().fold(0u64, |g, &(_, n)| g.gcd(&n));
    Ok(ModPBound { bound, counts, rejected })
}

/// Order certificate from the mod-p bound `N`: the torsion order of `P` divides `N`,
/// so `P` has infinite order when `k P != O` for every divisor `k` of `N` in the Mazur set.
pub fn modp_order_certificate(curve: &WeierstrassCurve, p: &ProjPoint, primes: &[u64]) -> Result<OrderCertificate> {
    curve.check(p)?;
    let bound = modp_torsion_bound(curve, primes)?;
    let used: Vec<u64> = bound.counts.iter().map(|&(q, _)| q).collect();
    let verdict = MAZUR_ORDERS
        .iter()
        .filter(|&&k| bound.bound % k as u64 == 0)
        .find(|&&k| curve.mul_unchecked(k as i64, p).is_infinity())
        .map_or(OrderVerdict::InfiniteOrder, |&k| OrderVerdict::TorsionOfOrder(k));
    Ok(OrderCertificate { point: p.clone(), verdict, method: OrderMethod::ModPBound, witnesses: used })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eccore::LegendreCurve;
    use crate::symalg::rat::{rat, rat_int};

    #[test]
    fn legendre_two_torsion() {
        let e = LegendreCurve::new(rat(-25, 9)).unwrap().weierstrass();
        let c = mazur_infinite_order(&e, &Point::Affine(rat_int(0), rat_int(0))).unwrap();
        assert_eq!(c.verdict, OrderVerdict::TorsionOfOrder(2));
        let c = mazur_infinite_order(&e, &Point::Infinity).unwrap();
        assert_eq!(c.verdict, OrderVerdict::TorsionOfOrder(1));
    }

    #[test]
    fn detects_orders_up_to_twelve() {
        // 11a1 has a point of order 5.
        let e = WeierstrassCurve::new(rat_int(0), rat_int(-1), rat_int(1), rat_int(-10), rat_int(-20)).unwrap();
        let c = mazur_infinite_order(&e, &Point::Affine(rat_int(5), rat_int(5))).unwrap();
        assert_eq!(c.verdict, OrderVerdict::TorsionOfOrder(5));
        // On y^2 = x^3 + 1, (2, 3) has order 6 and (0, 1) order 3.
        let e = WeierstrassCurve::short(rat_int(0), rat_int(1)).unwrap();
        let c = mazur_infinite_order(&e, &Point::Affine(rat_int(2), rat_int(3))).unwrap();
        assert_eq!(c.verdict, OrderVerdict::TorsionOfOrder(6));
        let c = mazur_infinite_order(&e, &Point::Affine(rat_int(0), rat_int(1))).unwrap();
        assert_eq!(c.verdict, OrderVerdict::TorsionOfOrder(3));
    }

    #[test]
    fn aux_seed_has_infinite_order() {
        let e = WeierstrassCurve::short(rat_int(-37611), rat_int(2266650)).unwrap();
        let x = rat(92625, 64);
        let rhs = &x * &x * &x - rat_int(37611) * &x + rat_int(2266650);
        let y = crate::symalg::rat::rat_sqrt_exact(&rhs).unwrap();
        let c = mazur_infinite_order(&e, &Point::Affine(x, y)).unwrap();
        assert_eq!(c.verdict, OrderVerdict::InfiniteOrder);
    }

    #[test]
    fn modp_bound_and_certificate() {
        let e = WeierstrassCurve::short(rat_int(0), rat_int(1)).unwrap();
        let b = modp_torsion_bound(&e, &[5, 7, 11, 13]).unwrap();
        assert_eq!(b.bound % 6, 0);
        assert!(b.rejected.is_empty());
        let c = modp_order_certificate(&e, &Point::Affine(rat_int(2), rat_int(3)), &[5, 7, 11]).unwrap();
        assert_eq!(c.verdict, OrderVerdict::TorsionOfOrder(6));
        assert_eq!(modp_torsion_bound(&e, &[2, 3]), Err(Error::NoGoodPrime));
    }
}
