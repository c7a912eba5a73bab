//! Reduction of curves and points modulo small primes of good reduction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::eccore::{Point, ProjPoint, WeierstrassCurve};
use crate::symalg::factor::is_probable_prime;
use crate::symalg::rat::Rat;

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    acc
}

fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

/// Euler's criterion: 1, -1 or 0.
pub fn legendre_symbol(a: u64, p: u64) -> i32 {
    let a = a % p;
    if a == 0 {
        return 0;
    }
    if powmod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// `r mod p`, or `None` when `p` divides the denominator.
pub fn reduce_rat(r: &Rat, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let den = r.denom().mod_floor(&pb).to_u64().expect("small");
    if den == 0 {
        return None;
    }
    let num = r.numer().mod_floor(&pb).to_u64().expect("small");
    Some(mulmod(num, invmod(den, p), p))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FpPoint {
    Infinity,
    Affine(u64, u64),
}

/// A long Weierstrass curve over `F_p`, `p` an odd prime of good reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpCurve {
    pub p: u64,
    a: [u64; 5],
}

impl FpCurve {
    /// `None` when `p` is not an odd prime, divides a coefficient denominator or the discriminant.
    pub fn reduce(curve: &WeierstrassCurve, p: u64) -> Option<FpCurve> {
        if p < 3 || !is_probable_prime(&BigInt::from(p)) {
            return None;
        }
        let a = [
            reduce_rat(&curve.a1, p)?,
            reduce_rat(&curve.a2, p)?,
            reduce_rat(&curve.a3, p)?,
            reduce_rat(&curve.a4, p)?,
            reduce_rat(&curve.a6, p)?,
        ];
        let disc = curve.discriminant();
        if reduce_rat(&disc, p)? == 0 {
            return None;
        }
        Some(FpCurve { p, a })
    }

    fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    fn add_f(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    /// `#E(F_p)` by enumerating `x` and solving the quadratic in `y`.
    pub fn count_points(&self) -> u64 {
        let p = self.p;
        let [a1, a2, a3, a4, a6] = self.a;
        let mut count = 1u64;
        for x in 0..p {
            let rhs = self.add_f(mulmod(self.add_f(mulmod(self.add_f(x, a2), x, p), a4), x, p), a6);
            let lin = self.add_f(mulmod(a1, x, p), a3);
            // y^2 + lin*y - rhs = 0 has 1 + (disc / p) roots, disc = lin^2 + 4 rhs.
            let disc = self.add_f(mulmod(lin, lin, p), mulmod(4, rhs, p));
            count += (1 + legendre_symbol(disc, p)) as u64;
        }
        count
    }

    pub fn reduce_point(&self, pt: &ProjPoint) -> FpPoint {
        match pt {
            Point::Infinity => FpPoint::Infinity,
            Point::Affine(x, y) => match (reduce_rat(x, self.p), reduce_rat(y, self.p)) {
                (Some(x), Some(y)) => FpPoint::Affine(x, y),
                // On a p-integral model a non-integral point lies in the kernel of reduction.
                _ => FpPoint::Infinity,
            },
        }
    }

    pub fn neg(&self, pt: FpPoint) -> FpPoint {
        match pt {
            FpPoint::Infinity => FpPoint::Infinity,
            FpPoint::Affine(x, y) => {
                let [a1, _, a3, _, _] = self.a;
                let t = self.add_f(self.add_f(y, mulmod(a1, x, self.p)), a3);
                FpPoint::Affine(x, self.sub(0, t))
            }
        }
    }

    pub fn add(&self, p1: FpPoint, p2: FpPoint) -> FpPoint {
        let p = self.p;
        let [a1, a2, a3, a4, a6] = self.a;
        let (x1, y1, x2, y2) = match (p1, p2) {
            (FpPoint::Infinity, q) | (q, FpPoint::Infinity) => return q,
            (FpPoint::Affine(x1, y1), FpPoint::Affine(x2, y2)) => (x1, y1, x2, y2),
        };
        let (lambda, nu) = if x1 == x2 {
            let den = self.add_f(self.add_f(self.add_f(y1, y2), mulmod(a1, x2, p)), a3);
            if den == 0 {
                return FpPoint::Infinity;
            }
            let inv = invmod(den, p);
            let num_l = self.sub(
                self.add_f(self.add_f(mulmod(3, mulmod(x1, x1, p), p), mulmod(mulmod(2, a2, p), x1, p)), a4),
                mulmod(a1, y1, p),
            );
            let num_n = self.sub(
                self.add_f(self.add_f(self.sub(0, mulmod(mulmod(x1, x1, p), x1, p)), mulmod(a4, x1, p)), mulmod(2, a6, p)),
                mulmod(a3, y1, p),
            );
            (mulmod(num_l, inv, p), mulmod(num_n, inv, p))
        } else {
            let inv = invmod(self.sub(x2, x1), p);
            (mulmod(self.sub(y2, y1), inv, p), mulmod(self.sub(mulmod(y1, x2, p), mulmod(y2, x1, p)), inv, p))
        };
        let x3 = self.sub(self.sub(self.sub(self.add_f(mulmod(lambda, lambda, p), mulmod(a1, lambda, p)), a2), x1), x2);
        let y3 = self.sub(self.sub(self.sub(0, mulmod(self.add_f(lambda, a1), x3, p)), nu), a3);
        FpPoint::Affine(x3, y3)
    }

    pub fn mul(&self, n: u64, pt: FpPoint) -> FpPoint {
        let mut acc = FpPoint::Infinity;
        let mut run = pt;
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(acc, run);
            }
            run = self.add(run, run);
            k >>= 1;
        }
        acc
    }

    /// Order of a point, given the group order.
    pub fn order(&self, pt: FpPoint, group_order: u64) -> u64 {
        let mut n = group_order;
        for (q, _) in small_factorization(group_order) {
            while n.is_multiple_of(q) && self.mul(n / q, pt) == FpPoint::Infinity {
                n /= q;
            }
        }
        n
    }
}

fn small_factorization(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n.is_multiple_of(q) {
            let mut e = 0;
            while n.is_multiple_of(q) {
                n /= q;
                e += 1;
            }
            out.push((q, e));
        }
        q += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// The first `count` odd primes `>= 7` at which `curve` has good reduction.
pub fn default_good_primes(curve: &WeierstrassCurve, count: usize) -> Vec<u64> {
    good_primes_from(curve, 7, count)
}

/// The first `count` odd primes `>= start` at which `curve` has good reduction.
pub fn good_primes_from(curve: &WeierstrassCurve, start: u64, count: usize) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = start | 1;
    while out.len() < count {
        if FpCurve::reduce(curve, p).is_some() {
            out.push(p);
        }
        p += 2;
    }
    out
}

/// True when reduction proves `pt` is not a rational torsion point: a torsion
/// point of order `n` reduces to a point of order exactly `n` at every odd
/// prime of good reduction, and `n` lies in `{1, ..., 10, 12}`.
pub fn reduction_excludes_torsion(curve: &WeierstrassCurve, pt: &ProjPoint, primes: &[u64]) -> bool {
    if pt.is_infinity() {
        return false;
    }
    let mut seen: Option<u64> = None;
    for &p in primes {
        let Some(fc) = FpCurve::reduce(curve, p) else { continue };
        let reduced = fc.reduce_point(pt);
        let order = fc.order(reduced, fc.count_points());
        if !super::MAZUR_ORDERS.contains(&(order as u32)) {
            return true;
        }
        match seen {
            Some(o) if o != order => return true,
            _ => seen = Some(order),
        }
    }
    false
}
