use num_traits::{Signed, Zero};

use crate::eccore::{Point, ProjPoint, WeierstrassCurve};
use crate::symalg::rat::{decimal_digits, ln_abs, IntZ, Rat};
use crate::{Error, Result};

/// `log max(|p|, |q|)` for `x = p/q`.
pub fn naive_height(x: &Rat) -> f64 {
    let p = x.numer().abs();
    let q = x.denom();
    if &p > q {
        ln_abs(&p)
    } else {
        ln_abs(q)
    }
}

fn digits(p: &ProjPoint) -> usize {
    match p {
        Point::Infinity => 0,
        Point::Affine(x, y) => [x.numer(), x.denom(), y.numer(), y.denom()]
            .into_iter()
            .map(decimal_digits)
            .max()
            .unwrap_or(0),
    }
}

/// `x(2^n P)` on `y^2 = x^3 + A x + B` with integer `A`, `B`, doubling the
/// pair `(X, Z)` without reducing and taking one gcd at the end:
/// `X' = (X^2 - A Z^2)^2 - 8 B X Z^3`, `Z' = 4 Z (X^3 + A X Z^2 + B Z^3)`.
fn x_only_doublings(a: &IntZ, b: &IntZ, x: &Rat, n: u32, digit_budget: usize) -> Result<Option<Rat>> {
    let mut xn = x.numer().clone();
    let mut zn = x.denom().clone();
    for _ in 0..n {
        let x2 = &xn * &xn;
        let z2 = &zn * &zn;
        let z3 = &z2 * &zn;
        let t = &x2 - a * &z2;
        let new_x = &t * &t - IntZ::from(8) * b * &xn * &z3;
        let new_z = IntZ::from(4) * &zn * (&x2 * &xn + a * &xn * &z2 + b * &z3);
        if new_z.is_zero() {
            return Ok(None);
        }
        xn = new_x;
        zn = new_z;
        if decimal_digits(&xn).max(decimal_digits(&zn)) > digit_budget {
            return Err(Error::DigitBudget(digit_budget));
        }
    }
    Ok(Some(Rat::new(xn, zn)))
}

/// `h(2^n P) / 4^n`, doubling exactly and taking logarithms only at the end.
pub fn canonical_height_estimate(
    curve: &WeierstrassCurve,
    p: &ProjPoint,
    n_doublings: u32,
    digit_budget: usize,
) -> Result<f64> {
    if n_doublings == 0 {
        return Err(Error::Invalid("at least one doubling is required".into()));
    }
    curve.check(p)?;
    if let (true, Point::Affine(x, _)) = (curve.is_short() && curve.a4.is_integer() && curve.a6.is_integer(), p) {
        let scale = 4f64.powi(n_doublings as i32);
        return Ok(match x_only_doublings(&curve.a4.to_integer(), &curve.a6.to_integer(), x, n_doublings, digit_budget)? {
            Some(xn) => naive_height(&xn) / scale,
            None => 0.0,
        });
    }
    let mut q = p.clone();
    for _ in 0..n_doublings {
        q = curve.add_unchecked(&q, &q);
        if digits(&q) > digit_budget {
            return Err(Error::DigitBudget(digit_budget));
        }
    }
    Ok(match &q {
        Point::Infinity => 0.0,
        Point::Affine(x, _) => naive_height(x) / 4f64.powi(n_doublings as i32),
    })
}

/// Gram matrix of the height pairing on `(P1, P2)`.
pub fn height_gram(
    curve: &WeierstrassCurve,
    p1: &ProjPoint,
    p2: &ProjPoint,
    n_doublings: u32,
    digit_budget: usize,
) -> Result<[[f64; 2]; 2]> {
    let h1 = canonical_height_estimate(curve, p1, n_doublings, digit_budget)?;
    let h2 = canonical_height_estimate(curve, p2, n_doublings, digit_budget)?;
    let sum = curve.add(p1, p2)?;
    let h12 = canonical_height_estimate(curve, &sum, n_doublings, digit_budget)?;
    let pairing = (h12 - h1 - h2) / 2.0;
    Ok([[h1, pairing], [pairing, h2]])
}
