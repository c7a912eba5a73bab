//! Multivariate gcd over Q by the recursive primitive remainder sequence.
//!
//! A polynomial is viewed as univariate in one of its variables with
//! coefficients in the remaining ones; contents are split off recursively
//! and the primitive parts are run through pseudo-remainders. An evaluation
//! image at a point where both leading coefficients survive bounds the
//! degree of the gcd from above and settles the common coprime case early.

use num_traits::{One, Zero};

use super::poly::{MPoly, Var, NVARS};
use super::rat::{rat_int, Rat};
use crate::{Error, Result};

/// Monic gcd of `p` and `q` viewed in `main_var`; fails only when both are zero.
///
/// The result is normalised so that its lexicographically leading
/// coefficient is 1, and divides both inputs exactly.
pub fn poly_gcd(p: &MPoly, q: &MPoly, main_var: Var) -> Result<MPoly> {
    if p.is_zero() && q.is_zero() {
        return Err(Error::ZeroGcd);
    }
    Ok(gcd_with_preference(p, q, Some(main_var)))
}

/// Gcd normalised to leading coefficient 1; `gcd(0, 0) = 0`.
pub fn gcd(p: &MPoly, q: &MPoly) -> MPoly {
    gcd_with_preference(p, q, None)
}

fn gcd_with_preference(p: &MPoly, q: &MPoly, prefer: Option<Var>) -> MPoly {
    if p.is_zero() {
        return q.monic();
    }
    if q.is_zero() {
        return p.monic();
    }
    if p.is_constant() || q.is_constant() {
        return MPoly::one();
    }
    let mp = p.monomial_content();
    let mq = q.monomial_content();
    let mut common = [0u32; NVARS];
    for i in 0..NVARS {
        common[i] = mp[i].min(mq[i]);
    }
    let p1 = p.div_monomial(&mp);
    let q1 = q.div_monomial(&mq);
    let g = gcd_no_monomial(&p1, &q1, prefer);
    g.mul_monomial(&common).monic()
}

/// Gcd of inputs that carry no monomial factor.
fn gcd_no_monomial(p: &MPoly, q: &MPoly, prefer: Option<Var>) -> MPoly {
    if p.is_constant() || q.is_constant() {
        return MPoly::one();
    }
    if p.monic() == q.monic() {
        return p.monic();
    }
    let pv = p.vars();
    let qv = q.vars();
    // A variable present in only one input can be eliminated through its content.
    if let Some(&v) = pv.iter().find(|v| !qv.contains(v)) {
        return gcd_with_preference(&content(p, v), q, prefer);
    }
    if let Some(&v) = qv.iter().find(|v| !pv.contains(v)) {
        return gcd_with_preference(p, &content(q, v), prefer);
    }
    let v = match prefer {
        Some(v) if pv.contains(&v) => v,
        _ => *pv
            .iter()
            .min_by_key(|&&v| p.degree(v).max(q.degree(v)))
            .expect("non-constant polynomial has a variable"),
    };
    let cp = content(p, v);
    let cq = content(q, v);
    let c = gcd(&cp, &cq);
    let pp = p.div_exact(&cp).expect("content divides");
    let qq = q.div_exact(&cq).expect("content divides");
    let g = primitive_gcd(&pp, &qq, v);
    (&c * &g).monic()
}

/// Content of `p` with respect to `v`: the gcd of its coefficients in `v`.
pub fn content(p: &MPoly, v: Var) -> MPoly {
    let coeffs = p.to_univariate(v);
    let mut g = MPoly::zero();
    // Constant coefficients make the content 1 immediately.
    if coeffs.iter().any(|c| !c.is_zero() && c.is_constant()) {
        return if p.is_zero() { MPoly::zero() } else { MPoly::one() };
    }
    let mut sorted: Vec<&MPoly> = coeffs.iter().filter(|c| !c.is_zero()).collect();
    sorted.sort_by_key(|c| c.nterms());
    for c in sorted {
        g = gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Primitive part of `p` with respect to `v`.
pub fn primitive_part(p: &MPoly, v: Var) -> MPoly {
    if p.is_zero() {
        return MPoly::zero();
    }
    let c = content(p, v);
    p.div_exact(&c).expect("content divides").monic()
}

/// Gcd of two polynomials primitive in `v`, both of positive degree in `v`.
fn primitive_gcd(p: &MPoly, q: &MPoly, v: Var) -> MPoly {
    let (mut a, mut b) = if p.degree(v) >= q.degree(v) {
        (p.clone(), q.clone())
    } else {
        (q.clone(), p.clone())
    };
    if let Some(bound) = image_degree_bound(&a, &b, v) {
        if bound == 0 {
            return MPoly::one();
        }
        if bound == b.degree(v)
            && a.div_exact(&b).is_some() {
                return b.monic();
            }
    }
    if a.div_exact(&b).is_some() {
        return b.monic();
    }
    loop {
        let r = pseudo_remainder(&a, &b, v);
        if r.is_zero() {
            return primitive_part(&b, v);
        }
        if r.degree(v) == 0 {
            return MPoly::one();
        }
        a = b;
        b = primitive_part(&r, v);
    }
}

/// `lc(b)^k * a mod b` in `v`, reducing the leading term one step at a time.
pub fn pseudo_remainder(a: &MPoly, b: &MPoly, v: Var) -> MPoly {
    let mut r = a.to_univariate(v);
    let bc = b.to_univariate(v);
    let db = bc.len() - 1;
    let lb = &bc[db];
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = &*c * lb;
        }
        for (k, bk) in bc.iter().enumerate() {
            let term = &lr * bk;
            r[k + shift] = &r[k + shift] - &term;
        }
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    MPoly::from_univariate(v, &r)
}

/// Upper bound for `deg_v gcd(a, b)` from a univariate image, when a good
/// evaluation point is found among a few deterministic candidates.
fn image_degree_bound(a: &MPoly, b: &MPoly, v: Var) -> Option<u32> {
    let others: Vec<Var> = Var::ALL
        .into_iter()
        .filter(|&w| w != v && (a.contains_var(w) || b.contains_var(w)))
        .collect();
    let la = a.lead_coeff_in(v);
    let lb = b.lead_coeff_in(v);
    for attempt in 0..4i64 {
        let assignment: Vec<(Var, Rat)> = others
            .iter()
            .enumerate()
            .map(|(i, &w)| (w, rat_int(3 + 7 * i as i64 + 13 * attempt)))
            .collect();
        if la.eval_vars(&assignment).is_zero() || lb.eval_vars(&assignment).is_zero() {
            continue;
        }
        let ia = a.eval_vars(&assignment).univariate_coeffs(v)?;
        let ib = b.eval_vars(&assignment).univariate_coeffs(v)?;
        return Some(univariate_gcd(&ia, &ib).len() as u32 - 1);
    }
    None
}

fn trim(p: &mut Vec<Rat>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// Monic gcd of dense univariate polynomials over Q (lowest degree first).
pub fn univariate_gcd(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = univariate_rem(&a, &b);
        a = b;
        b = r;
    }
    if let Some(l) = a.last().cloned() {
        for c in a.iter_mut() {
            *c = &*c / &l;
        }
    }
    if a.is_empty() {
        a.push(Rat::one());
    }
    a
}

fn univariate_rem(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let inv = b[db].recip();
    while r.len() > db {
        let dr = r.len() - 1;
        let f = &r[dr] * &inv;
        for (k, bk) in b.iter().enumerate() {
            r[dr - db + k] -= &f * bk;
        }
        r.pop();
        trim(&mut r);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symalg::parse::parse_poly;

    fn p(s: &str) -> MPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn univariate_examples() {
        assert_eq!(poly_gcd(&p("t^2-1"), &p("t-1"), Var::T).unwrap(), p("t-1"));
        assert_eq!(poly_gcd(&p("t^2-1"), &p("t+2"), Var::T).unwrap(), MPoly::one());
        assert_eq!(poly_gcd(&MPoly::zero(), &MPoly::zero(), Var::T), Err(Error::ZeroGcd));
        assert_eq!(poly_gcd(&p("2*t+4"), &MPoly::zero(), Var::T).unwrap(), p("t+2"));
    }

    #[test]
    fn gcd_with_symbolic_root() {
        let a = p("(t-α)^2");
        let b = p("(t-α)*(t-1)");
        let g = poly_gcd(&a, &b, Var::T).unwrap();
        assert_eq!(g, p("t-α"));
        // exact division certifies the common factor
        assert!(a.div_exact(&g).is_some() && b.div_exact(&g).is_some());
        let (ca, cb) = (a.div_exact(&g).unwrap(), b.div_exact(&g).unwrap());
        assert!(gcd(&ca, &cb).is_one());
    }

    #[test]
    fn multivariate_common_factor() {
        let common = p("α^2*t^4 - (α^2+1)^2*t^2 + 4*α^2");
        let a = &common * &p("t^3 + α*t - 5");
        let b = &common * &p("(α-1)*t^2 + 7");
        assert_eq!(gcd(&a, &b), common.monic());
        let c = p("x*t^2*α");
        assert_eq!(gcd(&(&c * &p("x+1")), &(&c * &p("t-3"))), c.monic());
    }

    #[test]
    fn content_and_primitive_part() {
        let f = p("(α^2-1)*t^2 + (α-1)*t");
        assert_eq!(content(&f, Var::T), p("α-1"));
        assert_eq!(primitive_part(&f, Var::T), p("(α+1)*t^2 + t").monic());
    }
}
