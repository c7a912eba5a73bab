//! Square-free decomposition and square classes of polynomials and rational functions.


use super::gcd::{content, gcd};
use super::poly::{MPoly, Var};
use super::rat::{rat_sqrt_exact, Rat};
use super::ratfunc::RatFunc;
use crate::{Error, Result};

/// `p = constant * kernel * root^2` with `kernel` square-free and monic.
#[derive(Clone, Debug, PartialEq)]
pub struct SquareFreePart {
    pub constant: Rat,
    pub kernel: MPoly,
    pub root: MPoly,
}

/// Full square-free factorisation `p = c * prod f_i^{e_i}` with pairwise coprime,
/// monic, square-free `f_i`. The variable `main_var` is split first.
pub fn squarefree_decomposition(p: &MPoly, main_var: Var) -> Result<(Rat, Vec<(MPoly, u32)>)> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut factors = Vec::new();
    decompose_into(p, Some(main_var), &mut factors);
    let mut product = MPoly::one();
    for (f, e) in &factors {
        product = &product * &f.pow(*e);
    }
    let c = p
        .div_exact(&product)
        .and_then(|q| q.constant_value())
        .expect("square-free factors multiply back to the input up to a constant");
    Ok((c, factors))
}

fn decompose_into(p: &MPoly, prefer: Option<Var>, out: &mut Vec<(MPoly, u32)>) {
    if p.is_constant() {
        return;
    }
    let v = match prefer {
        Some(v) if p.contains_var(v) => v,
        _ => p.vars()[0],
    };
    let cont = content(p, v);
    let pp = p.div_exact(&cont).expect("content divides");
    yun(&pp, v, out);
    decompose_into(&cont, None, out);
}

/// Yun's algorithm for a polynomial primitive in `v`.
fn yun(a: &MPoly, v: Var, out: &mut Vec<(MPoly, u32)>) {
    let da = a.derivative(v);
    let c = gcd(a, &da);
    if c.is_one() {
        out.push((a.monic(), 1));
        return;
    }
    let mut w = a.div_exact(&c).expect("gcd divides");
    let mut y = da.div_exact(&c).expect("gcd divides");
    let mut z = &y - &w.derivative(v);
    let mut i = 1u32;
    while w.contains_var(v) {
        let g = gcd(&w, &z);
        if g.contains_var(v) {
            out.push((g.monic(), i));
        }
        w = w.div_exact(&g).expect("gcd divides");
        y = z.div_exact(&g).expect("gcd divides");
        z = &y - &w.derivative(v);
        i += 1;
    }
}

/// The class of `p` modulo squares: the product of its factors of odd multiplicity.
pub fn squarefree_part(p: &MPoly, main_var: Var) -> Result<SquareFreePart> {
    let (constant, factors) = squarefree_decomposition(p, main_var)?;
    let mut kernel = MPoly::one();
    let mut root = MPoly::one();
    for (f, e) in factors {
        if e % 2 == 1 {
            kernel = &kernel * &f;
        }
        if e >= 2 {
            root = &root * &f.pow(e / 2);
        }
    }
    Ok(SquareFreePart { constant, kernel, root })
}

/// `r = constant * kernel * root^2` for a nonzero rational function.
#[derive(Clone, Debug, PartialEq)]
pub struct SquareClass {
    pub constant: Rat,
    pub kernel: MPoly,
    pub root: RatFunc,
}

impl SquareClass {
    /// True when the represented function is a square in Q(vars).
    pub fn is_square(&self) -> bool {
        self.kernel.is_one() && rat_sqrt_exact(&self.constant).is_some()
    }

    /// Square root of the represented function, when it is a square.
    pub fn sqrt(&self) -> Option<RatFunc> {
        if !self.kernel.is_one() {
            return None;
        }
        let c = rat_sqrt_exact(&self.constant)?;
        Some(&RatFunc::constant(c) * &self.root)
    }
}

/// Square class of a rational function, using `n/d = n*d / d^2`.
pub fn square_class(r: &RatFunc, main_var: Var) -> Result<SquareClass> {
    if r.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let n = squarefree_part(r.num(), main_var)?;
    let d = squarefree_part(r.den(), main_var)?;
    let kernel = &n.kernel * &d.kernel;
    let root_den = &d.root * &d.kernel;
    let root = RatFunc::new(n.root.clone(), root_den)?;
    Ok(SquareClass { constant: &n.constant / &d.constant, kernel, root })
}

/// Whether `a / b` is a nonzero square in the function field.
pub fn same_square_class(a: &RatFunc, b: &RatFunc, main_var: Var) -> Result<bool> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(square_class(&a.checked_div(b)?, main_var)?.is_square())
}

/// Exact square root of a rational function, if it is a square.
pub fn sqrt_ratfunc(r: &RatFunc, main_var: Var) -> Result<Option<RatFunc>> {
    if r.is_zero() {
        return Ok(Some(RatFunc::zero()));
    }
    Ok(square_class(r, main_var)?.sqrt())
}
