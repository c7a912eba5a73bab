//! Re-derivation of a pair family from root-permuting maps `h_i` and the
//! parametrisation `T(t)`: the linear factors `k_i`, the relation
//! `f2(z) = T^2 f1(z)`, the genus-one curve `C` and the resulting twist.

use std::sync::Arc;

use serde::Serialize;

use super::lemmas::legendre_eval;
use super::pair::{FamilyId, PairFamily};
use crate::symalg::fraclin::FracLinMap;
use crate::symalg::parse::parse_expr;
use crate::symalg::poly::{MPoly, Var};
use crate::symalg::quadext::QuadExtElem;
use crate::symalg::ratfunc::RatFunc;
use crate::symalg::sqfree::{same_square_class, square_class};
use crate::{Error, Result};

/// Parametrisation `T = (a^2 - 1) t / (a (t^2 - 2))` shared by both families.
pub const T_OF_T: &str = "(α^2-1)*t/(α*(t^2-2))";

#[derive(Clone, Debug)]
pub struct PipelineInput {
    pub lambda1: RatFunc,
    pub lambda2: RatFunc,
    /// Maps in `z`.
    pub h1: FracLinMap,
    pub h2: FracLinMap,
    /// `T` as a function of `t`.
    pub t_expr: RatFunc,
    /// `q(t)` with `u^2 = q`, used for the point of `C`.
    pub modulus: Arc<MPoly>,
    /// Printed `k_i(z)`, compared up to squares and used verbatim for `C`.
    pub k_printed: Option<[RatFunc; 2]>,
    /// Printed `(z1, z2, z3)` on `C`.
    pub c_point: Option<[RatFunc; 3]>,
    /// The twist polynomial the derivation should reproduce up to squares.
    pub g_expected: Option<MPoly>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PipelineReport {
    /// Square-free part of `f_i(h_i(z)) / f_i(z)`.
    pub k: [String; 2],
    /// `k_i` agrees with `f_i(a0) (z + delta)` for `h_i = (a0 z + b) / (z + delta)`.
    pub k_matches_linear_form: [bool; 2],
    pub k_matches_printed: Option<[bool; 2]>,
    /// `z = (l1 T^2 - l2) / (T^2 - 1)`.
    pub z_of_big_t: String,
    pub relation_holds: bool,
    pub z_of_t: String,
    /// `z_i^2 = k_i(z(t))`, `z_i^2 = k_2(z(t))`, `z3^2 = f2/f1` in the extension ring.
    pub c_equations: Option<[bool; 3]>,
    /// `f1(z(t))`.
    pub twist: String,
    /// Square-free kernel of the twist in `t`, up to a rational constant.
    pub twist_kernel: String,
    pub matches_g: Option<bool>,
}

impl PipelineReport {
    /// Every check that was requested holds.
    pub fn all_hold(&self) -> bool {
        self.k_matches_linear_form.iter().all(|&b| b)
            && self.k_matches_printed.is_none_or(|k| k.iter().all(|&b| b))
            && self.relation_holds
            && self.c_equations.is_none_or(|c| c.iter().all(|&b| b))
            && self.matches_g != Some(false)
    }
}

fn linear_form(lambda: &RatFunc, h: &FracLinMap) -> Option<RatFunc> {
    let (a0, _, delta) = h.normalized()?;
    Some(&legendre_eval(lambda, &a0) * &(&RatFunc::var(Var::Z) + &delta))
}

/// Runs the derivation and checks each step exactly.
pub fn remark52_pipeline(input: &PipelineInput) -> Result<PipelineReport> {
    let zero = RatFunc::zero();
    let one = RatFunc::one();
    let lambdas = [&input.lambda1, &input.lambda2];
    let maps = [&input.h1, &input.h2];
    let mut k = Vec::with_capacity(2);
    let mut k_linear = [false; 2];
    for i in 0..2 {
        let (l, h) = (lambdas[i], maps[i]);
        if h.var != Var::Z {
            return Err(Error::WrongShape { expected: "a map in z", found: h.to_string() });
        }
        if !h.permutes(&[zero.clone(), one.clone(), l.clone()]) {
            return Err(Error::NotRootPermuting(format!("h{} = {h}", i + 1)));
        }
        let z = RatFunc::var(Var::Z);
        let ratio = legendre_eval(l, &h.as_ratfunc()).checked_div(&legendre_eval(l, &z))?;
        let class = square_class(&ratio, Var::Z)?;
        let ki = RatFunc::from_poly(class.kernel.scale(&class.constant));
        k_linear[i] = match linear_form(l, h) {
            Some(lf) if !lf.is_zero() => same_square_class(&ki, &lf, Var::Z)?,
            _ => false,
        };
        k.push(ki);
    }
    if same_square_class(&k[0], &k[1], Var::Z)? {
        return Err(Error::Degenerate("k1 and k2 coincide modulo squares".into()));
    }
    let k_matches_printed = match &input.k_printed {
        Some(p) => Some([same_square_class(&k[0], &p[0], Var::Z)?, same_square_class(&k[1], &p[1], Var::Z)?]),
        None => None,
    };

    let (l1, l2) = (&input.lambda1, &input.lambda2);
    let big_t = RatFunc::var(Var::BigT);
    let t2 = &big_t * &big_t;
    let z_big = (&(&input.lambda1 * &t2) - &input.lambda2).checked_div(&(&t2 - &one))?;
    let relation_holds = legendre_eval(l2, &z_big) == &t2 * &legendre_eval(l1, &z_big);

    let z_t = z_big.substitute(Var::BigT, &input.t_expr)?;
    let f1_t = legendre_eval(l1, &z_t);
    let f2_t = legendre_eval(l2, &z_t);
    let c_equations = match &input.c_point {
        Some(c) => {
            let ks = input.k_printed.as_ref().map_or([k[0].clone(), k[1].clone()], |p| p.clone());
            let rhs = [ks[0].substitute(Var::Z, &z_t)?, ks[1].substitute(Var::Z, &z_t)?, f2_t.checked_div(&f1_t)?];
            let mut out = [false; 3];
            for i in 0..3 {
                let zi = QuadExtElem::from_ratfunc(&c[i], &input.modulus)?;
                let r = QuadExtElem::from_base(rhs[i].clone(), &input.modulus);
                out[i] = zi.ext_mul(&zi)?.ext_eq(&r)?;
            }
            Some(out)
        }
        None => None,
    };
    let class = square_class(&f1_t, Var::T)?;
    let matches_g = match &input.g_expected {
        Some(g) => Some(same_square_class(&f1_t, &RatFunc::from_poly(g.clone()), Var::T)?),
        None => None,
    };
    Ok(PipelineReport {
        k: [k[0].to_string(), k[1].to_string()],
        k_matches_linear_form: k_linear,
        k_matches_printed,
        z_of_big_t: z_big.to_string(),
        relation_holds,
        z_of_t: z_t.to_string(),
        c_equations,
        twist: f1_t.to_string(),
        twist_kernel: class.kernel.to_string(),
        matches_g,
    })
}

/// `k_i = l_i ((1 + l_i) z - l_i)`.
fn printed_k(l: &RatFunc) -> RatFunc {
    let z = RatFunc::var(Var::Z);
    l * &(&(&(&RatFunc::one() + l) * &z) - l)
}

const C_POINT: [&str; 3] = [
    "(α^2+1)^3*t/((α^2-1)^2*u)",
    "(α^2+1)^3*(t^2+2)/(8*α^2*u)",
    "(α^2-1)*t/(α*(t^2-2))",
];

impl PipelineInput {
    /// The inputs that produce a shipped family, with its printed data where
    /// the derivation prints any.
    pub fn for_family(family: &PairFamily) -> Result<Self> {
        let mut t_expr = parse_expr(T_OF_T)?;
        if let Some(a) = &family.alpha {
            t_expr = t_expr.eval_var(Var::Alpha, a)?;
        }
        let (k_printed, c_point) = match family.id {
            FamilyId::Thm51 => {
                let mut c = Vec::with_capacity(3);
                for s in C_POINT {
                    let mut r = parse_expr(s)?;
                    if let Some(a) = &family.alpha {
                        r = r.eval_var(Var::Alpha, a)?;
                    }
                    c.push(r);
                }
                (
                    Some([printed_k(&family.lambda1), printed_k(&family.lambda2)]),
                    Some(c.try_into().expect("three coordinates")),
                )
            }
            FamilyId::Thm53 => (None, None),
        };
        Ok(Self {
            lambda1: family.lambda1.clone(),
            lambda2: family.lambda2.clone(),
            h1: family.h1.clone(),
            h2: family.h2.clone(),
            t_expr,
            modulus: family.q.clone(),
            k_printed,
            c_point,
            g_expected: Some(family.g.clone()),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::pair::{family_theorem51, family_theorem53};
    use crate::symalg::rat::rat;

    #[test]
    fn reproduces_both_families() {
        for f in [family_theorem51(None).unwrap(), family_theorem53(None).unwrap()] {
            let input = PipelineInput::for_family(&f).unwrap();
            let r = remark52_pipeline(&input).unwrap();
            assert!(r.all_hold(), "{r:?}");
            assert_eq!(r.matches_g, Some(true));
            assert!(r.relation_holds);
            if f.id == FamilyId::Thm51 {
                assert_eq!(r.c_equations, Some([true; 3]));
                assert_eq!(r.k_matches_printed, Some([true; 2]));
            }
        }
    }

    #[test]
    fn specialised_inputs() {
        let f = family_theorem51(Some(&rat(5, 2))).unwrap();
        let r = remark52_pipeline(&PipelineInput::for_family(&f).unwrap()).unwrap();
        assert!(r.all_hold());
    }

    #[test]
    fn degenerate_inputs_are_rejected() {
        let f = family_theorem51(None).unwrap();
        let mut input = PipelineInput::for_family(&f).unwrap();
        input.h1 = FracLinMap::identity(Var::Z);
        input.h2 = FracLinMap::identity(Var::Z);
        assert!(matches!(remark52_pipeline(&input), Err(Error::Degenerate(_))));
        // z -> z + 1 moves the roots.
        let mut input = PipelineInput::for_family(&f).unwrap();
        input.h1 = FracLinMap::new(RatFunc::one(), RatFunc::one(), RatFunc::zero(), RatFunc::one(), Var::Z).unwrap();
        assert!(matches!(remark52_pipeline(&input), Err(Error::NotRootPermuting(_))));
    }

    #[test]
    fn wrong_t_breaks_the_c_point() {
        let f = family_theorem51(Some(&rat(3, 1))).unwrap();
        let mut input = PipelineInput::for_family(&f).unwrap();
        input.t_expr = parse_expr("8*t/(3*(t^2-3))").unwrap();
        let r = remark52_pipeline(&input).unwrap();
        assert!(r.relation_holds);
        assert!(!r.all_hold());
    }
}
