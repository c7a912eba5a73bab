use proptest::prelude::*;
use std::sync::Arc;

use twinrank_core::certify::{default_good_primes, mazur_infinite_order, modp_order_certificate, OrderCertificate};
use twinrank_core::eccore::{Point, ProjPoint, TwistedCurve, WeierstrassCurve};
use twinrank_core::symalg::factor::{square_free_kernel_int, FactorBudget};
use twinrank_core::symalg::parse::{parse_expr, parse_poly};
use twinrank_core::symalg::sqfree::square_class;
use twinrank_core::symalg::{MPoly, QuadExtElem, RatFunc, Var};
use twinrank_core::{IntZ, Rat};

fn r(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

fn small_rat() -> impl Strategy<Value = Rat> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| r(n, d))
}

/// A short curve through two chosen points, and a third point built from them.
fn curve_and_triple() -> impl Strategy<Value = (WeierstrassCurve, [ProjPoint; 3])> {
    (small_rat(), small_rat(), small_rat(), small_rat(), -3i64..=3, -3i64..=3).prop_filter_map(
        "singular or degenerate",
        |(x1, y1, x2, y2, k, m)| {
            if x1 == x2 {
                return None;
            }
            let c1 = &y1 * &y1 - &x1 * &x1 * &x1;
            let c2 = &y2 * &y2 - &x2 * &x2 * &x2;
            let a = (&c1 - &c2) / (&x1 - &x2);
            let b = &c1 - &a * &x1;
            let e = WeierstrassCurve::short(a, b).ok()?;
            let p = Point::Affine(x1, y1);
            let q = Point::Affine(x2, y2);
            let s = e.linear_combination(k, &p, m, &q).ok()?;
            Some((e, [p, q, s]))
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 1000, ..ProptestConfig::default() })]

    #[test]
    fn group_law_axioms((e, [p, q, s]) in curve_and_triple()) {
        let add = |a: &ProjPoint, b: &ProjPoint| e.add(a, b).unwrap();
        prop_assert_eq!(add(&add(&p, &q), &s), add(&p, &add(&q, &s)));
        prop_assert_eq!(add(&p, &q), add(&q, &p));
        prop_assert_eq!(add(&p, &Point::Infinity), p.clone());
        prop_assert_eq!(add(&p, &e.neg(&p)), Point::Infinity);
        prop_assert!(e.contains(&add(&add(&p, &q), &s)));
        prop_assert_eq!(e.mul(3, &p).unwrap(), add(&p, &add(&p, &p)));
    }
}

fn poly_in_x() -> impl Strategy<Value = MPoly> {
    prop::collection::vec(-6i64..=6, 1..=4).prop_filter_map("zero", |c| {
        let coeffs: Vec<Rat> = c.iter().map(|&k| r(k, 1)).collect();
        let p = MPoly::from_coeffs(Var::X, &coeffs);
        (!p.is_zero()).then_some(p)
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 500, ..ProptestConfig::default() })]

    #[test]
    fn square_free_part_ignores_squares(f in poly_in_x(), g in poly_in_x(), c in small_rat()) {
        prop_assume!(c != r(0, 1));
        let base = square_class(&RatFunc::from_poly(f.clone()), Var::X).unwrap();
        let times = RatFunc::from_poly(&f * &(&g * &g)).checked_div(&RatFunc::constant(&c * &c)).unwrap();
        let other = square_class(&times, Var::X).unwrap();
        prop_assert_eq!(other.kernel.monic(), base.kernel.monic());
        let ratio = &other.constant / &base.constant;
        prop_assert!(twinrank_core::symalg::rat::is_rat_square(&ratio), "constant ratio {}", ratio);
    }

    #[test]
    fn integer_kernel_ignores_squares(n in 1i64..1_000_000, m in 1i64..10_000) {
        let budget = FactorBudget::default();
        let a = square_free_kernel_int(&IntZ::from(n), &budget).unwrap();
        let b = square_free_kernel_int(&(IntZ::from(n) * IntZ::from(m) * IntZ::from(m)), &budget).unwrap();
        prop_assert!(a.complete && b.complete);
        prop_assert_eq!(&a.kernel, &b.kernel);
        prop_assert_eq!(&b.kernel * &b.cofactor_sq * &b.cofactor_sq, IntZ::from(n) * IntZ::from(m) * IntZ::from(m));
    }
}

/// Tate normal form `y^2 + (1 - c) xy - b y = x^3 - b x^2` with `(0, 0)`.
fn tate(b: Rat, c: Rat) -> Option<(WeierstrassCurve, ProjPoint)> {
    let e = WeierstrassCurve::new(Rat::from_integer(1.into()) - c, -b.clone(), -b, r(0, 1), r(0, 1)).ok()?;
    Some((e, Point::Affine(r(0, 1), r(0, 1))))
}

/// Curves with a point of known small order, or a random point.
fn torsion_case() -> impl Strategy<Value = (WeierstrassCurve, ProjPoint, Option<u32>)> {
    (0usize..6, 2i64..9, 1i64..5).prop_filter_map("singular", |(kind, n, d)| {
        let s = r(n, d);
        let one = r(1, 1);
        let case = match kind {
            0 => (WeierstrassCurve::new(r(0, 1), -(&one + &s), r(0, 1), s.clone(), r(0, 1)).ok()?, Point::Affine(r(0, 1), r(0, 1)), Some(2)),
            1 => { let (e, p) = tate(s, r(0, 1))?; (e, p, Some(4)) }
            2 => { let (e, p) = tate(s.clone(), s)?; (e, p, Some(5)) }
            3 => { let (e, p) = tate(&s + &s * &s, s)?; (e, p, Some(6)) }
            4 => { let (e, p) = tate(&s * &s * &s - &s * &s, &s * &s - &s)?; (e, p, Some(7)) }
            _ => {
                // y^2 = x^3 + a x + b through (s, 1) with a random a; the order is unknown.
                let a = r(n - 5, 1);
                let b = &one - &s * &s * &s - &a * &s;
                (WeierstrassCurve::short(a, b).ok()?, Point::Affine(s, one), None)
            }
        };
        Some(case)
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 50, ..ProptestConfig::default() })]

    #[test]
    fn modp_bound_agrees_with_mazur((e, p, expected) in torsion_case()) {
        let mazur = mazur_infinite_order(&e, &p).unwrap();
        let primes = default_good_primes(&e, 4);
        let modp = modp_order_certificate(&e, &p, &primes).unwrap();
        prop_assert_eq!(&mazur.verdict, &modp.verdict);
        if let Some(n) = expected {
            prop_assert_eq!(mazur.verdict, twinrank_core::certify::OrderVerdict::TorsionOfOrder(n));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

    #[test]
    fn serde_round_trips(lambda in small_rat(), d in small_rat(), x in small_rat()) {
        prop_assume!(lambda != r(0, 1) && lambda != r(1, 1) && d != r(0, 1));
        let f = [r(1, 1), -(r(1, 1) + &lambda), lambda.clone(), r(0, 1)];
        let tw = TwistedCurve::new(f, d.clone()).unwrap();
        let back: TwistedCurve = serde_json::from_str(&serde_json::to_string(&tw).unwrap()).unwrap();
        prop_assert_eq!(&back, &tw);
        let e = tw.weierstrass();
        let back: WeierstrassCurve = serde_json::from_str(&serde_json::to_string(&e).unwrap()).unwrap();
        prop_assert_eq!(&back, &e);
        for pt in [Point::Infinity, Point::Affine(x.clone(), &x * &d)] {
            let back: ProjPoint = serde_json::from_str(&serde_json::to_string(&pt).unwrap()).unwrap();
            prop_assert_eq!(&back, &pt);
        }
        let cert = mazur_infinite_order(&e, &Point::Affine(r(0, 1), r(0, 1))).unwrap();
        let back: OrderCertificate = serde_json::from_str(&serde_json::to_string(&cert).unwrap()).unwrap();
        prop_assert_eq!(back, cert);
    }

    #[test]
    fn printed_polynomials_parse_back(c in prop::collection::vec(-9i64..=9, 1..=5), e in prop::collection::vec(0u32..=3, 1..=5)) {
        let mut p = MPoly::zero();
        for (i, (&ci, &ei)) in c.iter().zip(e.iter()).enumerate() {
            let v = [Var::X, Var::T, Var::U, Var::Alpha, Var::Z][i % 5];
            p = &p + &MPoly::var(v).pow(ei).scale(&r(ci, (i as i64) + 1));
        }
        prop_assert_eq!(parse_poly(&p.to_string()).unwrap(), p.clone());
        prop_assume!(!p.is_zero());
        let f = RatFunc::new(MPoly::var(Var::T), p.clone()).unwrap();
        prop_assert_eq!(parse_expr(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn quadratic_extension_is_a_ring(a in -5i64..5, b in -5i64..5, c in -5i64..5, d in -5i64..5) {
        let q = Arc::new(parse_poly("t^4 - 5*t^2 + 4").unwrap());
        let t = RatFunc::var(Var::T);
        let el = |m: i64, n: i64| QuadExtElem::new(
            &RatFunc::from_int(m) + &t,
            RatFunc::from_int(n),
            q.clone(),
        );
        let (x, y, z) = (el(a, b), el(c, d), el(a + c, b - d));
        prop_assert!(x.ext_mul(&y).unwrap().ext_eq(&y.ext_mul(&x).unwrap()).unwrap());
        let lhs = x.ext_mul(&y).unwrap().ext_mul(&z).unwrap();
        let rhs = x.ext_mul(&y.ext_mul(&z).unwrap()).unwrap();
        prop_assert!(lhs.ext_eq(&rhs).unwrap());
        let dist = x.ext_mul(&y.ext_add(&z).unwrap()).unwrap();
        prop_assert!(dist.ext_eq(&x.ext_mul(&y).unwrap().ext_add(&x.ext_mul(&z).unwrap()).unwrap()).unwrap());
        // x * conj(x) is the norm, which lies in the base field.
        let n = x.ext_mul(&x.conjugate()).unwrap();
        prop_assert!(n.b().is_zero());
        prop_assert_eq!(n.a(), &x.norm());
        if !x.norm().is_zero() {
            prop_assert!(x.ext_mul(&x.inv().unwrap()).unwrap().ext_eq(&QuadExtElem::from_base(RatFunc::one(), &q)).unwrap());
        }
    }
}
