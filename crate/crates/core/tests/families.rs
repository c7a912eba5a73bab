use twinrank_core::certify::{IndependenceVerdict, OrderVerdict};
use twinrank_core::eccore::{genus_bound, Point};
use twinrank_core::families::{
    aux_curve, family_theorem51, family_theorem53, generate_twists, lemma31_pair_criterion, lemma41_construct,
    recheck_record, remark52_pipeline, GenerateConfig, PipelineInput,
};
use twinrank_core::symalg::parse::{parse_expr, parse_poly};
use twinrank_core::symalg::rat::{is_rat_square, parse_rat};
use twinrank_core::symalg::{RatFunc, Var};
use twinrank_core::{Error, Rat};

fn q(s: &str) -> Rat {
    parse_rat(s).unwrap()
}

#[test]
fn lemma_pair_two_three() {
    let p = lemma41_construct(&q("2"), &q("3")).unwrap();
    assert_eq!(p.g, parse_poly("-(u^2-1)*(u^2-2)*(2*u^2-3)").unwrap());
    assert_eq!(p.genus_bound, 2);
    assert_eq!(p.x, parse_expr("(2*u^2-3)/(u^2-1)").unwrap());
    assert_eq!(p.y1, parse_expr("1/(u^2-1)^2").unwrap());
    assert_eq!(p.y2, parse_expr("u/(u^2-1)^2").unwrap());
    let f1 = parse_poly("x*(x-1)*(x-2)").unwrap();
    let f2 = parse_poly("x*(x-1)*(x-3)").unwrap();
    assert!(lemma31_pair_criterion(&f1, &f2, &p.x, &p.x, &RatFunc::var(Var::U)).unwrap());
    assert_eq!(lemma41_construct(&q("2"), &q("-1")), Err(Error::IsomorphicPair));
}

#[test]
fn auxiliary_curve_at_two() {
    let a = aux_curve(&q("2")).unwrap();
    assert_eq!(a.printed.a4, q("-37611"));
    assert_eq!(a.printed.a6, q("2266650"));
    assert_eq!(a.printed_point.x(), Some(&q("92625/64")));
    assert!(a.quartic.contains(&q("0"), &q("4")));
    assert_eq!(a.map.curve.j_invariant().unwrap(), a.printed.j_invariant().unwrap());
    assert_eq!(aux_curve(&q("0")).unwrap_err(), Error::BadAlpha);
}

#[test]
fn family_specialisations() {
    let f = family_theorem51(Some(&q("2"))).unwrap();
    assert_eq!(f.lambda1.as_constant(), Some(q("-25/9")));
    assert_eq!(f.lambda2.as_constant(), Some(q("25/16")));
    let f = family_theorem53(Some(&q("2"))).unwrap();
    assert_eq!(f.lambda1.as_constant(), Some(q("34/9")));
    assert_eq!(f.lambda2.as_constant(), Some(q("-9/16")));
    let sym = family_theorem51(None).unwrap();
    assert_eq!(genus_bound(&sym.g, Var::T).unwrap(), 5);
    assert_eq!(sym.excluded_alpha, vec![q("-1"), q("0"), q("1")]);
    assert_eq!(family_theorem53(Some(&q("-1"))).unwrap_err(), Error::BadAlpha);
}

#[test]
fn pipeline_reproduces_second_family() {
    let f = family_theorem53(None).unwrap();
    let r = remark52_pipeline(&PipelineInput::for_family(&f).unwrap()).unwrap();
    assert!(r.all_hold());
    assert_eq!(r.matches_g, Some(true));
    assert_eq!(parse_expr(&r.z_of_big_t).unwrap(), parse_expr("(2*(1+α^4)/(α^2-1)^2*T^2 + (α^2-1)^2/(4*α^2))/(T^2-1)").unwrap());
}

#[test]
fn first_two_twists_at_two() {
    let cfg = GenerateConfig::default();
    let recs: Vec<_> = generate_twists(&q("2"), 2, &cfg).unwrap().collect::<Result<_, _>>().unwrap();
    // Cross-checked by an independent computation.
    assert_eq!(recs[0].t, q("-320/561"));
    assert_eq!(recs[0].u, q("906116/314721"));
    assert_eq!(recs[0].d_squarefree, q("19438571382553144401281"));
    assert_eq!(recs[1].t, q("-81332972160/96427867841"));
    for r in &recs {
        let alpha = q("2");
        let a2 = &alpha * &alpha;
        let t2 = &r.t * &r.t;
        let qt = &a2 * &t2 * &t2 - (&a2 + q("1")) * (&a2 + q("1")) * &t2 + q("4") * &a2;
        assert_eq!(&r.u * &r.u, qt);
        assert_eq!(&r.d_squarefree * &r.square_root * &r.square_root, r.d_raw);
        assert!(r.orders.iter().all(|o| o.verdict == OrderVerdict::InfiniteOrder));
        assert!(r.independence.iter().all(|i| i.verdict == IndependenceVerdict::IndependentEvidence));
        assert!(r.independence.iter().all(|i| i.relations_found.is_empty() && i.regulator_estimate.unwrap() > 1e-3));
        for (k, p) in r.points.iter().enumerate() {
            assert!(r.curves[k / 2].contains(p));
            assert!(!p.is_infinity());
        }
        assert!(recheck_record(r, &cfg.certify, false).unwrap().is_empty());
    }
    assert!(!is_rat_square(&(&recs[0].d_squarefree * &recs[1].d_squarefree)));
}

#[test]
fn tampered_record_is_caught() {
    let cfg = GenerateConfig::default();
    let mut rec = generate_twists(&q("3"), 1, &cfg).unwrap().next().unwrap().unwrap();
    if let Point::Affine(x, y) = &rec.points[2] {
        rec.points[2] = Point::Affine(x.clone(), y + q("1"));
    }
    let problems = recheck_record(&rec, &cfg.certify, false).unwrap();
    assert!(problems.iter().any(|p| p.contains("P3")), "{problems:?}");
}

#[test]
fn generator_rejects_excluded_alpha() {
    assert!(matches!(generate_twists(&q("1"), 1, &GenerateConfig::default()), Err(Error::BadAlpha)));
}
