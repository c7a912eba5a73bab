//! The quartic `C_alpha: u^2 = a^2 t^4 - (1 + a^2)^2 t^2 + 4 a^2`, its printed
//! Weierstrass model `C'_alpha` and the two seed points used to walk it.

use crate::eccore::{Point, ProjPoint, QuarticCurve, QuarticMap, ShortRelation, WeierstrassCurve};
use crate::symalg::parse::parse_expr;
use crate::symalg::poly::Var;
use crate::symalg::rat::Rat;
use crate::symalg::ratfunc::RatFunc;
use crate::{Error, Result};

use super::pair::{check_alpha, IdentityCheck};

const QUARTIC: [&str; 5] = ["α^2", "0", "-(1+α^2)^2", "0", "4*α^2"];
const PRINTED_A: &str = "-27*(48*α^4 + (1+α^2)^4)";
const PRINTED_B: &str = "-54*(1+α^2)^2*((1+α^2)^4 - 144*α^4)";
const PRINTED_X: &str = "3/(4*α^4)*(1+α^2)^2*(3 + 12*α^2 - 22*α^4 + 12*α^6 + 3*α^8)";
const PRINTED_Y: &str =
    "27/(8*α^6)*(-1+α^2)^2*(1 + 11*α^2 + 37*α^4 + 47*α^6 + 47*α^8 + 37*α^10 + 11*α^12 + α^14)";

fn printed_symbolic() -> Result<(QuarticCurve<RatFunc>, WeierstrassCurve<RatFunc>, RatFunc, RatFunc)> {
    let c = QUARTIC.iter().map(|s| parse_expr(s)).collect::<Result<Vec<_>>>()?;
    let quartic = QuarticCurve::new(c.try_into().expect("five coefficients"))?;
    let curve = WeierstrassCurve::short(parse_expr(PRINTED_A)?, parse_expr(PRINTED_B)?)?;
    Ok((quartic, curve, parse_expr(PRINTED_X)?, parse_expr(PRINTED_Y)?))
}

/// The auxiliary curve at a rational alpha.
#[derive(Clone, Debug, PartialEq)]
pub struct AuxCurve {
    pub alpha: Rat,
    pub quartic: QuarticCurve<Rat>,
    /// `C'_alpha` as printed.
    pub printed: WeierstrassCurve,
    /// `(X, Y)` on `C'_alpha`.
    pub printed_point: ProjPoint,
    /// `(0, 2 alpha)` on `C_alpha`.
    pub seed: (Rat, Rat),
    /// The birational map sending the seed to the identity.
    pub map: QuarticMap<Rat>,
    /// Image of `(0, -2 alpha)`, a 2-torsion point of `map.curve`.
    pub q0: ProjPoint,
    /// `(X, Y)` carried to `map.curve`.
    pub q1: ProjPoint,
}

/// Builds both models at `alpha` and checks the printed point exactly.
pub fn aux_curve(alpha: &Rat) -> Result<AuxCurve> {
    check_alpha(alpha)?;
    let (quartic, curve, x, y) = printed_symbolic()?;
    let asg = [(Var::Alpha, alpha.clone())];
    let ev = |r: &RatFunc| r.eval_rat(&asg);
    let quartic = QuarticCurve::new([
        ev(&quartic.c[0])?,
        ev(&quartic.c[1])?,
        ev(&quartic.c[2])?,
        ev(&quartic.c[3])?,
        ev(&quartic.c[4])?,
    ])?;
    let printed = WeierstrassCurve::short(ev(&curve.a4)?, ev(&curve.a6)?)?;
    let printed_point = Point::Affine(ev(&x)?, ev(&y)?);
    if !printed.contains(&printed_point) {
        return Err(Error::IdentityFailure(format!("printed point is not on C'_{alpha}")));
    }
    let seed = (Rat::from_integer(0.into()), Rat::from_integer(2.into()) * alpha);
    let map = quartic.to_weierstrass((&seed.0, &seed.1))?;
    let q0 = map.companion().cloned().expect("seed has nonzero ordinate");
    let u = match printed.relation_to(&map.curve) {
        ShortRelation::Isomorphic { u } => u,
        other => return Err(Error::IdentityFailure(format!("C'_{alpha} is not isomorphic to C_{alpha}: {other:?}"))),
    };
    let q1 = match &printed_point {
        Point::Affine(x, y) => {
            let u2 = &u * &u;
            map.curve.from_short(&Point::Affine(&u2 * x, &u2 * &u * y))
        }
        Point::Infinity => Point::Infinity,
    };
    map.curve.check(&q1)?;
    Ok(AuxCurve { alpha: alpha.clone(), quartic, printed, printed_point, seed, map, q0, q1 })
}

/// Identities over `Q(alpha)`: the printed point lies on `C'_alpha`, and the
/// Weierstrass model of `C_alpha` from the seed `(0, 2 alpha)` has the same
/// j-invariant as `C'_alpha` (computed both from the map and from the
/// quartic invariants).
pub fn aux_symbolic_checks() -> Result<Vec<IdentityCheck>> {
    let (quartic, curve, x, y) = printed_symbolic()?;
    let on_curve = curve.equation_residual(&x, &y).is_zero();
    let seed_t = RatFunc::zero();
    let seed_v = parse_expr("2*α")?;
    let map = quartic.to_weierstrass((&seed_t, &seed_v))?;
    let j_printed = curve.j_invariant()?;
    Ok(vec![
        IdentityCheck { name: "C'_alpha contains (X, Y)".into(), passed: on_curve },
        IdentityCheck { name: "C_alpha contains (0, 2 alpha)".into(), passed: quartic.contains(&seed_t, &seed_v) },
        IdentityCheck { name: "j(map of C_alpha) = j(C'_alpha)".into(), passed: map.curve.j_invariant()? == j_printed },
        IdentityCheck { name: "j(C_alpha invariants) = j(C'_alpha)".into(), passed: quartic.j_invariant()? == j_printed },
    ])
}
