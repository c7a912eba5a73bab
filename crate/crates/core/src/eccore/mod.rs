//! Elliptic curve models over Q and over function fields: long Weierstrass
//! form with the group law, Legendre curves, quadratic twists and quartics.

pub mod legendre;
pub mod quartic;
pub mod symbolic;
pub mod twist;
pub mod weierstrass;

pub use legendre::{legendre_orbit, LegendreCurve};
pub use quartic::{QuarticCurve, QuarticMap};
pub use symbolic::{SymbolicPoint, SymbolicTwist};
pub use twist::{twist, IntegralModel, TwistedCurve};
pub use weierstrass::{AffinePoint, Point, ProjPoint, ShortRelation, WeierstrassCurve};

use crate::symalg::poly::{MPoly, Var};
use crate::symalg::sqfree::squarefree_part;
use crate::{Error, Result};

/// Upper bound `(deg g - 1) / 2` for the rank of `y^2 = f(x)` twisted by a
/// square-free `g` over Q(var): the genus of `w^2 = g(var)`.
pub fn genus_bound(g: &MPoly, var: Var) -> Result<u32> {
    let deg = g.degree(var);
    if deg == 0 {
        return Err(Error::Degenerate("genus bound needs a non-constant polynomial".into()));
    }
    let sf = squarefree_part(g, var)?;
    if sf.root.degree(var) > 0 {
        return Err(Error::Degenerate(format!("{g} is not square-free")));
    }
    Ok((deg - 1) / 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symalg::parse::parse_poly;

    #[test]
    fn genus_bounds() {
        let g6 = parse_poly("-(u^2-1)*(u^2-2)*(2*u^2-3)").unwrap();
        assert_eq!(genus_bound(&g6, Var::U).unwrap(), 2);
        let g12 = parse_poly(
            "(t^4+4)*(t^4*(α^2-1)^2+4*t^2*(α^2+1)^2+4*(α^2-1)^2)*(α^2*t^4-(α^2+1)^2*t^2+4*α^2)",
        )
        .unwrap();
        assert_eq!(genus_bound(&g12, Var::T).unwrap(), 5);
        assert_eq!(genus_bound(&parse_poly("t^3 - t").unwrap(), Var::T).unwrap(), 1);
        assert!(genus_bound(&parse_poly("7").unwrap(), Var::T).is_err());
        assert!(genus_bound(&parse_poly("(t-1)^2*(t+3)").unwrap(), Var::T).is_err());
    }
}
