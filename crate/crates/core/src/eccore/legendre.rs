//! Legendre curves `y^2 = x(x-1)(x-lambda)`.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use super::weierstrass::WeierstrassCurve;
use crate::symalg::rat::Rat;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LegendreCurve {
    lambda: Rat,
}

impl LegendreCurve {
    pub fn new(lambda: Rat) -> Result<Self> {
        if lambda.is_zero() || lambda.is_one() {
            return Err(Error::BadLambda);
        }
        Ok(Self { lambda })
    }

    pub fn lambda(&self) -> &Rat {
        &self.lambda
    }

    /// Coefficients `[c3, c2, c1, c0]` of `x(x-1)(x-lambda)`.
    pub fn cubic(&self) -> [Rat; 4] {
        let l = &self.lambda;
        [Rat::one(), -(Rat::one() + l), l.clone(), Rat::zero()]
    }

    pub fn weierstrass(&self) -> WeierstrassCurve {
        let [_, c2, c1, c0] = self.cubic();
        WeierstrassCurve::new(Rat::zero(), c2, Rat::zero(), c1, c0).expect("lambda avoids 0 and 1")
    }

    pub fn j_invariant(&self) -> Rat {
        let l = &self.lambda;
        let one = Rat::one();
        let s = l * l - l + &one;
        let d = l * l * (l - &one) * (l - &one);
        Rat::from_integer(256.into()) * &s * &s * &s / d
    }

    pub fn orbit(&self) -> BTreeSet<Rat> {
        legendre_orbit(&self.lambda).expect("valid lambda")
    }

    pub fn is_isomorphic_to(&self, other: &LegendreCurve) -> bool {
        self.orbit().contains(&other.lambda)
    }
}

/// `{l, 1-l, 1/l, 1/(1-l), l/(l-1), (l-1)/l}`.
pub fn legendre_orbit(lambda: &Rat) -> Result<BTreeSet<Rat>> {
    if lambda.is_zero() || lambda.is_one() {
        return Err(Error::BadLambda);
    }
    let one = Rat::one();
    let l = lambda.clone();
    Ok([
        l.clone(),
        &one - &l,
        one.clone() / &l,
        one.clone() / (&one - &l),
        &l / (&l - &one),
        (&l - &one) / &l,
    ]
    .into_iter()
    .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symalg::rat::{rat, rat_int};

    #[test]
    fn orbit_examples() {
        let want: BTreeSet<Rat> = [rat_int(2), rat_int(-1), rat(1, 2)].into_iter().collect();
        assert_eq!(legendre_orbit(&rat_int(2)).unwrap(), want);
        assert_eq!(legendre_orbit(&rat_int(-1)).unwrap(), want);
        assert_eq!(legendre_orbit(&rat_int(1)), Err(Error::BadLambda));
        assert_eq!(legendre_orbit(&rat_int(0)), Err(Error::BadLambda));
    }

    #[test]
    fn orbit_is_closed() {
        let o = legendre_orbit(&rat(-25, 9)).unwrap();
        assert_eq!(o.len(), 6);
        for mu in &o {
            assert_eq!(&legendre_orbit(mu).unwrap(), &o);
        }
    }

    #[test]
    fn j_matches_weierstrass_model() {
        for l in [rat(-25, 9), rat(25, 16), rat(34, 9), rat(-9, 16), rat_int(3)] {
            let e = LegendreCurve::new(l).unwrap();
            assert_eq!(e.j_invariant(), e.weierstrass().j_invariant().unwrap());
        }
        assert_eq!(LegendreCurve::new(rat_int(-1)).unwrap().j_invariant(), rat_int(1728));
    }
}
