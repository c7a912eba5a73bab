//! Twisted curves over the function field `Q(alpha)(t)(u)` with `u^2 = q(t)`.

use std::sync::Arc;

use crate::symalg::poly::MPoly;
use crate::symalg::quadext::QuadExtElem;
use crate::symalg::ratfunc::RatFunc;
use crate::Result;

/// A point with coordinates in the quadratic extension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicPoint {
    pub x: QuadExtElem,
    pub y: QuadExtElem,
}

impl SymbolicPoint {
    pub fn from_ratfuncs(x: &RatFunc, y: &RatFunc, modulus: &Arc<MPoly>) -> Result<Self> {
        Ok(Self { x: QuadExtElem::from_ratfunc(x, modulus)?, y: QuadExtElem::from_ratfunc(y, modulus)? })
    }

    /// Image under `u -> -u`.
    pub fn conjugate(&self) -> Self {
        Self { x: self.x.conjugate(), y: self.y.conjugate() }
    }

    /// The inverse on a model `d y^2 = f(x)`.
    pub fn neg(&self) -> Self {
        Self { x: self.x.clone(), y: -&self.y }
    }
}

/// `d y^2 = f(x)` with `f` a cubic over `Q(alpha)` and `d` a function of `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicTwist {
    /// `[c3, c2, c1, c0]`.
    pub f: [RatFunc; 4],
    pub d: RatFunc,
    pub modulus: Arc<MPoly>,
}

impl SymbolicTwist {
    /// `d y^2 - f(x)` reduced in the extension ring.
    pub fn residual(&self, p: &SymbolicPoint) -> Result<QuadExtElem> {
        let lift = |r: &RatFunc| QuadExtElem::from_base(r.clone(), &self.modulus);
        let mut fx = lift(&self.f[0]);
        for c in &self.f[1..] {
            fx = fx.ext_mul(&p.x)?.ext_add(&lift(c))?;
        }
        let lhs = lift(&self.d).ext_mul(&p.y)?.ext_mul(&p.y)?;
        lhs.ext_sub(&fx)
    }

    pub fn contains(&self, p: &SymbolicPoint) -> Result<bool> {
        Ok(self.residual(p)?.is_zero())
    }
}
