use crate::eccore::{SymbolicPoint, SymbolicTwist};
use crate::symalg::poly::Var;
use crate::{Error, Result};

/// The automorphism argument over the function field: `u -> -u` fixes `P1`
/// and sends `P2` to `-P2`, and neither point is constant or 2-torsion.
/// Then `a P1 + b P2` torsion forces `2a P1` and `2b P2` torsion, so the
/// points are independent.
pub fn verify_function_field_independence(
    curve: &SymbolicTwist,
    p1: &SymbolicPoint,
    p2: &SymbolicPoint,
) -> Result<bool> {
    for (name, p) in [("first", p1), ("second", p2)] {
        if !curve.contains(p)? {
            return Err(Error::IdentityFailure(format!("{name} point is not on d y^2 = f(x)")));
        }
    }
    let non_constant = |p: &SymbolicPoint| {
        let x = p.x.a();
        !p.x.b().is_zero() || x.contains_var(Var::T) || x.contains_var(Var::U)
    };
    let fixed = p1.conjugate().x.ext_eq(&p1.x)? && p1.conjugate().y.ext_eq(&p1.y)?;
    let anti = p2.conjugate().x.ext_eq(&p2.x)? && p2.conjugate().y.ext_eq(&p2.neg().y)?;
    Ok(fixed && anti && !p2.y.is_zero() && non_constant(p1) && non_constant(p2))
}
