//! Exact scalars and a small computer-algebra layer over Q.

pub mod factor;
pub mod fraclin;
pub mod gcd;
pub mod parse;
pub mod poly;
pub mod quadext;
pub mod rat;
pub mod ratfunc;
pub mod sqfree;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

pub use fraclin::{compose_fraclin, FracLinMap};
pub use gcd::poly_gcd;
pub use parse::{parse_constant, parse_expr, parse_poly};
pub use poly::{MPoly, Var};
pub use quadext::QuadExtElem;
pub use rat::{rat, rat_int, IntZ, Rat};
pub use ratfunc::RatFunc;
pub use sqfree::{squarefree_part, SquareFreePart};

use crate::Result;

/// Coefficient fields the curve code is generic over: `Rat` for specialised
/// curves and `RatFunc` for curves over a function field.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn inverse(&self) -> Result<Self>;
    fn from_i64(n: i64) -> Self;
}

impl Field for Rat {
    fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            Err(crate::Error::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }

    fn from_i64(n: i64) -> Self {
        rat_int(n)
    }
}

impl Field for RatFunc {
    fn inverse(&self) -> Result<Self> {
        self.inv()
    }

    fn from_i64(n: i64) -> Self {
        RatFunc::from_int(n)
    }
}
