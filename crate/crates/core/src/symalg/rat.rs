//! Exact scalars: arbitrary-precision integers and reduced rationals.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::Error;

/// Arbitrary-precision integer.
pub type IntZ = BigInt;

/// Reduced rational with positive denominator.
pub type Rat = BigRational;

pub fn int(n: i64) -> IntZ {
    IntZ::from(n)
}

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(IntZ::from(num), IntZ::from(den))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(IntZ::from(n))
}

/// Renders `r` as `p/q`; the denominator is always written.
pub fn rat_to_string(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q` or a bare integer `p`, with an optional leading `-` (ASCII or U+2212).
pub fn parse_rat(s: &str) -> Result<Rat, Error> {
    let s = s.trim();
    let (neg, body) = match s.strip_prefix('-').or_else(|| s.strip_prefix('\u{2212}')) {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let bad = || Error::BadRational(s.to_string());
    let parse_digits = |d: &str| -> Result<IntZ, Error> {
        if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        d.parse::<IntZ>().map_err(|_| bad())
    };
    let value = match body.split_once('/') {
        Some((n, d)) => {
            let d = parse_digits(d)?;
            if d.is_zero() {
                return Err(bad());
            }
            Rat::new(parse_digits(n)?, d)
        }
        None => Rat::from_integer(parse_digits(body)?),
    };
    Ok(if neg { -value } else { value })
}

/// Exact integer square root if `n` is a perfect square.
pub fn int_sqrt_exact(n: &IntZ) -> Option<IntZ> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

/// Exact rational square root (non-negative branch) if `r` is a square in Q.
pub fn rat_sqrt_exact(r: &Rat) -> Option<Rat> {
    let n = int_sqrt_exact(r.numer())?;
    let d = int_sqrt_exact(r.denom())?;
    Some(Rat::new(n, d))
}

pub fn is_rat_square(r: &Rat) -> bool {
    rat_sqrt_exact(r).is_some()
}

/// Natural logarithm of `|n|` for `n != 0`, accurate to f64 precision for any size.
pub fn ln_abs(n: &IntZ) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return n.abs().to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top: BigInt = n.abs() >> shift;
    top.to_f64().unwrap_or(f64::INFINITY).ln() + shift as f64 * std::f64::consts::LN_2
}

/// Number of decimal digits of `|n|` (an upper estimate from the bit length).
pub fn decimal_digits(n: &IntZ) -> usize {
    ((n.bits() as f64) * std::f64::consts::LOG10_2).ceil() as usize + 1
}

pub fn is_integral(r: &Rat) -> bool {
    r.denom().is_one()
}

pub fn gcd_int(a: &IntZ, b: &IntZ) -> IntZ {
    a.gcd(b)
}

pub fn lcm_int(a: &IntZ, b: &IntZ) -> IntZ {
    a.lcm(b)
}

pub fn sign_of(n: &IntZ) -> i32 {
    match n.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// Serde adapter for a single rational as a `"p/q"` string.
pub mod serde_rat {
    use super::{parse_rat, rat_to_string, Rat};
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&rat_to_string(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        parse_rat(&s).map_err(D::Error::custom)
    }
}

/// Serde adapter for an integer as a decimal string.
pub mod serde_int {
    use super::IntZ;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(n: &IntZ, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&n.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<IntZ, D::Error> {
        let s = String::deserialize(d)?;
        let t = s.trim().replace('\u{2212}', "-");
        t.parse::<IntZ>().map_err(|_| D::Error::custom(format!("bad integer {s:?}")))
    }
}
