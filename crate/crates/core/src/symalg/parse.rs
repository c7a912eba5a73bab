//! Recursive-descent parser for arithmetic expressions over the named variables.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' ['-'] digits)?
//! atom   := digits | name | '(' expr ')'
//! ```
//!
//! Names are `x z T t u α alpha`. Offsets in errors count characters.

use super::poly::{MPoly, Var};
use super::rat::{IntZ, Rat};
use super::ratfunc::RatFunc;
use crate::{Error, Result};

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn new(src: &str) -> Self {
        Self { chars: src.chars().collect(), pos: 0 }
    }

    fn err<T>(&self, offset: usize, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { offset, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|&c| if c == '\u{2212}' { '-' } else { c })
    }

    fn expr(&mut self) -> Result<RatFunc> {
        let mut acc = self.term()?;
        while let Some(c @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == '+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFunc> {
        let mut acc = self.unary()?;
        while let Some(c @ ('*' | '/')) = self.peek() {
            let at = self.pos;
            self.pos += 1;
            let rhs = self.unary()?;
            if c == '*' {
                acc = &acc * &rhs;
            } else {
                if rhs.is_zero() {
                    return Err(Error::Syntax {
                        offset: at,
                        message: "division by the zero polynomial".into(),
                    });
                }
                acc = &acc / &rhs;
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RatFunc> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RatFunc> {
        let base = self.atom()?;
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        let neg = if self.peek() == Some('-') {
            self.pos += 1;
            true
        } else {
            false
        };
        self.skip_ws();
        let start = self.pos;
        let digits = self.digits();
        if digits.is_empty() {
            return self.err(start, "expected an integer exponent");
        }
        let k: i32 = match digits.parse() {
            Ok(k) if k <= 10_000 => k,
            _ => return self.err(start, "exponent too large"),
        };
        let k = if neg { -k } else { k };
        base.pow(k).map_err(|_| Error::Syntax {
            offset: start,
            message: "negative power of zero".into(),
        })
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn atom(&mut self) -> Result<RatFunc> {
        let Some(c) = self.peek() else {
            return self.err(self.pos, "unexpected end of input");
        };
        let start = self.pos;
        if c.is_ascii_digit() {
            let d = self.digits();
            let n: IntZ = d.parse().expect("digits parse");
            return Ok(RatFunc::constant(Rat::from_integer(n)));
        }
        if c == '(' {
            self.pos += 1;
            let inner = self.expr()?;
            if self.peek() != Some(')') {
                return self.err(self.pos, "expected ')'");
            }
            self.pos += 1;
            return Ok(inner);
        }
        if c.is_alphabetic() {
            while self.pos < self.chars.len() && self.chars[self.pos].is_alphanumeric() {
                self.pos += 1;
            }
            let name: String = self.chars[start..self.pos].iter().collect();
            return match Var::from_name(&name) {
                Some(v) => Ok(RatFunc::var(v)),
                None => self.err(start, format!("unknown variable {name:?}")),
            };
        }
        self.err(start, format!("unexpected character {c:?}"))
    }
}

/// Parses an expression into its canonical rational-function value.
pub fn parse_expr(src: &str) -> Result<RatFunc> {
    let mut p = Parser::new(src);
    let value = p.expr()?;
    if let Some(c) = p.peek() {
        return p.err(p.pos, format!("unexpected character {c:?}"));
    }
    Ok(value)
}

/// Parses an expression that must evaluate to a polynomial.
pub fn parse_poly(src: &str) -> Result<MPoly> {
    let r = parse_expr(src)?;
    r.as_poly().cloned().ok_or_else(|| Error::WrongShape {
        expected: "a polynomial",
        found: r.to_string(),
    })
}

/// Parses an expression that must evaluate to a rational constant.
pub fn parse_constant(src: &str) -> Result<Rat> {
    let r = parse_expr(src)?;
    r.as_constant().ok_or_else(|| Error::WrongShape {
        expected: "a rational constant",
        found: r.to_string(),
    })
}

/// Splits `name(arg1, arg2, ...)` and parses each argument as an expression.
pub fn parse_call(src: &str) -> Result<(String, Vec<RatFunc>)> {
    let src = src.trim();
    let Some(open) = src.find('(') else {
        return Err(Error::Syntax { offset: src.chars().count(), message: "expected '('".into() });
    };
    if !src.ends_with(')') {
        return Err(Error::Syntax { offset: src.chars().count(), message: "expected ')'".into() });
    }
    let name = src[..open].trim().to_string();
    let inner = &src[open + 1..src.len() - 1];
    let mut args = Vec::new();
    let mut depth = 0i32;
    let mut start = 0usize;
    for (i, ch) in inner.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                args.push(&inner[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if !inner.trim().is_empty() {
        args.push(&inner[start..]);
    }
    let parsed = args.into_iter().map(parse_expr).collect::<Result<Vec<_>>>()?;
    Ok((name, parsed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symalg::rat::rat;

    #[test]
    fn expands_products() {
        assert_eq!(parse_poly("x*(x-1)*(x-2)").unwrap().to_string(), "x^3 - 3*x^2 + 2*x");
    }

    #[test]
    fn rational_constant() {
        assert_eq!(parse_constant("(-25)/9").unwrap(), rat(-25, 9));
        assert_eq!(parse_constant("\u{2212}(2^2+1)^2/(2^2-1)^2").unwrap(), rat(-25, 9));
    }

    #[test]
    fn syntax_errors_carry_offsets() {
        match parse_expr("x*(x") {
            Err(Error::Syntax { offset, .. }) => assert_eq!(offset, 4),
            other => panic!("unexpected {other:?}"),
        }
        match parse_expr("t + q") {
            Err(Error::Syntax { offset, .. }) => assert_eq!(offset, 4),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_expr("1/(t-t)"), Err(Error::Syntax { offset: 1, .. })));
        assert!(parse_expr("").is_err());
        assert!(parse_expr("x^").is_err());
    }

    #[test]
    fn division_yields_rational_function() {
        let r = parse_expr("(α*t+1)/(t-α)").unwrap();
        assert!(!r.is_polynomial());
        assert_eq!(parse_expr("t^-2").unwrap(), parse_expr("1/t^2").unwrap());
        assert_eq!(parse_expr("alpha").unwrap(), parse_expr("α").unwrap());
    }

    #[test]
    fn calls() {
        let (name, args) = parse_call("quartic(4, 0, -25, 0, 16)").unwrap();
        assert_eq!(name, "quartic");
        assert_eq!(args.len(), 5);
        assert_eq!(args[2].as_constant(), Some(rat(-25, 1)));
        let (name, args) = parse_call("legendre((2^2+1)^2/4)").unwrap();
        assert_eq!(name, "legendre");
        assert_eq!(args[0].as_constant(), Some(rat(25, 4)));
    }
}
