//! Scalar literals: `INT | INT/INT | (INT ± INT*sqrt(INT))/INT`.
//!
//! Whitespace is ignored anywhere inside a literal. Column numbers in errors
//! refer to the original (unstripped) text and are 1-based.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{ExactScalar, NumericsError};

struct Cursor<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    src: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        let chars = src
            .char_indices()
            .filter(|(_, c)| !c.is_whitespace())
            .map(|(i, c)| (src[..i].chars().count() + 1, c))
            .collect();
        Cursor { chars, pos: 0, src }
    }

    fn column(&self) -> usize {
        self.chars
            .get(self.pos)
            .map(|&(col, _)| col)
            .unwrap_or_else(|| self.src.chars().count() + 1)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn error(&self, message: impl Into<String>) -> NumericsError {
        NumericsError::Parse {
            column: self.column(),
            message: message.into(),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), NumericsError> {
        for c in token.chars() {
            if !self.eat(c) {
                return Err(self.error(format!("expected `{token}`")));
            }
        }
        Ok(())
    }

    fn unsigned(&mut self) -> Result<BigInt, NumericsError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected integer"));
        }
        let digits: String = self.chars[start..self.pos]
            .iter()
            .map(|&(_, c)| c)
            .collect();
        Ok(digits.parse().expect("ascii digits"))
    }

    fn integer(&mut self) -> Result<BigInt, NumericsError> {
        let negative = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let n = self.unsigned()?;
        Ok(if negative { -n } else { n })
    }

    fn denominator(&mut self) -> Result<BigInt, NumericsError> {
        let col = self.column();
        let q = self.integer()?;
        if q.is_zero() {
            return Err(NumericsError::Parse {
                column: col,
                message: "zero denominator".into(),
            });
        }
        Ok(q)
    }

    fn done(&self) -> bool {
        self.pos == self.chars.len()
    }
}

/// Parses one scalar literal.
pub fn parse_scalar(src: &str) -> Result<ExactScalar, NumericsError> {
    let mut cur = Cursor::new(src);
    let value = if cur.eat('(') {
        let p = cur.integer()?;
        let negative = if cur.eat('-') {
            true
        } else if cur.eat('+') {
            false
        } else {
            return Err(cur.error("expected `+` or `-`"));
        };
        let r = cur.unsigned()?;
        cur.expect("*sqrt(")?;
        let col = cur.column();
        let d = cur.integer()?;
        cur.expect("))")?;
        let q = if cur.eat('/') {
            cur.denominator()?
        } else {
            BigInt::from(1)
        };
        let d: u64 = u64::try_from(&d).map_err(|_| NumericsError::Parse {
            column: col,
            message: "radicand must be a non-negative machine integer".into(),
        })?;
        let r = if negative { -r } else { r };
        ExactScalar::from_parts(BigRational::new(p, q.clone()), BigRational::new(r, q), d)
    } else {
        let p = cur.integer()?;
        let q = if cur.eat('/') {
            cur.denominator()?
        } else {
            BigInt::from(1)
        };
        ExactScalar::from_rational(BigRational::new(p, q))
    };
    if !cur.done() {
        return Err(cur.error("trailing characters"));
    }
    Ok(value)
}
