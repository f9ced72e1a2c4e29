//! Expression syntax for scalars: `+ - * / ^`, parentheses, integers and
//! identifiers (letters, digits, `_`, `'` and `′`).

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::ratfunc::RatFunc;
use super::Rational;
use crate::error::{Error, Result};

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    src: &'a str,
}

pub fn parse_expr(src: &str) -> Result<RatFunc> {
    let mut p = Parser {
        chars: src.chars().collect(),
        pos: 0,
        src,
    };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.error(format!("unexpected `{}`", p.chars[p.pos])));
    }
    Ok(v)
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\'' || c == '′'
}

impl Parser<'_> {
    fn error(&self, message: String) -> Error {
        let mut line = 1;
        let mut column = 1;
        for c in self.chars.iter().take(self.pos) {
            if *c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        }
        Error::Parse {
            line,
            column,
            message: format!("{} in `{}`", message, self.src.trim()),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<RatFunc> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                '+' => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                '-' => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFunc> {
        let mut acc = self.unary()?;
        while let Some(c) = self.peek() {
            match c {
                '*' => {
                    self.pos += 1;
                    acc = acc * self.unary()?;
                }
                '/' => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.unary()?;
                    acc = acc.div(&d).map_err(|_| {
                        self.pos = at;
                        self.error("division by zero".into())
                    })?;
                }
                _ => break,
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
        if self.peek() == Some('^') {
            self.pos += 1;
            let neg = if self.peek() == Some('-') {
                self.pos += 1;
                true
            } else {
                false
            };
            let e = self.integer()?;
            let e: u32 = e
                .try_into()
                .map_err(|_| self.error("exponent too large".into()))?;
            let mut acc = RatFunc::one();
            for _ in 0..e {
                acc = acc * &base;
            }
            if neg {
                acc = acc
                    .inv()
                    .map_err(|_| self.error("division by zero".into()))?;
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer".into()));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().expect("digits parse"))
    }

    fn atom(&mut self) -> Result<RatFunc> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected `)`".into()));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(RatFunc::constant(Rational::from_integer(n)))
            }
            Some(c) if is_ident_char(c) => {
                let start = self.pos;
                while self.pos < self.chars.len() && is_ident_char(self.chars[self.pos]) {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                RatFunc::named(&name).map_err(|e| {
                    self.pos = start;
                    self.error(e.to_string())
                })
            }
            Some(c) => Err(self.error(format!("unexpected `{}`", c))),
            None => Err(self.error("unexpected end of input".into())),
        }
    }
}

/// Parses `num/den` or an integer; anything else goes through the general
/// expression parser.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    if let Some((n, d)) = t.split_once('/') {
        if let (Ok(n), Ok(d)) = (n.trim().parse::<BigInt>(), d.trim().parse::<BigInt>()) {
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            return Ok(Rational::new(n, d));
        }
    } else if let Ok(n) = t.parse::<BigInt>() {
        return Ok(Rational::from_integer(n));
    }
    parse_expr(t)?.constant_value().ok_or_else(|| Error::Parse {
        line: 1,
        column: 1,
        message: format!("`{}` is not a rational constant", t),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rational::rat;

    #[test]
    fn precedence_and_powers() {
        let x = parse_expr("1 + 2*3^2 - 4/8").unwrap();
        assert_eq!(x.constant_value(), Some(rat(37, 2)));
        let y = parse_expr("-2^-1").unwrap();
        assert_eq!(y.constant_value(), Some(rat(-1, 2)));
    }

    #[test]
    fn primes_in_identifiers() {
        let x = parse_expr("a′ - a'").unwrap();
        assert!(!x.is_zero());
        let y = parse_expr("(a′ + 1) - a′").unwrap();
        assert!(y == RatFunc::constant(rat(1, 1)));
        assert!(!RatFunc::one().is_zero());
    }

    #[test]
    fn errors_carry_positions() {
        match parse_expr("1 + (2 * x") {
            Err(Error::Parse { line, column, .. }) => {
                assert_eq!(line, 1);
                assert_eq!(column, 11);
            }
            other => panic!("unexpected {:?}", other),
        }
        assert!(parse_expr("1/0").is_err());
        assert_eq!(parse_rational("-3/6").unwrap(), rat(-1, 2));
    }
}
