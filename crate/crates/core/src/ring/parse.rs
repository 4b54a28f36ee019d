//! Recursive-descent parser for polynomial text.
//!
//! ```text
//! expression ::= ['+'|'-'] term (('+'|'-') term)*
//! term       ::= factor ('*' factor)*
//! factor     ::= base ('^' natural)?
//! base       ::= rational | variable | '(' expression ')'
//! rational   ::= integer ('/' positive-integer)?
//! variable   ::= 'z' | 'E2' | 'E4' | 'E6' | 'g[' u ',' v ']'
//! ```
//!
//! Whitespace between tokens is ignored.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{Polynomial, SystemConfig, Var};
use crate::arith::Rational;
use crate::error::{Error, Result};

/// Parses `text` into a polynomial over `config`.
pub fn parse(text: &str, config: SystemConfig) -> Result<Polynomial> {
    let mut parser = Parser {
        chars: text.chars().collect(),
        pos: 0,
        config,
    };
    let p = parser.expression()?;
    parser.skip_ws();
    if parser.pos < parser.chars.len() {
        return Err(parser.error(format!("unexpected `{}`", parser.chars[parser.pos])));
    }
    Ok(p)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    config: SystemConfig,
}

impl Parser {
    fn location(&self, pos: usize) -> (usize, usize) {
        let mut line = 1;
        let mut column = 1;
        for &c in &self.chars[..pos.min(self.chars.len())] {
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        }
        (line, column)
    }

    fn error_at(&self, pos: usize, message: String) -> Error {
        let (line, column) = self.location(pos);
        Error::Syntax {
            line,
            column,
            message,
        }
    }

    fn error(&self, message: String) -> Error {
        self.error_at(self.pos, message)
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            let found = self
                .peek()
                .map_or_else(|| "end of input".to_string(), |f| format!("`{f}`"));
            Err(self.error(format!("expected `{c}`, found {found}")))
        }
    }

    fn expression(&mut self) -> Result<Polynomial> {
        let negate = match self.peek() {
            Some('-') => {
                self.pos += 1;
                true
            }
            Some('+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let first = self.term()?;
        let mut acc = if negate { first.neg() } else { first };
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.base()?;
        if self.eat('^') {
            let start = self.pos;
            let e = self.natural()?;
            let e =
                u32::try_from(&e).map_err(|_| self.error_at(start, "exponent too large".into()))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn natural(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a natural number".into()));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        Ok(digits.parse().expect("ascii digits"))
    }

    fn small_index(&mut self) -> Result<u32> {
        let start = self.pos;
        let n = self.natural()?;
        u32::try_from(&n).map_err(|_| self.error_at(start, "index too large".into()))
    }

    fn base(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expression()?;
                self.expect(')')?;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.natural()?;
                let value = if self.eat('/') {
                    let start = self.pos;
                    let den = self.natural()?;
                    if den.is_zero() {
                        return Err(self.error_at(start, "zero denominator".into()));
                    }
                    Rational::new(num, den)
                } else {
                    Rational::from_integer(num)
                };
                Ok(Polynomial::constant(self.config, value))
            }
            Some(c) if c.is_ascii_alphabetic() => self.variable(),
            Some(c) => Err(self.error(format!("unexpected `{c}`"))),
            None => Err(self.error("unexpected end of input".into())),
        }
    }

    fn variable(&mut self) -> Result<Polynomial> {
        let start = self.pos;
        while self
            .chars
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_')
        {
            self.pos += 1;
        }
        let name: String = self.chars[start..self.pos].iter().collect();
        let var = match name.as_str() {
            "z" => Var::Z,
            "E2" => Var::X1,
            "E4" => Var::X2,
            "E6" => Var::X3,
            "g" if self.peek() == Some('[') => {
                self.pos += 1;
                let u = self.small_index()?;
                self.expect(',')?;
                let v = self.small_index()?;
                self.expect(']')?;
                if v % 2 == 0 || u >= v {
                    return Err(self.error_at(start, format!("g[{u},{v}] needs odd v and u < v")));
                }
                Var::Y(u, v)
            }
            _ => {
                let (line, column) = self.location(start);
                return Err(Error::UnknownVariable { name, line, column });
            }
        };
        Polynomial::var(self.config, var)
    }
}

#[cfg(test)]
mod tests {
    use super::super::theta;
    use super::*;
    use crate::arith::{int, ratio};
    use crate::ring::Monomial;

    fn cfg(m: u32) -> SystemConfig {
        SystemConfig::new(m).unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(parse("z*(E4^3 - E6^2)", cfg(1)).unwrap(), theta(cfg(1)));
        let p = parse("g[0,1] + 1/2*E2", cfg(1)).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.coeff(&Monomial::var(Var::Y(0, 1))), int(1));
        assert_eq!(p.coeff(&Monomial::var(Var::X1)), ratio(1, 2));
        assert_eq!(
            parse("  -(z - 2) * \n (z + 2) ", cfg(1)).unwrap(),
            parse("4 - z^2", cfg(1)).unwrap()
        );
        assert_eq!(parse("g[ 1 , 3 ]", cfg(3)).unwrap().to_string(), "g[1,3]");
    }

    #[test]
    fn unknown_variable() {
        match parse("E7", cfg(1)) {
            Err(Error::UnknownVariable { name, line, column }) => {
                assert_eq!((name.as_str(), line, column), ("E7", 1, 1));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse("z + x", cfg(1)),
            Err(Error::UnknownVariable { column: 5, .. })
        ));
    }

    #[test]
    fn index_out_of_range() {
        assert!(matches!(
            parse("g[0,3]", cfg(1)),
            Err(Error::IndexOutOfRange { u: 0, v: 3, m: 1 })
        ));
        assert!(matches!(parse("g[3,3]", cfg(3)), Err(Error::Syntax { .. })));
        assert!(matches!(parse("g[0,2]", cfg(3)), Err(Error::Syntax { .. })));
    }

    #[test]
    fn syntax_errors_carry_position() {
        match parse("z +\n  * E2", cfg(1)) {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 3)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse("(z", cfg(1)).is_err());
        assert!(parse("z)", cfg(1)).is_err());
        assert!(parse("1/0", cfg(1)).is_err());
        assert!(parse("E2^", cfg(1)).is_err());
        assert!(parse("", cfg(1)).is_err());
        assert!(parse("E2/2", cfg(1)).is_err());
    }
}
