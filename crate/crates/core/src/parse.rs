//! Text input for polynomials.
//!
//! Two forms are accepted: a comma-separated coefficient list, constant term
//! first (`"-3,7,-2"`), or an expression in the single variable `x`
//! (`"-2x^2+7x-3"`). A string without any `x` is read as a coefficient list.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::poly::Polynomial;

/// Exponents above this are rejected rather than allocated.
pub const MAX_EXPONENT: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Empty,
    NonInteger,
    UnexpectedChar(char),
    UnexpectedEnd,
    ExponentTooLarge,
}

/// A parse failure at a byte offset into the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at position {position}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub position: usize,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Empty => f.write_str("empty input"),
            ParseErrorKind::NonInteger => f.write_str("coefficient is not an integer"),
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character {c:?}"),
            ParseErrorKind::UnexpectedEnd => f.write_str("unexpected end of input"),
            ParseErrorKind::ExponentTooLarge => {
                write!(f, "exponent larger than {MAX_EXPONENT}")
            }
        }
    }
}

fn err(kind: ParseErrorKind, position: usize) -> ParseError {
    ParseError { kind, position }
}

pub fn parse_poly(text: &str) -> Result<Polynomial, ParseError> {
    if text.trim().is_empty() {
        return Err(err(ParseErrorKind::Empty, 0));
    }
    if text.contains(['x', 'X']) {
        Parser::new(text).expression()
    } else {
        parse_coefficient_list(text)
    }
}

fn parse_coefficient_list(text: &str) -> Result<Polynomial, ParseError> {
    let mut coeffs = Vec::new();
    let mut offset = 0;
    for field in text.split(',') {
        let lead = field.len() - field.trim_start().len();
        let mut p = Parser::new(field.trim());
        p.base = offset + lead;
        let negative = match p.peek() {
            Some('-') => {
                p.bump();
                true
            }
            Some('+') => {
                p.bump();
                false
            }
            _ => false,
        };
        p.skip_ws();
        let magnitude = p.integer()?;
        p.skip_ws();
        if let Some(c) = p.peek() {
            return Err(p.unexpected(c));
        }
        coeffs.push(if negative { -magnitude } else { magnitude });
        offset += field.len() + 1;
    }
    Ok(Polynomial::new(coeffs))
}

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
    base: usize,
    len: usize,
}

impl Parser {
    fn new(src: &str) -> Self {
        Self {
            chars: src.char_indices().collect(),
            pos: 0,
            base: 0,
            len: src.len(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.base + self.chars.get(self.pos).map_or(self.len, |&(i, _)| i)
    }

    fn bump(&mut self) {
        self.pos += 1;
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    fn unexpected(&self, c: char) -> ParseError {
        let kind = if c == '.' || c == '/' {
            ParseErrorKind::NonInteger
        } else {
            ParseErrorKind::UnexpectedChar(c)
        };
        err(kind, self.offset())
    }

    fn digits(&mut self) -> Option<String> {
        let mut s = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            s.push(c);
            self.bump();
        }
        (!s.is_empty()).then_some(s)
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        match self.digits() {
            Some(d) => {
                if matches!(self.peek(), Some('.') | Some('/')) {
                    return Err(err(ParseErrorKind::NonInteger, self.offset()));
                }
                Ok(d.parse().expect("ascii digits"))
            }
            None => Err(match self.peek() {
                Some(c) => self.unexpected(c),
                None => err(ParseErrorKind::UnexpectedEnd, self.offset()),
            }),
        }
    }

    fn expression(mut self) -> Result<Polynomial, ParseError> {
        let mut coeffs: Vec<BigInt> = Vec::new();
        self.skip_ws();
        let mut first = true;
        while self.peek().is_some() {
            let negative = match self.peek() {
                Some('+') => {
                    self.bump();
                    false
                }
                Some('-') => {
                    self.bump();
                    true
                }
                Some(c) if !first => return Err(self.unexpected(c)),
                _ => false,
            };
            first = false;
            self.skip_ws();
            let (coeff, power) = self.term()?;
            if coeffs.len() <= power {
                coeffs.resize(power + 1, BigInt::zero());
            }
            if negative {
                coeffs[power] -= coeff;
            } else {
                coeffs[power] += coeff;
            }
            self.skip_ws();
        }
        if first {
            return Err(err(ParseErrorKind::Empty, 0));
        }
        Ok(Polynomial::new(coeffs))
    }

    /// `INT`, `INT x`, `INT * x`, `x`, each optionally followed by `^ INT`
    /// after the variable.
    fn term(&mut self) -> Result<(BigInt, usize), ParseError> {
        let coeff = match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let v = self.integer()?;
                self.skip_ws();
                if self.peek() == Some('*') {
                    self.bump();
                    self.skip_ws();
                    if !matches!(self.peek(), Some('x' | 'X')) {
                        return Err(match self.peek() {
                            Some(c) => self.unexpected(c),
                            None => err(ParseErrorKind::UnexpectedEnd, self.offset()),
                        });
                    }
                }
                Some(v)
            }
            Some('x' | 'X') => None,
            Some(c) => return Err(self.unexpected(c)),
            None => return Err(err(ParseErrorKind::UnexpectedEnd, self.offset())),
        };
        if !matches!(self.peek(), Some('x' | 'X')) {
            return Ok((coeff.expect("digits consumed"), 0));
        }
        self.bump();
        self.skip_ws();
        let power = if self.peek() == Some('^') {
            self.bump();
            self.skip_ws();
            let at = self.offset();
            let e = self.integer()?;
            usize::try_from(&e)
                .ok()
                .filter(|&e| e <= MAX_EXPONENT)
                .ok_or_else(|| err(ParseErrorKind::ExponentTooLarge, at))?
        } else {
            1
        };
        Ok((coeff.unwrap_or_else(|| BigInt::from(1)), power))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coeffs(s: &str) -> Vec<i64> {
        parse_poly(s)
            .unwrap()
            .coeffs()
            .iter()
            .map(|c| i64::try_from(c).unwrap())
            .collect()
    }

    #[test]
    fn parses_expression_form() {
        assert_eq!(coeffs("-2x^2+7x-3"), vec![-3, 7, -2]);
        assert_eq!(coeffs("x"), vec![0, 1]);
        assert_eq!(coeffs("-x^2"), vec![0, 0, -1]);
        assert_eq!(coeffs(" 3 * x ^ 2 - x + 0 "), vec![0, -1, 3]);
        assert_eq!(coeffs("x^3 - x^3 + 5"), vec![5]);
        assert_eq!(coeffs("2x + 3x"), vec![0, 5]);
        assert_eq!(coeffs("+x-1"), vec![-1, 1]);
        assert_eq!(coeffs("7 + x^0"), vec![8]);
    }

    #[test]
    fn parses_coefficient_list_form() {
        assert_eq!(coeffs("-3,7,-2"), vec![-3, 7, -2]);
        assert_eq!(coeffs(" 1 , -2 , +3 "), vec![1, -2, 3]);
        assert_eq!(coeffs("5,0,0"), vec![5]);
        assert!(parse_poly("0").unwrap().is_zero());
        assert!(parse_poly("0,0,0").unwrap().is_zero());
    }

    #[test]
    fn both_forms_agree() {
        assert_eq!(parse_poly("-2x^2+7x-3"), parse_poly("-3,7,-2"));
        assert_eq!(parse_poly("x^3-3x^2+x-3"), parse_poly("-3,1,-3,1"));
    }

    #[test]
    fn big_coefficients() {
        let u = parse_poly("123456789012345678901234567890x+1").unwrap();
        assert_eq!(
            u.coeff(1).to_string(),
            "123456789012345678901234567890"
        );
    }

    #[test]
    fn reports_errors_with_positions() {
        assert_eq!(parse_poly("").unwrap_err().kind, ParseErrorKind::Empty);
        assert_eq!(parse_poly("   ").unwrap_err().kind, ParseErrorKind::Empty);
        let e = parse_poly("1.5x+2").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::NonInteger);
        assert_eq!(e.position, 1);
        let e = parse_poly("1,2.5").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::NonInteger);
        assert_eq!(e.position, 3);
        let e = parse_poly("x/2").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::NonInteger);
        let e = parse_poly("2x^2 3x").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnexpectedChar('3'));
        assert_eq!(e.position, 5);
        let e = parse_poly("x^").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnexpectedEnd);
        assert_eq!(e.position, 2);
        let e = parse_poly("x^-1").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnexpectedChar('-'));
        let e = parse_poly("y+1").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnexpectedChar('y'));
        let e = parse_poly("x^99999999").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::ExponentTooLarge);
        let e = parse_poly("1,,2").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnexpectedEnd);
        assert_eq!(e.position, 2);
        assert!(parse_poly("x+").is_err());
        assert!(parse_poly("2*").is_err());
    }
}
