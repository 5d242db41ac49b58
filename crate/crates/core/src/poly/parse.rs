//! Text format for polynomials: `c0 + c1*z + c2*z^2 + ...`.
//!
//! Coefficients are rationals `p/q` or parenthesized Gaussian rationals
//! `(p/q+r/s*i)`. Formatting is canonical (ascending degree, zero terms
//! omitted, unit coefficients elided) and `parse(format(f)) == f`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{PolyError, Polynomial, Scalar};

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative_real = c.is_real() && c.re().is_negative();
            let shown = if negative_real { -c } else { c.clone() };
            if first {
                if negative_real {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if negative_real { " - " } else { " + " })?;
            }
            first = false;
            let monomial = match k {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{k}"),
            };
            if k == 0 {
                write!(f, "{shown}")?;
            } else if shown.is_one() {
                write!(f, "{monomial}")?;
            } else {
                write!(f, "{shown}*{monomial}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Polynomial {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Parser::new(s).polynomial()
    }
}

impl serde::Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Polynomial {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Parses one polynomial in the text format.
pub fn parse_polynomial(s: &str) -> Result<Polynomial, PolyError> {
    s.parse()
}

/// Parses a scalar: `p`, `p/q`, or `(a+b*i)`.
pub fn parse_scalar(s: &str) -> Result<Scalar, PolyError> {
    let mut p = Parser::new(s);
    p.skip_ws();
    let neg = p.eat('-');
    let v = p.coefficient()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error("trailing input"));
    }
    Ok(if neg { -v } else { v })
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn error(&self, msg: &str) -> PolyError {
        PolyError::Parse {
            position: self.pos,
            message: msg.to_string(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn polynomial(&mut self) -> Result<Polynomial, PolyError> {
        let mut coeffs: Vec<Scalar> = Vec::new();
        self.skip_ws();
        if self.at_end() {
            return Err(self.error("empty polynomial"));
        }
        let mut negative = self.eat('-');
        if !negative {
            self.eat('+');
        }
        loop {
            let (c, k) = self.term()?;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, Scalar::zero());
            }
            if negative {
                coeffs[k] -= &c;
            } else {
                coeffs[k] += &c;
            }
            self.skip_ws();
            if self.at_end() {
                break;
            }
            negative = if self.eat('+') {
                false
            } else if self.eat('-') {
                true
            } else {
                return Err(self.error("expected '+' or '-'"));
            };
        }
        Ok(Polynomial::new(coeffs))
    }

    /// A term is `coef`, `coef*z^k`, `coef*z`, `z^k` or `z`.
    fn term(&mut self) -> Result<(Scalar, usize), PolyError> {
        self.skip_ws();
        let coef = if self.starts_variable() {
            Scalar::one()
        } else {
            let c = self.coefficient()?;
            if !self.eat('*') {
                return Ok((c, 0));
            }
            self.skip_ws();
            c
        };
        if !self.starts_variable() {
            return Err(self.error("expected variable 'z'"));
        }
        self.pos += 1;
        let k = if self.eat('^') {
            self.skip_ws();
            let digits = self.digits();
            digits
                .parse::<usize>()
                .map_err(|_| self.error("invalid exponent"))?
        } else {
            1
        };
        Ok((coef, k))
    }

    fn starts_variable(&self) -> bool {
        matches!(self.peek(), Some('z' | 'x'))
    }

    fn digits(&mut self) -> &'a str {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn unsigned_rational(&mut self) -> Result<BigRational, PolyError> {
        self.skip_ws();
        let num = self.digits();
        if num.is_empty() {
            return Err(self.error("expected a number"));
        }
        let num: BigInt = num.parse().map_err(|_| self.error("invalid integer"))?;
        if self.eat('/') {
            self.skip_ws();
            let den = self.digits();
            let den: BigInt = den.parse().map_err(|_| self.error("invalid denominator"))?;
            if den.is_zero() {
                return Err(self.error("zero denominator"));
            }
            Ok(BigRational::new(num, den))
        } else {
            Ok(BigRational::from_integer(num))
        }
    }

    fn coefficient(&mut self) -> Result<Scalar, PolyError> {
        self.skip_ws();
        if self.eat('(') {
            let v = self.gaussian()?;
            if !self.eat(')') {
                return Err(self.error("expected ')'"));
            }
            return Ok(v);
        }
        Ok(Scalar::real(self.unsigned_rational()?))
    }

    /// Inside parentheses: `[-]a`, `[-]a(+|-)b*i`, `[-]a(+|-)i`, `[-]b*i`, `[-]i`.
    fn gaussian(&mut self) -> Result<Scalar, PolyError> {
        let mut re = BigRational::zero();
        let mut im = BigRational::zero();
        let mut first = true;
        loop {
            self.skip_ws();
            if self.peek() == Some(')') && !first {
                break;
            }
            let neg = if self.eat('-') {
                true
            } else {
                if !first && !self.eat('+') {
                    return Err(self.error("expected '+' or '-' in Gaussian coefficient"));
                }
                false
            };
            first = false;
            self.skip_ws();
            let (value, imaginary) = if self.peek() == Some('i') {
                self.pos += 1;
                (BigRational::one(), true)
            } else {
                let v = self.unsigned_rational()?;
                if self.eat('*') {
                    if !self.eat('i') {
                        return Err(self.error("expected 'i'"));
                    }
                    (v, true)
                } else {
                    (v, false)
                }
            };
            let value = if neg { -value } else { value };
            if imaginary {
                im += value;
            } else {
                re += value;
            }
            self.skip_ws();
            if self.peek() == Some(')') {
                break;
            }
        }
        Ok(Scalar::new(re, im))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_output() {
        assert_eq!(Polynomial::from_ints(&[-1, 0, 1]).to_string(), "-1 + z^2");
        assert_eq!(Polynomial::from_ints(&[0, -1, 0, 1]).to_string(), "-z + z^3");
        assert_eq!(Polynomial::from_ints(&[1, -2, 1]).to_string(), "1 - 2*z + z^2");
        assert_eq!(Polynomial::zero().to_string(), "0");
        let f = Polynomial::new(vec![Scalar::zero(), Scalar::i(), Scalar::one()]);
        assert_eq!(f.to_string(), "(0+1*i)*z + z^2");
    }

    #[test]
    fn accepts_documented_format() {
        let f = p("1/2 + 3*z + (1/2+3/4*i)*z^2");
        assert_eq!(f.coeff(0), Scalar::ratio(1, 2));
        assert_eq!(f.coeff(1), Scalar::int(3));
        assert_eq!(f.degree(), Some(2));
        assert_eq!(p("z^2 - 1/4"), p("-1/4 + 1*z^2"));
        assert_eq!(p("x^3 - x"), Polynomial::from_ints(&[0, -1, 0, 1]));
        assert_eq!(p("(i)*z + (2-i)"), Polynomial::new(vec![Scalar::gaussian(2, -1), Scalar::i()]));
        assert_eq!(p("0"), Polynomial::zero());
    }

    #[test]
    fn rejects_malformed() {
        for bad in ["", "z^", "1/0", "3 3", "(1+2*j)", "z^2 +", "y"] {
            assert!(bad.parse::<Polynomial>().is_err(), "{bad:?} should fail");
        }
    }

    #[test]
    fn scalar_parse() {
        assert_eq!(parse_scalar("-3/6").unwrap(), Scalar::ratio(-1, 2));
        assert_eq!(parse_scalar("(1-2*i)").unwrap(), Scalar::gaussian(1, -2));
    }
}
