//! Text form of polynomials.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' uint)?
//! base   := identifier | rational | '(' expr ')'
//! rational := int ('/' uint)?
//! ```
//!
//! There is no implicit multiplication. The identifier `i` denotes the square
//! root of -1 when the coefficient field has one.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::field::Coeff;
use crate::poly::poly::Poly;
use crate::poly::ring::{Monomial, PolyRing};

pub fn parse_poly(text: &str, ring: &Arc<PolyRing>) -> Result<Poly> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        ring,
    };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: &'a Arc<PolyRing>,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Poly> {
        let negate = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let first = self.term()?;
        let mut acc = if negate { -first } else { first };
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            acc = if op == b'+' { &acc + &t } else { &acc - &t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while let Some(b'*') = self.peek() {
            self.pos += 1;
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = self.base()?;
        if let Some(b'^') = self.peek() {
            self.pos += 1;
            self.skip_ws();
            let digits = self.digits();
            if digits.is_empty() {
                return Err(self.error("expected exponent"));
            }
            let e: u32 = digits
                .parse()
                .map_err(|_| self.error("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn base(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let num: BigInt = self.digits().parse().expect("digits");
                let mut den = BigInt::one();
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    let d = self.digits();
                    if d.is_empty() {
                        return Err(self.error("expected denominator"));
                    }
                    den = d.parse().expect("digits");
                }
                let c = self.ring.field().from_fraction(&num, &den)?;
                Ok(Poly::constant(self.ring, c))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                if name == "i" {
                    if let Some(i) = self.ring.field().sqrt_minus_one() {
                        return Ok(Poly::constant(self.ring, i));
                    }
                }
                Poly::var(self.ring, name)
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

fn render_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// (negative, body, body_is_unit)
fn render_coeff(c: &Coeff) -> (bool, String, bool) {
    match c {
        Coeff::Rat(r) => (r.is_negative(), render_rational(&r.abs()), r.abs().is_one()),
        Coeff::Gauss(a, b) if a.is_zero() => {
            let body = if b.abs().is_one() {
                "i".to_string()
            } else {
                format!("{}*i", render_rational(&b.abs()))
            };
            (b.is_negative(), body, false)
        }
        Coeff::Gauss(a, b) => {
            let re = if a.is_negative() {
                format!("-{}", render_rational(&a.abs()))
            } else {
                render_rational(a)
            };
            let sign = if b.is_negative() { "-" } else { "+" };
            let im = if b.abs().is_one() {
                "i".to_string()
            } else {
                format!("{}*i", render_rational(&b.abs()))
            };
            (false, format!("({re} {sign} {im})"), false)
        }
        Coeff::Mod { v, p } => {
            let (neg, abs) = if *v > p / 2 { (true, p - v) } else { (false, *v) };
            (neg, abs.to_string(), abs == 1)
        }
    }
}

fn render_monomial(m: &Monomial, vars: &[String]) -> String {
    let mut parts = Vec::new();
    for (e, v) in m.0.iter().zip(vars) {
        match e {
            0 => {}
            1 => parts.push(v.clone()),
            _ => parts.push(format!("{v}^{e}")),
        }
    }
    parts.join("*")
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms().iter().enumerate() {
            let (neg, body, unit) = render_coeff(c);
            let mono = render_monomial(m, self.ring().vars());
            let term = if m.is_one() {
                body
            } else if unit {
                mono
            } else {
                format!("{body}*{mono}")
            };
            match (k, neg) {
                (0, true) => write!(f, "-{term}")?,
                (0, false) => write!(f, "{term}")?,
                (_, true) => write!(f, " - {term}")?,
                (_, false) => write!(f, " + {term}")?,
            }
        }
        Ok(())
    }
}

/// Serialized as its canonical text rendering.
impl serde::Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::field::CoeffField;
    use crate::poly::ring::MonomialOrder;

    fn ring() -> Arc<PolyRing> {
        PolyRing::rational(&["x", "y"])
    }

    #[test]
    fn additive_identity() {
        let r = ring();
        assert_eq!(parse_poly("x + 0", &r).unwrap(), Poly::var(&r, "x").unwrap());
    }

    #[test]
    fn term_collection() {
        let r = ring();
        let p = parse_poly("y^3 - 2*x*y", &r).unwrap();
        assert_eq!(p.num_terms(), 2);
        let coeffs: Vec<_> = p.terms().iter().map(|(_, c)| c.clone()).collect();
        assert!(coeffs.contains(&r.field().from_i64(1)));
        assert!(coeffs.contains(&r.field().from_i64(-2)));
    }

    #[test]
    fn errors_carry_positions() {
        let r = ring();
        assert_eq!(
            parse_poly("2x", &r),
            Err(Error::Syntax {
                pos: 1,
                msg: "unexpected trailing input".into()
            })
        );
        assert_eq!(parse_poly("x + w", &r), Err(Error::UnknownVariable("w".into())));
        assert_eq!(parse_poly("1/0*x", &r), Err(Error::DivisionByZero));
        assert!(matches!(parse_poly("x^", &r), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("(x + y", &r), Err(Error::Syntax { .. })));
    }

    #[test]
    fn render_round_trip() {
        let r = PolyRing::gaussian(&["u", "v", "y"]);
        for s in [
            "u + i*v",
            "-(1/2)*u^2 + 3*v - 7",
            "(2 - 3*i)*u*y^4 - i",
            "-u^3*v*y",
            "0",
        ] {
            let p = parse_poly(s, &r).unwrap();
            let q = parse_poly(&p.to_string(), &r).unwrap();
            assert_eq!(p, q, "{s} rendered as {p}");
        }
        let gf = PolyRing::new(&["x"], MonomialOrder::Lex, CoeffField::prime(13).unwrap()).unwrap();
        let p = parse_poly("12*x + 1/2", &gf).unwrap();
        assert_eq!(p.to_string(), "-x - 6");
    }
}

