//! The plain-text polynomial format.
//!
//! `3*x0^2*y1 + 30*z2 + 7` — `^` for powers, `*` for products, terms joined
//! by `+` or `-`. The printer (`Display` on `Polynomial`) always emits
//! canonical coefficients in `[0, p)` joined by ` + `, and printing then
//! parsing reproduces the polynomial bit for bit.

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::RingRef;

struct Scanner<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn new(src: &'a str) -> Self {
        Scanner {
            src: src.as_bytes(),
            pos: 0,
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

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            at: self.pos,
            msg: msg.into(),
        }
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected a number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse::<u64>()
            .map_err(|_| self.err("number too large"))
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        if self.pos >= self.src.len()
            || !(self.src[self.pos].is_ascii_alphabetic() || self.src[self.pos] == b'_')
        {
            return Err(self.err("expected a variable name"));
        }
        self.pos += 1;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .to_string())
    }
}

/// Parse one polynomial in the given ring.
pub fn parse_poly(ring: &RingRef, src: &str) -> Result<Polynomial> {
    let f = ring.field();
    let mut sc = Scanner::new(src);
    let mut raw: Vec<(Monomial, u32)> = Vec::new();

    let mut sign_negative = match sc.peek() {
        Some(b'-') => {
            sc.bump();
            true
        }
        Some(b'+') => {
            sc.bump();
            false
        }
        Some(_) => false,
        None => return Err(sc.err("empty input")),
    };

    loop {
        // one term: optional coefficient, then factors separated by '*'
        let mut coeff: u32 = 1;
        let mut exps = vec![0u16; ring.arity()];
        let mut saw_factor = false;

        match sc.peek() {
            Some(c) if c.is_ascii_digit() => {
                coeff = (sc.number()? % f.modulus() as u64) as u32;
                saw_factor = true;
                if sc.peek() == Some(b'*') {
                    sc.bump();
                    saw_factor = false; // a variable factor must follow
                }
            }
            _ => {}
        }
        if !saw_factor {
            loop {
                let name = sc.ident()?;
                let idx = ring.var_index(&name)?;
                let mut e: u16 = 1;
                if sc.peek() == Some(b'^') {
                    sc.bump();
                    let n = sc.number()?;
                    e = u16::try_from(n).map_err(|_| sc.err("exponent too large"))?;
                }
                exps[idx] = exps[idx]
                    .checked_add(e)
                    .ok_or_else(|| sc.err("exponent overflow"))?;
                if sc.peek() == Some(b'*') {
                    sc.bump();
                } else {
                    break;
                }
            }
        }

        if sign_negative {
            coeff = f.neg(coeff);
        }
        raw.push((Monomial::new(exps), coeff));

        match sc.peek() {
            Some(b'+') => {
                sc.bump();
                sign_negative = false;
            }
            Some(b'-') => {
                sc.bump();
                sign_negative = true;
            }
            Some(_) => return Err(sc.err("expected `+`, `-`, or end of input")),
            None => break,
        }
    }

    Polynomial::from_terms(ring, raw)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;

    fn ring() -> RingRef {
        Ring::standard("x", 3, 31).unwrap()
    }

    #[test]
    fn parses_the_readme_shape() {
        let r = Ring::degrevlex(vec!["x0", "y1", "z2"], 31).unwrap();
        let p = parse_poly(&r, "3*x0^2*y1 + 30*z2 + 7").unwrap();
        assert_eq!(p.to_string(), "3*x0^2*y1 + 30*z2 + 7");
    }

    #[test]
    fn minus_signs_and_spaces() {
        let r = ring();
        let p = parse_poly(&r, " - x0 + 2*x1 - 3 ").unwrap();
        assert_eq!(p.to_string(), "30*x0 + 2*x1 + 28");
    }

    #[test]
    fn repeated_variables_accumulate() {
        let r = ring();
        let p = parse_poly(&r, "x0*x0*x1^2").unwrap();
        assert_eq!(p.to_string(), "x0^2*x1^2");
    }

    #[test]
    fn coefficients_reduce_mod_p() {
        let r = ring();
        assert_eq!(parse_poly(&r, "31*x0").unwrap().to_string(), "0");
        assert_eq!(parse_poly(&r, "33").unwrap().to_string(), "2");
        assert_eq!(parse_poly(&r, "0").unwrap().to_string(), "0");
    }

    #[test]
    fn rejects_garbage() {
        let r = ring();
        for bad in ["", "x9", "x0 +", "3 * * x0", "x0^", "x0 x1", "2^3"] {
            assert!(parse_poly(&r, bad).is_err(), "`{bad}` parsed");
        }
    }

    #[test]
    fn error_position_is_meaningful() {
        let r = ring();
        match parse_poly(&r, "x0 + x9") {
            Err(Error::UnknownVariable(v)) => assert_eq!(v, "x9"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn print_parse_round_trip_samples() {
        let r = ring();
        for src in [
            "x0^2 + 30*x1^2",
            "29*x0*x1*x2 + x2^3 + 1",
            "0",
            "17",
            "x0^11*x1 + 5*x2^2",
        ] {
            let p = parse_poly(&r, src).unwrap();
            let q = parse_poly(&r, &p.to_string()).unwrap();
            assert_eq!(p, q);
            assert_eq!(p.to_string(), q.to_string());
        }
    }
}
