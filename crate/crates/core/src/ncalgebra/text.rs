//! Text syntax for polynomials, e.g. `3/2*u[1,2]u[3,4] - u[5,5]`. `1` is the empty
//! word and `0` the zero polynomial. Generators may optionally be joined with `*`.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use super::poly::{Coeff, Gen, Poly, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("polynomial parse error at column {column}: {message}")]
pub struct PolyParseError {
    pub column: usize,
    pub message: String,
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, PolyParseError> {
        Err(PolyParseError {
            column: self.pos + 1,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), PolyParseError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn digits(&mut self) -> Result<BigInt, PolyParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        let s = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse as integer"))
    }

    fn index(&mut self) -> Result<usize, PolyParseError> {
        let start = self.pos;
        let v = self.digits()?;
        match usize::try_from(&v) {
            Ok(i) if i >= 1 => Ok(i),
            _ => {
                self.pos = start;
                self.err("generator index must be a positive integer")
            }
        }
    }

    fn coefficient(&mut self) -> Result<Coeff, PolyParseError> {
        let numer = self.digits()?;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let denom = self.digits()?;
            if denom.is_zero() {
                return self.err("zero denominator");
            }
            Ok(BigRational::new(numer, denom))
        } else {
            Ok(BigRational::from_integer(numer))
        }
    }

    fn gen(&mut self) -> Result<Gen, PolyParseError> {
        self.expect(b'u')?;
        self.expect(b'[')?;
        let row = self.index()?;
        self.expect(b',')?;
        let col = self.index()?;
        self.expect(b']')?;
        Ok(Gen::new(row, col))
    }

    fn word(&mut self) -> Result<Word, PolyParseError> {
        let mut factors = vec![self.gen()?];
        loop {
            match self.peek() {
                Some(b'u') => factors.push(self.gen()?),
                Some(b'*') => {
                    self.pos += 1;
                    factors.push(self.gen()?);
                }
                _ => return Ok(Word::new(factors)),
            }
        }
    }

    fn term(&mut self) -> Result<(Word, Coeff), PolyParseError> {
        match self.peek() {
            Some(b'u') => Ok((self.word()?, Coeff::one())),
            Some(c) if c.is_ascii_digit() => {
                let coeff = self.coefficient()?;
                match self.peek() {
                    Some(b'*') => {
                        self.pos += 1;
                        Ok((self.word()?, coeff))
                    }
                    Some(b'u') => Ok((self.word()?, coeff)),
                    _ => Ok((Word::one(), coeff)),
                }
            }
            _ => self.err("expected a coefficient or a generator u[i,j]"),
        }
    }

    fn poly(&mut self) -> Result<Poly, PolyParseError> {
        let mut out = Poly::zero();
        let mut negative = false;
        if self.peek() == Some(b'-') {
            self.pos += 1;
            negative = true;
        }
        loop {
            let (w, c) = self.term()?;
            out.add_term(w, if negative { -c } else { c });
            match self.peek() {
                None => return Ok(out),
                Some(b'+') => negative = false,
                Some(b'-') => negative = true,
                Some(_) => return self.err("expected '+', '-' or end of input"),
            }
            self.pos += 1;
        }
    }
}

impl FromStr for Poly {
    type Err = PolyParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Parser {
            bytes: s.as_bytes(),
            pos: 0,
        }
        .poly()
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}
