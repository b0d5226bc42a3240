use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Coeff = BigRational;

pub fn rational(numer: i64, denom: i64) -> Coeff {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn integer(value: i64) -> Coeff {
    BigRational::from_integer(BigInt::from(value))
}

/// The generator `u[row, col]`, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gen {
    pub row: usize,
    pub col: usize,
}

impl Gen {
    pub fn new(row: usize, col: usize) -> Self {
        Gen { row, col }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "u[{},{}]", self.row, self.col)
    }
}

/// A word in the free monoid on the generators. The empty word is the unit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Gen>);

impl Word {
    pub fn one() -> Self {
        Word(Vec::new())
    }

    pub fn new(factors: Vec<Gen>) -> Self {
        Word(factors)
    }

    pub fn from_pairs(pairs: &[(usize, usize)]) -> Self {
        Word(pairs.iter().map(|&(r, c)| Gen::new(r, c)).collect())
    }

    pub fn factors(&self) -> &[Gen] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// Position of the first occurrence of `pattern` as a contiguous factor.
    pub fn find(&self, pattern: &Word) -> Option<usize> {
        if pattern.is_empty() || pattern.len() > self.len() {
            return None;
        }
        self.0
            .windows(pattern.len())
            .position(|w| w == pattern.factors())
    }

    pub fn matches_at(&self, pattern: &Word, position: usize) -> bool {
        self.0
            .get(position..position + pattern.len())
            .is_some_and(|w| w == pattern.factors())
    }

    pub fn max_index(&self) -> usize {
        self.0.iter().map(|g| g.row.max(g.col)).max().unwrap_or(0)
    }
}

impl From<Gen> for Word {
    fn from(g: Gen) -> Self {
        Word(vec![g])
    }
}

/// Degree-lexicographic: shorter words first, then lexicographic on `(row, col)`.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("1");
        }
        for g in &self.0 {
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// Finite linear combination of words with nonzero rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Word, Coeff>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::monomial(Coeff::one(), Word::one())
    }

    pub fn gen(row: usize, col: usize) -> Self {
        Poly::monomial(Coeff::one(), Gen::new(row, col).into())
    }

    /// Product of generators, coefficient 1.
    pub fn word(pairs: &[(usize, usize)]) -> Self {
        Poly::monomial(Coeff::one(), Word::from_pairs(pairs))
    }

    pub fn monomial(coeff: Coeff, word: Word) -> Self {
        let mut p = Poly::zero();
        p.add_term(word, coeff);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, Coeff)>) -> Self {
        let mut p = Poly::zero();
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn add_term(&mut self, word: Word, coeff: Coeff) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in degree-lexicographic word order.
    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Coeff)> {
        self.terms.iter()
    }

    pub fn coeff(&self, word: &Word) -> Coeff {
        self.terms.get(word).cloned().unwrap_or_else(Coeff::zero)
    }

    /// The single word of a monomial with coefficient exactly 1.
    pub fn as_monic_word(&self) -> Option<&Word> {
        match self.terms.iter().next() {
            Some((w, c)) if self.terms.len() == 1 && c.is_one() => Some(w),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Coeff) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(w, a)| (w.clone(), a * c)).collect(),
        }
    }

    /// Adjoint: reverses every word. Generators are self-adjoint and rational
    /// coefficients are fixed by conjugation.
    pub fn star(&self) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.reversed(), c.clone()))
                .collect(),
        }
    }

    pub fn max_index(&self) -> usize {
        self.terms.keys().map(Word::max_index).max().unwrap_or(0)
    }

    /// Multiplies every term on the left by `left` and on the right by `right`.
    pub fn sandwich(&self, left: &Word, right: &Word) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (left.concat(w).concat(right), c.clone()))
                .collect(),
        }
    }
}

pub fn commutator(a: &Poly, b: &Poly) -> Poly {
    &(a * b) - &(b * a)
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &rhs.terms {
                out.add_term(w1.concat(w2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (w, c)) in self.terms.iter().enumerate() {
            let magnitude = if idx == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
                c.abs()
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
                c.abs()
            };
            match (magnitude.is_one(), w.is_empty()) {
                (_, true) => write!(f, "{magnitude}")?,
                (true, false) => write!(f, "{w}")?,
                (false, false) => write!(f, "{magnitude}*{w}")?,
            }
        }
        Ok(())
    }
}
