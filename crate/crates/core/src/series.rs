//! Truncated noncommutative power series over the rationals.
//!
//! A [`TruncSeries`] stores the coefficients of every word of length at most
//! its `order`; anything longer is unknown rather than zero. Binary operations
//! truncate to the smaller order, and operations that consume a leading letter
//! (Fox derivatives, the `z` action, right action by polynomials) lower the
//! order accordingly so that no undetermined coefficient is ever reported.
//!
//! Letters are 0-based in the Rust API (`x1` is letter `0`).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{format_rational, Rational};

/// A word over the alphabet `{x1, ..., x_mu}`, stored as 0-based letter indices.
///
/// Words order graded-lexicographically: shorter words first, then
/// lexicographically by letter.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<usize>) -> Self {
        Word(letters)
    }

    pub fn letter(a: usize) -> Self {
        Word(vec![a])
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<usize> {
        self.0.first().copied()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    pub fn push(&mut self, letter: usize) {
        self.0.push(letter);
    }

    pub fn starts_with(&self, prefix: &Word) -> bool {
        self.0.starts_with(&prefix.0)
    }

    /// The word with its first `n` letters removed.
    pub fn suffix_from(&self, n: usize) -> Word {
        Word(self.0[n..].to_vec())
    }

    pub fn check_alphabet(&self, mu: usize) -> Result<()> {
        match self.0.iter().find(|&&a| a >= mu) {
            Some(&letter) => Err(Error::BadLetter { letter, mu }),
            None => Ok(()),
        }
    }
}

impl From<Vec<usize>> for Word {
    fn from(letters: Vec<usize>) -> Self {
        Word(letters)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
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
            return write!(f, "1");
        }
        for (k, a) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            write!(f, "x{}", a + 1)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

/// All words of length `len` in graded-lex order.
pub fn words_of_length(mu: usize, len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    for _ in 0..len {
        out = out
            .iter()
            .flat_map(|w| {
                (0..mu).map(move |a| {
                    let mut next = w.clone();
                    next.push(a);
                    next
                })
            })
            .collect();
    }
    out
}

/// All words of length at most `max_len`, in graded-lex order.
pub fn words_up_to(mu: usize, max_len: usize) -> Vec<Word> {
    (0..=max_len).flat_map(|n| words_of_length(mu, n)).collect()
}

/// A noncommutative series known up to words of length `order`.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncSeries {
    mu: usize,
    order: usize,
    coeffs: BTreeMap<Word, Rational>,
}

impl TruncSeries {
    pub fn zero(mu: usize, order: usize) -> Self {
        Self {
            mu,
            order,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(mu: usize, order: usize) -> Self {
        Self::constant(mu, order, Rational::one())
    }

    pub fn constant(mu: usize, order: usize, c: Rational) -> Self {
        let mut s = Self::zero(mu, order);
        s.add_term(Word::empty(), c);
        s
    }

    /// `c * x_a`.
    pub fn letter(mu: usize, order: usize, a: usize, c: Rational) -> Result<Self> {
        Self::from_terms(mu, order, [(Word::letter(a), c)])
    }

    /// Builds a series from `(word, coefficient)` pairs. Repeated words are
    /// summed; words longer than `order` are dropped.
    pub fn from_terms<I>(mu: usize, order: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Word, Rational)>,
    {
        let mut s = Self::zero(mu, order);
        for (w, c) in terms {
            w.check_alphabet(mu)?;
            s.add_term(w, c);
        }
        Ok(s)
    }

    fn add_term(&mut self, w: Word, c: Rational) {
        if w.len() > self.order || c.is_zero() {
            return;
        }
        match self.coeffs.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn mu(&self) -> usize {
        self.mu
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, w: &Word) -> Rational {
        self.coeffs.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    /// Nonzero terms in graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.coeffs.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Length of the longest stored word, or `None` for the zero series.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.keys().next_back().map(Word::len)
    }

    /// Constant term.
    pub fn epsilon(&self) -> Rational {
        self.coeff(&Word::empty())
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        Self {
            mu: self.mu,
            order,
            coeffs: self
                .coeffs
                .iter()
                .take_while(|(w, _)| w.len() <= order)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.mu, self.order);
        }
        Self {
            mu: self.mu,
            order: self.order,
            coeffs: self.coeffs.iter().map(|(w, x)| (w.clone(), x * c)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    fn check_mu(&self, other: &Self) -> Result<()> {
        if self.mu != other.mu {
            return Err(Error::AlphabetMismatch {
                left: self.mu,
                right: other.mu,
            });
        }
        Ok(())
    }

    fn check_letter(&self, i: usize) -> Result<()> {
        if i >= self.mu {
            return Err(Error::BadLetter {
                letter: i,
                mu: self.mu,
            });
        }
        Ok(())
    }

    /// Inverse in the ring of series; requires a nonzero constant term.
    ///
    /// Writes `f = c (1 - h)` with `h` of zero constant term and sums the
    /// geometric series `c^{-1} (1 + h + h^2 + ...)` up to the order.
    pub fn invert(&self) -> Result<Self> {
        let c = self.epsilon();
        if c.is_zero() {
            return Err(Error::NotInvertible);
        }
        let c_inv = c.recip();
        let h = series_sub(&Self::one(self.mu, self.order), &self.scale(&c_inv))?;
        let mut acc = Self::one(self.mu, self.order);
        let mut power = Self::one(self.mu, self.order);
        for _ in 0..self.order {
            power = series_mul(&power, &h)?;
            if power.is_zero() {
                break;
            }
            acc = series_add(&acc, &power)?;
        }
        Ok(acc.scale(&c_inv))
    }

    /// Fox derivative: the coefficient of `w` in the result is the coefficient
    /// of `x_i w` here. The order drops by one.
    pub fn fox_derive(&self, i: usize) -> Result<Self> {
        self.check_letter(i)?;
        if self.order == 0 {
            return Err(Error::OrderExceeded { length: 1, order: 0 });
        }
        let mut out = Self::zero(self.mu, self.order - 1);
        for (w, c) in &self.coeffs {
            if w.first() == Some(i) {
                out.coeffs.insert(w.suffix_from(1), c.clone());
            }
        }
        Ok(out)
    }

    /// Canonical pairing `(S, P) = sum_w S(w) P(w)` with a polynomial `P`.
    pub fn pairing(&self, poly: &Self) -> Result<Rational> {
        self.check_mu(poly)?;
        self.check_poly_fits(poly)?;
        Ok(poly
            .coeffs
            .iter()
            .fold(Rational::zero(), |acc, (w, p)| acc + p * self.coeff(w)))
    }

    fn check_poly_fits(&self, poly: &Self) -> Result<usize> {
        let len = poly.degree().unwrap_or(0);
        if len > self.order {
            return Err(Error::OrderExceeded {
                length: len,
                order: self.order,
            });
        }
        Ok(len)
    }

    /// Right action of a polynomial: `(S o P, w) = (S, P w)`.
    ///
    /// The result order is `order(S) - deg(P)`.
    pub fn circ(&self, poly: &Self) -> Result<Self> {
        self.check_mu(poly)?;
        let len = self.check_poly_fits(poly)?;
        let mut out = Self::zero(self.mu, self.order - len);
        for (u, p) in &poly.coeffs {
            for (uw, s) in &self.coeffs {
                if !uw.starts_with(u) || uw.len() - u.len() > out.order {
                    continue;
                }
                out.add_term(uw.suffix_from(u.len()), p * s);
            }
        }
        Ok(out)
    }

    fn check_augmentation(&self) -> Result<()> {
        if !self.epsilon().is_zero() {
            return Err(Error::NotAugmentation);
        }
        Ok(())
    }

    /// The idempotent `pi_i`: keeps exactly the words beginning with `x_i`.
    pub fn pmu_pi(&self, i: usize) -> Result<Self> {
        self.check_letter(i)?;
        self.check_augmentation()?;
        Ok(Self {
            mu: self.mu,
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(w, _)| w.first() == Some(i))
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        })
    }

    /// The operator `z`: `z(x_k w) = -w` for every letter `k`.
    pub fn pmu_z(&self) -> Result<Self> {
        self.check_augmentation()?;
        if self.order == 0 {
            return Err(Error::OrderExceeded { length: 1, order: 0 });
        }
        let mut out = Self::zero(self.mu, self.order - 1);
        for (w, c) in &self.coeffs {
            out.add_term(w.suffix_from(1), -c.clone());
        }
        Ok(out)
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0 + O({})", self.order + 1);
        }
        for (k, (w, c)) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if w.is_empty() {
                write!(f, "{}", format_rational(c))?;
            } else {
                write!(f, "({})*{}", format_rational(c), w)?;
            }
        }
        write!(f, " + O({})", self.order + 1)
    }
}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncSeries[mu={}] {}", self.mu, self)
    }
}

pub fn series_add(f: &TruncSeries, g: &TruncSeries) -> Result<TruncSeries> {
    f.check_mu(g)?;
    let mut out = f.truncate(g.order);
    for (w, c) in &g.coeffs {
        out.add_term(w.clone(), c.clone());
    }
    Ok(out)
}

pub fn series_sub(f: &TruncSeries, g: &TruncSeries) -> Result<TruncSeries> {
    series_add(f, &g.neg())
}

/// Cauchy product; the coefficient of `w` sums `f(u) g(v)` over `w = uv`.
pub fn series_mul(f: &TruncSeries, g: &TruncSeries) -> Result<TruncSeries> {
    f.check_mu(g)?;
    let order = f.order.min(g.order);
    let mut out = TruncSeries::zero(f.mu, order);
    for (u, a) in f.coeffs.iter().take_while(|(u, _)| u.len() <= order) {
        let room = order - u.len();
        for (v, b) in g.coeffs.iter().take_while(|(v, _)| v.len() <= room) {
            out.add_term(u.concat(v), a * b);
        }
    }
    Ok(out)
}

/// An element of the free group on `mu` generators: a sequence of generators
/// and inverse generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GroupWord {
    factors: Vec<GroupLetter>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GroupLetter {
    pub generator: usize,
    pub inverse: bool,
}

impl GroupWord {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn new(factors: Vec<GroupLetter>) -> Self {
        Self { factors }
    }

    /// From signed 1-based indices: `k` is `g_k`, `-k` is `g_k^{-1}`.
    pub fn from_signed(indices: &[i64]) -> Result<Self> {
        let factors = indices
            .iter()
            .map(|&k| {
                if k == 0 {
                    return Err(Error::Parse("group word index 0".into()));
                }
                Ok(GroupLetter {
                    generator: (k.unsigned_abs() - 1) as usize,
                    inverse: k < 0,
                })
            })
            .collect::<Result<_>>()?;
        Ok(Self { factors })
    }

    pub fn to_signed(&self) -> Vec<i64> {
        self.factors
            .iter()
            .map(|f| {
                let k = f.generator as i64 + 1;
                if f.inverse {
                    -k
                } else {
                    k
                }
            })
            .collect()
    }

    pub fn factors(&self) -> &[GroupLetter] {
        &self.factors
    }

    pub fn concat(&self, other: &GroupWord) -> GroupWord {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        GroupWord { factors }
    }
}

/// Truncated Magnus expansion: `g_i -> 1 + x_i`, `g_i^{-1} -> sum_n (-x_i)^n`.
pub fn magnus(g: &GroupWord, mu: usize, order: usize) -> Result<TruncSeries> {
    let mut acc = TruncSeries::one(mu, order);
    for f in &g.factors {
        Word::letter(f.generator).check_alphabet(mu)?;
        let factor = if f.inverse {
            let mut s = TruncSeries::zero(mu, order);
            let mut w = Word::empty();
            for n in 0..=order {
                let sign = if n % 2 == 0 { Rational::one() } else { -Rational::one() };
                s.add_term(w.clone(), sign);
                w.push(f.generator);
            }
            s
        } else {
            let x = TruncSeries::letter(mu, order, f.generator, Rational::one())?;
            series_add(&TruncSeries::one(mu, order), &x)?
        };
        acc = series_mul(&acc, &factor)?;
    }
    Ok(acc)
}
