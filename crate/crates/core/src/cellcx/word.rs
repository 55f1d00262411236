//! Freely reduced words and the integral group ring.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: String,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: impl Into<String>, inverse: bool) -> Self {
        Letter {
            generator: generator.into(),
            inverse,
        }
    }

    fn cancels(&self, other: &Letter) -> bool {
        self.generator == other.generator && self.inverse != other.inverse
    }

    fn inverted(&self) -> Letter {
        Letter::new(self.generator.clone(), !self.inverse)
    }
}

/// A freely reduced word in named generators. Written as space separated
/// tokens `g` / `g^-1`; the empty word is `1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn generator(name: impl Into<String>) -> Self {
        Word(vec![Letter::new(name, false)])
    }

    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last().is_some_and(|last| last.cancels(&l)) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// Accepts `1`, and tokens `g`, `g^-1` or `g^n` for any integer `n`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" || s.is_empty() {
            return Ok(Word::identity());
        }
        let mut letters = Vec::new();
        for token in s.split_whitespace() {
            let (name, exp) = match token.split_once('^') {
                Some((name, e)) => {
                    let e: i64 = e.parse().map_err(|_| {
                        Error::Parse(format!("bad exponent in word token `{token}`"))
                    })?;
                    (name, e)
                }
                None => (token, 1),
            };
            if !is_identifier(name) {
                return Err(Error::Parse(format!("bad generator name `{name}`")));
            }
            for _ in 0..exp.unsigned_abs() {
                letters.push(Letter::new(name, exp < 0));
            }
        }
        Ok(Word::from_letters(letters))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, rhs: &Word) -> Word {
        Word::from_letters(self.0.iter().chain(&rhs.0).cloned())
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(Letter::inverted).collect())
    }

    /// Word made of the first `k` letters.
    pub fn prefix(&self, k: usize) -> Word {
        Word(self.0[..k].to_vec())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, l) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", l.generator)?;
            if l.inverse {
                write!(f, "^-1")?;
            }
        }
        Ok(())
    }
}

/// Element of the integral group ring of the free group: finitely many
/// words with nonzero integer coefficients, sorted by word.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GroupRingElement {
    terms: Vec<(i64, Word)>,
}

impl GroupRingElement {
    pub fn new(terms: impl IntoIterator<Item = (i64, Word)>) -> Self {
        let mut acc: BTreeMap<Word, i64> = BTreeMap::new();
        for (c, w) in terms {
            *acc.entry(w).or_insert(0) += c;
        }
        GroupRingElement {
            terms: acc
                .into_iter()
                .filter(|(_, c)| *c != 0)
                .map(|(w, c)| (c, w))
                .collect(),
        }
    }

    pub fn zero() -> Self {
        GroupRingElement::default()
    }

    pub fn one() -> Self {
        GroupRingElement::from_word(Word::identity())
    }

    pub fn from_word(w: Word) -> Self {
        GroupRingElement {
            terms: vec![(1, w)],
        }
    }

    pub fn terms(&self) -> &[(i64, Word)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Image under the trivial representation: the sum of the coefficients.
    pub fn augmentation(&self) -> i64 {
        self.terms.iter().map(|(c, _)| c).sum()
    }

    pub fn add(&self, rhs: &GroupRingElement) -> GroupRingElement {
        GroupRingElement::new(self.terms.iter().chain(&rhs.terms).cloned())
    }

    pub fn neg(&self) -> GroupRingElement {
        GroupRingElement {
            terms: self.terms.iter().map(|(c, w)| (-c, w.clone())).collect(),
        }
    }

    pub fn sub(&self, rhs: &GroupRingElement) -> GroupRingElement {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &GroupRingElement) -> GroupRingElement {
        GroupRingElement::new(
            self.terms
                .iter()
                .flat_map(|(a, u)| rhs.terms.iter().map(move |(b, v)| (a * b, u.mul(v)))),
        )
    }

    /// `left * self * right`.
    pub fn conjugate(&self, left: &Word, right: &Word) -> GroupRingElement {
        GroupRingElement::new(self.terms.iter().map(|(c, w)| (*c, left.mul(w).mul(right))))
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (c, w)) in self.terms.iter().enumerate() {
            let sign = if *c < 0 {
                "-"
            } else if k > 0 {
                "+"
            } else {
                ""
            };
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{sign}")?;
            if k > 0 {
                write!(f, " ")?;
            }
            if c.abs() != 1 || w.is_identity() {
                write!(f, "{}", c.abs())?;
                if !w.is_identity() {
                    write!(f, "*")?;
                }
            }
            if !w.is_identity() {
                write!(f, "({w})")?;
            }
        }
        Ok(())
    }
}

/// Fox derivative of `w` with respect to the generator `x`.
pub fn fox_derivative(w: &Word, x: &str) -> GroupRingElement {
    let letters = w.letters();
    let mut terms = Vec::new();
    for (k, l) in letters.iter().enumerate() {
        if l.generator != x {
            continue;
        }
        if l.inverse {
            terms.push((-1, Word::from_letters(letters[..=k].iter().cloned())));
        } else {
            terms.push((1, w.prefix(k)));
        }
    }
    GroupRingElement::new(terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_reduction() {
        let w = Word::parse("a b b^-1 a^-1 c").unwrap();
        assert_eq!(w, Word::parse("c").unwrap());
        assert_eq!(Word::parse("a a^-1").unwrap(), Word::identity());
        assert_eq!(Word::parse("g^2").unwrap().to_string(), "g g");
        assert_eq!(Word::parse("1").unwrap().to_string(), "1");
        assert_eq!(
            Word::parse("a b^-1").unwrap().inverse().to_string(),
            "b a^-1"
        );
        assert!(Word::parse("a^x").is_err());
        assert!(Word::parse("2a").is_err());
    }

    #[test]
    fn ring_arithmetic() {
        let g = GroupRingElement::from_word(Word::generator("g"));
        let gm1 = g.sub(&GroupRingElement::one());
        assert_eq!(gm1.augmentation(), 0);
        let sq = gm1.mul(&gm1);
        // g^2 - 2g + 1
        assert_eq!(sq.terms().len(), 3);
        assert_eq!(sq.augmentation(), 0);
        assert!(gm1.sub(&gm1).is_zero());
    }

    #[test]
    fn fox_calculus_fundamental_formula() {
        // sum_x (dr/dx)(x - 1) = r - 1
        let r = Word::parse("a b a^-1 b^-1").unwrap();
        let mut total = GroupRingElement::zero();
        for x in ["a", "b"] {
            let xm1 = GroupRingElement::from_word(Word::generator(x)).sub(&GroupRingElement::one());
            total = total.add(&fox_derivative(&r, x).mul(&xm1));
        }
        let expected = GroupRingElement::from_word(r.clone()).sub(&GroupRingElement::one());
        assert_eq!(total, expected);
    }
}
