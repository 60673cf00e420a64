//! Twist words and the shared word grammar.
//!
//! A word is a sequence of signed Dehn twists over named curves. The text
//! grammar, shared by the CLI and the JSON descriptors, is whitespace
//! separated tokens `id` or `id^e` with a nonzero integer exponent; a single
//! uppercase ASCII letter is shorthand for the inverse of its lowercase curve
//! (`A` means `a^-1`).

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeSet;
use std::fmt;

/// A monodromy word: ordered signed twists with merge normalization.
///
/// Adjacent letters over the same curve are merged and zero exponents are
/// never stored, so the empty word is the identity monodromy and equality is
/// equality of normal forms.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct TwistWord {
    letters: Vec<(String, i64)>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid word token {token:?}: expected `id` or `id^e` with integer e")]
pub struct ParseWordError {
    pub token: String,
}

impl TwistWord {
    pub fn identity() -> Self {
        TwistWord { letters: Vec::new() }
    }

    /// Build a word, applying merge normalization.
    pub fn new(letters: Vec<(String, i64)>) -> Self {
        let mut normalized: Vec<(String, i64)> = Vec::with_capacity(letters.len());
        for (curve, exp) in letters {
            if exp == 0 {
                continue;
            }
            // The stack never holds adjacent equal curves, so a single
            // top-of-stack merge per incoming letter keeps it normalized.
            match normalized.last_mut() {
                Some((last, e)) if *last == curve => {
                    *e += exp;
                    if *e == 0 {
                        normalized.pop();
                    }
                }
                _ => normalized.push((curve, exp)),
            }
        }
        TwistWord { letters: normalized }
    }

    pub fn single(curve: impl Into<String>, exp: i64) -> Self {
        TwistWord::new(vec![(curve.into(), exp)])
    }

    pub fn letters(&self) -> &[(String, i64)] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of stored letters (merged form).
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Curves appearing in the word.
    pub fn support(&self) -> BTreeSet<&str> {
        self.letters.iter().map(|(c, _)| c.as_str()).collect()
    }

    pub fn compose(&self, other: &TwistWord) -> TwistWord {
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        TwistWord::new(letters)
    }

    pub fn inverse(&self) -> TwistWord {
        TwistWord::new(self.letters.iter().rev().map(|(c, e)| (c.clone(), -e)).collect())
    }

    pub fn pow(&self, e: i64) -> TwistWord {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut acc = TwistWord::identity();
        for _ in 0..e.unsigned_abs() {
            acc = acc.compose(&base);
        }
        acc
    }

    pub fn conjugated_by(&self, u: &TwistWord) -> TwistWord {
        u.compose(self).compose(&u.inverse())
    }

    /// Rotate the merged letter sequence left by one; a cyclic rotation is
    /// conjugation by the first letter.
    pub fn cyclic_rotation(&self) -> TwistWord {
        if self.letters.is_empty() {
            return self.clone();
        }
        let mut letters = self.letters.clone();
        let first = letters.remove(0);
        letters.push(first);
        TwistWord::new(letters)
    }

    pub fn parse(text: &str) -> Result<TwistWord, ParseWordError> {
        Ok(TwistWord::new(parse_tokens(text)?))
    }

    /// Substitute or delete letters; `f` returns the replacement curve for a
    /// kept letter and `None` for a deleted one.
    pub fn map_letters<F: FnMut(&str) -> Option<String>>(&self, mut f: F) -> TwistWord {
        TwistWord::new(
            self.letters
                .iter()
                .filter_map(|(c, e)| f(c).map(|c2| (c2, *e)))
                .collect(),
        )
    }
}

/// Tokenize the shared word grammar into `(curve, exponent)` pairs.
pub fn parse_tokens(text: &str) -> Result<Vec<(String, i64)>, ParseWordError> {
    let mut out = Vec::new();
    for token in text.split_whitespace() {
        let bad = || ParseWordError { token: token.to_owned() };
        let (id, exp) = match token.split_once('^') {
            Some((id, exp)) => (id, exp.parse::<i64>().map_err(|_| bad())?),
            None => (token, 1),
        };
        if id.is_empty() {
            return Err(bad());
        }
        let mut chars = id.chars();
        let first = chars.next().unwrap();
        if id.len() == 1 && first.is_ascii_uppercase() {
            // Single uppercase letter: inverse shorthand.
            out.push((first.to_ascii_lowercase().to_string(), -exp));
        } else {
            out.push((id.to_owned(), exp));
        }
    }
    Ok(out)
}

impl fmt::Display for TwistWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (curve, exp) in &self.letters {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if *exp == 1 {
                write!(f, "{curve}")?;
            } else {
                write!(f, "{curve}^{exp}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for TwistWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TwistWord({self})")
    }
}

impl Serialize for TwistWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for TwistWord {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        TwistWord::parse(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_merges_and_cancels() {
        let w = TwistWord::new(vec![
            ("a".into(), 1),
            ("b".into(), 2),
            ("b".into(), -2),
            ("a".into(), 3),
        ]);
        assert_eq!(w, TwistWord::parse("a^4").unwrap());
    }

    #[test]
    fn shorthand_and_exponents() {
        let w = TwistWord::parse("a B a^3 gamma^-2").unwrap();
        assert_eq!(
            w.letters(),
            &[
                ("a".into(), 1),
                ("b".into(), -1),
                ("a".into(), 3),
                ("gamma".into(), -2)
            ]
        );
        assert!(TwistWord::parse("a^x").is_err());
        assert_eq!(TwistWord::parse("a^0 b^0").unwrap(), TwistWord::identity());
    }

    #[test]
    fn display_roundtrip() {
        let w = TwistWord::parse("a b^-1 a^3").unwrap();
        assert_eq!(w.to_string(), "a b^-1 a^3");
        assert_eq!(TwistWord::parse(&w.to_string()).unwrap(), w);
        assert_eq!(TwistWord::identity().to_string(), "");
    }

    #[test]
    fn inverse_cancels() {
        let w = TwistWord::parse("a b^2 a^-1").unwrap();
        assert!(w.compose(&w.inverse()).is_identity());
        assert!(w.inverse().compose(&w).is_identity());
    }

    #[test]
    fn conjugation_and_rotation() {
        let w = TwistWord::parse("a b").unwrap();
        let u = TwistWord::parse("b a^-1").unwrap();
        assert_eq!(w.conjugated_by(&u), u.compose(&w).compose(&u.inverse()));
        assert_eq!(w.cyclic_rotation(), TwistWord::parse("b a").unwrap());
    }
}
