//! Reduced words in the free group on the alphabet.

use std::fmt;

use crate::word::{Alphabet, Letter, Word};

/// A reduced free-group word: letters with exponent `+1` or `-1`, no
/// adjacent `a a⁻¹` or `a⁻¹ a`.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeWord(Vec<(Letter, bool)>);

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord(Vec::new())
    }

    pub fn from_word(w: &Word) -> Self {
        FreeWord(w.letters().iter().map(|&a| (a, true)).collect())
    }

    /// Letters paired with `true` for exponent `+1`.
    pub fn syllables(&self) -> &[(Letter, bool)] {
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

    pub fn inverse(&self) -> Self {
        FreeWord(self.0.iter().rev().map(|&(a, e)| (a, !e)).collect())
    }

    pub fn mul(&self, other: &FreeWord) -> Self {
        let mut out = self.0.clone();
        for &(a, e) in &other.0 {
            if out.last() == Some(&(a, !e)) {
                out.pop();
            } else {
                out.push((a, e));
            }
        }
        FreeWord(out)
    }

    /// `α β⁻¹`.
    pub fn quotient(alpha: &Word, beta: &Word) -> Self {
        FreeWord::from_word(alpha).mul(&FreeWord::from_word(beta).inverse())
    }

    /// Renders as e.g. `0 1^-1`, with `e` for the identity.
    pub fn render(&self, alphabet: &Alphabet) -> String {
        if self.0.is_empty() {
            return "e".into();
        }
        self.0
            .iter()
            .map(|&(a, e)| {
                let s = alphabet.symbol(a);
                if e {
                    s.to_string()
                } else {
                    format!("{s}^-1")
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Debug for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for &(a, e) in &self.0 {
            if e {
                write!(f, "{a}")?;
            } else {
                write!(f, "{a}'")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb() -> impl Strategy<Value = FreeWord> {
        prop::collection::vec((0u8..3, any::<bool>()), 0..8)
            .prop_map(|v| FreeWord::identity().mul(&FreeWord(v)))
    }

    fn reduced(w: &FreeWord) -> bool {
        w.0.windows(2)
            .all(|p| !(p[0].0 == p[1].0 && p[0].1 != p[1].1))
    }

    #[test]
    fn quotient_example() {
        let a = Alphabet::digits(2);
        let alpha = a.parse_word("0").unwrap();
        let beta = a.parse_word("10").unwrap();
        let q = FreeWord::quotient(&alpha, &beta);
        assert_eq!(q, FreeWord(vec![(1, false)]));
        assert_eq!(q.render(&a), "1^-1");
        assert!(FreeWord::quotient(&beta, &beta).is_identity());
    }

    proptest! {
        #[test]
        fn group_laws(x in arb(), y in arb(), z in arb()) {
            prop_assert!(reduced(&x.mul(&y)));
            prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
            prop_assert!(x.mul(&x.inverse()).is_identity());
            prop_assert_eq!(x.mul(&y).inverse(), y.inverse().mul(&x.inverse()));
            prop_assert_eq!(x.mul(&FreeWord::identity()), x.clone());
        }
    }
}
