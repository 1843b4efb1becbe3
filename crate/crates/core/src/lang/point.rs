use crate::word::{Letter, Word};

/// The eventually periodic sequence `transient · period · period · ...`.
///
/// Always stored in canonical form: the period is primitive and the transient
/// is as short as possible, so two points are equal as sequences iff they are
/// equal as values.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    transient: Word,
    period: Word,
}

pub(crate) fn is_primitive(w: &Word) -> bool {
    primitive_root_len(w.letters()) == w.len()
}

fn primitive_root_len(w: &[Letter]) -> usize {
    let n = w.len();
    (1..=n)
        .find(|&d| n.is_multiple_of(d) && w.chunks(d).all(|c| c == &w[..d]))
        .unwrap_or(n)
}

impl Point {
    /// Panics if `period` is empty.
    pub fn new(transient: Word, period: Word) -> Self {
        assert!(!period.is_empty(), "period of a point must be nonempty");
        let root = primitive_root_len(period.letters());
        let mut u = transient.letters().to_vec();
        let mut w = period.letters()[..root].to_vec();
        // absorb the transient's tail into the period: u·a·(w'a)^∞ = u·(a·w')^∞
        while let (Some(&a), Some(&b)) = (u.last(), w.last()) {
            if a != b {
                break;
            }
            u.pop();
            w.rotate_right(1);
        }
        Point {
            transient: Word::new(u),
            period: Word::new(w),
        }
    }

    pub fn periodic(period: Word) -> Self {
        Point::new(Word::empty(), period)
    }

    pub fn transient(&self) -> &Word {
        &self.transient
    }

    pub fn period(&self) -> &Word {
        &self.period
    }

    pub fn letter(&self, i: usize) -> Letter {
        let u = self.transient.letters();
        if i < u.len() {
            u[i]
        } else {
            let w = self.period.letters();
            w[(i - u.len()) % w.len()]
        }
    }

    /// The first `k` letters.
    pub fn prefix(&self, k: usize) -> Word {
        Word::new((0..k).map(|i| self.letter(i)).collect())
    }

    pub fn starts_with(&self, w: &Word) -> bool {
        w.letters()
            .iter()
            .enumerate()
            .all(|(i, &a)| self.letter(i) == a)
    }

    /// `σ^k(x)`.
    pub fn shift(&self, k: usize) -> Point {
        let u = self.transient.len();
        if k <= u {
            return Point::new(self.transient.suffix_from(k), self.period.clone());
        }
        let mut w = self.period.letters().to_vec();
        let r = (k - u) % w.len();
        w.rotate_left(r);
        Point::new(Word::empty(), Word::new(w))
    }

    /// `μx`.
    pub fn prepend(&self, mu: &Word) -> Point {
        Point::new(mu.concat(&self.transient), self.period.clone())
    }

    /// Total length of the lasso description.
    pub fn size(&self) -> usize {
        self.transient.len() + self.period.len()
    }
}
