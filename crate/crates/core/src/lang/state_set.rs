use std::cmp::Ordering;
use std::fmt;

/// Fixed-capacity bitset over the states of a model.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct StateSet {
    n: usize,
    bits: Vec<u64>,
}

impl StateSet {
    pub fn new(n: usize) -> Self {
        StateSet {
            n,
            bits: vec![0; n.div_ceil(64)],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = StateSet::new(n);
        for q in 0..n as u32 {
            s.insert(q);
        }
        s
    }

    pub fn capacity(&self) -> usize {
        self.n
    }

    pub fn insert(&mut self, q: u32) {
        assert!((q as usize) < self.n);
        self.bits[q as usize / 64] |= 1 << (q % 64);
    }

    pub fn contains(&self, q: u32) -> bool {
        (q as usize) < self.n && self.bits[q as usize / 64] & (1 << (q % 64)) != 0
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&b| b == 0)
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.n as u32).filter(|&q| self.contains(q))
    }

    pub fn union_with(&mut self, other: &StateSet) {
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a |= b;
        }
    }

    pub fn intersection(&self, other: &StateSet) -> StateSet {
        StateSet {
            n: self.n,
            bits: self
                .bits
                .iter()
                .zip(&other.bits)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn intersects(&self, other: &StateSet) -> bool {
        self.bits.iter().zip(&other.bits).any(|(a, b)| a & b != 0)
    }

    pub fn is_subset(&self, other: &StateSet) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }
}

/// Ordered by the sorted member lists.
impl Ord for StateSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter()).then(self.n.cmp(&other.n))
    }
}

impl PartialOrd for StateSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
