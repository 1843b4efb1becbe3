//! Deterministic safety automata.
//!
//! A [`Dfa`] accepts an infinite word from a state iff the run never hits a
//! missing transition. Every finite-word question we need (emptiness,
//! equality, residuals) reduces to the prefix-closed finite language of a
//! trimmed automaton, so minimization is ordinary DFA minimization with all
//! states accepting and an implicit rejecting sink.
//!
//! The normal form produced by [`Dfa::normalize`] is trimmed (every state
//! reachable and live), minimal, and numbered in breadth-first order from
//! the initial state with successors visited in letter order. Two automata
//! in normal form accept the same language iff they are structurally equal.

use std::collections::{HashMap, VecDeque};
use std::hash::Hash;

use crate::word::Letter;

const NONE: u32 = u32::MAX;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dfa {
    letters: usize,
    // trans[q * letters + a]
    trans: Vec<u32>,
    initial: u32,
}

impl Dfa {
    /// The automaton with no states (empty language).
    pub fn empty(letters: usize) -> Self {
        Dfa {
            letters,
            trans: Vec::new(),
            initial: 0,
        }
    }

    pub fn from_table(letters: usize, table: Vec<Vec<Option<u32>>>, initial: u32) -> Self {
        let mut trans = Vec::with_capacity(table.len() * letters);
        for row in &table {
            assert_eq!(row.len(), letters);
            trans.extend(row.iter().map(|t| t.unwrap_or(NONE)));
        }
        Dfa {
            letters,
            trans,
            initial,
        }
    }

    /// Builds the automaton of states reachable from `start` under `step`.
    /// States are numbered in discovery order; `start` is state 0.
    pub fn explore<S, F>(letters: usize, start: S, mut step: F) -> (Self, Vec<S>)
    where
        S: Clone + Eq + Hash,
        F: FnMut(&S, Letter) -> Option<S>,
    {
        let mut ids: HashMap<S, u32> = HashMap::new();
        let mut states = vec![start.clone()];
        ids.insert(start, 0);
        let mut trans = Vec::new();
        let mut i = 0;
        while i < states.len() {
            let s = states[i].clone();
            for a in 0..letters {
                let t = match step(&s, a as Letter) {
                    Some(t) => {
                        let next = states.len() as u32;
                        *ids.entry(t.clone()).or_insert_with(|| {
                            states.push(t);
                            next
                        })
                    }
                    None => NONE,
                };
                trans.push(t);
            }
            i += 1;
        }
        (
            Dfa {
                letters,
                trans,
                initial: 0,
            },
            states,
        )
    }

    pub fn letters(&self) -> usize {
        self.letters
    }

    pub fn states(&self) -> usize {
        self.trans.len().checked_div(self.letters).unwrap_or(0)
    }

    pub fn initial(&self) -> Option<u32> {
        (self.states() > 0).then_some(self.initial)
    }

    pub fn is_empty(&self) -> bool {
        self.states() == 0
    }

    pub fn next(&self, q: u32, a: Letter) -> Option<u32> {
        let t = self.trans[q as usize * self.letters + a as usize];
        (t != NONE).then_some(t)
    }

    pub fn run(&self, q: u32, word: &[Letter]) -> Option<u32> {
        word.iter().try_fold(q, |q, &a| self.next(q, a))
    }

    pub fn run_initial(&self, word: &[Letter]) -> Option<u32> {
        self.initial().and_then(|q| self.run(q, word))
    }

    /// Letters with a defined transition out of `q`.
    pub fn out_letters(&self, q: u32) -> impl Iterator<Item = Letter> + '_ {
        (0..self.letters as Letter).filter(move |&a| self.next(q, a).is_some())
    }

    /// Whether the infinite word `transient · period^∞` is accepted from `q`.
    pub fn accepts_lasso(&self, q: u32, transient: &[Letter], period: &[Letter]) -> bool {
        assert!(!period.is_empty());
        let Some(mut q) = self.run(q, transient) else {
            return false;
        };
        let mut seen = vec![false; self.states()];
        loop {
            if seen[q as usize] {
                return true;
            }
            seen[q as usize] = true;
            match self.run(q, period) {
                Some(p) => q = p,
                None => return false,
            }
        }
    }

    /// States from which some infinite run exists.
    pub fn live_states(&self) -> Vec<bool> {
        let n = self.states();
        let mut live = vec![true; n];
        loop {
            let mut changed = false;
            for q in 0..n {
                if live[q]
                    && !(0..self.letters).any(|a| {
                        let t = self.trans[q * self.letters + a];
                        t != NONE && live[t as usize]
                    })
                {
                    live[q] = false;
                    changed = true;
                }
            }
            if !changed {
                return live;
            }
        }
    }

    /// Restricts to live states reachable from the initial state.
    pub fn trim(&self) -> Dfa {
        if self.is_empty() {
            return Dfa::empty(self.letters);
        }
        let live = self.live_states();
        if !live[self.initial as usize] {
            return Dfa::empty(self.letters);
        }
        let (dfa, _) = Dfa::explore(self.letters, self.initial, |&q, a| {
            self.next(q, a).filter(|&t| live[t as usize])
        });
        dfa
    }

    /// Hopcroft partition refinement on a trimmed automaton. All states are
    /// accepting; missing transitions go to an implicit sink that is the only
    /// rejecting state. Returns the block index of every state.
    fn hopcroft_blocks(&self) -> Vec<usize> {
        let n = self.states();
        let sink = n;
        let total = n + 1;
        let k = self.letters;
        let target = |q: usize, a: usize| -> usize {
            if q == sink {
                sink
            } else {
                let t = self.trans[q * k + a];
                if t == NONE {
                    sink
                } else {
                    t as usize
                }
            }
        };
        // inverse[a][t] = sources
        let mut inverse = vec![vec![Vec::new(); total]; k];
        for q in 0..total {
            for (a, inv) in inverse.iter_mut().enumerate() {
                inv[target(q, a)].push(q);
            }
        }

        let mut block_of = vec![0usize; total];
        let mut blocks: Vec<Vec<usize>> = vec![(0..n).collect()];
        block_of[sink] = 1;
        blocks.push(vec![sink]);
        if n == 0 {
            blocks.swap_remove(0);
            block_of[sink] = 0;
            return block_of[..n].to_vec();
        }
        let mut work: VecDeque<usize> = VecDeque::from([1]);

        while let Some(b) = work.pop_front() {
            let splitter = blocks[b].clone();
            for inv in &inverse {
                let mut hit: HashMap<usize, Vec<usize>> = HashMap::new();
                for &t in &splitter {
                    for &q in &inv[t] {
                        hit.entry(block_of[q]).or_default().push(q);
                    }
                }
                let mut touched: Vec<usize> = hit.keys().copied().collect();
                touched.sort_unstable();
                for y in touched {
                    let mut inside = hit.remove(&y).unwrap();
                    inside.sort_unstable();
                    inside.dedup();
                    if inside.len() == blocks[y].len() {
                        continue;
                    }
                    let outside: Vec<usize> = blocks[y]
                        .iter()
                        .copied()
                        .filter(|q| inside.binary_search(q).is_err())
                        .collect();
                    let new_id = blocks.len();
                    let (keep, moved) = if inside.len() <= outside.len() {
                        (outside, inside)
                    } else {
                        (inside, outside)
                    };
                    for &q in &moved {
                        block_of[q] = new_id;
                    }
                    blocks[y] = keep;
                    blocks.push(moved);
                    // The moved half is the smaller one, so queueing it suffices
                    // whether or not `y` is still queued.
                    work.push_back(new_id);
                }
            }
        }
        block_of.truncate(n);
        block_of
    }

    fn quotient(&self, block_of: &[usize]) -> Dfa {
        let mut repr: HashMap<usize, u32> = HashMap::new();
        for (q, &b) in block_of.iter().enumerate() {
            repr.entry(b).or_insert(q as u32);
        }
        let (dfa, _) = Dfa::explore(self.letters, block_of[self.initial as usize], |b, a| {
            self.next(repr[b], a).map(|t| block_of[t as usize])
        });
        dfa
    }

    /// Minimizes a trimmed automaton (Hopcroft). The result is in canonical
    /// breadth-first numbering.
    pub fn minimize(&self) -> Dfa {
        if self.is_empty() {
            return Dfa::empty(self.letters);
        }
        self.quotient(&self.hopcroft_blocks())
    }

    /// Trim, minimize and renumber canonically.
    pub fn normalize(&self) -> Dfa {
        self.trim().minimize()
    }

    /// The residual language after reading `word` from the initial state,
    /// in normal form.
    pub fn residual(&self, word: &[Letter]) -> Dfa {
        match self.run_initial(word) {
            Some(q) => self.restart(q),
            None => Dfa::empty(self.letters),
        }
    }

    /// Same automaton with `q` as initial state, in normal form.
    pub fn restart(&self, q: u32) -> Dfa {
        Dfa {
            letters: self.letters,
            trans: self.trans.clone(),
            initial: q,
        }
        .normalize()
    }

    /// Intersection of the languages of two automata, in normal form.
    pub fn intersect(&self, other: &Dfa) -> Dfa {
        assert_eq!(self.letters, other.letters);
        let (Some(p), Some(q)) = (self.initial(), other.initial()) else {
            return Dfa::empty(self.letters);
        };
        let (dfa, _) = Dfa::explore(self.letters, (p, q), |&(p, q), a| {
            Some((self.next(p, a)?, other.next(q, a)?))
        });
        dfa.normalize()
    }

    /// Automaton for `prefix · L(self)`, in normal form.
    pub fn prepend(&self, prefix: &[Letter]) -> Dfa {
        if self.is_empty() {
            return Dfa::empty(self.letters);
        }
        #[derive(Clone, PartialEq, Eq, Hash)]
        enum S {
            Chain(usize),
            Inner(u32),
        }
        let start = if prefix.is_empty() {
            S::Inner(self.initial)
        } else {
            S::Chain(0)
        };
        let (dfa, _) = Dfa::explore(self.letters, start, |s, a| match *s {
            S::Chain(i) => (prefix[i] == a).then(|| {
                if i + 1 == prefix.len() {
                    S::Inner(self.initial)
                } else {
                    S::Chain(i + 1)
                }
            }),
            S::Inner(q) => self.next(q, a).map(S::Inner),
        });
        dfa.normalize()
    }
}
