//! Subshift presentations and their compiled language models.
//!
//! A [`LanguageModel`] is a minimal deterministic safety automaton with a
//! single initial state whose accepted infinite words are exactly the points
//! of the subshift. Every state is live and reachable, so a state accepts an
//! infinite word iff the run never gets stuck.

mod point;
mod profiles;
mod spec_file;
mod state_set;

use std::collections::BTreeSet;
use std::sync::OnceLock;

pub use point::Point;
pub use state_set::StateSet;

use crate::automaton::Dfa;
use crate::error::{Error, Result};
use crate::word::{Alphabet, Letter, Word};
use profiles::ProfileData;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShiftKind {
    Full,
    /// Shift of finite type given by forbidden words.
    Sft {
        forbidden: Vec<Word>,
    },
    /// Labels of infinite paths in a finite labeled graph (not necessarily
    /// right-resolving).
    Sofic {
        states: Vec<String>,
        edges: Vec<(usize, Letter, usize)>,
    },
}

/// User-level description of a one-sided subshift.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubshiftSpec {
    alphabet: Alphabet,
    kind: ShiftKind,
}

impl SubshiftSpec {
    pub fn full(alphabet: Alphabet) -> Self {
        SubshiftSpec {
            alphabet,
            kind: ShiftKind::Full,
        }
    }

    pub fn sft(alphabet: Alphabet, forbidden: Vec<Word>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for w in &forbidden {
            if w.is_empty() {
                return Err(Error::InvalidSpec(
                    "forbidden words must be nonempty".into(),
                ));
            }
            if w.letters().iter().any(|&a| a as usize >= alphabet.len()) {
                return Err(Error::InvalidSpec(
                    "forbidden word uses an unknown symbol".into(),
                ));
            }
            if !seen.insert(w.clone()) {
                return Err(Error::InvalidSpec(format!(
                    "duplicate forbidden word {}",
                    alphabet.render(w)
                )));
            }
        }
        Ok(SubshiftSpec {
            alphabet,
            kind: ShiftKind::Sft { forbidden },
        })
    }

    pub fn sofic(
        alphabet: Alphabet,
        states: Vec<String>,
        edges: Vec<(usize, Letter, usize)>,
    ) -> Result<Self> {
        if edges.is_empty() {
            return Err(Error::InvalidSpec("sofic presentation has no edges".into()));
        }
        for &(p, a, q) in &edges {
            if p >= states.len() || q >= states.len() || a as usize >= alphabet.len() {
                return Err(Error::InvalidSpec(
                    "edge refers to an unknown state or symbol".into(),
                ));
            }
        }
        Ok(SubshiftSpec {
            alphabet,
            kind: ShiftKind::Sofic { states, edges },
        })
    }

    /// The full shift on the digits `0..n`.
    pub fn full_shift(n: usize) -> Self {
        SubshiftSpec::full(Alphabet::digits(n))
    }

    /// Binary sequences without `11`.
    pub fn golden_mean() -> Self {
        SubshiftSpec::sft(Alphabet::digits(2), vec![Word::new(vec![1, 1])]).unwrap()
    }

    /// Binary sequences in which every maximal finite block of `0`s between two
    /// `1`s has even length.
    pub fn even_shift() -> Self {
        SubshiftSpec::sofic(
            Alphabet::digits(2),
            vec!["A".into(), "B".into()],
            vec![(0, 1, 0), (0, 0, 1), (1, 0, 0)],
        )
        .unwrap()
    }

    /// Parses the text format:
    ///
    /// ```text
    /// # golden mean shift
    /// alphabet: 0 1
    /// kind: sft
    /// forbid: 11
    /// ```
    ///
    /// Sofic shifts use `kind: sofic` and `edge: <from> <symbol> <to>` lines.
    pub fn parse(text: &str) -> Result<Self> {
        spec_file::parse(text)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn kind(&self) -> &ShiftKind {
        &self.kind
    }

    /// Renders back into the text format accepted by [`SubshiftSpec::parse`].
    pub fn to_text(&self) -> String {
        spec_file::render(self)
    }
}

/// Acceptance profile of an infinite word: the model states from which it
/// is accepted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Profile(pub StateSet);

impl Profile {
    pub fn states(&self) -> &StateSet {
        &self.0
    }
}

/// Compiled, immutable language model of a subshift.
#[derive(Debug)]
pub struct LanguageModel {
    alphabet: Alphabet,
    dfa: Dfa,
    profiles: OnceLock<ProfileData>,
}

impl LanguageModel {
    pub fn compile(spec: &SubshiftSpec) -> Result<Self> {
        let k = spec.alphabet.len();
        let raw = match &spec.kind {
            ShiftKind::Full => Dfa::explore(k, (), |_, _| Some(())).0,
            ShiftKind::Sft { forbidden } => de_bruijn(k, forbidden),
            ShiftKind::Sofic { states, edges } => subset_construction(k, states.len(), edges),
        };
        let dfa = raw.normalize();
        if dfa.is_empty() {
            return Err(Error::EmptyLanguage);
        }
        Ok(LanguageModel {
            alphabet: spec.alphabet.clone(),
            dfa,
            profiles: OnceLock::new(),
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn dfa(&self) -> &Dfa {
        &self.dfa
    }

    pub fn states(&self) -> usize {
        self.dfa.states()
    }

    pub fn initial(&self) -> u32 {
        0
    }

    pub fn step(&self, q: u32, a: Letter) -> Option<u32> {
        self.dfa.next(q, a)
    }

    /// The state reached by reading `w` from the initial state.
    pub fn end_state(&self, w: &Word) -> Option<u32> {
        self.dfa.run(0, w.letters())
    }

    /// [`LanguageModel::end_state`] as a state set (empty iff `w` is not a factor).
    pub fn end_states(&self, w: &Word) -> StateSet {
        let mut s = StateSet::new(self.states());
        if let Some(q) = self.end_state(w) {
            s.insert(q);
        }
        s
    }

    /// Whether `w` is the prefix of some point.
    pub fn is_factor(&self, w: &Word) -> bool {
        self.end_state(w).is_some()
    }

    /// All factors of length exactly `k`, in lexicographic order.
    pub fn factors_of_len(&self, k: usize) -> Vec<(Word, u32)> {
        let mut out = vec![(Word::empty(), 0u32)];
        for _ in 0..k {
            out = out
                .iter()
                .flat_map(|(w, q)| {
                    self.dfa
                        .out_letters(*q)
                        .map(move |a| (w.pushed(a), self.dfa.next(*q, a).unwrap()))
                })
                .collect();
        }
        out
    }

    pub fn all_states(&self) -> StateSet {
        StateSet::full(self.states())
    }

    /// `{q : reading w from q ends in s}`.
    pub fn preimage(&self, w: &Word, s: &StateSet) -> StateSet {
        let mut out = StateSet::new(self.states());
        for q in 0..self.states() as u32 {
            if self.dfa.run(q, w.letters()).is_some_and(|t| s.contains(t)) {
                out.insert(q);
            }
        }
        out
    }

    /// States from which `x` is accepted. Fails if `x` is not a point of the subshift.
    pub fn profile_of(&self, x: &Point) -> Result<Profile> {
        let mut tail = self.all_states();
        loop {
            let next = self.preimage(x.period(), &tail);
            if next == tail {
                break;
            }
            tail = next;
        }
        let acc = self.preimage(x.transient(), &tail);
        if acc.is_empty() {
            Err(Error::NotInLanguage)
        } else {
            Ok(Profile(acc))
        }
    }

    pub fn contains(&self, x: &Point) -> bool {
        self.dfa
            .accepts_lasso(0, x.transient().letters(), x.period().letters())
    }

    /// `P_k(x)`: the words `μ` of length `k` with `μx` in the subshift.
    pub fn pred_set(&self, x: &Point, k: usize) -> Result<Vec<Word>> {
        let acc = self.profile_of(x)?;
        Ok(self.pred_set_of_profile(&acc, k))
    }

    pub(crate) fn pred_set_of_profile(&self, p: &Profile, k: usize) -> Vec<Word> {
        self.factors_of_len(k)
            .into_iter()
            .filter(|(_, q)| p.0.contains(*q))
            .map(|(w, _)| w)
            .collect()
    }

    /// States reachable from the initial state by a word of length in `1..=l`.
    ///
    /// Two profiles give the same `P_r` for every `r <= l` iff they agree on
    /// this set, because end states are unique.
    pub fn past_window(&self, l: usize) -> StateSet {
        let mut window = StateSet::new(self.states());
        let mut layer = StateSet::new(self.states());
        layer.insert(0);
        for _ in 0..l {
            let mut next = StateSet::new(self.states());
            for q in layer.iter() {
                for a in self.dfa.out_letters(q) {
                    next.insert(self.dfa.next(q, a).unwrap());
                }
            }
            window.union_with(&next);
            layer = next;
        }
        window
    }

    fn profile_data(&self) -> &ProfileData {
        self.profiles
            .get_or_init(|| ProfileData::compute(&self.dfa))
    }

    /// Every profile `A(x)` for `x` in the subshift, sorted.
    pub fn realizable_profiles(&self) -> &[Profile] {
        &self.profile_data().profiles
    }

    /// A shortest eventually periodic point whose profile is exactly `p`.
    pub fn profile_witness(&self, p: &Profile) -> Option<&Point> {
        let data = self.profile_data();
        data.profiles
            .binary_search(p)
            .ok()
            .map(|i| &data.witnesses[i])
    }

    /// All points `u·w^∞` of the subshift with `|u| <= max_transient` and
    /// `|w| <= max_period`, in canonical form, sorted and duplicate-free.
    pub fn enumerate_points(&self, max_transient: usize, max_period: usize) -> Vec<Point> {
        let mut out = BTreeSet::new();
        let transients = self.alphabet.words_up_to(max_transient);
        for p in 1..=max_period {
            for w in self.alphabet.words_of_len(p) {
                if !point::is_primitive(&w) {
                    continue;
                }
                for u in &transients {
                    let x = Point::new(u.clone(), w.clone());
                    if !out.contains(&x) && self.contains(&x) {
                        out.insert(x);
                    }
                }
            }
        }
        out.into_iter().collect()
    }
}

/// de Bruijn-style automaton for a shift of finite type. States are the
/// allowed words of length at most `m` (the last `m` letters read), where
/// `m + 1` is the longest forbidden length; the empty word is initial.
fn de_bruijn(k: usize, forbidden: &[Word]) -> Dfa {
    let m = forbidden.iter().map(Word::len).max().unwrap_or(1) - 1;
    Dfa::explore(k, Word::empty(), |u, a| {
        let t = u.pushed(a);
        if forbidden.iter().any(|f| t.letters().ends_with(f.letters())) {
            return None;
        }
        Some(if t.len() > m {
            t.suffix_from(t.len() - m)
        } else {
            t
        })
    })
    .0
}

/// Subset construction from the set of all presentation states that carry an
/// infinite path. By König's lemma a set of states accepts an infinite word
/// iff every finite prefix can be read from it.
fn subset_construction(k: usize, n: usize, edges: &[(usize, Letter, usize)]) -> Dfa {
    let mut live = vec![true; n];
    loop {
        let mut changed = false;
        for q in 0..n {
            if live[q] && !edges.iter().any(|&(p, _, t)| p == q && live[t]) {
                live[q] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let start: BTreeSet<usize> = (0..n).filter(|&q| live[q]).collect();
    if start.is_empty() {
        return Dfa::empty(k);
    }
    Dfa::explore(k, start, |s, a| {
        let next: BTreeSet<usize> = edges
            .iter()
            .filter(|&&(p, b, t)| b == a && s.contains(&p) && live[t])
            .map(|&(_, _, t)| t)
            .collect();
        (!next.is_empty()).then_some(next)
    })
    .0
}
