//! The sets `C(F; v) = { vx ∈ X : fx ∈ X for all f ∈ F }`.
//!
//! A [`ConstraintSet`] is the symbolic pair `(F; v)`; a [`CanonSet`] is the set
//! it denotes, kept as an automaton in normal form for the whole set
//! (`v` followed by the admissible tails). Equality and hashing of
//! [`CanonSet`] go through that automaton, so they are equality of subsets of
//! `X`.

use std::collections::BTreeSet;
use std::hash::{Hash, Hasher};

use crate::automaton::Dfa;
use crate::lang::{LanguageModel, Point};
use crate::word::Word;

/// The pair `(F; v)` naming the idempotent `E(F; v)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConstraintSet {
    pub prefix: Word,
    pub constraints: BTreeSet<Word>,
}

impl ConstraintSet {
    pub fn new<I: IntoIterator<Item = Word>>(constraints: I, prefix: Word) -> Self {
        ConstraintSet {
            prefix,
            constraints: constraints.into_iter().collect(),
        }
    }

    /// `C(v)`, the cylinder of `v`.
    pub fn cylinder(prefix: Word) -> Self {
        ConstraintSet::new([], prefix)
    }

    /// `(∅; ε)`, denoting all of `X`.
    pub fn whole() -> Self {
        ConstraintSet::cylinder(Word::empty())
    }

    /// The smallest index pair `(|v|, max{|f|, |v|})` at which the
    /// level classes are each inside or outside the set.
    pub fn level_index(&self) -> (usize, usize) {
        let v = self.prefix.len();
        let l = self.constraints.iter().map(Word::len).fold(v, usize::max);
        (v, l)
    }

    /// Same set with every constraint extended on the right by `z`.
    fn shifted_constraints(&self, z: &Word) -> impl Iterator<Item = Word> + '_ {
        let z = z.clone();
        self.constraints.iter().map(move |f| f.concat(&z))
    }
}

/// Symbolic product `E(F; v)·E(G; w)`; `None` is the zero idempotent.
pub fn product_idem(a: &ConstraintSet, b: &ConstraintSet) -> Option<ConstraintSet> {
    let (v, w) = (&a.prefix, &b.prefix);
    if let Some(z) = w.strip_prefix(v) {
        let mut c = b.constraints.clone();
        c.extend(a.shifted_constraints(&z));
        Some(ConstraintSet::new(c, w.clone()))
    } else if let Some(z) = v.strip_prefix(w) {
        let mut c = a.constraints.clone();
        c.extend(b.shifted_constraints(&z));
        Some(ConstraintSet::new(c, v.clone()))
    } else {
        None
    }
}

/// Symbolic conjugate `s_w* E(F; v) s_w`; `None` is the zero idempotent.
pub fn conjugate_idem(w: &Word, e: &ConstraintSet) -> Option<ConstraintSet> {
    let v = &e.prefix;
    if let Some(z) = w.strip_prefix(v) {
        let mut c: BTreeSet<Word> = e.shifted_constraints(&z).collect();
        c.insert(w.clone());
        Some(ConstraintSet::new(c, Word::empty()))
    } else if let Some(z) = v.strip_prefix(w) {
        let mut c = e.constraints.clone();
        c.insert(v.clone());
        Some(ConstraintSet::new(c, z))
    } else {
        None
    }
}

/// Canonical machine form of a set `C(F; v)`.
///
/// `tail` accepts the sequences `x` with `vx` in the set; `key` accepts the
/// set itself. Both are in normal form. The empty set has prefix `ε` and
/// empty automata.
#[derive(Clone, Debug)]
pub struct CanonSet {
    prefix: Word,
    tail: Dfa,
    key: Dfa,
}

impl PartialEq for CanonSet {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}

impl Eq for CanonSet {}

impl Hash for CanonSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key.hash(state)
    }
}

impl PartialOrd for CanonSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CanonSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key.cmp(&other.key)
    }
}

impl CanonSet {
    pub fn empty(m: &LanguageModel) -> Self {
        let d = Dfa::empty(m.alphabet().len());
        CanonSet {
            prefix: Word::empty(),
            tail: d.clone(),
            key: d,
        }
    }

    /// All of `X`.
    pub fn whole(m: &LanguageModel) -> Self {
        CanonSet {
            prefix: Word::empty(),
            tail: m.dfa().clone(),
            key: m.dfa().clone(),
        }
    }

    fn from_tail(prefix: Word, tail: Dfa) -> Self {
        if tail.is_empty() {
            let d = Dfa::empty(tail.letters());
            return CanonSet {
                prefix: Word::empty(),
                tail: d.clone(),
                key: d,
            };
        }
        let key = tail.prepend(prefix.letters());
        CanonSet { prefix, tail, key }
    }

    pub fn prefix(&self) -> &Word {
        &self.prefix
    }

    pub fn tail(&self) -> &Dfa {
        &self.tail
    }

    /// Normal-form automaton of the whole set; equal keys mean equal sets.
    pub fn key(&self) -> &Dfa {
        &self.key
    }

    pub fn is_empty(&self) -> bool {
        self.key.is_empty()
    }

    /// Membership of a point already known to lie in `X`.
    pub fn contains(&self, x: &Point) -> bool {
        !self.is_empty() && x.starts_with(&self.prefix) && {
            let y = x.shift(self.prefix.len());
            self.tail
                .accepts_lasso(0, y.transient().letters(), y.period().letters())
        }
    }
}

/// Canonical form of `C(F; v)`.
pub fn make_set(m: &LanguageModel, e: &ConstraintSet) -> CanonSet {
    let mut starts = Vec::with_capacity(e.constraints.len() + 1);
    for w in std::iter::once(&e.prefix).chain(&e.constraints) {
        match m.end_state(w) {
            Some(q) => starts.push(q),
            None => return CanonSet::empty(m),
        }
    }
    starts.sort_unstable();
    starts.dedup();
    let (raw, _) = Dfa::explore(m.alphabet().len(), starts, |qs, a| {
        qs.iter()
            .map(|&q| m.step(q, a))
            .collect::<Option<Vec<u32>>>()
    });
    CanonSet::from_tail(e.prefix.clone(), raw.normalize())
}

pub fn is_empty(s: &CanonSet) -> bool {
    s.is_empty()
}

/// Equality of denoted sets, decided from prefixes and tails.
pub fn set_equal(a: &CanonSet, b: &CanonSet) -> bool {
    match (a.is_empty(), b.is_empty()) {
        (true, true) => return true,
        (true, false) | (false, true) => return false,
        _ => {}
    }
    if a.prefix == b.prefix {
        return a.tail == b.tail;
    }
    let (short, long) = if a.prefix.len() < b.prefix.len() {
        (a, b)
    } else {
        (b, a)
    };
    let Some(z) = long.prefix.strip_prefix(&short.prefix) else {
        return false;
    };
    // every tail of `short` must begin with z
    let mut q = 0u32;
    for &c in z.letters() {
        let mut out = short.tail.out_letters(q);
        if out.next() != Some(c) || out.next().is_some() {
            return false;
        }
        q = short.tail.next(q, c).unwrap();
    }
    short.tail.restart(q) == long.tail
}

/// Intersection, computed on the automata.
pub fn intersect(a: &CanonSet, b: &CanonSet) -> CanonSet {
    if a.is_empty() || b.is_empty() {
        return if a.is_empty() { a.clone() } else { b.clone() };
    }
    let prefix = if a.prefix.is_prefix_of(&b.prefix) {
        b.prefix.clone()
    } else if b.prefix.is_prefix_of(&a.prefix) {
        a.prefix.clone()
    } else {
        let d = Dfa::empty(a.key.letters());
        return CanonSet::from_tail(Word::empty(), d);
    };
    let key = a.key.intersect(&b.key);
    CanonSet::from_tail(prefix.clone(), key.residual(prefix.letters()))
}

/// `a ⊆ b`, as `a·b = a`.
pub fn subset(a: &CanonSet, b: &CanonSet) -> bool {
    set_equal(&intersect(a, b), a)
}

/// Canonical form of a symbolic result; `None` is the empty set.
pub fn canon(m: &LanguageModel, e: Option<&ConstraintSet>) -> CanonSet {
    e.map_or_else(|| CanonSet::empty(m), |e| make_set(m, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::SubshiftSpec;
    use crate::word::Alphabet;

    fn w(s: &str) -> Word {
        Alphabet::digits(2).parse_word(s).unwrap()
    }

    fn cs(f: &[&str], v: &str) -> ConstraintSet {
        ConstraintSet::new(f.iter().map(|s| w(s)), w(v))
    }

    fn model(spec: SubshiftSpec) -> LanguageModel {
        LanguageModel::compile(&spec).unwrap()
    }

    #[test]
    fn make_set_examples() {
        let full = model(SubshiftSpec::full_shift(2));
        assert_eq!(
            make_set(&full, &cs(&["00"], "1")),
            make_set(&full, &cs(&[], "1"))
        );
        let gm = model(SubshiftSpec::golden_mean());
        let a = make_set(&gm, &cs(&["1"], ""));
        let b = make_set(&gm, &cs(&[], "0"));
        assert_eq!(a, b);
        assert!(set_equal(&a, &b));
        assert!(make_set(&gm, &cs(&["11"], "")).is_empty());
        let even = model(SubshiftSpec::even_shift());
        assert!(!make_set(&even, &cs(&["1"], "0")).is_empty());
    }

    #[test]
    fn equality_examples() {
        let gm = model(SubshiftSpec::golden_mean());
        let x = make_set(&gm, &cs(&[], ""));
        let y = make_set(&gm, &cs(&[""], ""));
        assert!(set_equal(&x, &y));
        assert_eq!(x, CanonSet::whole(&gm));
        assert!(!set_equal(
            &make_set(&gm, &cs(&[], "0")),
            &make_set(&gm, &cs(&[], "1"))
        ));
    }

    #[test]
    fn prefix_extension_equality() {
        // C(1) = C(10) on the golden mean shift
        let gm = model(SubshiftSpec::golden_mean());
        let a = make_set(&gm, &cs(&[], "1"));
        let b = make_set(&gm, &cs(&[], "10"));
        assert!(set_equal(&a, &b));
        assert!(set_equal(&b, &a));
        assert_eq!(a, b);
        let c = make_set(&gm, &cs(&[], "0"));
        assert!(!set_equal(&c, &make_set(&gm, &cs(&[], "00"))));
    }

    #[test]
    fn subset_examples() {
        let gm = model(SubshiftSpec::golden_mean());
        assert!(subset(
            &make_set(&gm, &cs(&["0"], "1")),
            &make_set(&gm, &cs(&[], "1"))
        ));
        assert!(subset(&CanonSet::empty(&gm), &make_set(&gm, &cs(&[], "1"))));
        let full = model(SubshiftSpec::full_shift(2));
        assert!(!subset(
            &make_set(&full, &cs(&[], "0")),
            &make_set(&full, &cs(&[], "01"))
        ));
        assert!(subset(
            &make_set(&full, &cs(&[], "01")),
            &make_set(&full, &cs(&[], "0"))
        ));
    }

    #[test]
    fn product_examples() {
        assert_eq!(
            product_idem(&cs(&["0"], ""), &cs(&[], "1")),
            Some(cs(&["01"], "1"))
        );
        let e = cs(&["1", "00"], "0");
        assert_eq!(product_idem(&e, &e), Some(e.clone()));
        assert_eq!(product_idem(&cs(&[], "0"), &cs(&[], "1")), None);
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(conjugate_idem(&w("1"), &cs(&[], "")), Some(cs(&["1"], "")));
        let e = cs(&["0"], "01");
        assert_eq!(
            conjugate_idem(&Word::empty(), &e),
            Some(cs(&["0", "01"], "01"))
        );
        assert_eq!(conjugate_idem(&w("1"), &cs(&[], "0")), None);
        assert_eq!(
            conjugate_idem(&w("0"), &cs(&["1"], "01")),
            Some(cs(&["1", "01"], "1"))
        );
    }

    #[test]
    fn contains_examples() {
        let gm = model(SubshiftSpec::golden_mean());
        let s = make_set(&gm, &cs(&["1"], ""));
        let zero = Point::periodic(w("0"));
        let one = Point::new(w("1"), w("0"));
        assert!(s.contains(&zero));
        assert!(!s.contains(&one));
        assert!(CanonSet::whole(&gm).contains(&one));
    }

    #[test]
    fn intersection_matches_product() {
        let gm = model(SubshiftSpec::golden_mean());
        let a = cs(&["1"], "");
        let b = cs(&[], "01");
        let sym = canon(&gm, product_idem(&a, &b).as_ref());
        assert_eq!(sym, intersect(&make_set(&gm, &a), &make_set(&gm, &b)));
    }
}
