//! Finite levels `ᵏX_l` of the spectrum and filters of idempotents.
//!
//! Two points are `(k, l)`-equivalent when they share their first `k`
//! letters and their tails after `k` letters have the same predecessor sets
//! `P_r` for every `r <= l`. Because the language model is deterministic,
//! `P_r(y)` is read off the acceptance profile `A(y)`: `μ ∈ P_r(y)` iff the
//! state reached by `μ` lies in `A(y)`. Hence two tails are `l`-past
//! equivalent iff their profiles agree on the states reachable by words of
//! length `1..=l`, and a level class is a pair (prefix, restricted profile).

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::lang::{LanguageModel, Point, StateSet};
use crate::sets::{canon, make_set, product_idem, subset, CanonSet, ConstraintSet};
use crate::word::Word;

/// An index `(k, l)` with `k <= l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexPair {
    k: usize,
    l: usize,
}

impl IndexPair {
    pub fn new(k: usize, l: usize) -> Result<Self> {
        if k > l {
            return Err(Error::InvalidIndex { k, l });
        }
        Ok(IndexPair { k, l })
    }

    pub fn k(self) -> usize {
        self.k
    }

    pub fn l(self) -> usize {
        self.l
    }

    /// `k₁ <= k₂` and `l₁ - k₁ <= l₂ - k₂`.
    pub fn leq(self, other: IndexPair) -> bool {
        self.k <= other.k && self.l - self.k <= other.l - other.k
    }

    /// An upper bound of both indices.
    pub fn join(self, other: IndexPair) -> IndexPair {
        let (p, q) = if self.k <= other.k {
            (self, other)
        } else {
            (other, self)
        };
        if p.k == q.k {
            IndexPair {
                k: p.k,
                l: p.l.max(q.l),
            }
        } else {
            IndexPair {
                k: q.k,
                l: (p.l + q.k - p.k).max(q.l),
            }
        }
    }

    /// The index at which each level class lies inside or outside `C(F; v)`.
    pub fn for_set(e: &ConstraintSet) -> IndexPair {
        let (k, l) = e.level_index();
        IndexPair { k, l }
    }

    /// Every index `(k, l)` with `k <= self.k`, `l <= self.l`.
    pub fn rectangle(self) -> impl Iterator<Item = IndexPair> {
        (0..=self.k).flat_map(move |k| (k..=self.l).map(move |l| IndexPair { k, l }))
    }
}

impl fmt::Display for IndexPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.k, self.l)
    }
}

pub fn index_leq(p: IndexPair, q: IndexPair) -> bool {
    p.leq(q)
}

pub fn index_join(p: IndexPair, q: IndexPair) -> IndexPair {
    p.join(q)
}

/// The part of a profile that determines `P_r` for `r <= l`.
fn past_key(m: &LanguageModel, x: &Point, window: &StateSet) -> Result<StateSet> {
    Ok(m.profile_of(x)?.0.intersection(window))
}

/// `x ∼_l y`: `P_r(x) = P_r(y)` for all `r <= l`.
pub fn past_equiv(m: &LanguageModel, x: &Point, y: &Point, l: usize) -> Result<bool> {
    let window = m.past_window(l);
    Ok(past_key(m, x, &window)? == past_key(m, y, &window)?)
}

/// `x ᵏ∼_l y`: equal `k`-prefixes and `l`-past equivalent tails.
pub fn kl_equiv(m: &LanguageModel, x: &Point, y: &Point, p: IndexPair) -> Result<bool> {
    if !m.contains(x) || !m.contains(y) {
        return Err(Error::NotInLanguage);
    }
    Ok(x.prefix(p.k) == y.prefix(p.k) && past_equiv(m, &x.shift(p.k), &y.shift(p.k), p.l)?)
}

/// One class of `ᵏX_l`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LevelClass {
    pub index: IndexPair,
    /// The common first `k` letters.
    pub prefix: Word,
    /// Profile of the tails, restricted to the states reachable by words of
    /// length `1..=l`.
    pub key: StateSet,
    pub witness: Point,
}

#[derive(Clone, Debug)]
pub struct LevelSpace {
    pub index: IndexPair,
    /// Sorted by prefix, then key.
    pub classes: Vec<LevelClass>,
    window: StateSet,
}

impl LevelSpace {
    /// Position of the class containing `x`.
    pub fn locate(&self, m: &LanguageModel, x: &Point) -> Result<usize> {
        let prefix = x.prefix(self.index.k);
        let key = past_key(m, &x.shift(self.index.k), &self.window)?;
        self.classes
            .binary_search_by(|c| (&c.prefix, &c.key).cmp(&(&prefix, &key)))
            .map_err(|_| Error::NotInLanguage)
    }

    pub fn class_of(&self, m: &LanguageModel, x: &Point) -> Result<&LevelClass> {
        Ok(&self.classes[self.locate(m, x)?])
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

/// All nonempty classes of `ᵏX_l`, each with a short witness.
pub fn level_space(m: &LanguageModel, p: IndexPair) -> LevelSpace {
    let window = m.past_window(p.l);
    let mut classes = Vec::new();
    for (w, q) in m.factors_of_len(p.k) {
        let mut found: BTreeMap<StateSet, Point> = BTreeMap::new();
        for b in m.realizable_profiles() {
            if !b.0.contains(q) {
                continue;
            }
            let x = m.profile_witness(b).expect("realizable").prepend(&w);
            let key = b.0.intersection(&window);
            match found.get(&key) {
                Some(y) if (y.size(), y) <= (x.size(), &x) => {}
                _ => {
                    found.insert(key, x);
                }
            }
        }
        classes.extend(found.into_iter().map(|(key, witness)| LevelClass {
            index: p,
            prefix: w.clone(),
            key,
            witness,
        }));
    }
    LevelSpace {
        index: p,
        classes,
        window,
    }
}

/// The bonding map from `from` down to the coarser index `to`.
pub fn bonding(
    m: &LanguageModel,
    from: &LevelSpace,
    to: IndexPair,
    c: &LevelClass,
) -> Result<LevelClass> {
    if !to.leq(from.index) {
        return Err(Error::IndexOrder {
            from: from.index.to_string(),
            to: to.to_string(),
        });
    }
    Ok(level_space(m, to).class_of(m, &c.witness)?.clone())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Containment {
    Subset,
    Disjoint,
}

/// Decides a class against a set from the profiles of the class, when the
/// class lies wholly inside or outside it.
fn exact_containment(m: &LanguageModel, c: &LevelClass, e: &ConstraintSet) -> Option<Containment> {
    let v = &e.prefix;
    if v.len() > c.prefix.len() {
        return (!c.prefix.is_prefix_of(v)).then_some(Containment::Disjoint);
    }
    let Some(rest) = c.prefix.strip_prefix(v) else {
        return Some(Containment::Disjoint);
    };
    let q = m.end_state(&c.prefix)?;
    let window = m.past_window(c.index.l);
    let (mut inside, mut outside) = (false, false);
    for b in m.realizable_profiles() {
        if !b.0.contains(q) || b.0.intersection(&window) != c.key {
            continue;
        }
        let ok = e.constraints.iter().all(|f| {
            m.end_state(&f.concat(&rest))
                .is_some_and(|t| b.0.contains(t))
        });
        if ok {
            inside = true;
        } else {
            outside = true;
        }
    }
    match (inside, outside) {
        (true, false) => Some(Containment::Subset),
        (false, _) => Some(Containment::Disjoint),
        (true, true) => None,
    }
}

/// Whether a level class lies inside or outside `C(F; v)`.
///
/// At indices above [`IndexPair::for_set`] the witness decides. Below it the
/// answer is computed from the class's profiles, and the call fails if the
/// class meets both the set and its complement.
pub fn class_vs_set(m: &LanguageModel, c: &LevelClass, e: &ConstraintSet) -> Result<Containment> {
    let required = IndexPair::for_set(e);
    if required.leq(c.index) {
        return Ok(if make_set(m, e).contains(&c.witness) {
            Containment::Subset
        } else {
            Containment::Disjoint
        });
    }
    exact_containment(m, c, e).ok_or_else(|| Error::IndexTooCoarse {
        index: c.index.to_string(),
        required: required.to_string(),
    })
}

/// The classes of `ᵏX_l` whose union is `C(F; v)`. Fails if some class
/// meets both the set and its complement, which cannot happen at indices
/// above [`IndexPair::for_set`].
pub fn decompose_set(
    m: &LanguageModel,
    e: &ConstraintSet,
    p: IndexPair,
) -> Result<Vec<LevelClass>> {
    let space = level_space(m, p);
    let mut out = Vec::new();
    for c in space.classes {
        if class_vs_set(m, &c, e)? == Containment::Subset {
            out.push(c);
        }
    }
    Ok(out)
}

/// Nonzero idempotents `E(F; v)` with `|v| <= v_max`, `|F| <= f_max` and
/// `|f| <= f_len_max`, keeping the first form (by `v`, then `F`) of each
/// distinct set.
pub fn idempotent_universe(
    m: &LanguageModel,
    v_max: usize,
    f_max: usize,
    f_len_max: usize,
) -> Vec<ConstraintSet> {
    let f_words = m.alphabet().words_up_to(f_len_max);
    let mut families: Vec<Vec<Word>> = vec![vec![]];
    let mut layer: Vec<(usize, Vec<Word>)> = vec![(0, vec![])];
    for _ in 0..f_max {
        let mut next = Vec::new();
        for (start, fam) in &layer {
            for (i, f) in f_words.iter().enumerate().skip(*start) {
                let mut g = fam.clone();
                g.push(f.clone());
                next.push((i + 1, g));
            }
        }
        families.extend(next.iter().map(|(_, g)| g.clone()));
        layer = next;
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for v in m.alphabet().words_up_to(v_max) {
        for fam in &families {
            let e = ConstraintSet::new(fam.iter().cloned(), v.clone());
            let set = make_set(m, &e);
            if !set.is_empty() && seen.insert(set) {
                out.push(e);
            }
        }
    }
    out
}

/// A filter of idempotents, restricted to a finite universe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilterSet {
    pub universe: Vec<ConstraintSet>,
    /// Indices into `universe`.
    pub members: BTreeSet<usize>,
}

impl FilterSet {
    pub fn contains(&self, e: &ConstraintSet) -> bool {
        self.universe
            .iter()
            .position(|u| u == e)
            .is_some_and(|i| self.members.contains(&i))
    }

    pub fn member_sets(&self) -> impl Iterator<Item = &ConstraintSet> {
        self.members.iter().map(|&i| &self.universe[i])
    }
}

/// `η_x` restricted to the universe: the idempotents whose set contains `x`.
pub fn ultrafilter_restrict(
    m: &LanguageModel,
    x: &Point,
    universe: &[ConstraintSet],
) -> Result<FilterSet> {
    if !m.contains(x) {
        return Err(Error::NotInLanguage);
    }
    let members = universe
        .iter()
        .enumerate()
        .filter(|(_, e)| make_set(m, e).contains(x))
        .map(|(i, _)| i)
        .collect();
    Ok(FilterSet {
        universe: universe.to_vec(),
        members,
    })
}

/// Filter axioms checked inside the universe.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FilterReport {
    pub zero_free: bool,
    /// Member pairs whose product is a universe element outside the filter.
    pub product_gaps: Vec<(usize, usize)>,
    /// Pairs `(member, larger)` with the larger set outside the filter.
    pub upward_gaps: Vec<(usize, usize)>,
    /// All member prefixes are prefixes of one sequence.
    pub spine: bool,
    /// Non-members meeting every member. Maximality inside a finite
    /// universe can fail even for `η_x`, so these are reported, not errors.
    pub maximality_gaps: Vec<usize>,
}

impl FilterReport {
    pub fn is_filter(&self) -> bool {
        self.zero_free && self.product_gaps.is_empty() && self.upward_gaps.is_empty() && self.spine
    }
}

pub fn filter_report(m: &LanguageModel, f: &FilterSet) -> FilterReport {
    let sets: Vec<CanonSet> = f.universe.iter().map(|e| make_set(m, e)).collect();
    let index: HashMap<&CanonSet, usize> = sets.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let members: Vec<usize> = f.members.iter().copied().collect();
    let mut report = FilterReport {
        zero_free: members.iter().all(|&i| !sets[i].is_empty()),
        spine: members.iter().all(|&i| {
            members
                .iter()
                .all(|&j| f.universe[i].prefix.comparable(&f.universe[j].prefix))
        }),
        ..Default::default()
    };
    for &i in &members {
        for &j in &members {
            if i < j {
                let p = canon(m, product_idem(&f.universe[i], &f.universe[j]).as_ref());
                if let Some(&k) = index.get(&p) {
                    if !f.members.contains(&k) {
                        report.product_gaps.push((i, j));
                    }
                }
            }
        }
        for (j, s) in sets.iter().enumerate() {
            if !f.members.contains(&j) && subset(&sets[i], s) {
                report.upward_gaps.push((i, j));
            }
        }
    }
    for j in 0..sets.len() {
        if f.members.contains(&j) {
            continue;
        }
        let meets_all = members
            .iter()
            .all(|&i| !canon(m, product_idem(&f.universe[i], &f.universe[j]).as_ref()).is_empty());
        if meets_all {
            report.maximality_gaps.push(j);
        }
    }
    report
}

/// The classes of one point at every index of a rectangle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tower {
    pub point: Point,
    pub rectangle: IndexPair,
    pub assignments: BTreeMap<IndexPair, LevelClass>,
}

impl Tower {
    /// Whether bonding maps each assigned class onto the assigned class
    /// at every smaller index.
    pub fn is_coherent(&self, m: &LanguageModel) -> Result<bool> {
        let spaces: BTreeMap<IndexPair, LevelSpace> = self
            .assignments
            .keys()
            .map(|&p| (p, level_space(m, p)))
            .collect();
        for (&q, c) in &self.assignments {
            for (&p, d) in &self.assignments {
                if p.leq(q) && spaces[&p].class_of(m, &c.witness)? != d {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

pub fn tower_of(m: &LanguageModel, x: &Point, rectangle: IndexPair) -> Result<Tower> {
    if !m.contains(x) {
        return Err(Error::NotInLanguage);
    }
    let mut assignments = BTreeMap::new();
    for p in rectangle.rectangle() {
        let space = level_space(m, p);
        assignments.insert(p, space.class_of(m, x)?.clone());
    }
    Ok(Tower {
        point: x.clone(),
        rectangle,
        assignments,
    })
}

/// The idempotents whose set contains some class of the tower.
pub fn theta_restrict(
    m: &LanguageModel,
    t: &Tower,
    universe: &[ConstraintSet],
) -> Result<FilterSet> {
    let mut members = BTreeSet::new();
    for (i, e) in universe.iter().enumerate() {
        let required = IndexPair::for_set(e);
        if required.k > t.rectangle.k || required.l > t.rectangle.l {
            return Err(Error::RectangleTooSmall {
                rectangle: t.rectangle.to_string(),
                required: required.to_string(),
            });
        }
        if t.assignments
            .values()
            .any(|c| class_vs_set(m, c, e) == Ok(Containment::Subset))
        {
            members.insert(i);
        }
    }
    Ok(FilterSet {
        universe: universe.to_vec(),
        members,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::SubshiftSpec;
    use crate::word::Alphabet;

    fn w(s: &str) -> Word {
        Alphabet::digits(2).parse_word(s).unwrap()
    }

    fn pt(u: &str, p: &str) -> Point {
        Point::new(w(u), w(p))
    }

    fn cs(f: &[&str], v: &str) -> ConstraintSet {
        ConstraintSet::new(f.iter().map(|s| w(s)), w(v))
    }

    fn ip(k: usize, l: usize) -> IndexPair {
        IndexPair::new(k, l).unwrap()
    }

    fn gm() -> LanguageModel {
        LanguageModel::compile(&SubshiftSpec::golden_mean()).unwrap()
    }

    #[test]
    fn index_order_and_join() {
        assert!(ip(1, 1).leq(ip(2, 2)));
        assert!(!ip(1, 2).leq(ip(2, 2)));
        assert_eq!(ip(1, 2).join(ip(2, 2)), ip(2, 3));
        assert_eq!(ip(2, 2).join(ip(1, 2)), ip(2, 3));
        assert_eq!(ip(1, 3).join(ip(1, 2)), ip(1, 3));
        assert!(IndexPair::new(2, 1).is_err());
        assert_eq!(ip(1, 2).rectangle().count(), 5);
    }

    #[test]
    fn past_equivalence_examples() {
        let m = gm();
        assert!(past_equiv(&m, &pt("", "0"), &pt("", "01"), 1).unwrap());
        assert!(!past_equiv(&m, &pt("", "0"), &pt("1", "0"), 1).unwrap());
        assert!(past_equiv(&m, &pt("", "0"), &pt("1", "0"), 0).unwrap());
        assert!(kl_equiv(&m, &pt("", "0"), &pt("0", "01"), ip(1, 1)).unwrap());
        assert!(!kl_equiv(&m, &pt("", "0"), &pt("1", "0"), ip(1, 1)).unwrap());
    }

    #[test]
    fn golden_mean_level_one() {
        let m = gm();
        let s = level_space(&m, ip(1, 1));
        assert_eq!(s.len(), 3);
        let prefixes: Vec<Word> = s.classes.iter().map(|c| c.prefix.clone()).collect();
        assert_eq!(prefixes, vec![w("0"), w("0"), w("1")]);
        for c in &s.classes {
            assert_eq!(s.class_of(&m, &c.witness).unwrap(), c);
        }
        let full = LanguageModel::compile(&SubshiftSpec::full_shift(2)).unwrap();
        assert_eq!(level_space(&full, ip(2, 3)).len(), 4);
    }

    #[test]
    fn bonding_examples() {
        let m = gm();
        let fine = level_space(&m, ip(2, 2));
        let c = fine.class_of(&m, &pt("", "0")).unwrap();
        let coarse = bonding(&m, &fine, ip(1, 1), c).unwrap();
        assert_eq!(
            &coarse,
            level_space(&m, ip(1, 1))
                .class_of(&m, &pt("", "0"))
                .unwrap()
        );
        assert_eq!(&bonding(&m, &fine, ip(2, 2), c).unwrap(), c);
        assert!(matches!(
            bonding(&m, &level_space(&m, ip(1, 1)), ip(1, 2), c),
            Err(Error::IndexOrder { .. })
        ));
    }

    #[test]
    fn containment_examples() {
        let m = gm();
        let s = level_space(&m, ip(1, 1));
        let c0 = s.class_of(&m, &pt("", "0")).unwrap();
        let c1 = s.class_of(&m, &pt("0", "10")).unwrap();
        let one = s.class_of(&m, &pt("1", "0")).unwrap();
        assert_eq!(
            class_vs_set(&m, one, &cs(&[], "1")).unwrap(),
            Containment::Subset
        );
        assert_eq!(
            class_vs_set(&m, c0, &cs(&[], "1")).unwrap(),
            Containment::Disjoint
        );
        for c in &s.classes {
            assert_eq!(
                class_vs_set(&m, c, &ConstraintSet::whole()).unwrap(),
                Containment::Subset
            );
        }
        // C({1}; ε) = C(0): both classes starting with 0 are inside
        assert_eq!(
            class_vs_set(&m, c0, &cs(&["1"], "")).unwrap(),
            Containment::Subset
        );
        assert_eq!(
            class_vs_set(&m, c1, &cs(&["1"], "")).unwrap(),
            Containment::Subset
        );
        assert_eq!(
            class_vs_set(&m, one, &cs(&["1"], "")).unwrap(),
            Containment::Disjoint
        );
        // at (0,0) the only class straddles C(0)
        let top = &level_space(&m, ip(0, 0)).classes[0];
        assert!(matches!(
            class_vs_set(&m, top, &cs(&[], "0")),
            Err(Error::IndexTooCoarse { .. })
        ));
    }

    #[test]
    fn decomposition_examples() {
        let m = gm();
        let d = decompose_set(&m, &cs(&["1"], ""), ip(1, 1)).unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(
            decompose_set(&m, &ConstraintSet::whole(), ip(1, 1))
                .unwrap()
                .len(),
            3
        );
        assert!(decompose_set(&m, &cs(&["11"], ""), ip(2, 2))
            .unwrap()
            .is_empty());
        assert_eq!(
            decompose_set(&m, &cs(&["10"], "1"), ip(1, 1))
                .unwrap()
                .len(),
            1
        );
        assert!(matches!(
            decompose_set(&m, &cs(&["1"], "0"), ip(0, 0)),
            Err(Error::IndexTooCoarse { .. })
        ));
    }

    #[test]
    fn ultrafilter_examples() {
        let m = gm();
        let u = idempotent_universe(&m, 1, 1, 2);
        let f = ultrafilter_restrict(&m, &pt("", "0"), &u).unwrap();
        assert!(f.contains(&cs(&["1"], "")));
        assert!(f.contains(&ConstraintSet::whole()));
        let g = ultrafilter_restrict(&m, &pt("1", "0"), &u).unwrap();
        assert!(!g.contains(&cs(&["1"], "")));
        assert!(filter_report(&m, &f).is_filter());
        assert!(filter_report(&m, &g).is_filter());
    }

    #[test]
    fn towers_and_theta() {
        let m = gm();
        let x = pt("0", "01");
        let t = tower_of(&m, &x, ip(2, 2)).unwrap();
        assert_eq!(t.assignments.len(), 6);
        assert!(t.is_coherent(&m).unwrap());
        let u = idempotent_universe(&m, 2, 1, 2);
        assert_eq!(
            theta_restrict(&m, &t, &u).unwrap(),
            ultrafilter_restrict(&m, &x, &u).unwrap()
        );
        let id = vec![ConstraintSet::whole()];
        assert_eq!(theta_restrict(&m, &t, &id).unwrap().members.len(), 1);
        let small = tower_of(&m, &x, ip(1, 1)).unwrap();
        assert!(matches!(
            theta_restrict(&m, &small, &[cs(&["10"], "")]),
            Err(Error::RectangleTooSmall { .. })
        ));
    }
}
