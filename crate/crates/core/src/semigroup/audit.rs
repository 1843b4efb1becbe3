//! Finite balls of elements and bounded audits of the semigroup laws.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;

use super::Element;
use crate::lang::LanguageModel;
use crate::sets::ConstraintSet;
use crate::word::Word;

/// All distinct nonzero elements `s_α E(F; v) s_β*` with `|α|, |β|, |v| <= max_len`,
/// `|F| <= max_f` and every `f ∈ F` of length at most `max_f_len`, sorted.
pub fn enumerate_ball(
    m: &LanguageModel,
    max_len: usize,
    max_f: usize,
    max_f_len: usize,
) -> Vec<Element> {
    let words = m.alphabet().words_up_to(max_len);
    let f_words = m.alphabet().words_up_to(max_f_len);
    let mut families: Vec<Vec<Word>> = vec![vec![]];
    let mut layer: Vec<(usize, Vec<Word>)> = vec![(0, vec![])];
    for _ in 0..max_f {
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
    let mut forms = Vec::new();
    for alpha in &words {
        for beta in &words {
            for v in &words {
                for fam in &families {
                    forms.push((
                        alpha,
                        beta,
                        ConstraintSet::new(fam.iter().cloned(), v.clone()),
                    ));
                }
            }
        }
    }
    let out: BTreeSet<Element> = forms
        .into_par_iter()
        .map(|(a, b, data)| Element::make(m, a.clone(), data, b.clone()))
        .filter(|e| !e.is_zero())
        .collect();
    out.into_iter().collect()
}

/// Multiplication used by an audit; the real product is [`Element::multiply`].
pub type MulFn<'a> = dyn Fn(&LanguageModel, &Element, &Element) -> Element + Sync + 'a;

/// Interned elements with a memoized product table.
pub struct ProductTable<'a> {
    m: &'a LanguageModel,
    mul: &'a MulFn<'a>,
    elems: Vec<Element>,
    ids: HashMap<Element, u32>,
    prod: HashMap<(u32, u32), u32>,
}

impl<'a> ProductTable<'a> {
    pub fn new(m: &'a LanguageModel, mul: &'a MulFn<'a>) -> Self {
        ProductTable {
            m,
            mul,
            elems: Vec::new(),
            ids: HashMap::new(),
            prod: HashMap::new(),
        }
    }

    pub fn intern(&mut self, e: &Element) -> u32 {
        if let Some(&i) = self.ids.get(e) {
            return i;
        }
        let i = self.elems.len() as u32;
        self.elems.push(e.clone());
        self.ids.insert(e.clone(), i);
        i
    }

    pub fn get(&self, i: u32) -> &Element {
        &self.elems[i as usize]
    }

    /// Computes every listed product not yet in the table, in parallel.
    pub fn fill(&mut self, pairs: impl IntoIterator<Item = (u32, u32)>) {
        let mut todo: Vec<(u32, u32)> = pairs
            .into_iter()
            .filter(|p| !self.prod.contains_key(p))
            .collect();
        todo.sort_unstable();
        todo.dedup();
        let (m, mul, elems) = (self.m, self.mul, &self.elems);
        let results: Vec<Element> = todo
            .par_iter()
            .map(|&(i, j)| mul(m, &elems[i as usize], &elems[j as usize]))
            .collect();
        for (p, e) in todo.into_iter().zip(results) {
            let k = self.intern(&e);
            self.prod.insert(p, k);
        }
    }

    pub fn product(&mut self, i: u32, j: u32) -> u32 {
        if let Some(&k) = self.prod.get(&(i, j)) {
            return k;
        }
        let e = (self.mul)(self.m, &self.elems[i as usize], &self.elems[j as usize]);
        let k = self.intern(&e);
        self.prod.insert((i, j), k);
        k
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    /// `ss*s = s` and `s*ss* = s*`.
    InverseLaw,
    IdempotentsCommute,
    Associativity,
    /// A nonzero idempotent below `s` forces `s` idempotent.
    EStarUnitary,
    /// `st ≠ 0` implies `φ(st) = φ(s)φ(t)`.
    PhiHomomorphism,
    /// `φ(s) = 1` implies `s` idempotent.
    PhiIdempotentPure,
    /// `s ≤ max_above(s)`, and `s ≤ t` implies `t ≤ max_above(s)`.
    MaximalElement,
}

impl Check {
    pub const ALL: [Check; 7] = [
        Check::InverseLaw,
        Check::IdempotentsCommute,
        Check::Associativity,
        Check::EStarUnitary,
        Check::PhiHomomorphism,
        Check::PhiIdempotentPure,
        Check::MaximalElement,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::InverseLaw => "inverse-law",
            Check::IdempotentsCommute => "idempotents-commute",
            Check::Associativity => "associativity",
            Check::EStarUnitary => "e-star-unitary",
            Check::PhiHomomorphism => "phi-homomorphism",
            Check::PhiIdempotentPure => "phi-idempotent-pure",
            Check::MaximalElement => "maximal-element",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Violation {
    pub check: Check,
    pub witnesses: Vec<Element>,
}

#[derive(Clone, Debug, Default)]
pub struct AuditReport {
    pub elements: usize,
    pub pairs: usize,
    pub triples: usize,
    pub violations: Vec<Violation>,
}

impl AuditReport {
    pub fn count(&self, check: Check) -> usize {
        self.violations.iter().filter(|v| v.check == check).count()
    }

    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn audit(m: &LanguageModel, ball: &[Element]) -> AuditReport {
    audit_with(m, ball, &|m, s, t| s.multiply(m, t))
}

/// Audits `ball` under an arbitrary multiplication.
pub fn audit_with(m: &LanguageModel, ball: &[Element], mul: &MulFn<'_>) -> AuditReport {
    let mut tab = ProductTable::new(m, mul);
    let ids: Vec<u32> = ball.iter().map(|e| tab.intern(e)).collect();
    let stars: Vec<u32> = ball.iter().map(|e| tab.intern(&e.star())).collect();
    let maxes: Vec<Option<u32>> = ball
        .iter()
        .map(|e| e.max_above(m).ok().map(|x| tab.intern(&x)))
        .collect();
    let n = ids.len();
    let mut report = AuditReport {
        elements: n,
        pairs: n * n,
        triples: n * n * n,
        violations: Vec::new(),
    };
    let mut fail = |check, w: Vec<&Element>| {
        report.violations.push(Violation {
            check,
            witnesses: w.into_iter().cloned().collect(),
        })
    };

    tab.fill(ids.iter().flat_map(|&i| ids.iter().map(move |&j| (i, j))));
    tab.fill((0..n).flat_map(|i| [(ids[i], stars[i]), (stars[i], ids[i])]));
    // s* s for the order tests
    let ss: Vec<u32> = (0..n).map(|i| tab.product(stars[i], ids[i])).collect();

    for i in 0..n {
        let s = ids[i];
        let sss = {
            let p = tab.product(s, stars[i]);
            tab.product(p, s)
        };
        let s3 = {
            let p = tab.product(stars[i], s);
            tab.product(p, stars[i])
        };
        if sss != s || s3 != stars[i] {
            fail(Check::InverseLaw, vec![&ball[i]]);
        }
    }

    let idem: Vec<usize> = (0..n).filter(|&i| ball[i].is_idempotent()).collect();
    for &a in &idem {
        for &b in &idem {
            if a < b && tab.product(ids[a], ids[b]) != tab.product(ids[b], ids[a]) {
                fail(Check::IdempotentsCommute, vec![&ball[a], &ball[b]]);
            }
        }
    }

    // associativity over all triples
    let st: Vec<u32> = ids
        .iter()
        .flat_map(|&i| ids.iter().map(move |&j| (i, j)))
        .map(|(i, j)| tab.product(i, j))
        .collect();
    let distinct: BTreeSet<u32> = st.iter().copied().collect();
    tab.fill(
        distinct
            .iter()
            .flat_map(|&p| ids.iter().flat_map(move |&u| [(p, u), (u, p)])),
    );
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let left = tab.product(st[a * n + b], ids[c]);
                let right = tab.product(ids[a], st[b * n + c]);
                if left != right {
                    fail(Check::Associativity, vec![&ball[a], &ball[b], &ball[c]]);
                }
            }
        }
    }

    // order: s ≤ t iff t·(s*s) = s
    tab.fill((0..n).flat_map(|a| {
        let x = ss[a];
        ids.iter().map(move |&t| (t, x))
    }));
    let leq = |tab: &mut ProductTable, a: usize, t: u32| tab.product(t, ss[a]) == ids[a];
    for &e in &idem {
        if ball[e].is_zero() {
            continue;
        }
        for s in 0..n {
            if !ball[s].is_idempotent() && leq(&mut tab, e, ids[s]) {
                fail(Check::EStarUnitary, vec![&ball[e], &ball[s]]);
            }
        }
    }

    for a in 0..n {
        for b in 0..n {
            let p = tab.get(st[a * n + b]).clone();
            if p.is_zero() {
                continue;
            }
            let lhs = p.phi().unwrap();
            let rhs = ball[a].phi().unwrap().mul(&ball[b].phi().unwrap());
            if lhs != rhs {
                fail(Check::PhiHomomorphism, vec![&ball[a], &ball[b]]);
            }
        }
        if ball[a].phi().is_ok_and(|p| p.is_identity()) && !ball[a].is_idempotent() {
            fail(Check::PhiIdempotentPure, vec![&ball[a]]);
        }
    }

    for a in 0..n {
        let Some(mx) = maxes[a] else { continue };
        if !leq(&mut tab, a, mx) {
            fail(Check::MaximalElement, vec![&ball[a]]);
            continue;
        }
        for t in 0..n {
            if leq(&mut tab, a, ids[t]) {
                // t ≤ max_above(a)
                let t_ss = tab.product(stars[t], ids[t]);
                if tab.product(mx, t_ss) != ids[t] {
                    fail(Check::MaximalElement, vec![&ball[a], &ball[t]]);
                }
            }
        }
    }

    report
}
