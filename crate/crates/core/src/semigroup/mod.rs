//! Elements `s_α E(F; v) s_β*` of the inverse semigroup, in lowest terms.
//!
//! An element is the partial bijection `βvy ↦ αvy` defined when `fy`, `αvy`
//! and `βvy` all lie in `X`. Its identity is `(α, β, source)`; the pair
//! `(F; v)` is kept only as the form it was built from.
//!
//! Products compose right to left: `s·t` applies `t` first.

mod audit;

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

pub use audit::{audit, audit_with, enumerate_ball, AuditReport, Check, ProductTable, Violation};

use crate::error::{Error, Result};
use crate::free_group::FreeWord;
use crate::lang::{LanguageModel, Point};
use crate::sets::{make_set, CanonSet, ConstraintSet};
use crate::word::Word;

/// An unreduced form `s_α E(F; v) s_β*`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RawForm {
    pub alpha: Word,
    pub data: ConstraintSet,
    pub beta: Word,
}

impl RawForm {
    pub fn new(alpha: Word, data: ConstraintSet, beta: Word) -> Self {
        RawForm { alpha, data, beta }
    }

    /// Strips common final letters of `α` and `β` into the prefix.
    pub fn lowest_terms(mut self) -> Self {
        while let (Some(a), Some(b)) = (self.alpha.last(), self.beta.last()) {
            if a != b {
                break;
            }
            self.alpha = self.alpha.prefix(self.alpha.len() - 1);
            self.beta = self.beta.prefix(self.beta.len() - 1);
            self.data.prefix = self.data.prefix.prepended(a);
        }
        self
    }
}

#[derive(Debug)]
struct Form {
    raw: RawForm,
    source: CanonSet,
    range: CanonSet,
}

/// A nonzero element, or zero.
#[derive(Clone, Debug)]
pub struct Element(Option<Arc<Form>>);

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (None, None) => true,
            (Some(a), Some(b)) => {
                a.raw.alpha == b.raw.alpha && a.raw.beta == b.raw.beta && a.source == b.source
            }
            _ => false,
        }
    }
}

impl Eq for Element {}

impl Hash for Element {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.0 {
            None => 0u8.hash(state),
            Some(f) => {
                1u8.hash(state);
                f.raw.alpha.hash(state);
                f.raw.beta.hash(state);
                f.source.hash(state);
            }
        }
    }
}

impl Ord for Element {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (None, None) => Ordering::Equal,
            (None, Some(_)) => Ordering::Less,
            (Some(_), None) => Ordering::Greater,
            (Some(a), Some(b)) => {
                (&a.raw.alpha, &a.raw.beta, &a.source).cmp(&(&b.raw.alpha, &b.raw.beta, &b.source))
            }
        }
    }
}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Which case of the product rule produced a product.
///
/// `0` means an operand was zero; `1..=6` are the nonzero rules; `7` is the
/// case where no rule applies and the product is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductTrace {
    pub case: u8,
    pub raw: Option<RawForm>,
}

fn with(set: &BTreeSet<Word>, extra: impl IntoIterator<Item = Word>) -> BTreeSet<Word> {
    let mut out = set.clone();
    out.extend(extra);
    out
}

fn shifted<'a>(set: &'a BTreeSet<Word>, z: &Word) -> impl Iterator<Item = Word> + 'a {
    let z = z.clone();
    set.iter().map(move |f| f.concat(&z))
}

/// The symbolic product of two elements, before reduction.
pub fn product_form(s: &Element, t: &Element) -> ProductTrace {
    let (Some(s), Some(t)) = (&s.0, &t.0) else {
        return ProductTrace { case: 0, raw: None };
    };
    let (alpha, f, v, beta) = (
        &s.raw.alpha,
        &s.raw.data.constraints,
        &s.raw.data.prefix,
        &s.raw.beta,
    );
    let (delta, g, w, eta) = (
        &t.raw.alpha,
        &t.raw.data.constraints,
        &t.raw.data.prefix,
        &t.raw.beta,
    );
    let hit = |case, alpha: Word, c: BTreeSet<Word>, prefix: Word, beta: Word| ProductTrace {
        case,
        raw: Some(RawForm::new(
            alpha,
            ConstraintSet {
                prefix,
                constraints: c,
            },
            beta,
        )),
    };

    if let Some(gamma) = delta.strip_prefix(beta) {
        let ag = alpha.concat(&gamma);
        if let Some(z) = gamma.strip_prefix(v) {
            let zw = z.concat(w);
            let mut c = with(g, shifted(f, &zw));
            c.insert(gamma.concat(w));
            c.insert(delta.concat(w));
            return hit(1, ag, c, w.clone(), eta.clone());
        }
        if let Some(z) = v.strip_prefix(&gamma) {
            let bv = beta.concat(v);
            if let Some(r) = z.strip_prefix(w) {
                let c = with(f, shifted(g, &r).chain([bv]));
                return hit(2, ag, c, z, eta.clone());
            }
            if let Some(r) = w.strip_prefix(&z) {
                let c = with(g, shifted(f, &r).chain([bv.concat(&r)]));
                return hit(3, ag, c, w.clone(), eta.clone());
            }
        }
    }
    if let Some(gamma) = beta.strip_prefix(delta) {
        let eg = eta.concat(&gamma);
        if let Some(z) = gamma.strip_prefix(w) {
            let zv = z.concat(v);
            let mut c = with(f, shifted(g, &zv));
            c.insert(gamma.concat(v));
            c.insert(beta.concat(v));
            return hit(4, alpha.clone(), c, v.clone(), eg);
        }
        if let Some(z) = w.strip_prefix(&gamma) {
            let dw = delta.concat(w);
            if let Some(r) = z.strip_prefix(v) {
                let c = with(g, shifted(f, &r).chain([dw]));
                return hit(5, alpha.clone(), c, z, eg);
            }
            if let Some(r) = v.strip_prefix(&z) {
                let c = with(f, shifted(g, &r).chain([dw.concat(&r)]));
                return hit(6, alpha.clone(), c, v.clone(), eg);
            }
        }
    }
    ProductTrace { case: 7, raw: None }
}

impl Element {
    pub fn zero() -> Self {
        Element(None)
    }

    /// `s_α E(F; v) s_β*`, reduced to lowest terms; zero if its domain is empty.
    pub fn make(m: &LanguageModel, alpha: Word, data: ConstraintSet, beta: Word) -> Self {
        Element::from_raw(m, RawForm::new(alpha, data, beta))
    }

    pub fn from_raw(m: &LanguageModel, raw: RawForm) -> Self {
        let raw = raw.lowest_terms();
        let v = &raw.data.prefix;
        let av = raw.alpha.concat(v);
        let bv = raw.beta.concat(v);
        let mut src = raw.data.clone();
        src.constraints.insert(av.clone());
        src.prefix = bv.clone();
        let source = make_set(m, &src);
        if source.is_empty() {
            return Element(None);
        }
        let mut rng = raw.data.clone();
        rng.constraints.insert(bv);
        rng.prefix = av;
        let range = make_set(m, &rng);
        Element(Some(Arc::new(Form { raw, source, range })))
    }

    pub fn identity(m: &LanguageModel) -> Self {
        Element::make(m, Word::empty(), ConstraintSet::whole(), Word::empty())
    }

    /// The idempotent `E(F; v)`.
    pub fn idempotent(m: &LanguageModel, data: ConstraintSet) -> Self {
        Element::make(m, Word::empty(), data, Word::empty())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_none()
    }

    /// The lowest-terms form; `None` for zero.
    pub fn form(&self) -> Option<&RawForm> {
        self.0.as_deref().map(|f| &f.raw)
    }

    pub fn alpha(&self) -> Option<&Word> {
        self.form().map(|r| &r.alpha)
    }

    pub fn beta(&self) -> Option<&Word> {
        self.form().map(|r| &r.beta)
    }

    /// `C(F ∪ {αv}; βv)`, the domain.
    pub fn source(&self, m: &LanguageModel) -> CanonSet {
        self.0
            .as_ref()
            .map_or_else(|| CanonSet::empty(m), |f| f.source.clone())
    }

    /// `C(F ∪ {βv}; αv)`, the image.
    pub fn range(&self, m: &LanguageModel) -> CanonSet {
        self.0
            .as_ref()
            .map_or_else(|| CanonSet::empty(m), |f| f.range.clone())
    }

    pub fn multiply(&self, m: &LanguageModel, t: &Element) -> Element {
        match product_form(self, t).raw {
            Some(raw) => Element::from_raw(m, raw),
            None => Element::zero(),
        }
    }

    pub fn star(&self) -> Element {
        match &self.0 {
            None => Element(None),
            Some(f) => Element(Some(Arc::new(Form {
                raw: RawForm::new(f.raw.beta.clone(), f.raw.data.clone(), f.raw.alpha.clone()),
                source: f.range.clone(),
                range: f.source.clone(),
            }))),
        }
    }

    pub fn is_idempotent(&self) -> bool {
        match self.form() {
            None => true,
            Some(r) => r.alpha.is_empty() && r.beta.is_empty(),
        }
    }

    /// Natural partial order: `self ≤ t` iff `t·self*·self = self`.
    pub fn leq(&self, m: &LanguageModel, t: &Element) -> bool {
        t.multiply(m, &self.star().multiply(m, self)) == *self
    }

    /// The image of `x`, or `None` where undefined.
    pub fn apply(&self, m: &LanguageModel, x: &Point) -> Result<Option<Point>> {
        if !m.contains(x) {
            return Err(Error::NotInLanguage);
        }
        Ok(self.0.as_ref().and_then(|f| {
            f.source
                .contains(x)
                .then(|| x.shift(f.raw.beta.len()).prepend(&f.raw.alpha))
        }))
    }

    /// The grading `αβ⁻¹` in the free group.
    pub fn phi(&self) -> Result<FreeWord> {
        let r = self.form().ok_or(Error::UndefinedOnZero)?;
        Ok(FreeWord::quotient(&r.alpha, &r.beta))
    }

    /// `s_α s_β*`, the maximum element above `self`.
    pub fn max_above(&self, m: &LanguageModel) -> Result<Element> {
        let r = self.form().ok_or(Error::UndefinedOnZero)?;
        Ok(Element::make(
            m,
            r.alpha.clone(),
            ConstraintSet::whole(),
            r.beta.clone(),
        ))
    }
}
