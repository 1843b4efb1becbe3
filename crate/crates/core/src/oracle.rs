//! Brute-force semantics on a finite sample of points.
//!
//! Nothing here uses the compiled automaton. Membership of a point in `X` is
//! decided from the presentation itself (forbidden-word scan, or a
//! fixpoint over the labeled graph), and an element acts through its
//! defining chain `x = βvy ↦ αvy` with each membership tested directly.
//!
//! Composition follows the product convention: `compose(f, g)` applies `g`
//! first, so `concretize(s·t) = compose(concretize(s), concretize(t))`.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lang::{Point, ShiftKind, SubshiftSpec};
use crate::semigroup::Element;
use crate::sets::{CanonSet, ConstraintSet};
use crate::word::{Letter, Word};

/// Whether the eventually periodic sequence `x` lies in the subshift.
pub fn in_shift(spec: &SubshiftSpec, x: &Point) -> bool {
    match spec.kind() {
        ShiftKind::Full => true,
        ShiftKind::Sft { forbidden } => {
            // every factor of length <= L occurs in the first |u| + |w| + L letters
            let longest = forbidden.iter().map(Word::len).max().unwrap_or(0);
            let window = x.prefix(x.transient().len() + x.period().len() + longest);
            forbidden.iter().all(|f| !window.contains_factor(f))
        }
        ShiftKind::Sofic { states, edges } => {
            let pre = |word: &[Letter], target: &[bool]| -> Vec<bool> {
                let mut cur = target.to_vec();
                for &a in word.iter().rev() {
                    let mut prev = vec![false; states.len()];
                    for &(p, b, q) in edges {
                        if b == a && cur[q] {
                            prev[p] = true;
                        }
                    }
                    cur = prev;
                }
                cur
            };
            let mut tail = vec![true; states.len()];
            loop {
                let next = pre(x.period().letters(), &tail);
                if next == tail {
                    break;
                }
                tail = next;
            }
            pre(x.transient().letters(), &tail).iter().any(|&b| b)
        }
    }
}

/// The image of `x` under `s`, or `None` where undefined.
pub fn eval(spec: &SubshiftSpec, s: &Element, x: &Point) -> Option<Point> {
    let r = s.form()?;
    if !x.starts_with(&r.beta) {
        return None;
    }
    let x1 = x.shift(r.beta.len());
    if !x1.starts_with(&r.data.prefix) {
        return None;
    }
    let y = x1.shift(r.data.prefix.len());
    if !r
        .data
        .constraints
        .iter()
        .all(|f| in_shift(spec, &y.prepend(f)))
    {
        return None;
    }
    let out = x1.prepend(&r.alpha);
    in_shift(spec, &out).then_some(out)
}

/// `x ∈ C(F; v)`, by direct membership tests.
pub fn in_set(spec: &SubshiftSpec, e: &ConstraintSet, x: &Point) -> bool {
    if !x.starts_with(&e.prefix) {
        return false;
    }
    let y = x.shift(e.prefix.len());
    e.constraints.iter().all(|f| in_shift(spec, &y.prepend(f)))
}

/// `P_k(x)` by testing every word of length `k`.
pub fn pred_set(spec: &SubshiftSpec, x: &Point, k: usize) -> Vec<Word> {
    spec.alphabet()
        .words_of_len(k)
        .into_iter()
        .filter(|mu| in_shift(spec, &x.prepend(mu)))
        .collect()
}

/// A finite set of points of `X`, closed under the shift.
#[derive(Clone, Debug)]
pub struct Sample {
    id: String,
    points: Vec<Point>,
    members: BTreeSet<Point>,
}

impl Sample {
    /// All points `u·w^∞` of `X` with `|u| <= max_transient`, `|w| <= max_period`.
    pub fn new(spec: &SubshiftSpec, max_transient: usize, max_period: usize) -> Self {
        let a = spec.alphabet();
        let mut members = BTreeSet::new();
        for p in 1..=max_period {
            for w in a.words_of_len(p) {
                for u in a.words_up_to(max_transient) {
                    let x = Point::new(u, w.clone());
                    if !members.contains(&x) && in_shift(spec, &x) {
                        members.insert(x);
                    }
                }
            }
        }
        Sample {
            id: format!("points({max_transient},{max_period})"),
            points: members.iter().cloned().collect(),
            members,
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn contains(&self, x: &Point) -> bool {
        self.members.contains(x)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// A partial map restricted to a sample.
///
/// Inputs whose image falls outside the sample are recorded as escaped and
/// ignored by every comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConcreteMap {
    pub sample_id: String,
    pub pairs: BTreeMap<Point, Point>,
    pub escaped: BTreeSet<Point>,
    domain: BTreeSet<Point>,
}

impl ConcreteMap {
    pub fn get(&self, x: &Point) -> Option<&Point> {
        self.pairs.get(x)
    }

    /// Whether the recorded pairs form an injective function.
    pub fn is_injective(&self) -> bool {
        let images: BTreeSet<&Point> = self.pairs.values().collect();
        images.len() == self.pairs.len()
    }
}

pub fn concretize(spec: &SubshiftSpec, s: &Element, sample: &Sample) -> ConcreteMap {
    let mut pairs = BTreeMap::new();
    let mut escaped = BTreeSet::new();
    for x in sample.points() {
        if let Some(y) = eval(spec, s, x) {
            if sample.contains(&y) {
                pairs.insert(x.clone(), y);
            } else {
                escaped.insert(x.clone());
            }
        }
    }
    ConcreteMap {
        sample_id: sample.id.clone(),
        pairs,
        escaped,
        domain: sample.members.clone(),
    }
}

fn same_sample(f: &ConcreteMap, g: &ConcreteMap) -> Result<()> {
    if f.sample_id != g.sample_id {
        return Err(Error::SampleMismatch(
            f.sample_id.clone(),
            g.sample_id.clone(),
        ));
    }
    Ok(())
}

/// `f ∘ g`: apply `g`, then `f`.
pub fn compose(f: &ConcreteMap, g: &ConcreteMap) -> Result<ConcreteMap> {
    same_sample(f, g)?;
    let mut pairs = BTreeMap::new();
    let mut escaped = g.escaped.clone();
    for (x, y) in &g.pairs {
        if let Some(z) = f.pairs.get(y) {
            pairs.insert(x.clone(), z.clone());
        } else if f.escaped.contains(y) {
            escaped.insert(x.clone());
        }
    }
    Ok(ConcreteMap {
        sample_id: f.sample_id.clone(),
        pairs,
        escaped,
        domain: f.domain.clone(),
    })
}

/// Equality on every sample point that escapes neither map.
pub fn map_equal(f: &ConcreteMap, g: &ConcreteMap) -> Result<bool> {
    same_sample(f, g)?;
    Ok(f.domain
        .iter()
        .filter(|x| !f.escaped.contains(*x) && !g.escaped.contains(*x))
        .all(|x| f.pairs.get(x) == g.pairs.get(x)))
}

/// Sample points in a canonical set.
pub fn set_extension(s: &CanonSet, sample: &Sample) -> BTreeSet<Point> {
    sample
        .points()
        .iter()
        .filter(|x| s.contains(x))
        .cloned()
        .collect()
}

/// Sample points in `C(F; v)`, by direct membership tests.
pub fn brute_extension(spec: &SubshiftSpec, e: &ConstraintSet, sample: &Sample) -> BTreeSet<Point> {
    sample
        .points()
        .iter()
        .filter(|x| in_set(spec, e, x))
        .cloned()
        .collect()
}

/// Pairs `(s, t)` of the ball where `mul(s, t)` and the composition of the
/// concrete maps disagree.
pub fn product_mismatches<M>(
    spec: &SubshiftSpec,
    ball: &[Element],
    sample: &Sample,
    mul: M,
) -> Vec<(Element, Element)>
where
    M: Fn(&Element, &Element) -> Element + Sync,
{
    let maps: Vec<ConcreteMap> = ball
        .par_iter()
        .map(|s| concretize(spec, s, sample))
        .collect();
    (0..ball.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let (maps, mul) = (&maps, &mul);
            (0..ball.len()).filter_map(move |j| {
                let st = concretize(spec, &mul(&ball[i], &ball[j]), sample);
                let composed = compose(&maps[i], &maps[j]).expect("one sample");
                (!map_equal(&st, &composed).expect("one sample"))
                    .then(|| (ball[i].clone(), ball[j].clone()))
            })
        })
        .collect()
}
