use std::collections::{BTreeMap, BTreeSet};

use subshift_semigroup::oracle::{self, concretize, map_equal, set_extension, Sample};
use subshift_semigroup::semigroup::{audit_with, enumerate_ball, product_form, Check, RawForm};
use subshift_semigroup::sets::set_equal;
use subshift_semigroup::{ConstraintSet, Element, LanguageModel, SubshiftSpec, Word};

fn builtins() -> Vec<(&'static str, SubshiftSpec)> {
    vec![
        ("full", SubshiftSpec::full_shift(2)),
        ("golden", SubshiftSpec::golden_mean()),
        ("even", SubshiftSpec::even_shift()),
    ]
}

fn w(s: &str) -> Word {
    subshift_semigroup::Alphabet::digits(2)
        .parse_word(s)
        .unwrap()
}

#[test]
fn ball_sizes() {
    let golden: BTreeMap<&str, (usize, usize)> =
        [("full", (25, 25)), ("golden", (23, 23)), ("even", (48, 46))].into();
    for (name, spec) in builtins() {
        let m = LanguageModel::compile(&spec).unwrap();
        let ball = enumerate_ball(&m, 1, 1, 2);
        let sample = Sample::new(&spec, 4, 4);
        let maps: BTreeSet<_> = ball
            .iter()
            .map(|s| concretize(&spec, s, &sample).pairs)
            .collect();
        assert_eq!((ball.len(), maps.len()), golden[name], "{name}");
        assert!(ball.iter().all(|s| ball.contains(&s.star())));
    }
    let m = LanguageModel::compile(&SubshiftSpec::golden_mean()).unwrap();
    assert_eq!(enumerate_ball(&m, 0, 0, 3), vec![Element::identity(&m)]);
}

#[test]
fn full_shift_generators_in_small_ball() {
    let m = LanguageModel::compile(&SubshiftSpec::full_shift(2)).unwrap();
    let ball = enumerate_ball(&m, 1, 0, 0);
    let el =
        |a: &str, v: &str, b: &str| Element::make(&m, w(a), ConstraintSet::cylinder(w(v)), w(b));
    for s in [
        el("", "", ""),
        el("0", "", ""),
        el("1", "", ""),
        el("", "", "0"),
        el("", "", "1"),
        el("", "0", ""),
        el("0", "", "1"),
    ] {
        assert!(ball.contains(&s));
    }
    // products of the ball stay in the radius-2 ball
    let big = enumerate_ball(&m, 2, 0, 0);
    for s in &ball {
        for t in &ball {
            let p = s.multiply(&m, t);
            assert!(p.is_zero() || big.contains(&p));
        }
    }
}

/// Distinct normal forms agree as maps only on a one-point domain `{βτ^∞}`
/// where `ατ = α'` (or the reverse) absorbs the difference.
#[test]
fn equality_matches_concrete_maps() {
    for (name, spec) in builtins() {
        let m = LanguageModel::compile(&spec).unwrap();
        let sample = Sample::new(&spec, 4, 4);
        let mut ball = enumerate_ball(&m, 1, 1, 2);
        ball.push(Element::zero());
        let maps: Vec<_> = ball.iter().map(|s| concretize(&spec, s, &sample)).collect();
        let mut merged = 0;
        for i in 0..ball.len() {
            assert!(maps[i].is_injective());
            for j in 0..ball.len() {
                let same_map = map_equal(&maps[i], &maps[j]).unwrap();
                if ball[i] == ball[j] {
                    assert!(same_map, "{name}: {:?}", ball[i]);
                } else if same_map {
                    merged += 1;
                    let (s, t) = (&ball[i], &ball[j]);
                    assert_eq!(s.source(&m), t.source(&m));
                    assert_eq!(
                        set_extension(&s.source(&m), &sample).len(),
                        1,
                        "{name}: {s:?}"
                    );
                    assert_ne!(s.phi().unwrap(), t.phi().unwrap());
                }
            }
        }
        assert_eq!(merged > 0, name == "even", "{name}");
    }
}

#[test]
fn every_product_case_occurs_and_matches_the_oracle() {
    for (name, spec) in builtins() {
        let m = LanguageModel::compile(&spec).unwrap();
        let ball = enumerate_ball(&m, 2, 1, 1);
        let sample = Sample::new(&spec, 4, 3);
        let maps: Vec<_> = ball.iter().map(|s| concretize(&spec, s, &sample)).collect();
        let mut seen = BTreeSet::new();
        for (i, s) in ball.iter().enumerate() {
            for (j, t) in ball.iter().enumerate() {
                seen.insert(product_form(s, t).case);
                let st = concretize(&spec, &s.multiply(&m, t), &sample);
                let composed = oracle::compose(&maps[i], &maps[j]).unwrap();
                assert!(map_equal(&st, &composed).unwrap(), "{name}: {s:?} * {t:?}");
            }
        }
        assert_eq!(seen, (1..=7).collect(), "{name}");
    }
}

/// The product with the `{δw}` constraint dropped from the first case.
fn corrupted(m: &LanguageModel, s: &Element, t: &Element) -> Element {
    let trace = product_form(s, t);
    let Some(mut raw) = trace.raw else {
        return Element::zero();
    };
    if trace.case == 1 {
        let tf = t.form().unwrap();
        let dw = tf.alpha.concat(&tf.data.prefix);
        raw.data.constraints.remove(&dw);
    }
    Element::from_raw(m, raw)
}

#[test]
fn corrupted_product_is_detected() {
    for (name, spec) in builtins().into_iter().skip(1) {
        let m = LanguageModel::compile(&spec).unwrap();
        let ball = enumerate_ball(&m, 1, 1, 2);
        let report = audit_with(&m, &ball, &corrupted);
        let sample = Sample::new(&spec, 4, 4);
        let mismatches =
            oracle::product_mismatches(&spec, &ball, &sample, |s, t| corrupted(&m, s, t));
        assert!(
            report.count(Check::Associativity) > 0 || !mismatches.is_empty(),
            "{name}: mutation went unnoticed"
        );
        assert!(!mismatches.is_empty(), "{name}");
    }
}

#[test]
fn clean_audit_counts() {
    let spec = SubshiftSpec::golden_mean();
    let m = LanguageModel::compile(&spec).unwrap();
    let ball = enumerate_ball(&m, 1, 1, 2);
    let report = subshift_semigroup::semigroup::audit(&m, &ball);
    assert!(report.is_clean(), "{:?}", report.violations);
    assert_eq!(report.triples, ball.len().pow(3));
}

#[test]
fn source_range_and_star() {
    for (_, spec) in builtins() {
        let m = LanguageModel::compile(&spec).unwrap();
        for s in enumerate_ball(&m, 1, 1, 2) {
            assert_eq!(s.range(&m), s.star().source(&m));
            assert!(set_equal(
                &s.multiply(&m, &s.star()).source(&m),
                &s.range(&m)
            ));
            assert!(set_equal(
                &s.star().multiply(&m, &s).source(&m),
                &s.source(&m)
            ));
            assert_eq!(s.star().star(), s);
            assert!(s.leq(&m, &s.max_above(&m).unwrap()));
            assert_eq!(s.star().phi().unwrap(), s.phi().unwrap().inverse());
        }
    }
}

#[test]
fn redundant_constraints_do_not_change_elements() {
    for (_, spec) in builtins() {
        let m = LanguageModel::compile(&spec).unwrap();
        for s in enumerate_ball(&m, 1, 1, 2) {
            let r = s.form().unwrap().clone();
            let mut data = r.data.clone();
            data.constraints.insert(r.alpha.concat(&r.data.prefix));
            data.constraints.insert(r.beta.concat(&r.data.prefix));
            let t = Element::from_raw(&m, RawForm::new(r.alpha.clone(), data, r.beta.clone()));
            assert_eq!(s, t);
        }
    }
}

#[test]
fn max_above_is_the_maximum_in_the_ball() {
    let m = LanguageModel::compile(&SubshiftSpec::even_shift()).unwrap();
    let ball = enumerate_ball(&m, 1, 1, 2);
    for s in &ball {
        let top = s.max_above(&m).unwrap();
        for t in &ball {
            if s.leq(&m, t) {
                assert!(t.leq(&m, &top));
            }
        }
        if s.is_idempotent() {
            assert_eq!(top, Element::identity(&m));
        }
    }
}
