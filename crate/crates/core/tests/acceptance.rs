//! Acceptance criteria 1 to 10. Prints one line per criterion and exits
//! nonzero if any fails.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::Instant;

use subshift_semigroup::oracle::{self, Sample};
use subshift_semigroup::semigroup::{audit, enumerate_ball, AuditReport, Check};
use subshift_semigroup::sets::{canon, intersect, make_set, product_idem, CanonSet};
use subshift_semigroup::spectrum::{
    bonding, decompose_set, idempotent_universe, kl_equiv, level_space, theta_restrict, tower_of,
    ultrafilter_restrict, IndexPair,
};
use subshift_semigroup::{ConstraintSet, Element, LanguageModel, Point, SubshiftSpec, Word};

struct Shift {
    name: &'static str,
    spec: SubshiftSpec,
    model: LanguageModel,
}

fn shifts() -> Vec<Shift> {
    [
        ("full shift", SubshiftSpec::full_shift(2)),
        ("golden mean", SubshiftSpec::golden_mean()),
        ("even shift", SubshiftSpec::even_shift()),
    ]
    .into_iter()
    .map(|(name, spec)| Shift {
        name,
        model: LanguageModel::compile(&spec).unwrap(),
        spec,
    })
    .collect()
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn idempotent_data(s: &Shift, v_max: usize, f_max: usize, f_len: usize) -> Vec<ConstraintSet> {
    let a = s.model.alphabet();
    let words = a.words_up_to(f_len);
    let mut families: Vec<Vec<Word>> = vec![vec![]];
    for (i, f) in words.iter().enumerate() {
        if f_max >= 1 {
            families.push(vec![f.clone()]);
        }
        if f_max >= 2 {
            for g in &words[i + 1..] {
                families.push(vec![f.clone(), g.clone()]);
            }
        }
    }
    let mut out = Vec::new();
    for v in a.words_up_to(v_max) {
        for fam in &families {
            out.push(ConstraintSet::new(fam.iter().cloned(), v.clone()));
        }
    }
    out
}

fn criterion_1(shifts: &[Shift], balls: &[Vec<Element>]) -> Outcome {
    let start = Instant::now();
    let mut pairs = 0;
    let mut bad = Vec::new();
    for (s, ball) in shifts.iter().zip(balls) {
        let sample = Sample::new(&s.spec, 4, 4);
        pairs += ball.len() * ball.len();
        let m = &s.model;
        let mismatches =
            oracle::product_mismatches(&s.spec, ball, &sample, |a, b| a.multiply(m, b));
        if !mismatches.is_empty() {
            bad.push(format!("{}: {} mismatched pairs", s.name, mismatches.len()));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let pass = bad.is_empty() && secs < 60.0;
    outcome(
        pass,
        format!(
            "{pairs} pairs in {secs:.1}s, mismatches: {}",
            if bad.is_empty() {
                "none".into()
            } else {
                bad.join("; ")
            }
        ),
    )
}

fn audit_outcome(shifts: &[Shift], reports: &[AuditReport], checks: &[Check]) -> Outcome {
    let mut parts = Vec::new();
    let mut pass = true;
    for (s, r) in shifts.iter().zip(reports) {
        let n: usize = checks.iter().map(|&c| r.count(c)).sum();
        pass &= n == 0;
        parts.push(format!(
            "{} {} elements, {} violations",
            s.name, r.elements, n
        ));
    }
    outcome(pass, parts.join("; "))
}

fn criterion_6(shifts: &[Shift]) -> Outcome {
    let mut parts = Vec::new();
    let mut pass = true;
    for s in shifts {
        let m = &s.model;
        let data = idempotent_data(s, 2, 2, 3);
        let sets: Vec<CanonSet> = data.iter().map(|e| make_set(m, e)).collect();
        let mut memo: BTreeMap<ConstraintSet, CanonSet> = BTreeMap::new();
        let mut failures = 0usize;
        for (a, sa) in data.iter().zip(&sets) {
            for (b, sb) in data.iter().zip(&sets) {
                let sym = match product_idem(a, b) {
                    Some(p) => memo
                        .entry(p.clone())
                        .or_insert_with(|| make_set(m, &p))
                        .clone(),
                    None => canon(m, None),
                };
                if sym != intersect(sa, sb) {
                    failures += 1;
                }
            }
        }
        pass &= failures == 0;
        parts.push(format!(
            "{} {} pairs, {} disagreements",
            s.name,
            data.len() * data.len(),
            failures
        ));
    }
    outcome(pass, parts.join("; "))
}

/// Number of blocks of `points` under pairwise `kl_equiv`.
fn pairwise_blocks(m: &LanguageModel, points: &[Point], p: IndexPair) -> usize {
    let mut reps: Vec<&Point> = Vec::new();
    for x in points {
        if !reps.iter().any(|r| kl_equiv(m, r, x, p).unwrap()) {
            reps.push(x);
        }
    }
    reps.len()
}

fn criterion_7(gm: &Shift) -> Outcome {
    let m = &gm.model;
    let points = m.enumerate_points(4, 4);
    let golden = [
        ((1, 1), 3),
        ((1, 2), 3),
        ((2, 2), 5),
        ((2, 3), 5),
        ((3, 3), 8),
    ];
    let mut pass = true;
    let mut counts = Vec::new();
    for ((k, l), expected) in golden {
        let p = IndexPair::new(k, l).unwrap();
        let space = level_space(m, p);
        let blocks = pairwise_blocks(m, &points, p);
        // same class under locate iff kl-equivalent
        let located: Vec<usize> = points.iter().map(|x| space.locate(m, x).unwrap()).collect();
        let consistent = (0..points.len()).all(|i| {
            (0..points.len()).all(|j| {
                (located[i] == located[j]) == kl_equiv(m, &points[i], &points[j], p).unwrap()
            })
        });
        let hit: BTreeSet<usize> = located.iter().copied().collect();
        let ok =
            space.len() == expected && blocks == expected && consistent && hit.len() == space.len();
        pass &= ok;
        counts.push(format!("{p}={}/{blocks}", space.len()));
    }
    let rect: Vec<IndexPair> = IndexPair::new(3, 3).unwrap().rectangle().collect();
    let mut compositions = 0;
    let mut incoherent = 0;
    for &r in &rect {
        let top = level_space(m, r);
        for &q in rect.iter().filter(|q| q.leq(r)) {
            let mid = level_space(m, q);
            for &p in rect.iter().filter(|p| p.leq(q)) {
                for c in &top.classes {
                    let via = bonding(m, &mid, p, &bonding(m, &top, q, c).unwrap()).unwrap();
                    compositions += 1;
                    if via != bonding(m, &top, p, c).unwrap() {
                        incoherent += 1;
                    }
                }
            }
        }
    }
    pass &= incoherent == 0;
    outcome(
        pass,
        format!(
            "classes (level space/pairwise) {}; bonding {compositions} compositions, {incoherent} incoherent",
            counts.join(" ")
        ),
    )
}

fn criterion_8(shifts: &[Shift]) -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for s in shifts.iter().filter(|s| s.name != "full shift") {
        let m = &s.model;
        let sample = Sample::new(&s.spec, 4, 4);
        let words = m.alphabet().words_up_to(2);
        let mut sets = 0;
        let mut failures = 0;
        for v in &words {
            for w in &words {
                let e = ConstraintSet::new([w.clone()], v.clone());
                let p = IndexPair::for_set(&e);
                let classes = decompose_set(m, &e, p).unwrap();
                let mut union = BTreeSet::new();
                let mut overlap = false;
                for x in sample.points() {
                    let n = classes
                        .iter()
                        .filter(|c| kl_equiv(m, x, &c.witness, p).unwrap())
                        .count();
                    overlap |= n > 1;
                    if n > 0 {
                        union.insert(x.clone());
                    }
                }
                let brute = oracle::brute_extension(&s.spec, &e, &sample);
                let canonical = oracle::set_extension(&make_set(m, &e), &sample);
                sets += 1;
                if overlap || union != brute || canonical != brute {
                    failures += 1;
                }
            }
        }
        pass &= failures == 0;
        parts.push(format!("{} {sets} sets, {failures} failures", s.name));
    }
    outcome(pass, parts.join("; "))
}

fn spread(points: &[Point], n: usize) -> Vec<Point> {
    let step = (points.len() / n).max(1);
    points.iter().step_by(step).take(n).cloned().collect()
}

fn criterion_9(shifts: &[Shift]) -> Outcome {
    let rect = IndexPair::new(2, 2).unwrap();
    let mut pass = true;
    let mut parts = Vec::new();
    for s in shifts {
        let m = &s.model;
        let sample = Sample::new(&s.spec, 4, 4);
        let points = spread(sample.points(), 20);
        let universe = idempotent_universe(m, 2, 1, 2);
        let mut disagreements = 0;
        let mut thetas = Vec::new();
        for x in &points {
            let tower = tower_of(m, x, rect).unwrap();
            let theta = theta_restrict(m, &tower, &universe).unwrap();
            let eta = ultrafilter_restrict(m, x, &universe).unwrap();
            if theta != eta {
                disagreements += 1;
            }
            let classes: Vec<_> = tower
                .assignments
                .values()
                .map(|c| (c.prefix.clone(), c.key.clone()))
                .collect();
            thetas.push((classes, theta.members));
        }
        let mut separated = 0;
        let mut unseparated = 0;
        for i in 0..thetas.len() {
            for j in i + 1..thetas.len() {
                if thetas[i].0 != thetas[j].0 {
                    if thetas[i].1 != thetas[j].1 {
                        separated += 1;
                    } else {
                        unseparated += 1;
                    }
                }
            }
        }
        pass &= disagreements == 0 && unseparated == 0 && points.len() == 20;
        parts.push(format!(
            "{} {} points, universe {}, {} disagreements, {} pairs separated, {} not",
            s.name,
            points.len(),
            universe.len(),
            disagreements,
            separated,
            unseparated
        ));
    }
    outcome(pass, parts.join("; "))
}

fn criterion_10(full: &Shift, ball: &[Element]) -> Outcome {
    let m = &full.model;
    let mut collapse_failures = 0;
    for s in ball {
        let r = s.form().unwrap();
        let av = r.alpha.concat(&r.data.prefix);
        let bv = r.beta.concat(&r.data.prefix);
        if *s != Element::make(m, av, ConstraintSet::whole(), bv) {
            collapse_failures += 1;
        }
    }
    let gen = |w: &Word| Element::make(m, w.clone(), ConstraintSet::whole(), Word::empty());
    let words = m.alphabet().words_up_to(3);
    let mut polycyclic_failures = 0;
    for mu in &words {
        for nu in &words {
            let p = gen(mu).star().multiply(m, &gen(nu));
            let expected = if let Some(z) = nu.strip_prefix(mu) {
                gen(&z)
            } else if let Some(z) = mu.strip_prefix(nu) {
                gen(&z).star()
            } else {
                Element::zero()
            };
            if p != expected {
                polycyclic_failures += 1;
            }
        }
    }
    outcome(
        collapse_failures == 0 && polycyclic_failures == 0,
        format!(
            "{} ball elements, {collapse_failures} not of the form s_(αv) s_(βv)*; {} generator products, {polycyclic_failures} wrong",
            ball.len(),
            words.len() * words.len()
        ),
    )
}

fn main() -> ExitCode {
    let shifts = shifts();
    let balls: Vec<Vec<Element>> = shifts
        .iter()
        .map(|s| enumerate_ball(&s.model, 1, 1, 2))
        .collect();

    let mut results: Vec<(u8, &str, Outcome)> = Vec::new();
    results.push((1, "oracle equivalence", criterion_1(&shifts, &balls)));
    let reports: Vec<AuditReport> = shifts
        .iter()
        .zip(&balls)
        .map(|(s, b)| audit(&s.model, b))
        .collect();
    results.push((
        2,
        "inverse semigroup axioms",
        audit_outcome(
            &shifts,
            &reports,
            &[
                Check::InverseLaw,
                Check::IdempotentsCommute,
                Check::Associativity,
            ],
        ),
    ));
    results.push((
        3,
        "E*-unitary",
        audit_outcome(&shifts, &reports, &[Check::EStarUnitary]),
    ));
    results.push((
        4,
        "phi homomorphism and purity",
        audit_outcome(
            &shifts,
            &reports,
            &[Check::PhiHomomorphism, Check::PhiIdempotentPure],
        ),
    ));
    results.push((
        5,
        "maximal elements",
        audit_outcome(&shifts, &reports, &[Check::MaximalElement]),
    ));
    results.push((6, "idempotent product formula", criterion_6(&shifts)));
    results.push((7, "level spaces and bonding", criterion_7(&shifts[1])));
    results.push((8, "set decomposition", criterion_8(&shifts)));
    results.push((9, "theta/eta agreement", criterion_9(&shifts)));
    results.push((
        10,
        "full-shift collapse",
        criterion_10(&shifts[0], &balls[0]),
    ));

    let mut ok = true;
    for (n, name, o) in &results {
        ok &= o.pass;
        println!(
            "criterion {n:>2} [{name}]: {} ({})",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
