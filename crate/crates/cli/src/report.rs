use serde_json::{json, Value};
use subshift_semigroup::literal::{format_element, format_point};
use subshift_semigroup::spectrum::bonding;
use subshift_semigroup::{Element, IndexPair, LanguageModel, LevelClass, LevelSpace, Result};

#[derive(Default)]
pub struct Report {
    pub lines: Vec<String>,
    pub json: Value,
    pub dot: Option<String>,
    pub violations: usize,
}

impl Report {
    pub fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }
}

pub fn element_json(m: &LanguageModel, s: &Element) -> Value {
    let a = m.alphabet();
    match s.form() {
        None => json!({ "literal": "0", "zero": true }),
        Some(f) => json!({
            "literal": format_element(a, s),
            "zero": false,
            "alpha": a.render(&f.alpha),
            "beta": a.render(&f.beta),
            "v": a.render(&f.data.prefix),
            "F": f.data.constraints.iter().map(|w| a.render(w)).collect::<Vec<_>>(),
            "idempotent": s.is_idempotent(),
        }),
    }
}

fn states(c: &LevelClass) -> String {
    let q: Vec<String> = c.key.iter().map(|q| format!("q{q}")).collect();
    format!("{{{}}}", q.join(","))
}

pub fn class_line(m: &LanguageModel, i: usize, c: &LevelClass) -> String {
    let a = m.alphabet();
    format!(
        "[{i}] prefix {} past {} witness {}",
        a.render(&c.prefix),
        states(c),
        format_point(a, &c.witness)
    )
}

pub fn class_json(m: &LanguageModel, c: &LevelClass) -> Value {
    let a = m.alphabet();
    json!({
        "prefix": a.render(&c.prefix),
        "past": c.key.iter().collect::<Vec<_>>(),
        "witness": format_point(a, &c.witness),
    })
}

pub fn automaton_dot(m: &LanguageModel) -> String {
    let a = m.alphabet();
    let mut out = String::from("digraph automaton {\n  rankdir=LR;\n");
    for q in 0..m.states() as u32 {
        let shape = if q == m.initial() {
            "doublecircle"
        } else {
            "circle"
        };
        out.push_str(&format!("  q{q} [shape={shape}];\n"));
    }
    for q in 0..m.states() as u32 {
        for x in a.letters() {
            if let Some(t) = m.step(q, x) {
                out.push_str(&format!("  q{q} -> q{t} [label=\"{}\"];\n", a.symbol(x)));
            }
        }
    }
    out.push_str("}\n");
    out
}

fn node(p: IndexPair, i: usize) -> String {
    format!("c{}_{}_{}", p.k(), p.l(), i)
}

/// One node per class; edges follow the bonding maps to the indices
/// immediately below, when those are present.
pub fn spectrum_dot(m: &LanguageModel, spaces: &[LevelSpace]) -> Result<String> {
    let a = m.alphabet();
    let mut out = String::from("digraph spectrum {\n  rankdir=BT;\n");
    for sp in spaces {
        for (i, c) in sp.classes.iter().enumerate() {
            out.push_str(&format!(
                "  {} [label=\"{} {}\\n{}\"];\n",
                node(sp.index, i),
                sp.index,
                a.render(&c.prefix),
                format_point(a, &c.witness)
            ));
        }
    }
    for sp in spaces {
        let (k, l) = (sp.index.k(), sp.index.l());
        let below = [
            (k.checked_sub(1), l.checked_sub(1)),
            (Some(k), l.checked_sub(1)),
        ];
        for (bk, bl) in below {
            let (Some(bk), Some(bl)) = (bk, bl) else {
                continue;
            };
            let Ok(q) = IndexPair::new(bk, bl) else {
                continue;
            };
            let Some(target) = spaces.iter().find(|s| s.index == q) else {
                continue;
            };
            for (i, c) in sp.classes.iter().enumerate() {
                let image = bonding(m, sp, q, c)?;
                let j = target.locate(m, &image.witness)?;
                out.push_str(&format!("  {} -> {};\n", node(sp.index, i), node(q, j)));
            }
        }
    }
    out.push_str("}\n");
    Ok(out)
}
