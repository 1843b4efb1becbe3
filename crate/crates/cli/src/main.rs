mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use subshift_semigroup::literal::{
    format_edata, format_element, format_form, format_point, parse_edata, parse_element,
    parse_form, parse_point,
};
use subshift_semigroup::oracle::{self, concretize, map_equal, Sample};
use subshift_semigroup::semigroup::{audit, enumerate_ball, Check};
use subshift_semigroup::sets::make_set;
use subshift_semigroup::spectrum::{
    decompose_set, filter_report, idempotent_universe, level_space, ultrafilter_restrict,
};
use subshift_semigroup::{Error, IndexPair, LanguageModel, SubshiftSpec};

use report::{class_json, class_line, element_json, Report};

/// Exact computations in the inverse semigroup of a one-sided subshift.
///
/// SPEC is a spec file or one of the builtins `full2`, `golden`, `even`.
#[derive(Parser, Debug)]
#[command(name = "sxsg", version)]
struct Cli {
    spec: String,
    #[command(subcommand)]
    verb: Verb,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Ball bounds: max |α|,|β|,|v|, max |F|, max constraint length.
    #[arg(long, global = true, value_parser = triple, default_value = "1,1,2")]
    ball: (usize, usize, usize),
    /// Point sample bounds: max transient, max period.
    #[arg(long, global = true, value_parser = pair, default_value = "4,4")]
    points: (usize, usize),
    /// Level index k,l.
    #[arg(long, global = true, value_parser = pair)]
    index: Option<(usize, usize)>,
    /// Idempotent universe bounds: max |v|, max |F|, max constraint length.
    #[arg(long, global = true, value_parser = triple, default_value = "2,1,2")]
    universe: (usize, usize, usize),
    /// With `spectrum`, show every index below `--index` and the bonding maps.
    #[arg(long, global = true)]
    rect: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Dot,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Show the compiled safety automaton.
    Compile,
    /// Decide whether a word occurs in the subshift.
    Factor { word: String },
    /// Canonical form of C(F; v), given as `E{v=..; F=..}`.
    Set { set: String },
    /// Multiply two elements; prints the unreduced product, then its normal form.
    Product { s: String, t: String },
    /// Lowest-terms normal form of an element.
    Normalize { s: String },
    /// Equality of normal forms: same α, β and canonical domain.
    Equal { s: String, t: String },
    /// Whether s ≤ t in the natural partial order.
    Order { s: String, t: String },
    /// Free group grading αβ⁻¹.
    Phi { s: String },
    /// The maximal element above s.
    Max { s: String },
    /// Apply an element to a point `u(w)`.
    Apply { s: String, point: String },
    /// List the elements of a ball.
    Ball,
    /// Check the inverse-semigroup, E*-unitary, grading and maximality laws on a ball.
    Audit,
    /// Classes of a level space.
    Spectrum,
    /// Split C(F; v) into level classes.
    Decompose { set: String },
    /// The point filter of x restricted to a finite universe of idempotents.
    Ultrafilter { point: String },
    /// Compare the symbolic product with composition of explicit maps on sample points.
    OracleCheck,
}

fn pair(s: &str) -> Result<(usize, usize), String> {
    match parse_list(s)?.as_slice() {
        &[a, b] => Ok((a, b)),
        _ => Err("expected two comma-separated integers".into()),
    }
}

fn triple(s: &str) -> Result<(usize, usize, usize), String> {
    match parse_list(s)?.as_slice() {
        &[a, b, c] => Ok((a, b, c)),
        _ => Err("expected three comma-separated integers".into()),
    }
}

fn parse_list(s: &str) -> Result<Vec<usize>, String> {
    s.split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|e| format!("`{p}`: {e}")))
        .collect()
}

/// Failure modes, mapped to exit codes.
enum Failure {
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn load_spec(name: &str) -> Result<SubshiftSpec, Failure> {
    match name {
        "full2" => return Ok(SubshiftSpec::full_shift(2)),
        "golden" => return Ok(SubshiftSpec::golden_mean()),
        "even" => return Ok(SubshiftSpec::even_shift()),
        _ => {}
    }
    let path = PathBuf::from(name);
    let text = std::fs::read_to_string(&path)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    SubshiftSpec::parse(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn index(cli: &Cli, default: Option<IndexPair>) -> Result<IndexPair, Failure> {
    match (cli.index, default) {
        (Some((k, l)), _) => Ok(IndexPair::new(k, l)?),
        (None, Some(p)) => Ok(p),
        (None, None) => Err(Failure::Usage("--index k,l is required".into())),
    }
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    let spec = load_spec(&cli.spec)?;
    let m = LanguageModel::compile(&spec)?;
    let a = m.alphabet();
    let el = |text: &str| parse_element(&m, text);
    let fmt = |s| format_element(a, s);
    let mut r = Report::default();

    match &cli.verb {
        Verb::Compile => {
            let d = m.dfa();
            r.line(format!("alphabet: {}", a.symbols().join(" ")));
            r.line(format!("states: {}", m.states()));
            r.line(format!("initial: q{}", m.initial()));
            let mut trans = Vec::new();
            for q in 0..m.states() as u32 {
                let row: Vec<String> = a
                    .letters()
                    .map(|x| match d.next(q, x) {
                        Some(t) => format!("{}->q{t}", a.symbol(x)),
                        None => format!("{}->-", a.symbol(x)),
                    })
                    .collect();
                r.line(format!("q{q}: {}", row.join(" ")));
                for x in a.letters() {
                    if let Some(t) = d.next(q, x) {
                        trans.push(json!([q, a.symbol(x), t]));
                    }
                }
            }
            r.dot = Some(report::automaton_dot(&m));
            r.json = json!({
                "alphabet": a.symbols(),
                "states": m.states(),
                "initial": m.initial(),
                "transitions": trans,
                "profiles": m.realizable_profiles().len(),
            });
        }
        Verb::Factor { word } => {
            let w = a.parse_word(word)?;
            let yes = m.is_factor(&w);
            r.line(if yes { "factor" } else { "not a factor" });
            r.json = json!({ "word": a.render(&w), "factor": yes });
        }
        Verb::Set { set } => {
            let e = parse_edata(a, set)?;
            let c = make_set(&m, &e);
            let (k, l) = e.level_index();
            r.line(format!("set: {}", format_edata(a, &e)));
            r.line(format!("empty: {}", c.is_empty()));
            r.line(format!("prefix: {}", a.render(c.prefix())));
            r.line(format!("tail states: {}", c.tail().states()));
            r.line(format!("index: ({k},{l})"));
            r.json = json!({
                "set": format_edata(a, &e),
                "empty": c.is_empty(),
                "prefix": a.render(c.prefix()),
                "tail_states": c.tail().states(),
                "index": [k, l],
            });
        }
        Verb::Product { s, t } => {
            let (s, t) = (el(s)?, el(t)?);
            let trace = subshift_semigroup::semigroup::product_form(&s, &t);
            let st = s.multiply(&m, &t);
            let raw = match &trace.raw {
                Some(f) => format_form(a, f),
                None => "0".into(),
            };
            r.line(raw.clone());
            r.line(fmt(&st));
            r.json = json!({
                "case": trace.case,
                "raw": raw,
                "product": element_json(&m, &st),
            });
        }
        Verb::Normalize { s } => {
            let raw = parse_form(a, s)?;
            let e = el(s)?;
            r.line(fmt(&e));
            r.json = json!({
                "input": raw.map(|f| format_form(a, &f)).unwrap_or_else(|| "0".into()),
                "element": element_json(&m, &e),
            });
        }
        Verb::Equal { s, t } => {
            let eq = el(s)? == el(t)?;
            r.line(eq.to_string());
            r.json = json!({ "equal": eq });
        }
        Verb::Order { s, t } => {
            let le = el(s)?.leq(&m, &el(t)?);
            r.line(le.to_string());
            r.json = json!({ "leq": le });
        }
        Verb::Phi { s } => {
            let g = el(s)?.phi()?.render(a);
            r.line(g.clone());
            r.json = json!({ "phi": g });
        }
        Verb::Max { s } => {
            let top = el(s)?.max_above(&m)?;
            r.line(fmt(&top));
            r.json = element_json(&m, &top);
        }
        Verb::Apply { s, point } => {
            let x = parse_point(a, point)?;
            let image = el(s)?.apply(&m, &x)?;
            let text = image.as_ref().map(|y| format_point(a, y));
            r.line(text.clone().unwrap_or_else(|| "undefined".into()));
            r.json = json!({ "point": format_point(a, &x), "image": text });
        }
        Verb::Ball => {
            let (l, f, fl) = cli.ball;
            let ball = enumerate_ball(&m, l, f, fl);
            for s in &ball {
                r.line(fmt(s));
            }
            r.line(format!("elements: {}", ball.len()));
            r.json = json!({
                "bounds": [l, f, fl],
                "elements": ball.iter().map(&fmt).collect::<Vec<_>>(),
            });
        }
        Verb::Audit => {
            let (l, f, fl) = cli.ball;
            let ball = enumerate_ball(&m, l, f, fl);
            let rep = audit(&m, &ball);
            r.line(format!("elements: {}", rep.elements));
            r.line(format!("pairs: {}", rep.pairs));
            r.line(format!("triples: {}", rep.triples));
            let mut checks = serde_json::Map::new();
            for c in Check::ALL {
                r.line(format!("{}: {}", c.name(), rep.count(c)));
                checks.insert(c.name().into(), json!(rep.count(c)));
            }
            for v in rep.violations.iter().take(20) {
                let w: Vec<String> = v.witnesses.iter().map(&fmt).collect();
                r.line(format!("  {} at {}", v.check.name(), w.join(" | ")));
            }
            r.line(format!("violations: {}", rep.violations.len()));
            r.violations = rep.violations.len();
            r.json = json!({
                "bounds": [l, f, fl],
                "elements": rep.elements,
                "pairs": rep.pairs,
                "triples": rep.triples,
                "checks": checks,
                "violations": rep.violations.len(),
            });
        }
        Verb::Spectrum => {
            let top = index(cli, None)?;
            let indices: Vec<IndexPair> = if cli.rect {
                top.rectangle().collect()
            } else {
                vec![top]
            };
            let spaces: Vec<_> = indices.iter().map(|&p| level_space(&m, p)).collect();
            let mut levels = Vec::new();
            for sp in &spaces {
                r.line(format!("index {}: {} classes", sp.index, sp.len()));
                for (i, c) in sp.classes.iter().enumerate() {
                    r.line(format!("  {}", class_line(&m, i, c)));
                }
                levels.push(json!({
                    "index": [sp.index.k(), sp.index.l()],
                    "classes": sp.classes.iter().map(|c| class_json(&m, c)).collect::<Vec<_>>(),
                }));
            }
            r.dot = Some(report::spectrum_dot(&m, &spaces)?);
            r.json = json!({ "levels": levels });
        }
        Verb::Decompose { set } => {
            let e = parse_edata(a, set)?;
            let p = index(cli, Some(IndexPair::for_set(&e)))?;
            let parts = decompose_set(&m, &e, p)?;
            r.line(format!(
                "{} at {}: {} classes",
                format_edata(a, &e),
                p,
                parts.len()
            ));
            for (i, c) in parts.iter().enumerate() {
                r.line(format!("  {}", class_line(&m, i, c)));
            }
            r.json = json!({
                "set": format_edata(a, &e),
                "index": [p.k(), p.l()],
                "classes": parts.iter().map(|c| class_json(&m, c)).collect::<Vec<_>>(),
            });
        }
        Verb::Ultrafilter { point } => {
            let x = parse_point(a, point)?;
            let (v, f, fl) = cli.universe;
            let universe = idempotent_universe(&m, v, f, fl);
            let eta = ultrafilter_restrict(&m, &x, &universe)?;
            let rep = filter_report(&m, &eta);
            let members: Vec<String> = eta.member_sets().map(|e| format_edata(a, e)).collect();
            r.line(format!("point: {}", format_point(a, &x)));
            r.line(format!("universe: {}", universe.len()));
            for e in &members {
                r.line(format!("  {e}"));
            }
            r.line(format!("members: {}", members.len()));
            r.line(format!("filter: {}", rep.is_filter()));
            r.json = json!({
                "point": format_point(a, &x),
                "universe": universe.len(),
                "members": members,
                "filter": rep.is_filter(),
            });
        }
        Verb::OracleCheck => {
            let (l, f, fl) = cli.ball;
            let (t, p) = cli.points;
            let ball = enumerate_ball(&m, l, f, fl);
            let sample = Sample::new(&spec, t, p);
            let bad = oracle::product_mismatches(&spec, &ball, &sample, |s, t| s.multiply(&m, t));
            let maps: Vec<_> = ball.iter().map(|s| concretize(&spec, s, &sample)).collect();
            let mut split = 0;
            for i in 0..ball.len() {
                for j in i + 1..ball.len() {
                    if map_equal(&maps[i], &maps[j])? {
                        split += 1;
                    }
                }
            }
            r.line(format!("elements: {}", ball.len()));
            r.line(format!("sample points: {}", sample.len()));
            r.line(format!("pairs: {}", ball.len() * ball.len()));
            for (s, t) in bad.iter().take(20) {
                r.line(format!("  mismatch at {} * {}", fmt(s), fmt(t)));
            }
            r.line(format!("same map, distinct forms: {split}"));
            r.line(format!("mismatches: {}", bad.len()));
            r.violations = bad.len();
            r.json = json!({
                "elements": ball.len(),
                "sample": sample.id(),
                "sample_points": sample.len(),
                "pairs": ball.len() * ball.len(),
                "same_map_distinct_forms": split,
                "mismatches": bad.len(),
            });
        }
    }
    Ok(r)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(Failure::Usage(msg)) => {
            eprintln!("sxsg: {msg}");
            return ExitCode::from(2);
        }
    };
    let out = match cli.format {
        Format::Table => report.lines.join("\n") + "\n",
        Format::Json => serde_json::to_string_pretty(&report.json).expect("json") + "\n",
        Format::Dot => match &report.dot {
            Some(d) => d.clone(),
            None => {
                eprintln!("sxsg: --format dot is only available for compile and spectrum");
                return ExitCode::from(2);
            }
        },
    };
    print!("{out}");
    if report.violations > 0 {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
