use super::{ShiftKind, SubshiftSpec};
use crate::error::{Error, Result};
use crate::word::Alphabet;

/// Column (1-based) of `needle` inside `line`, which must be a subslice.
fn col_of(line: &str, needle: &str) -> usize {
    needle.as_ptr() as usize - line.as_ptr() as usize + 1
}

pub(super) fn parse(text: &str) -> Result<SubshiftSpec> {
    let mut alphabet: Option<Alphabet> = None;
    let mut kind: Option<(String, usize)> = None;
    let mut forbid = Vec::new();
    let mut edges = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap();
        if line.trim().is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once(':') else {
            return Err(Error::parse(line_no, 1, "expected `key: value`"));
        };
        let key = key.trim();
        let vcol = col_of(raw, value);
        match key {
            "alphabet" => {
                if alphabet.is_some() {
                    return Err(Error::parse(line_no, 1, "alphabet given twice"));
                }
                let symbols: Vec<&str> = value.split_whitespace().collect();
                alphabet = Some(
                    Alphabet::new(&symbols)
                        .map_err(|e| Error::parse(line_no, vcol, e.to_string()))?,
                );
            }
            "kind" => {
                if kind.is_some() {
                    return Err(Error::parse(line_no, 1, "kind given twice"));
                }
                kind = Some((value.trim().to_string(), line_no));
            }
            "forbid" => forbid.push((value, line_no, vcol)),
            "edge" => edges.push((value, line_no)),
            other => {
                return Err(Error::parse(line_no, 1, format!("unknown key {other:?}")));
            }
        }
    }

    let alphabet = alphabet.ok_or_else(|| Error::parse(1, 1, "missing `alphabet:` line"))?;
    let (kind, kind_line) = kind.ok_or_else(|| Error::parse(1, 1, "missing `kind:` line"))?;
    let spec = match kind.as_str() {
        "full" => {
            if let Some(&(_, l, _)) = forbid.first() {
                return Err(Error::parse(l, 1, "`forbid:` needs kind sft"));
            }
            if let Some(&(_, l)) = edges.first() {
                return Err(Error::parse(l, 1, "`edge:` needs kind sofic"));
            }
            SubshiftSpec::full(alphabet)
        }
        "sft" => {
            if let Some(&(_, l)) = edges.first() {
                return Err(Error::parse(l, 1, "`edge:` needs kind sofic"));
            }
            let mut words = Vec::new();
            for (value, l, c) in forbid {
                let offset = value.len() - value.trim_start().len();
                let w = alphabet.parse_word_at(value, l, c + offset)?;
                if w.is_empty() {
                    return Err(Error::parse(l, c, "forbidden word must be nonempty"));
                }
                words.push(w);
            }
            SubshiftSpec::sft(alphabet, words)
                .map_err(|e| Error::parse(kind_line, 1, e.to_string()))?
        }
        "sofic" => {
            if let Some(&(_, l, _)) = forbid.first() {
                return Err(Error::parse(l, 1, "`forbid:` needs kind sft"));
            }
            let mut states: Vec<String> = Vec::new();
            let mut state_id = |name: &str| -> usize {
                match states.iter().position(|s| s == name) {
                    Some(i) => i,
                    None => {
                        states.push(name.to_string());
                        states.len() - 1
                    }
                }
            };
            let mut parsed = Vec::new();
            for (value, l) in edges {
                let parts: Vec<&str> = value.split_whitespace().collect();
                let [from, sym, to] = parts[..] else {
                    return Err(Error::parse(l, 1, "expected `edge: <from> <symbol> <to>`"));
                };
                let a = alphabet.index_of(sym).ok_or_else(|| {
                    Error::parse(
                        l,
                        col_of(value, sym) + col_of(text.lines().nth(l - 1).unwrap(), value) - 1,
                        format!("symbol {sym:?} is not in the alphabet"),
                    )
                })?;
                parsed.push((state_id(from), a, state_id(to)));
            }
            SubshiftSpec::sofic(alphabet, states, parsed)
                .map_err(|e| Error::parse(kind_line, 1, e.to_string()))?
        }
        other => {
            return Err(Error::parse(
                kind_line,
                1,
                format!("unknown kind {other:?} (expected full, sft or sofic)"),
            ))
        }
    };
    Ok(spec)
}

pub(super) fn render(spec: &SubshiftSpec) -> String {
    let a = spec.alphabet();
    let mut out = format!("alphabet: {}\n", a.symbols().join(" "));
    match spec.kind() {
        ShiftKind::Full => out.push_str("kind: full\n"),
        ShiftKind::Sft { forbidden } => {
            out.push_str("kind: sft\n");
            for w in forbidden {
                out.push_str(&format!("forbid: {}\n", a.render(w)));
            }
        }
        ShiftKind::Sofic { states, edges } => {
            out.push_str("kind: sofic\n");
            for &(p, s, q) in edges {
                out.push_str(&format!(
                    "edge: {} {} {}\n",
                    states[p],
                    a.symbol(s),
                    states[q]
                ));
            }
        }
    }
    out
}
