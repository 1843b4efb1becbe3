//! Text literals for idempotents, elements and points.
//!
//! ```text
//! E{v=01; F=e,1}            the idempotent E({ε, 1}; 01)
//! s[0] E{v=e; F=} s*[10]    s_0 E(∅; ε) s_10*
//! 0                         zero
//! 1(0)                      the point 1·0^∞
//! ```

use crate::error::{Error, Result};
use crate::lang::{LanguageModel, Point};
use crate::semigroup::{Element, RawForm};
use crate::sets::ConstraintSet;
use crate::word::{Alphabet, Word};

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor { text, pos: 0 }
    }

    fn column(&self) -> usize {
        self.text[..self.pos].chars().count() + 1
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse(1, self.column(), msg)
    }

    fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.text.len()
    }

    fn eat(&mut self, lit: &str) -> bool {
        self.skip_ws();
        if self.text[self.pos..].starts_with(lit) {
            self.pos += lit.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, lit: &str) -> Result<()> {
        if self.eat(lit) {
            Ok(())
        } else {
            Err(self.err(format!("expected `{lit}`")))
        }
    }

    /// A word running up to whitespace or any of `stops`.
    fn word(&mut self, a: &Alphabet, stops: &[char]) -> Result<Word> {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        let end = rest
            .find(|c: char| c.is_whitespace() || stops.contains(&c))
            .unwrap_or(rest.len());
        let w = a.parse_word_at(&rest[..end], 1, self.column())?;
        self.pos += end;
        Ok(w)
    }

    fn finish(&mut self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.err("unexpected trailing input"))
        }
    }
}

fn edata(c: &mut Cursor<'_>, a: &Alphabet) -> Result<ConstraintSet> {
    c.expect("E")?;
    c.expect("{")?;
    c.expect("v")?;
    c.expect("=")?;
    let v = c.word(a, &[';', '}'])?;
    c.expect(";")?;
    c.expect("F")?;
    c.expect("=")?;
    let mut f = Vec::new();
    c.skip_ws();
    if !c.eat("}") {
        loop {
            f.push(c.word(a, &[',', '}'])?);
            if c.eat("}") {
                break;
            }
            c.expect(",")?;
        }
    }
    Ok(ConstraintSet::new(f, v))
}

/// Parses `E{v=<word>; F=<w1>,<w2>,...}`.
pub fn parse_edata(a: &Alphabet, text: &str) -> Result<ConstraintSet> {
    let mut c = Cursor::new(text);
    let e = edata(&mut c, a)?;
    c.finish()?;
    Ok(e)
}

/// Parses an element literal into its unreduced form; `None` is zero.
pub fn parse_form(a: &Alphabet, text: &str) -> Result<Option<RawForm>> {
    let mut c = Cursor::new(text);
    if c.eat("0") && c.at_end() {
        return Ok(None);
    }
    c = Cursor::new(text);
    c.expect("s")?;
    c.expect("[")?;
    let alpha = c.word(a, &[']'])?;
    c.expect("]")?;
    let data = edata(&mut c, a)?;
    c.expect("s*")?;
    c.expect("[")?;
    let beta = c.word(a, &[']'])?;
    c.expect("]")?;
    c.finish()?;
    Ok(Some(RawForm::new(alpha, data, beta)))
}

pub fn parse_element(m: &LanguageModel, text: &str) -> Result<Element> {
    Ok(match parse_form(m.alphabet(), text)? {
        Some(raw) => Element::from_raw(m, raw),
        None => Element::zero(),
    })
}

/// Parses `u(w)`, the point `u·w^∞`.
pub fn parse_point(a: &Alphabet, text: &str) -> Result<Point> {
    let mut c = Cursor::new(text);
    let u = c.word(a, &['('])?;
    c.expect("(")?;
    let w = c.word(a, &[')'])?;
    if w.is_empty() {
        return Err(c.err("period must be nonempty"));
    }
    c.expect(")")?;
    c.finish()?;
    Ok(Point::new(u, w))
}

pub fn format_edata(a: &Alphabet, e: &ConstraintSet) -> String {
    let f: Vec<String> = e.constraints.iter().map(|w| a.render(w)).collect();
    format!("E{{v={}; F={}}}", a.render(&e.prefix), f.join(","))
}

pub fn format_form(a: &Alphabet, r: &RawForm) -> String {
    format!(
        "s[{}] {} s*[{}]",
        a.render_bare(&r.alpha),
        format_edata(a, &r.data),
        a.render_bare(&r.beta)
    )
}

pub fn format_element(a: &Alphabet, s: &Element) -> String {
    match s.form() {
        Some(r) => format_form(a, r),
        None => "0".into(),
    }
}

pub fn format_point(a: &Alphabet, x: &Point) -> String {
    format!(
        "{}({})",
        a.render_bare(x.transient()),
        a.render_bare(x.period())
    )
}
