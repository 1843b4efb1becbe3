//! Alphabets and finite words.
//!
//! Letters are indices into an [`Alphabet`]; all canonical orderings (word
//! order, enumeration order, printed output) follow the alphabet's order.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

pub type Letter = u8;

/// Characters that cannot appear in symbol names because the literal grammar uses them.
const RESERVED: &[char] = &[
    '[', ']', '{', '}', '(', ')', ';', '=', ',', '.', '#', '*', ':',
];

/// Ordered, duplicate-free list of symbol names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<String>,
    single_char: bool,
}

impl Alphabet {
    pub fn new<S: AsRef<str>>(symbols: &[S]) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::InvalidSpec("alphabet is empty".into()));
        }
        if symbols.len() > Letter::MAX as usize {
            return Err(Error::InvalidSpec("alphabet has too many symbols".into()));
        }
        let mut out: Vec<String> = Vec::with_capacity(symbols.len());
        for s in symbols {
            let s = s.as_ref();
            if s.is_empty() || s == "e" {
                return Err(Error::InvalidSpec(format!("symbol name {s:?} is reserved")));
            }
            if s.chars()
                .any(|c| c.is_whitespace() || RESERVED.contains(&c))
            {
                return Err(Error::InvalidSpec(format!(
                    "symbol {s:?} contains a reserved character"
                )));
            }
            if out.iter().any(|t| t == s) {
                return Err(Error::InvalidSpec(format!("duplicate symbol {s:?}")));
            }
            out.push(s.to_string());
        }
        let single_char = out.iter().all(|s| s.chars().count() == 1);
        Ok(Alphabet {
            symbols: out,
            single_char,
        })
    }

    /// `{0, 1, ..., n-1}` for `n <= 10`.
    pub fn digits(n: usize) -> Self {
        assert!((1..=10).contains(&n));
        let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        Alphabet::new(&names).expect("digit alphabet is valid")
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn symbol(&self, a: Letter) -> &str {
        &self.symbols[a as usize]
    }

    pub fn index_of(&self, name: &str) -> Option<Letter> {
        self.symbols
            .iter()
            .position(|s| s == name)
            .map(|i| i as Letter)
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        0..self.symbols.len() as Letter
    }

    /// Parses a word. `e` (or the empty string) is the empty word; with
    /// single-character symbols letters are juxtaposed, otherwise they are
    /// separated by `.`.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        self.parse_word_at(text, 1, 1)
    }

    pub(crate) fn parse_word_at(&self, text: &str, line: usize, column: usize) -> Result<Word> {
        let text = text.trim();
        if text.is_empty() || text == "e" {
            return Ok(Word::empty());
        }
        let mut letters = Vec::new();
        if self.single_char {
            for (i, c) in text.chars().enumerate() {
                let mut buf = [0u8; 4];
                let a = self.index_of(c.encode_utf8(&mut buf)).ok_or_else(|| {
                    Error::parse(
                        line,
                        column + i,
                        format!("symbol {c:?} is not in the alphabet"),
                    )
                })?;
                letters.push(a);
            }
        } else {
            let mut col = column;
            for part in text.split('.') {
                let a = self.index_of(part).ok_or_else(|| {
                    Error::parse(line, col, format!("symbol {part:?} is not in the alphabet"))
                })?;
                letters.push(a);
                col += part.chars().count() + 1;
            }
        }
        Ok(Word(letters))
    }

    /// Renders a word, with `e` for the empty word.
    pub fn render(&self, w: &Word) -> String {
        if w.is_empty() {
            "e".to_string()
        } else {
            self.render_bare(w)
        }
    }

    /// Renders a word, with the empty string for the empty word.
    pub fn render_bare(&self, w: &Word) -> String {
        let sep = if self.single_char { "" } else { "." };
        w.0.iter()
            .map(|&a| self.symbol(a))
            .collect::<Vec<_>>()
            .join(sep)
    }

    /// All words of length exactly `k`, in lexicographic order.
    pub fn words_of_len(&self, k: usize) -> Vec<Word> {
        let n = self.len();
        let mut out = vec![Word::empty()];
        for _ in 0..k {
            let mut next = Vec::with_capacity(out.len() * n);
            for w in &out {
                for a in self.letters() {
                    next.push(w.pushed(a));
                }
            }
            out = next;
        }
        out
    }

    /// All words of length at most `k`, in shortlex order.
    pub fn words_up_to(&self, k: usize) -> Vec<Word> {
        (0..=k).flat_map(|i| self.words_of_len(i)).collect()
    }
}

/// A finite word over an alphabet (letters are alphabet indices).
///
/// Ordered shortlex: shorter words first, then lexicographically.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn from_slice(letters: &[Letter]) -> Self {
        Word(letters.to_vec())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn pushed(&self, a: Letter) -> Word {
        let mut v = self.0.clone();
        v.push(a);
        Word(v)
    }

    pub fn prepended(&self, a: Letter) -> Word {
        let mut v = Vec::with_capacity(self.len() + 1);
        v.push(a);
        v.extend_from_slice(&self.0);
        Word(v)
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.0.starts_with(&self.0)
    }

    /// If `self = prefix · z`, returns `z`.
    pub fn strip_prefix(&self, prefix: &Word) -> Option<Word> {
        self.0
            .strip_prefix(prefix.0.as_slice())
            .map(Word::from_slice)
    }

    pub fn prefix(&self, k: usize) -> Word {
        Word::from_slice(&self.0[..k.min(self.len())])
    }

    pub fn suffix_from(&self, k: usize) -> Word {
        Word::from_slice(&self.0[k.min(self.len())..])
    }

    /// Whether `other` occurs as a contiguous factor.
    pub fn contains_factor(&self, other: &Word) -> bool {
        other.is_empty() || self.0.windows(other.len()).any(|w| w == other.0.as_slice())
    }

    pub fn comparable(&self, other: &Word) -> bool {
        self.is_prefix_of(other) || other.is_prefix_of(self)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "ε");
        }
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 && self.0.iter().any(|&b| b > 9) {
                write!(f, ".")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

impl From<&[Letter]> for Word {
    fn from(letters: &[Letter]) -> Self {
        Word::from_slice(letters)
    }
}
