//! Normalization and the shared tokenizer.
//!
//! The same tokenizer feeds corpus ingestion, bigram extraction, compound
//! expression matching and sentence correction, so a term is segmented the
//! same way everywhere it appears.

use std::fmt;

use serde::{Deserialize, Serialize};
use unicode_normalization::UnicodeNormalization;

use crate::error::{Error, Result};

pub const APOSTROPHE: char = '\'';

/// Lowercase, NFC-composed text with typographic apostrophes folded to `'`.
pub fn normalize(raw: &str) -> String {
    let folded: String = raw
        .nfc()
        .map(|c| match c {
            '\u{2019}' | '\u{2018}' | '\u{02BC}' | '`' | '\u{00B4}' => APOSTROPHE,
            c => c,
        })
        .collect();
    folded.to_lowercase().nfc().collect()
}

/// Decodes UTF-8, reporting the byte offset of the first invalid sequence.
pub fn decode(bytes: &[u8]) -> Result<&str> {
    std::str::from_utf8(bytes).map_err(|e| Error::InvalidUtf8 { offset: e.valid_up_to() })
}

/// A normalized dictionary term. May contain apostrophes and single
/// internal spaces.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Term(String);

impl Term {
    pub fn parse(raw: &str) -> Result<Term> {
        let norm = normalize(raw);
        let joined = norm.split_whitespace().collect::<Vec<_>>().join(" ");
        if joined.is_empty() {
            return Err(Error::EmptyTerm);
        }
        Ok(Term(joined))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn char_len(&self) -> usize {
        self.0.chars().count()
    }

    /// Number of space-separated tokens.
    pub fn token_count(&self) -> usize {
        self.0.split(' ').count()
    }

    pub fn into_string(self) -> String {
        self.0
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl AsRef<str> for Term {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Token {
    pub text: String,
    /// Contains a digit; never corrected.
    pub opaque: bool,
}

/// A tokenized line. `gaps[i]` is the text preceding token `i`;
/// `gaps[tokens.len()]` is whatever trails the last token.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sentence {
    pub raw: String,
    pub tokens: Vec<Token>,
    pub gaps: Vec<String>,
}

impl Sentence {
    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn texts(&self) -> Vec<&str> {
        self.tokens.iter().map(|t| t.text.as_str()).collect()
    }

    /// True when a sentence terminator (`.`, `!`, `?`) separates token `i`
    /// from token `i - 1`.
    pub fn breaks_before(&self, i: usize) -> bool {
        i > 0 && self.gaps[i].contains(['.', '!', '?'])
    }

    /// True when tokens `i - 1` and `i` are separated by whitespace only.
    pub fn adjacent(&self, i: usize) -> bool {
        i > 0 && self.gaps[i].chars().all(char::is_whitespace)
    }

    /// Segments of token indices that do not cross a sentence terminator.
    pub fn clauses(&self) -> Vec<std::ops::Range<usize>> {
        let mut out = Vec::new();
        let mut start = 0;
        for i in 1..self.tokens.len() {
            if self.breaks_before(i) {
                out.push(start..i);
                start = i;
            }
        }
        if start < self.tokens.len() {
            out.push(start..self.tokens.len());
        }
        out
    }
}

/// Splits on whitespace and punctuation. An apostrophe between two
/// alphanumeric characters stays inside its token, so `l'altro` is one token.
pub fn tokenize(raw: &str) -> Sentence {
    let norm = normalize(raw);
    let chars: Vec<char> = norm.chars().collect();
    let mut tokens = Vec::new();
    let mut gaps = Vec::new();
    let mut gap = String::new();
    let mut word = String::new();

    for (i, &c) in chars.iter().enumerate() {
        let inner_apostrophe =
            c == APOSTROPHE && !word.is_empty() && chars.get(i + 1).is_some_and(|n| n.is_alphanumeric());
        if c.is_alphanumeric() || inner_apostrophe {
            if word.is_empty() {
                gaps.push(std::mem::take(&mut gap));
            }
            word.push(c);
        } else {
            if !word.is_empty() {
                tokens.push(finish(std::mem::take(&mut word)));
            }
            gap.push(c);
        }
    }
    if !word.is_empty() {
        tokens.push(finish(word));
    }
    gaps.push(gap);

    Sentence { raw: raw.to_string(), tokens, gaps }
}

fn finish(text: String) -> Token {
    let opaque = text.chars().any(|c| c.is_numeric());
    Token { text, opaque }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keeps_apostrophe_joined_tokens() {
        assert_eq!(tokenize("tra l'altro").texts(), ["tra", "l'altro"]);
        assert_eq!(tokenize("tra l\u{2019}altro").texts(), ["tra", "l'altro"]);
    }

    #[test]
    fn lowercases_and_splits() {
        let s = tokenize("Lacqua score verso il basso");
        assert_eq!(s.texts(), ["lacqua", "score", "verso", "il", "basso"]);
    }

    #[test]
    fn empty_input() {
        let s = tokenize("");
        assert!(s.is_empty());
        assert_eq!(s.gaps, [""]);
    }

    #[test]
    fn punctuation_is_recorded_in_gaps() {
        let s = tokenize("  Ciao, mondo! 'sì'");
        assert_eq!(s.texts(), ["ciao", "mondo", "sì"]);
        assert_eq!(s.gaps, ["  ", ", ", "! '", "'"]);
        assert!(s.breaks_before(2));
        assert!(!s.breaks_before(1));
        assert!(!s.adjacent(1));
        assert_eq!(s.clauses(), vec![0..2, 2..3]);
    }

    #[test]
    fn digits_are_opaque() {
        let s = tokenize("ho 3 gatti e 2b");
        assert!(s.tokens[1].opaque);
        assert!(s.tokens[4].opaque);
        assert!(!s.tokens[2].opaque);
    }

    #[test]
    fn decomposed_accents_compose() {
        assert_eq!(tokenize("comunita\u{0300}").texts(), ["comunità"]);
        assert_eq!(Term::parse("Comunità   Europea ").unwrap().as_str(), "comunità europea");
        assert_eq!(Term::parse("comunità europea").unwrap().char_len(), 16);
    }

    #[test]
    fn term_rejects_blank() {
        assert!(Term::parse("   ").is_err());
    }

    #[test]
    fn invalid_utf8_offset() {
        match decode(b"casa \xff") {
            Err(Error::InvalidUtf8 { offset }) => assert_eq!(offset, 5),
            other => panic!("unexpected {other:?}"),
        }
    }
}
