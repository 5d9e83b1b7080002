//! Frequency dictionaries, the compound-expression lexicon, bigram lists and
//! the deletion-expansion knowledge base built over them.

mod bigrams;
mod kb;

use std::collections::HashMap;
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::text::{decode, tokenize, Term};

pub use bigrams::{extract_bigrams, BigramList};
pub use kb::{build_kb, KnowledgeBase, Posting};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Role {
    /// Single words (and apostrophized forms) counted from a corpus.
    Dictionary,
    /// Multiword expressions.
    Compounds,
    /// Union of a dictionary and a compound lexicon.
    Merged,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DictionaryEntry {
    pub term: Term,
    pub frequency: u64,
    /// Comes from the compound lexicon.
    pub compound: bool,
}

/// A set of unique terms with absolute frequencies, kept sorted by term.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "LexiconRepr", into = "LexiconRepr")]
pub struct Lexicon {
    role: Role,
    entries: Vec<DictionaryEntry>,
    index: HashMap<String, usize>,
    max_compound_tokens: usize,
}

#[derive(Serialize, Deserialize)]
struct LexiconRepr {
    role: Role,
    entries: Vec<DictionaryEntry>,
}

impl From<LexiconRepr> for Lexicon {
    fn from(repr: LexiconRepr) -> Self {
        Lexicon::from_sorted(repr.role, repr.entries)
    }
}

impl From<Lexicon> for LexiconRepr {
    fn from(lex: Lexicon) -> Self {
        LexiconRepr { role: lex.role, entries: lex.entries }
    }
}

impl Lexicon {
    pub fn empty(role: Role) -> Self {
        Lexicon::from_sorted(role, Vec::new())
    }

    /// Builds a lexicon from `(term, frequency)` pairs. Repeated terms have
    /// their counts summed; zero counts are dropped.
    pub fn from_counts<I>(role: Role, counts: I) -> Self
    where
        I: IntoIterator<Item = (Term, u64)>,
    {
        let compound = role == Role::Compounds;
        let mut merged: HashMap<Term, u64> = HashMap::new();
        for (term, freq) in counts {
            *merged.entry(term).or_default() += freq;
        }
        let mut entries: Vec<DictionaryEntry> = merged
            .into_iter()
            .filter(|(_, f)| *f > 0)
            .map(|(term, frequency)| DictionaryEntry { term, frequency, compound })
            .collect();
        entries.sort_by(|a, b| a.term.cmp(&b.term));
        Lexicon::from_sorted(role, entries)
    }

    fn from_sorted(role: Role, entries: Vec<DictionaryEntry>) -> Self {
        let index = entries.iter().enumerate().map(|(i, e)| (e.term.as_str().to_string(), i)).collect();
        let max_compound_tokens = entries.iter().map(|e| e.term.token_count()).max().unwrap_or(0);
        Lexicon { role, entries, index, max_compound_tokens }
    }

    pub fn role(&self) -> Role {
        self.role
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[DictionaryEntry] {
        &self.entries
    }

    pub fn entry(&self, idx: usize) -> &DictionaryEntry {
        &self.entries[idx]
    }

    pub fn get(&self, term: &str) -> Option<&DictionaryEntry> {
        self.position(term).map(|i| &self.entries[i])
    }

    pub fn position(&self, term: &str) -> Option<usize> {
        self.index.get(term).copied()
    }

    pub fn contains(&self, term: &str) -> bool {
        self.index.contains_key(term)
    }

    pub fn frequency(&self, term: &str) -> Option<u64> {
        self.get(term).map(|e| e.frequency)
    }

    /// Largest token count over all entries.
    pub fn max_compound_tokens(&self) -> usize {
        self.max_compound_tokens
    }

    /// Entries ordered by descending frequency, then by term.
    pub fn by_frequency(&self) -> Vec<&DictionaryEntry> {
        let mut out: Vec<&DictionaryEntry> = self.entries.iter().collect();
        out.sort_by(|a, b| b.frequency.cmp(&a.frequency).then_with(|| a.term.cmp(&b.term)));
        out
    }

    /// Reads `term<TAB>frequency` lines. For the compound lexicon the
    /// frequency column is optional and defaults to 1.
    pub fn read_tsv<R: BufRead>(role: Role, reader: R) -> Result<Self> {
        let mut counts = Vec::new();
        for (n, line) in lines(reader) {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let malformed = |message: &str| Error::Malformed { line: n, message: message.to_string() };
            let (raw_term, raw_freq) = match line.split_once('\t') {
                Some((t, f)) => (t, Some(f)),
                None => (line.as_str(), None),
            };
            let frequency = match raw_freq {
                Some(f) => f
                    .trim()
                    .parse::<u64>()
                    .ok()
                    .filter(|&f| f > 0)
                    .ok_or_else(|| malformed("frequency must be a positive integer"))?,
                None if role == Role::Compounds => 1,
                None => return Err(malformed("expected term<TAB>frequency")),
            };
            let term = Term::parse(raw_term).map_err(|_| malformed("empty term"))?;
            counts.push((term, frequency));
        }
        Ok(Lexicon::from_counts(role, counts))
    }

    /// Writes `term<TAB>frequency` lines, most frequent first.
    pub fn write_tsv<W: Write>(&self, mut out: W) -> Result<()> {
        for entry in self.by_frequency() {
            writeln!(out, "{}\t{}", entry.term, entry.frequency)?;
        }
        out.flush()?;
        Ok(())
    }
}

/// Union of a base dictionary and a compound lexicon. On collision the larger
/// frequency is kept and the entry stays flagged as a compound.
pub fn merge_lexicons(dictionary: &Lexicon, compounds: &Lexicon) -> Lexicon {
    let mut merged: HashMap<&Term, DictionaryEntry> = HashMap::new();
    for entry in dictionary.entries.iter().chain(&compounds.entries) {
        let compound = entry.compound || compounds.contains(entry.term.as_str());
        merged
            .entry(&entry.term)
            .and_modify(|e| {
                e.frequency = e.frequency.max(entry.frequency);
                e.compound |= compound;
            })
            .or_insert_with(|| DictionaryEntry { compound, ..entry.clone() });
    }
    let mut entries: Vec<DictionaryEntry> = merged.into_values().collect();
    entries.sort_by(|a, b| a.term.cmp(&b.term));
    Lexicon::from_sorted(Role::Merged, entries)
}

/// Counts every token of a UTF-8 corpus. Apostrophized forms are single
/// terms; tokens containing digits are skipped.
pub fn ingest_corpus<R: BufRead>(reader: R) -> Result<Lexicon> {
    let mut counts: HashMap<String, u64> = HashMap::new();
    for_each_line(reader, |line| {
        for token in tokenize(line).tokens {
            if !token.opaque {
                *counts.entry(token.text).or_default() += 1;
            }
        }
    })?;
    let counts = counts.into_iter().filter_map(|(t, f)| Term::parse(&t).ok().map(|t| (t, f)));
    Ok(Lexicon::from_counts(Role::Dictionary, counts))
}

/// Reads raw lines, tracking byte offsets so invalid UTF-8 is reported
/// against the whole stream.
pub(crate) fn for_each_line<R: BufRead, F: FnMut(&str)>(mut reader: R, mut f: F) -> Result<()> {
    let mut buf = Vec::new();
    let mut offset = 0usize;
    loop {
        buf.clear();
        let read = reader.read_until(b'\n', &mut buf)?;
        if read == 0 {
            return Ok(());
        }
        let line = decode(&buf).map_err(|e| match e {
            Error::InvalidUtf8 { offset: local } => Error::InvalidUtf8 { offset: offset + local },
            other => other,
        })?;
        f(line.trim_end_matches(['\n', '\r']));
        offset += read;
    }
}

fn lines<R: BufRead>(reader: R) -> impl Iterator<Item = (usize, Result<String>)> {
    reader.lines().enumerate().map(|(i, l)| {
        (
            i + 1,
            l.map_err(|e| match e.kind() {
                std::io::ErrorKind::InvalidData => Error::Malformed { line: i + 1, message: "invalid UTF-8".into() },
                _ => Error::Io(e),
            }),
        )
    })
}
