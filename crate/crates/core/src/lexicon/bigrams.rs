use std::collections::HashMap;
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use super::for_each_line;
use crate::error::{Error, Result};
use crate::text::{normalize, tokenize};

/// Adjacent word pairs observed in a corpus, with counts.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "Vec<(String, String, u64)>", into = "Vec<(String, String, u64)>")]
pub struct BigramList {
    pairs: HashMap<String, HashMap<String, u64>>,
}

impl From<Vec<(String, String, u64)>> for BigramList {
    fn from(rows: Vec<(String, String, u64)>) -> Self {
        let mut list = BigramList::default();
        for (a, b, f) in rows {
            list.add(a, b, f);
        }
        list
    }
}

impl From<BigramList> for Vec<(String, String, u64)> {
    fn from(list: BigramList) -> Self {
        list.sorted().into_iter().map(|(a, b, f)| (a.to_string(), b.to_string(), f)).collect()
    }
}

impl BigramList {
    pub fn add(&mut self, first: String, second: String, count: u64) {
        if count > 0 {
            *self.pairs.entry(first).or_default().entry(second).or_default() += count;
        }
    }

    pub fn frequency(&self, first: &str, second: &str) -> Option<u64> {
        self.pairs.get(first)?.get(second).copied()
    }

    pub fn contains(&self, first: &str, second: &str) -> bool {
        self.frequency(first, second).is_some()
    }

    pub fn len(&self) -> usize {
        self.pairs.values().map(HashMap::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.pairs.values().flat_map(HashMap::values).sum()
    }

    /// Pairs ordered by descending frequency, then lexicographically.
    pub fn sorted(&self) -> Vec<(&str, &str, u64)> {
        let mut rows: Vec<(&str, &str, u64)> = self
            .pairs
            .iter()
            .flat_map(|(a, next)| next.iter().map(move |(b, f)| (a.as_str(), b.as_str(), *f)))
            .collect();
        rows.sort_by(|x, y| y.2.cmp(&x.2).then_with(|| (x.0, x.1).cmp(&(y.0, y.1))));
        rows
    }

    /// Reads `first<TAB>second<TAB>frequency` lines.
    pub fn read_tsv<R: BufRead>(reader: R) -> Result<Self> {
        let mut list = BigramList::default();
        for (i, line) in reader.lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let malformed = |message: &str| Error::Malformed { line: i + 1, message: message.to_string() };
            let mut cols = line.split('\t');
            let (Some(a), Some(b), Some(f), None) = (cols.next(), cols.next(), cols.next(), cols.next()) else {
                return Err(malformed("expected first<TAB>second<TAB>frequency"));
            };
            let f: u64 = f
                .trim()
                .parse()
                .ok()
                .filter(|&f| f > 0)
                .ok_or_else(|| malformed("frequency must be a positive integer"))?;
            let (a, b) = (normalize(a.trim()), normalize(b.trim()));
            if a.is_empty() || b.is_empty() {
                return Err(malformed("empty term"));
            }
            list.add(a, b, f);
        }
        Ok(list)
    }

    pub fn write_tsv<W: Write>(&self, mut out: W) -> Result<()> {
        for (a, b, f) in self.sorted() {
            writeln!(out, "{a}\t{b}\t{f}")?;
        }
        out.flush()?;
        Ok(())
    }
}

/// Counts adjacent token pairs. Pairs never span a sentence terminator, a
/// blank line, or a token containing digits.
pub fn extract_bigrams<R: BufRead>(reader: R) -> Result<BigramList> {
    let mut list = BigramList::default();
    let mut carry: Option<String> = None;
    for_each_line(reader, |line| {
        let sentence = tokenize(line);
        if sentence.is_empty() {
            if line.trim().is_empty() || sentence.gaps[0].contains(['.', '!', '?']) {
                carry = None;
            }
            return;
        }
        if sentence.gaps[0].contains(['.', '!', '?']) {
            carry = None;
        }
        for (i, token) in sentence.tokens.iter().enumerate() {
            if sentence.breaks_before(i) || token.opaque {
                carry = None;
            }
            if token.opaque {
                continue;
            }
            if let Some(prev) = carry.take() {
                list.add(prev, token.text.clone(), 1);
            }
            carry = Some(token.text.clone());
        }
        if sentence.gaps[sentence.len()].contains(['.', '!', '?']) {
            carry = None;
        }
    })?;
    Ok(list)
}
