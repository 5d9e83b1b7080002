use std::collections::{BTreeSet, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use super::{DictionaryEntry, Lexicon};
use crate::edit_distance::{deletions_into, EditParams};

/// One generator listed under a deletion key.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Posting {
    /// Position of the generator in the source lexicon.
    pub entry: u32,
    /// Characters removed from the generator to obtain the key.
    pub deletes: u8,
}

/// Maps every deletion variant of every lexicon term (and the term itself)
/// back to the terms that generate it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "KbRepr", into = "KbRepr")]
pub struct KnowledgeBase {
    params: EditParams,
    lexicon: Lexicon,
    index: HashMap<String, Vec<Posting>>,
    /// Shortest and longest generator length, in characters.
    lengths: (usize, usize),
    /// Character lengths of the compound-lexicon entries.
    compound_lengths: BTreeSet<usize>,
    compound_entries: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct KbRepr {
    params: EditParams,
    lexicon: Lexicon,
    index: Vec<(String, Vec<Posting>)>,
}

impl From<KbRepr> for KnowledgeBase {
    fn from(repr: KbRepr) -> Self {
        let (lengths, compound_lengths, compound_entries) = length_stats(&repr.lexicon);
        KnowledgeBase {
            params: repr.params,
            lexicon: repr.lexicon,
            index: repr.index.into_iter().collect(),
            lengths,
            compound_lengths,
            compound_entries,
        }
    }
}

impl From<KnowledgeBase> for KbRepr {
    fn from(kb: KnowledgeBase) -> Self {
        let mut index: Vec<(String, Vec<Posting>)> = kb.index.into_iter().collect();
        index.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        KbRepr { params: kb.params, lexicon: kb.lexicon, index }
    }
}

fn length_stats(lexicon: &Lexicon) -> ((usize, usize), BTreeSet<usize>, Vec<u32>) {
    let lens = lexicon.entries().iter().map(|e| e.term.char_len());
    let min = lens.clone().min().unwrap_or(0);
    let max = lens.max().unwrap_or(0);
    let compound = lexicon.entries().iter().filter(|e| e.compound).map(|e| e.term.char_len()).collect();
    let ids = (0..lexicon.len()).filter(|&i| lexicon.entry(i).compound).map(|i| i as u32).collect();
    ((min, max), compound, ids)
}

/// Expands every entry of `lexicon` to depth `params.max_edit()`.
///
/// Cost grows combinatorially with the depth: a term of length `L` yields
/// up to `sum(C(L, i))` keys for `i` in `1..=max_edit`.
pub fn build_kb(lexicon: Lexicon, params: EditParams) -> KnowledgeBase {
    let depth = params.max_edit().min(u8::MAX as usize);
    let mut index: HashMap<String, Vec<Posting>> = HashMap::new();
    let mut scratch = HashSet::new();

    for (i, entry) in lexicon.entries().iter().enumerate() {
        let entry_id = u32::try_from(i).expect("lexicon larger than u32::MAX entries");
        let chars: Vec<char> = entry.term.as_str().chars().collect();
        index.entry(entry.term.as_str().to_string()).or_default().push(Posting { entry: entry_id, deletes: 0 });

        scratch.clear();
        deletions_into(&chars, depth, &mut scratch);
        for key in scratch.drain() {
            let deletes = (chars.len() - key.chars().count()) as u8;
            index.entry(key).or_default().push(Posting { entry: entry_id, deletes });
        }
    }

    let (lengths, compound_lengths, compound_entries) = length_stats(&lexicon);
    KnowledgeBase { params, lexicon, index, lengths, compound_lengths, compound_entries }
}

impl KnowledgeBase {
    pub fn params(&self) -> &EditParams {
        &self.params
    }

    pub fn lexicon(&self) -> &Lexicon {
        &self.lexicon
    }

    pub fn postings(&self, key: &str) -> &[Posting] {
        self.index.get(key).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn generator(&self, posting: Posting) -> &DictionaryEntry {
        self.lexicon.entry(posting.entry as usize)
    }

    pub fn key_count(&self) -> usize {
        self.index.len()
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.index.keys().map(String::as_str)
    }

    /// Exact dictionary membership.
    pub fn contains(&self, term: &str) -> bool {
        self.lexicon.contains(term)
    }

    pub(crate) fn generator_lengths(&self) -> (usize, usize) {
        self.lengths
    }

    /// Positions of the compound-lexicon entries.
    pub(crate) fn compound_entries(&self) -> &[u32] {
        &self.compound_entries
    }

    /// Whether some compound entry has a length within `slack` of `len`.
    pub(crate) fn compound_length_near(&self, len: usize, slack: usize) -> bool {
        self.compound_lengths.range(len.saturating_sub(slack)..=len + slack).next().is_some()
    }
}
