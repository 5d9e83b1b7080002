//! Single-term lookup against a knowledge base, plus the merged-pair and
//! split-pair hypotheses used during sentence correction.

use std::cmp::Ordering;
use std::collections::HashSet;

use serde::Serialize;

use crate::edit_distance::{deletions_into, dl_distance, osa};
use crate::lexicon::{DictionaryEntry, KnowledgeBase};
use crate::text::Term;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Candidate {
    pub term: Term,
    pub distance: usize,
    pub frequency: u64,
}

impl Candidate {
    fn from_entry(entry: &DictionaryEntry, distance: usize) -> Self {
        Candidate { term: entry.term.clone(), distance, frequency: entry.frequency }
    }

    /// Distance ascending, frequency descending, then term.
    pub fn rank(&self, other: &Self) -> Ordering {
        self.distance
            .cmp(&other.distance)
            .then_with(|| other.frequency.cmp(&self.frequency))
            .then_with(|| self.term.cmp(&other.term))
    }
}

/// Candidates for one query, best first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CandidateSet {
    pub query: String,
    pub candidates: Vec<Candidate>,
}

impl CandidateSet {
    pub fn best(&self) -> Option<&Candidate> {
        self.candidates.first()
    }

    pub fn is_empty(&self) -> bool {
        self.candidates.is_empty()
    }

    /// The query is itself a dictionary term.
    pub fn is_exact(&self) -> bool {
        self.best().is_some_and(|c| c.distance == 0 && c.term.as_str() == self.query)
    }
}

/// Looks `query` up in `kb`. The threshold is `round(len * k)` clamped to
/// the knowledge base depth.
pub fn lookup(query: &str, kb: &KnowledgeBase) -> CandidateSet {
    lookup_where(query, kb, |_| true)
}

/// Like [`lookup`], keeping only generators accepted by `keep`. The filter
/// runs before distance verification.
pub fn lookup_where<F>(query: &str, kb: &KnowledgeBase, keep: F) -> CandidateSet
where
    F: Fn(&DictionaryEntry) -> bool,
{
    let chars: Vec<char> = query.chars().collect();
    let threshold = kb.params().threshold(chars.len());
    let mut out = CandidateSet { query: query.to_string(), candidates: Vec::new() };

    let (min_len, max_len) = kb.generator_lengths();
    if kb.lexicon().is_empty() || chars.len() + threshold < min_len || chars.len() > max_len + threshold {
        return out;
    }

    let mut keys = HashSet::new();
    keys.insert(query.to_string());
    deletions_into(&chars, threshold, &mut keys);

    let mut seen: HashSet<u32> = HashSet::new();
    for key in &keys {
        for &posting in kb.postings(key) {
            if !seen.insert(posting.entry) {
                continue;
            }
            let entry = kb.generator(posting);
            if !keep(entry) {
                continue;
            }
            let gen: Vec<char> = entry.term.as_str().chars().collect();
            if gen.len().abs_diff(chars.len()) > threshold {
                continue;
            }
            let distance = osa(&chars, &gen);
            if distance <= threshold {
                out.candidates.push(Candidate::from_entry(entry, distance));
            }
        }
    }
    out.candidates.sort_by(Candidate::rank);
    out
}

/// Looks `query` up among the compound-lexicon entries only.
///
/// Long multiword queries expand to very many deletion keys while the
/// compound list is usually short, so when verifying each compound directly
/// is cheaper than expanding the query, the index is bypassed. Both routes
/// return the same candidates.
pub fn lookup_compounds(query: &str, kb: &KnowledgeBase) -> CandidateSet {
    let len = query.chars().count();
    let threshold = kb.params().threshold(len);
    if deletion_count_estimate(len, threshold) <= kb.compound_entries().len() as u64 {
        lookup_where(query, kb, |e| e.compound)
    } else {
        scan_compounds(query, kb)
    }
}

fn deletion_count_estimate(len: usize, depth: usize) -> u64 {
    let mut total = 1u64;
    let mut term = 1u64;
    for i in 1..=depth.min(len) {
        term = term * (len - i + 1) as u64 / i as u64;
        total = total.saturating_add(term);
    }
    total
}

pub(crate) fn scan_compounds(query: &str, kb: &KnowledgeBase) -> CandidateSet {
    let chars: Vec<char> = query.chars().collect();
    let threshold = kb.params().threshold(chars.len());
    let mut out = CandidateSet { query: query.to_string(), candidates: Vec::new() };
    for &id in kb.compound_entries() {
        let entry = kb.lexicon().entry(id as usize);
        let gen: Vec<char> = entry.term.as_str().chars().collect();
        if gen.len().abs_diff(chars.len()) > threshold {
            continue;
        }
        let distance = osa(&chars, &gen);
        if distance <= threshold {
            out.candidates.push(Candidate::from_entry(entry, distance));
        }
    }
    out.candidates.sort_by(Candidate::rank);
    out
}

/// Tests the hypothesis that `prev` and `cur` are one word split by a
/// stray space. Distances are measured on `"prev cur"`, space included.
pub fn merged_lookup(prev: &str, cur: &str, kb: &KnowledgeBase) -> CandidateSet {
    lookup(&format!("{prev} {cur}"), kb)
}

/// A two-word reading of a single token.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplitCandidate {
    pub left: Candidate,
    pub right: Candidate,
    /// Distance from the original token to `"left right"`.
    pub distance: usize,
    /// The smaller of the two frequencies.
    pub frequency: u64,
}

impl SplitCandidate {
    pub fn text(&self) -> String {
        format!("{} {}", self.left.term, self.right.term)
    }

    pub fn rank(&self, other: &Self) -> Ordering {
        self.distance
            .cmp(&other.distance)
            .then_with(|| other.frequency.cmp(&self.frequency))
            .then_with(|| self.text().cmp(&other.text()))
    }
}

/// Tries every internal split point of `token`. Each half is resolved to
/// its best candidate; the pair is kept when its distance to the original
/// token is within the token's own threshold.
pub fn split_lookup(token: &str, kb: &KnowledgeBase) -> Vec<SplitCandidate> {
    let chars: Vec<char> = token.chars().collect();
    if chars.len() < 2 {
        return Vec::new();
    }
    let threshold = kb.params().threshold(chars.len());
    let mut found: Vec<SplitCandidate> = Vec::new();
    let mut seen = HashSet::new();

    for cut in 1..chars.len() {
        let left: String = chars[..cut].iter().collect();
        let right: String = chars[cut..].iter().collect();
        let (Some(l), Some(r)) = (lookup(&left, kb).best().cloned(), lookup(&right, kb).best().cloned()) else {
            continue;
        };
        let joined = format!("{} {}", l.term, r.term);
        if !seen.insert(joined.clone()) {
            continue;
        }
        let distance = dl_distance(token, &joined);
        if distance <= threshold {
            let frequency = l.frequency.min(r.frequency);
            found.push(SplitCandidate { left: l, right: r, distance, frequency });
        }
    }
    found.sort_by(SplitCandidate::rank);
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::edit_distance::EditParams;
    use crate::lexicon::{build_kb, Lexicon, Role};

    fn kb(terms: &[(&str, u64)], max_edit: usize) -> KnowledgeBase {
        let lex = Lexicon::from_counts(Role::Dictionary, terms.iter().map(|(t, f)| (Term::parse(t).unwrap(), *f)));
        build_kb(lex, EditParams::with_max_edit(max_edit))
    }

    fn terms(set: &CandidateSet) -> Vec<(&str, usize)> {
        set.candidates.iter().map(|c| (c.term.as_str(), c.distance)).collect()
    }

    #[test]
    fn exact_term() {
        let kb = kb(&[("acqua", 120)], 3);
        let set = lookup("acqua", &kb);
        assert_eq!(set.candidates, [Candidate { term: Term::parse("acqua").unwrap(), distance: 0, frequency: 120 }]);
        assert!(set.is_exact());
    }

    #[test]
    fn smaller_distance_beats_frequency() {
        let kb = kb(&[("smartphone", 5000), ("smartbox", 40)], 3);
        let set = lookup("smartfon", &kb);
        assert_eq!(terms(&set), [("smartbox", 2), ("smartphone", 3)]);
        assert!(!set.is_exact());
    }

    #[test]
    fn smartfone_prefers_smartphone() {
        let kb = kb(&[("smartphone", 5000), ("smartbox", 40)], 3);
        assert_eq!(terms(&lookup("smartfone", &kb)), [("smartphone", 2), ("smartbox", 3)]);
    }

    #[test]
    fn frequency_breaks_distance_ties() {
        let kb = kb(&[("smartphone", 5000), ("smartbox", 40)], 3);
        let set = merged_lookup("smart", "fon", &kb);
        assert_eq!(set.query, "smart fon");
        assert_eq!(terms(&set), [("smartphone", 3), ("smartbox", 3)]);
    }

    #[test]
    fn out_of_reach_is_empty() {
        let kb = kb(&[("casa", 10), ("acqua", 10)], 3);
        assert!(merged_lookup("casa", "xyzzy", &kb).is_empty());
        assert!(lookup("zzzzzz", &kb).is_empty());
    }

    #[test]
    fn threshold_is_clamped_to_kb_depth() {
        // round(12 / 3) = 4, but the KB only reaches 1.
        let kb = kb(&[("abcdefghijkl", 1)], 1);
        assert!(lookup("abcdefghijzz", &kb).is_empty());
        assert_eq!(terms(&lookup("abcdefghijkz", &kb)), [("abcdefghijkl", 1)]);
    }

    #[test]
    fn lexicographic_tie_break() {
        let kb = kb(&[("bc", 5), ("ac", 5)], 1);
        assert_eq!(terms(&lookup("xc", &kb)), [("ac", 1), ("bc", 1)]);
    }

    #[test]
    fn compound_routes_agree() {
        let mut lex = Lexicon::from_counts(
            Role::Compounds,
            ["conto corrente", "casa editrice", "comunità europea", "all inclusive"]
                .iter()
                .map(|t| (Term::parse(t).unwrap(), 1)),
        );
        lex = crate::lexicon::merge_lexicons(
            &Lexicon::from_counts(Role::Dictionary, [(Term::parse("conto").unwrap(), 5)]),
            &lex,
        );
        let kb = build_kb(lex, EditParams::with_max_edit(4));
        for q in ["conto corente", "casa editrce", "cmnità erupea", "all inclusiv", "conto", "zzz"] {
            assert_eq!(lookup_compounds(q, &kb), lookup_where(q, &kb, |e| e.compound), "{q}");
            assert_eq!(scan_compounds(q, &kb), lookup_where(q, &kb, |e| e.compound), "{q}");
        }
    }

    #[test]
    fn split_inserts_a_space() {
        let kb = kb(&[("verso", 300), ("il", 900), ("acqua", 120)], 3);
        let splits = split_lookup("versoil", &kb);
        assert_eq!(splits[0].text(), "verso il");
        assert_eq!(splits[0].distance, 1);
        assert_eq!(splits[0].frequency, 300);
    }

    #[test]
    fn split_of_a_dictionary_word_never_beats_it() {
        let kb = kb(&[("acqua", 120), ("a", 800)], 3);
        assert!(split_lookup("acqua", &kb).iter().all(|s| s.distance > 0));
        assert!(split_lookup("xy", &self::kb(&[], 3)).is_empty());
    }
}
