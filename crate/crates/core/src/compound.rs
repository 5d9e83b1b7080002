//! Whole-sentence correction.
//!
//! Compound expressions are recognized first and their spans protected.
//! The remaining tokens are then corrected left to right with one token of
//! lookback: each token is kept, replaced by a candidate, re-read as an
//! elided form, split in two, merged with its predecessor, or joined to its
//! predecessor with an apostrophe.

use std::cmp::Reverse;

use serde::Serialize;

use crate::apostrophe::{correct_pair, correct_via_drift};
use crate::lexicon::{BigramList, KnowledgeBase};
use crate::lookup::{lookup, merged_lookup, split_lookup, CandidateSet};
use crate::mwe::{self, DerivationStep, EpEntry};
use crate::text::{tokenize, Sentence, APOSTROPHE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Resolution {
    /// Dictionary word, or nothing better was found.
    Kept,
    /// Replaced by a lookup candidate.
    Replaced,
    /// Joined with the previous token into one word.
    Merged,
    /// Split into two words.
    Split,
    /// Rewritten as an elided form, either from a fused token or by joining
    /// the previous token with an apostrophe.
    Apostrophized,
    /// Part of a recognized compound expression.
    Expression,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TokenDecision {
    /// First source token covered.
    pub index: usize,
    /// Number of source tokens covered.
    pub covers: usize,
    pub original: String,
    pub resolution: Resolution,
    pub result: String,
    pub distance: usize,
    /// Dictionary frequency of the result; 0 when the result is unknown.
    pub frequency: u64,
}

impl TokenDecision {
    fn kept(index: usize, token: &str, frequency: u64) -> Self {
        TokenDecision {
            index,
            covers: 1,
            original: token.to_string(),
            resolution: Resolution::Kept,
            result: token.to_string(),
            distance: 0,
            frequency,
        }
    }

    pub fn end(&self) -> usize {
        self.index + self.covers
    }

    /// Left unchanged without a dictionary entry.
    pub fn is_unknown(&self) -> bool {
        self.resolution == Resolution::Kept && self.frequency == 0
    }

    fn last_word(&self) -> &str {
        self.result.rsplit(' ').next().unwrap_or(&self.result)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorrectionResult {
    pub corrected: String,
    pub decisions: Vec<TokenDecision>,
    /// Outermost compound expressions found.
    pub catalogue: Vec<EpEntry>,
    /// Every expression substitution, nested ones included.
    pub derivation: Vec<DerivationStep>,
}

/// Immutable resources needed to correct sentences. Shareable across threads.
#[derive(Debug, Clone)]
pub struct Corrector {
    dictionary: KnowledgeBase,
    compounds: KnowledgeBase,
    bigrams: BigramList,
}

/// A resolution under consideration for one token.
#[derive(Debug, Clone)]
struct Proposal {
    resolution: Resolution,
    result: String,
    distance: usize,
    frequency: u64,
    attested: bool,
}

impl Proposal {
    fn key(&self) -> (usize, bool, Reverse<u64>, &str) {
        (self.distance, !self.attested, Reverse(self.frequency), &self.result)
    }
}

impl Corrector {
    /// `dictionary` indexes the base dictionary; `compounds` indexes the
    /// merged lexicon including compound expressions.
    pub fn new(dictionary: KnowledgeBase, compounds: KnowledgeBase, bigrams: BigramList) -> Self {
        Corrector { dictionary, compounds, bigrams }
    }

    pub fn dictionary(&self) -> &KnowledgeBase {
        &self.dictionary
    }

    pub fn compounds(&self) -> &KnowledgeBase {
        &self.compounds
    }

    pub fn bigrams(&self) -> &BigramList {
        &self.bigrams
    }

    fn attested(&self, prev: Option<&str>, word: &str) -> bool {
        let first = word.split(' ').next().unwrap_or(word);
        prev.is_some_and(|p| self.bigrams.contains(p, first))
    }

    /// Best single-token resolution among plain candidates, apostrophe
    /// drift and two-word splits.
    fn best_single(&self, token: &str, set: &CandidateSet, prev_word: Option<&str>) -> Option<Proposal> {
        let mut proposals: Vec<Proposal> = set
            .candidates
            .iter()
            .map(|c| Proposal {
                resolution: Resolution::Replaced,
                result: c.term.to_string(),
                distance: c.distance,
                frequency: c.frequency,
                attested: self.attested(prev_word, c.term.as_str()),
            })
            .collect();
        if let Some(drift) = correct_via_drift(token, &self.dictionary) {
            let c = drift.candidate;
            proposals.push(Proposal {
                resolution: Resolution::Apostrophized,
                attested: self.attested(prev_word, c.term.as_str()),
                result: c.term.into_string(),
                distance: c.distance,
                frequency: c.frequency,
            });
        }
        for split in split_lookup(token, &self.dictionary) {
            let result = split.text();
            proposals.push(Proposal {
                resolution: Resolution::Split,
                attested: self.attested(prev_word, &result),
                result,
                distance: split.distance,
                frequency: split.frequency,
            });
        }
        proposals.into_iter().min_by(|a, b| a.key().cmp(&b.key()))
    }

    fn decide(index: usize, token: &str, proposal: Proposal) -> TokenDecision {
        TokenDecision {
            index,
            covers: 1,
            original: token.to_string(),
            resolution: proposal.resolution,
            result: proposal.result,
            distance: proposal.distance,
            frequency: proposal.frequency,
        }
    }

    /// Resolves a token with no usable predecessor.
    pub fn correct_first_token(&self, index: usize, token: &str) -> TokenDecision {
        let set = lookup(token, &self.dictionary);
        self.first_with(index, token, &set)
    }

    fn first_with(&self, index: usize, token: &str, set: &CandidateSet) -> TokenDecision {
        if set.is_exact() {
            return TokenDecision::kept(index, token, set.candidates[0].frequency);
        }
        match self.best_single(token, set, None) {
            Some(p) => Self::decide(index, token, p),
            None => TokenDecision::kept(index, token, 0),
        }
    }

    /// Resolves a token given the decision for the token just before it.
    ///
    /// `prev_set` is the lookup of the previous source token; pass it only
    /// when that token may still be joined with this one (same clause,
    /// separated by whitespace alone, itself a single kept or replaced
    /// token). When the returned decision covers two tokens it replaces
    /// `prev`.
    pub fn correct_token(
        &self,
        index: usize,
        token: &str,
        prev: &TokenDecision,
        prev_set: Option<&CandidateSet>,
    ) -> TokenDecision {
        let set = lookup(token, &self.dictionary);
        self.next_with(index, token, &set, prev, prev_set)
    }

    fn next_with(
        &self,
        index: usize,
        token: &str,
        set: &CandidateSet,
        prev: &TokenDecision,
        prev_set: Option<&CandidateSet>,
    ) -> TokenDecision {
        let joined = |resolution, result: String, distance, frequency| TokenDecision {
            index: prev.index,
            covers: prev.covers + 1,
            original: format!("{} {}", prev.original, token),
            resolution,
            result,
            distance,
            frequency,
        };

        if let Some(prev_set) = prev_set {
            if let Some(c) = correct_pair(prev_set, set, &self.dictionary) {
                return joined(Resolution::Apostrophized, c.term.into_string(), 0, c.frequency);
            }
        }
        if set.is_exact() {
            return TokenDecision::kept(index, token, set.candidates[0].frequency);
        }

        let single = self.best_single(token, set, Some(prev.last_word()));
        if let Some(prev_set) = prev_set {
            let merged = merged_lookup(&prev_set.query, token, &self.dictionary);
            if let Some(m) = merged.best() {
                let prev_cost = if prev.is_unknown() { prev.original.chars().count() } else { prev.distance };
                let cur_cost = single.as_ref().map_or(token.chars().count(), |p| p.distance);
                if m.distance <= prev_cost + cur_cost {
                    return joined(Resolution::Merged, m.term.to_string(), m.distance, m.frequency);
                }
            }
        }
        match single {
            Some(p) => Self::decide(index, token, p),
            None => TokenDecision::kept(index, token, 0),
        }
    }

    /// Corrects one line of text.
    pub fn correct(&self, raw: &str) -> CorrectionResult {
        let sentence = tokenize(raw);
        let expressions = mwe::recognize(&sentence, &self.compounds);
        let mut spans: Vec<&EpEntry> = expressions.catalogue.iter().collect();
        spans.sort_by_key(|ep| ep.span.start);
        let mut protected = spans.into_iter().peekable();

        let mut decisions: Vec<TokenDecision> = Vec::new();
        // Lookup of the previous source token while it is still joinable.
        let mut prev_set: Option<CandidateSet> = None;
        let mut i = 0;
        while i < sentence.len() {
            if let Some(ep) = protected.next_if(|ep| ep.span.start == i) {
                decisions.push(TokenDecision {
                    index: i,
                    covers: ep.span.n,
                    original: ep.original.clone(),
                    resolution: Resolution::Expression,
                    result: ep.expression.to_string(),
                    distance: ep.distance,
                    frequency: self.compounds.lexicon().frequency(ep.expression.as_str()).unwrap_or(0),
                });
                prev_set = None;
                i = ep.span.end();
                continue;
            }

            let token = &sentence.tokens[i];
            if token.opaque {
                decisions.push(TokenDecision::kept(i, &token.text, 0));
                prev_set = None;
                i += 1;
                continue;
            }

            let set = lookup(&token.text, &self.dictionary);
            let starts_clause = decisions.last().is_none_or(|d| d.end() != i) || sentence.breaks_before(i);
            let decision = if starts_clause {
                self.first_with(i, &token.text, &set)
            } else {
                let prev = decisions.last().expect("checked above");
                let joinable = sentence.adjacent(i) && prev_set.is_some();
                self.next_with(i, &token.text, &set, prev, if joinable { prev_set.as_ref() } else { None })
            };

            if decision.covers > 1 && decision.resolution != Resolution::Expression {
                decisions.pop();
            }
            let reusable = decision.covers == 1
                && matches!(decision.resolution, Resolution::Kept | Resolution::Replaced)
                && !token.text.contains(APOSTROPHE);
            prev_set = reusable.then_some(set);
            decisions.push(decision);
            i += 1;
        }

        CorrectionResult {
            corrected: assemble(&sentence, &decisions),
            decisions,
            catalogue: expressions.catalogue,
            derivation: expressions.derivation,
        }
    }
}

/// Rebuilds the text from the decisions, keeping the original punctuation
/// and spacing between them.
fn assemble(sentence: &Sentence, decisions: &[TokenDecision]) -> String {
    let mut out = String::new();
    for d in decisions {
        out.push_str(&sentence.gaps[d.index]);
        out.push_str(&d.result);
    }
    out.push_str(&sentence.gaps[sentence.len()]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::edit_distance::EditParams;
    use crate::lexicon::{build_kb, extract_bigrams, merge_lexicons, Lexicon, Role};
    use crate::text::Term;

    fn corrector(words: &[(&str, u64)], compounds: &[(&str, u64)], corpus: &str) -> Corrector {
        let d = Lexicon::from_counts(Role::Dictionary, words.iter().map(|(t, f)| (Term::parse(t).unwrap(), *f)));
        let ec = Lexicon::from_counts(Role::Compounds, compounds.iter().map(|(t, f)| (Term::parse(t).unwrap(), *f)));
        let g = merge_lexicons(&d, &ec);
        Corrector::new(
            build_kb(d, EditParams::with_max_edit(3)),
            build_kb(g, EditParams::with_max_edit(4)),
            extract_bigrams(corpus.as_bytes()).unwrap(),
        )
    }

    fn small() -> Corrector {
        corrector(
            &[
                ("acqua", 900),
                ("l'acqua", 400),
                ("scorre", 80),
                ("scopre", 120),
                ("verso", 300),
                ("il", 9000),
                ("basso", 150),
                ("casa", 700),
                ("smartphone", 5000),
                ("smartbox", 40),
            ],
            &[("conto corrente", 10), ("all inclusive", 4)],
            "l'acqua scorre verso il basso",
        )
    }

    #[test]
    fn first_token_cases() {
        let c = small();
        let d = c.correct_first_token(0, "lacqua");
        assert_eq!((d.resolution, d.result.as_str(), d.distance), (Resolution::Apostrophized, "l'acqua", 0));
        let d = c.correct_first_token(0, "acqua");
        assert_eq!((d.resolution, d.result.as_str(), d.distance), (Resolution::Kept, "acqua", 0));
        let d = c.correct_first_token(0, "aqua");
        assert_eq!((d.resolution, d.result.as_str(), d.distance), (Resolution::Replaced, "acqua", 1));
        let d = c.correct_first_token(0, "zzzzzz");
        assert!(d.is_unknown());
    }

    #[test]
    fn bigram_harmony_breaks_ties() {
        let c = small();
        let prev = TokenDecision::kept(0, "l'acqua", 400);
        let d = c.correct_token(1, "score", &prev, None);
        assert_eq!((d.result.as_str(), d.distance), ("scorre", 1));
        // Without the attested pair, frequency decides.
        let prev = TokenDecision::kept(0, "casa", 700);
        assert_eq!(c.correct_token(1, "score", &prev, None).result, "scopre");
    }

    #[test]
    fn both_correct_stays() {
        let c = small();
        let prev = TokenDecision::kept(0, "verso", 300);
        let set = lookup("verso", c.dictionary());
        let d = c.correct_token(1, "il", &prev, Some(&set));
        assert_eq!((d.resolution, d.result.as_str()), (Resolution::Kept, "il"));
    }

    #[test]
    fn pair_joins_with_apostrophe() {
        let c = small();
        let prev = TokenDecision::kept(0, "l", 0);
        let set = lookup("l", c.dictionary());
        let d = c.correct_token(1, "acqua", &prev, Some(&set));
        assert_eq!((d.resolution, d.result.as_str(), d.index, d.covers), (Resolution::Apostrophized, "l'acqua", 0, 2));
    }

    #[test]
    fn merge_with_previous() {
        let c = small();
        let r = c.correct("smart fon");
        assert_eq!(r.corrected, "smartphone");
        assert_eq!(r.decisions.len(), 1);
        assert_eq!(r.decisions[0].resolution, Resolution::Merged);
        assert_eq!(r.decisions[0].distance, 3);
    }

    #[test]
    fn no_merge_across_punctuation() {
        let r = small().correct("smart, fon");
        assert!(r.decisions.iter().all(|d| d.covers == 1));
    }

    #[test]
    fn intro_sentence() {
        let r = small().correct("Lacqua score verso il basso");
        assert_eq!(r.corrected, "l'acqua scorre verso il basso");
    }

    #[test]
    fn protected_expression_is_untouched() {
        let r = small().correct("all inclusive per la casa");
        assert_eq!(r.decisions[0].resolution, Resolution::Expression);
        assert_eq!(r.decisions[0].result, "all inclusive");
        assert_eq!(r.catalogue.len(), 1);
    }

    #[test]
    fn punctuation_survives() {
        let r = small().correct("Lacqua, verso il basso!");
        assert_eq!(r.corrected, "l'acqua, verso il basso!");
        assert_eq!(small().correct("").corrected, "");
    }
}
