//! Multiword expression recognition.
//!
//! Every contiguous n-gram of the sentence, for `n` up to the longest
//! compound in the lexicon, is looked up against the merged lexicon. Spans
//! that land on a compound entry become matches; each expression keeps its
//! closest span. Winning spans are then replaced one at a time by opaque
//! placeholders (`EP1`, `EP2`, ...) so that a longer expression containing an
//! already-replaced one still lines up with its span, e.g.
//! `[[presidenza del consiglio] dei ministri]`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::lexicon::KnowledgeBase;
use crate::lookup::lookup_compounds;
use crate::text::{Sentence, Term, Token};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Span {
    pub start: usize,
    pub n: usize,
}

impl Span {
    pub fn end(&self) -> usize {
        self.start + self.n
    }

    pub fn contains(&self, other: &Span) -> bool {
        self.start <= other.start && other.end() <= self.end()
    }

    pub fn overlaps(&self, other: &Span) -> bool {
        self.start < other.end() && other.start < self.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MweMatch {
    pub expression: Term,
    pub span: Span,
    /// The span's tokens joined by single spaces.
    pub text: String,
    pub distance: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("n-gram size {n} outside 1..={len}")]
pub struct BadNgramSize {
    pub n: usize,
    pub len: usize,
}

/// Largest n-gram worth enumerating: `min(sentence length, longest compound)`.
pub fn sup_bound(sentence_len: usize, max_compound_tokens: usize) -> usize {
    sentence_len.min(max_compound_tokens)
}

/// All `len - n + 1` contiguous spans of size `n`, left to right.
pub fn enumerate_ngrams(len: usize, n: usize) -> Result<Vec<Span>, BadNgramSize> {
    if n == 0 || n > len {
        return Err(BadNgramSize { n, len });
    }
    Ok((0..=len - n).map(|start| Span { start, n }).collect())
}

fn span_text(sentence: &Sentence, span: Span) -> String {
    sentence.tokens[span.start..span.end()].iter().map(|t| t.text.as_str()).collect::<Vec<_>>().join(" ")
}

/// Best span for every compound expression reachable from the sentence.
///
/// Spans crossing a sentence terminator are skipped. Among spans reaching
/// the same expression the smallest distance wins, then the shorter span,
/// then the leftmost.
pub fn match_expressions(sentence: &Sentence, kb: &KnowledgeBase) -> BTreeMap<Term, MweMatch> {
    let mut best: BTreeMap<Term, MweMatch> = BTreeMap::new();
    let sup = sup_bound(sentence.len(), kb.lexicon().max_compound_tokens());

    for n in 1..=sup {
        let spans = enumerate_ngrams(sentence.len(), n).expect("n within 1..=sup");
        for span in spans {
            if (span.start + 1..span.end()).any(|i| sentence.breaks_before(i)) {
                continue;
            }
            let text = span_text(sentence, span);
            let len = text.chars().count();
            if !kb.compound_length_near(len, kb.params().threshold(len)) {
                continue;
            }
            for candidate in lookup_compounds(&text, kb).candidates {
                let better = best
                    .get(&candidate.term)
                    .is_none_or(|m| (candidate.distance, span.n, span.start) < (m.distance, m.span.n, m.span.start));
                if better {
                    let m = MweMatch {
                        expression: candidate.term.clone(),
                        span,
                        text: text.clone(),
                        distance: candidate.distance,
                    };
                    best.insert(candidate.term, m);
                }
            }
        }
    }
    best
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(into = "String")]
pub struct Placeholder(pub usize);

impl fmt::Display for Placeholder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EP{}", self.0)
    }
}

impl From<Placeholder> for String {
    fn from(p: Placeholder) -> Self {
        p.to_string()
    }
}

/// A recognized expression as it appears in the final output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EpEntry {
    pub id: Placeholder,
    pub expression: Term,
    /// Span over the original sentence tokens.
    pub span: Span,
    /// Original text of the span.
    pub original: String,
    pub distance: usize,
}

/// One substitution, in the order it was applied.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DerivationStep {
    pub id: Placeholder,
    pub expression: Term,
    /// The replaced span, with earlier placeholders shown in place.
    pub token: String,
    pub distance: usize,
    /// The whole sentence after this substitution.
    pub sentence: String,
    /// Placeholders absorbed by this substitution.
    pub absorbs: Vec<Placeholder>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MweOutcome {
    /// The sentence with every outermost expression written out.
    #[serde(skip)]
    pub sentence: Sentence,
    /// Outermost expressions only, in substitution order.
    pub catalogue: Vec<EpEntry>,
    pub derivation: Vec<DerivationStep>,
    /// Matches dropped because they partially overlapped a better one.
    pub discarded: Vec<MweMatch>,
}

impl MweOutcome {
    pub fn corrected(&self) -> String {
        self.sentence.texts().join(" ")
    }
}

#[derive(Debug, Clone, Copy)]
enum Slot {
    Token(usize),
    Ep { id: usize, span: Span },
}

fn render(slots: &[Slot], sentence: &Sentence) -> String {
    slots
        .iter()
        .map(|s| match *s {
            Slot::Token(i) => sentence.tokens[i].text.clone(),
            Slot::Ep { id, .. } => Placeholder(id).to_string(),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Applies the winning matches to the sentence.
///
/// Partially overlapping matches are settled first: lower distance wins,
/// then the longer span, then the leftmost. The survivors are substituted in
/// order of distance and then span length, so an inner expression is
/// replaced before an equally close outer one and reappears inside it as a
/// placeholder. Only outermost expressions reach the catalogue.
pub fn resolve_and_substitute(sentence: &Sentence, matches: &BTreeMap<Term, MweMatch>) -> MweOutcome {
    let mut ranked: Vec<&MweMatch> = matches.values().collect();
    ranked.sort_by(|a, b| {
        (a.distance, std::cmp::Reverse(a.span.n), a.span.start, &a.expression).cmp(&(
            b.distance,
            std::cmp::Reverse(b.span.n),
            b.span.start,
            &b.expression,
        ))
    });

    let mut accepted: Vec<&MweMatch> = Vec::new();
    let mut discarded = Vec::new();
    for m in ranked {
        let conflict = accepted.iter().any(|a| {
            a.span == m.span || (a.span.overlaps(&m.span) && !a.span.contains(&m.span) && !m.span.contains(&a.span))
        });
        if conflict {
            discarded.push(m.clone());
        } else {
            accepted.push(m);
        }
    }
    accepted.sort_by(|a, b| {
        (a.distance, a.span.n, a.span.start, &a.expression).cmp(&(b.distance, b.span.n, b.span.start, &b.expression))
    });

    let mut slots: Vec<Slot> = (0..sentence.len()).map(Slot::Token).collect();
    let mut derivation = Vec::new();
    let mut entries: Vec<(EpEntry, bool)> = Vec::new();

    for m in accepted {
        let inside_existing = slots.iter().any(|s| matches!(s, Slot::Ep { span, .. } if span.contains(&m.span)));
        if inside_existing {
            continue;
        }
        let covered = |s: &Slot| match *s {
            Slot::Token(i) => m.span.start <= i && i < m.span.end(),
            Slot::Ep { span, .. } => m.span.contains(&span),
        };
        let first = slots.iter().position(covered).expect("span lies within the sentence");
        let last = slots.iter().rposition(covered).expect("span lies within the sentence");

        let id = entries.len() + 1;
        let token = render(&slots[first..=last], sentence);
        let absorbs: Vec<Placeholder> = slots[first..=last]
            .iter()
            .filter_map(|s| match *s {
                Slot::Ep { id, .. } => Some(Placeholder(id)),
                Slot::Token(_) => None,
            })
            .collect();
        for inner in &absorbs {
            entries[inner.0 - 1].1 = false;
        }
        slots.splice(first..=last, [Slot::Ep { id, span: m.span }]);

        derivation.push(DerivationStep {
            id: Placeholder(id),
            expression: m.expression.clone(),
            token,
            distance: m.distance,
            sentence: render(&slots, sentence),
            absorbs,
        });
        entries.push((
            EpEntry {
                id: Placeholder(id),
                expression: m.expression.clone(),
                span: m.span,
                original: m.text.clone(),
                distance: m.distance,
            },
            true,
        ));
    }

    let mut tokens = Vec::new();
    let mut gaps = Vec::new();
    for slot in &slots {
        match *slot {
            Slot::Token(i) => {
                gaps.push(sentence.gaps[i].clone());
                tokens.push(sentence.tokens[i].clone());
            }
            Slot::Ep { id, span } => {
                let expression = &entries[id - 1].0.expression;
                for (k, word) in expression.as_str().split(' ').enumerate() {
                    gaps.push(if k == 0 { sentence.gaps[span.start].clone() } else { " ".to_string() });
                    tokens.push(Token { text: word.to_string(), opaque: false });
                }
            }
        }
    }
    gaps.push(sentence.gaps[sentence.len()].clone());

    MweOutcome {
        sentence: Sentence { raw: sentence.raw.clone(), tokens, gaps },
        catalogue: entries.into_iter().filter(|(_, outer)| *outer).map(|(e, _)| e).collect(),
        derivation,
        discarded,
    }
}

/// Match and substitute in one call.
pub fn recognize(sentence: &Sentence, kb: &KnowledgeBase) -> MweOutcome {
    resolve_and_substitute(sentence, &match_expressions(sentence, kb))
}
