//! Apostrophe restoration.
//!
//! Two shapes of error are handled: a fused token whose apostrophe was
//! dropped (`laltro`, `dllaltro`) and two tokens separated by a space where
//! an apostrophe belongs (`un amica`). Both are decided purely by dictionary
//! membership and distance; the dictionary lists elided forms such as
//! `l'acqua` as words of their own.

use serde::Serialize;

use crate::lexicon::KnowledgeBase;
use crate::lookup::{lookup, Candidate, CandidateSet};
use crate::text::{Term, APOSTROPHE};

/// A token with one apostrophe inserted after its `position`-th character.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DriftDetermination {
    pub text: String,
    pub position: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum NotEligible {
    #[error("token already contains an apostrophe")]
    HasApostrophe,
    #[error("token is shorter than two characters")]
    TooShort,
}

/// Slides one apostrophe through every internal position of `token`, left
/// to right: `len - 1` strings in total.
pub fn drift_determinations(token: &str) -> Result<Vec<DriftDetermination>, NotEligible> {
    if token.contains(APOSTROPHE) {
        return Err(NotEligible::HasApostrophe);
    }
    let chars: Vec<char> = token.chars().collect();
    if chars.len() < 2 {
        return Err(NotEligible::TooShort);
    }
    Ok((1..chars.len())
        .map(|position| {
            let mut text = String::with_capacity(token.len() + 1);
            text.extend(&chars[..position]);
            text.push(APOSTROPHE);
            text.extend(&chars[position..]);
            DriftDetermination { text, position }
        })
        .collect())
}

/// Outcome of [`correct_via_drift`]: the winning candidate and the
/// determination that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DriftCorrection {
    pub candidate: Candidate,
    pub determination: DriftDetermination,
}

/// Looks up every drift determination and returns the best elided form
/// across all of them. Only dictionary terms that contain an apostrophe
/// qualify.
pub fn correct_via_drift(token: &str, kb: &KnowledgeBase) -> Option<DriftCorrection> {
    let determinations = drift_determinations(token).ok()?;
    let mut best: Option<DriftCorrection> = None;
    for determination in determinations {
        let set = lookup(&determination.text, kb);
        let Some(candidate) = set.candidates.into_iter().find(|c| c.term.as_str().contains(APOSTROPHE)) else {
            continue;
        };
        let better = match &best {
            None => true,
            Some(current) => candidate.rank(&current.candidate).is_lt(),
        };
        if better {
            best = Some(DriftCorrection { candidate, determination });
        }
    }
    best
}

const VOWELS: &[char] = &['a', 'e', 'i', 'o', 'u', 'à', 'è', 'é', 'ì', 'í', 'ò', 'ó', 'ù', 'ú'];

pub fn is_vowel(c: char) -> bool {
    VOWELS.contains(&c)
}

/// A word ending in a vowel is never elided before a word starting with a
/// consonant (`la strada`, not `l'strada`).
pub fn phonotactically_joinable(prev: &str, cur: &str) -> bool {
    let ends_vowel = prev.chars().last().is_some_and(is_vowel);
    let starts_consonant = cur.chars().next().is_some_and(|c| c.is_alphabetic() && !is_vowel(c));
    !(ends_vowel && starts_consonant)
}

/// Members of a correction class: the looked-up candidates plus the raw
/// token itself.
fn members(set: &CandidateSet) -> Vec<&str> {
    let mut out: Vec<&str> = set.candidates.iter().map(|c| c.term.as_str()).collect();
    if !out.contains(&set.query.as_str()) {
        out.push(&set.query);
    }
    out
}

/// Joins two adjacent tokens with an apostrophe when some pairing of their
/// correction classes, `prev'cur`, is a dictionary term.
///
/// When both tokens are already dictionary words only their literal join is
/// tried, so a correct pair like `le acque` is never rewritten.
pub fn correct_pair(prev: &CandidateSet, cur: &CandidateSet, kb: &KnowledgeBase) -> Option<Candidate> {
    if prev.query.contains(APOSTROPHE) || cur.query.contains(APOSTROPHE) {
        return None;
    }
    let (left, right) = if prev.is_exact() && cur.is_exact() {
        (vec![prev.query.as_str()], vec![cur.query.as_str()])
    } else {
        (members(prev), members(cur))
    };

    let mut best: Option<Candidate> = None;
    for l in &left {
        for r in &right {
            if l.contains(APOSTROPHE) || r.contains(APOSTROPHE) || !phonotactically_joinable(l, r) {
                continue;
            }
            let joined = format!("{l}{APOSTROPHE}{r}");
            let Some(entry) = kb.lexicon().get(&joined) else {
                continue;
            };
            let candidate = Candidate { term: entry.term.clone(), distance: 0, frequency: entry.frequency };
            if best.as_ref().is_none_or(|b| candidate.rank(b).is_lt()) {
                best = Some(candidate);
            }
        }
    }
    best
}

/// Convenience wrapper over [`correct_pair`] for two raw tokens.
pub fn correct_pair_tokens(prev: &str, cur: &str, kb: &KnowledgeBase) -> Option<Candidate> {
    correct_pair(&lookup(prev, kb), &lookup(cur, kb), kb)
}

impl DriftCorrection {
    pub fn term(&self) -> &Term {
        &self.candidate.term
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::edit_distance::EditParams;
    use crate::lexicon::{build_kb, Lexicon, Role};

    fn kb(terms: &[(&str, u64)]) -> KnowledgeBase {
        let lex = Lexicon::from_counts(Role::Dictionary, terms.iter().map(|(t, f)| (Term::parse(t).unwrap(), *f)));
        build_kb(lex, EditParams::with_max_edit(3))
    }

    fn fixture() -> KnowledgeBase {
        kb(&[
            ("acqua", 900),
            ("acque", 300),
            ("l'acqua", 400),
            ("dell'acqua", 150),
            ("dell'altro", 120),
            ("l'altro", 500),
            ("altro", 700),
            ("le", 2000),
            ("la", 5000),
            ("strada", 250),
            ("un'amica", 30),
            ("un", 4000),
            ("amica", 90),
        ])
    }

    #[test]
    fn determinations_slide_left_to_right() {
        let texts: Vec<String> = drift_determinations("dllaltro").unwrap().into_iter().map(|d| d.text).collect();
        assert_eq!(texts, ["d'llaltro", "dl'laltro", "dll'altro", "dlla'ltro", "dllal'tro", "dllalt'ro", "dllaltr'o"]);
        assert_eq!(drift_determinations("ab").unwrap(), [DriftDetermination { text: "a'b".into(), position: 1 }]);
    }

    #[test]
    fn ineligible_tokens() {
        assert_eq!(drift_determinations("l'altro"), Err(NotEligible::HasApostrophe));
        assert_eq!(drift_determinations("a"), Err(NotEligible::TooShort));
    }

    #[test]
    fn drift_finds_dell_altro() {
        let kb = fixture();
        let found = correct_via_drift("dllaltro", &kb).unwrap();
        assert_eq!(found.term().as_str(), "dell'altro");
        assert_eq!(found.candidate.distance, 1);
        assert_eq!(found.determination.text, "dll'altro");
        assert_eq!(found.determination.position, 3);
    }

    #[test]
    fn drift_exact_hit() {
        let found = correct_via_drift("lacqua", &fixture()).unwrap();
        assert_eq!(found.term().as_str(), "l'acqua");
        assert_eq!(found.candidate.distance, 0);
        assert_eq!(found.determination.position, 1);
    }

    #[test]
    fn drift_without_candidates() {
        assert!(correct_via_drift("xqzp", &fixture()).is_none());
    }

    #[test]
    fn pairs() {
        let kb = fixture();
        let joined = correct_pair_tokens("l", "acqua", &kb).unwrap();
        assert_eq!((joined.term.as_str(), joined.distance), ("l'acqua", 0));
        assert_eq!(correct_pair_tokens("un", "amica", &kb).unwrap().term.as_str(), "un'amica");
        assert_eq!(correct_pair_tokens("le", "acque", &kb), None);
        assert_eq!(correct_pair_tokens("la", "strada", &kb), None);
    }

    #[test]
    fn phonotactic_filter() {
        assert!(!phonotactically_joinable("la", "strada"));
        assert!(phonotactically_joinable("dell", "acqua"));
        assert!(phonotactically_joinable("le", "acque"));
        assert!(!phonotactically_joinable("però", "casa"));
    }
}
