//! Distance and deletion-neighborhood primitives.
//!
//! Everything here works on Unicode scalar values, so an accented letter
//! such as `à` counts as one character. Apostrophes and spaces are ordinary
//! characters.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Optimal string alignment distance: insertions, deletions, substitutions
/// and transpositions of adjacent characters, no substring edited twice.
pub fn dl_distance(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    osa(&a, &b)
}

pub(crate) fn osa(a: &[char], b: &[char]) -> usize {
    if a.is_empty() {
        return b.len();
    }
    if b.is_empty() {
        return a.len();
    }

    let width = b.len() + 1;
    // Three rolling rows: i-2, i-1, i.
    let mut two_back = vec![0usize; width];
    let mut prev: Vec<usize> = (0..width).collect();
    let mut cur = vec![0usize; width];

    for i in 1..=a.len() {
        cur[0] = i;
        for j in 1..=b.len() {
            let cost = usize::from(a[i - 1] != b[j - 1]);
            let mut best = (prev[j] + 1).min(cur[j - 1] + 1).min(prev[j - 1] + cost);
            if i > 1 && j > 1 && a[i - 1] == b[j - 2] && a[i - 2] == b[j - 1] {
                best = best.min(two_back[j - 2] + 1);
            }
            cur[j] = best;
        }
        std::mem::swap(&mut two_back, &mut prev);
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}

/// All distinct strings reachable by removing between 1 and `max_deletes`
/// characters from `term`. The term itself is never part of the result.
pub fn deletions(term: &str, max_deletes: usize) -> HashSet<String> {
    let chars: Vec<char> = term.chars().collect();
    let mut out = HashSet::new();
    deletions_into(&chars, max_deletes, &mut out);
    out
}

/// Breadth-first expansion; each level removes one more character from the
/// distinct strings of the previous level.
pub(crate) fn deletions_into(chars: &[char], max_deletes: usize, out: &mut HashSet<String>) {
    let depth = max_deletes.min(chars.len());
    let mut frontier: Vec<Vec<char>> = vec![chars.to_vec()];
    for _ in 0..depth {
        let mut next = Vec::new();
        for word in &frontier {
            for skip in 0..word.len() {
                // Removing either of two equal neighbours gives the same string.
                if skip > 0 && word[skip] == word[skip - 1] {
                    continue;
                }
                let mut shorter = Vec::with_capacity(word.len() - 1);
                shorter.extend_from_slice(&word[..skip]);
                shorter.extend_from_slice(&word[skip + 1..]);
                let key: String = shorter.iter().collect();
                if out.insert(key) {
                    next.push(shorter);
                }
            }
        }
        frontier = next;
    }
}

/// Parameters governing how far a lookup may reach.
///
/// `k` scales the per-query threshold with the query length; `max_edit` is
/// the deletion depth of the knowledge base and caps every threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EditParams {
    k: Ratio<u32>,
    max_edit: usize,
}

impl EditParams {
    pub const DEFAULT_DICT_MAX_EDIT: usize = 3;
    pub const DEFAULT_COMPOUND_MAX_EDIT: usize = 4;

    pub fn new(k: Ratio<u32>, max_edit: usize) -> Result<Self, Error> {
        if *k.numer() == 0 || k > Ratio::from_integer(1) {
            return Err(Error::InvalidParams(format!("k must lie in (0, 1], got {k}")));
        }
        Ok(EditParams { k, max_edit })
    }

    /// k = 1/3 with the given deletion depth.
    pub fn with_max_edit(max_edit: usize) -> Self {
        EditParams { k: Ratio::new(1, 3), max_edit }
    }

    pub fn k(&self) -> Ratio<u32> {
        self.k
    }

    pub fn max_edit(&self) -> usize {
        self.max_edit
    }

    /// Per-query threshold: `length * k` rounded half up, clamped to `max_edit`.
    pub fn threshold(&self, length: usize) -> usize {
        edit_threshold(length, self)
    }
}

impl Default for EditParams {
    fn default() -> Self {
        EditParams::with_max_edit(Self::DEFAULT_DICT_MAX_EDIT)
    }
}

impl fmt::Display for EditParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k={} max_edit={}", self.k, self.max_edit)
    }
}

/// `min(round_half_up(length * k), max_edit)`.
pub fn edit_threshold(length: usize, params: &EditParams) -> usize {
    let num = *params.k.numer() as u64;
    let den = *params.k.denom() as u64;
    let scaled = (2 * length as u64 * num + den) / (2 * den);
    (scaled as usize).min(params.max_edit)
}

/// Parses `k` either as a fraction (`1/3`) or a decimal (`0.33`).
pub fn parse_k(raw: &str) -> Result<Ratio<u32>, Error> {
    let raw = raw.trim();
    let bad = || Error::InvalidParams(format!("cannot parse k from {raw:?}"));
    if raw.contains('/') {
        return Ratio::<u32>::from_str(raw).map_err(|_| bad());
    }
    let (int_part, frac_part) = raw.split_once('.').unwrap_or((raw, ""));
    if frac_part.len() > 6 || (int_part.is_empty() && frac_part.is_empty()) {
        return Err(bad());
    }
    let den = 10u32.pow(frac_part.len() as u32);
    let int: u32 = if int_part.is_empty() { 0 } else { int_part.parse().map_err(|_| bad())? };
    let frac: u32 = if frac_part.is_empty() { 0 } else { frac_part.parse().map_err(|_| bad())? };
    let numer = int.checked_mul(den).and_then(|v| v.checked_add(frac)).ok_or_else(bad)?;
    Ok(Ratio::new(numer, den))
}
