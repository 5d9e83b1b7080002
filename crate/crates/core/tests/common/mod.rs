//! Brute-force reference implementations, written independently of the
//! library code they check.
#![allow(dead_code)]

use std::collections::BTreeSet;

/// Restricted Damerau-Levenshtein (optimal string alignment), full table.
pub fn osa_distance(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    let mut d = vec![vec![0usize; b.len() + 1]; a.len() + 1];
    for (i, row) in d.iter_mut().enumerate() {
        row[0] = i;
    }
    for (j, cell) in d[0].iter_mut().enumerate() {
        *cell = j;
    }
    for i in 1..=a.len() {
        for j in 1..=b.len() {
            let cost = usize::from(a[i - 1] != b[j - 1]);
            let mut v = (d[i - 1][j] + 1).min(d[i][j - 1] + 1).min(d[i - 1][j - 1] + cost);
            if i > 1 && j > 1 && a[i - 1] == b[j - 2] && a[i - 2] == b[j - 1] {
                v = v.min(d[i - 2][j - 2] + 1);
            }
            d[i][j] = v;
        }
    }
    d[a.len()][b.len()]
}

/// Every subsequence obtained by dropping 1..=k positions, via bitmasks.
pub fn deletion_set(term: &str, k: usize) -> BTreeSet<String> {
    let chars: Vec<char> = term.chars().collect();
    let n = chars.len();
    assert!(n < 20, "oracle is exponential");
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << n) {
        let dropped = mask.count_ones() as usize;
        if dropped == 0 || dropped > k {
            continue;
        }
        let s: String = (0..n).filter(|i| mask & (1 << i) == 0).map(|i| chars[i]).collect();
        out.insert(s);
    }
    out
}

/// Terms within `threshold` of `query` by linear scan.
pub fn scan<'a>(query: &str, terms: impl IntoIterator<Item = &'a str>, threshold: usize) -> BTreeSet<String> {
    terms.into_iter().filter(|t| osa_distance(query, t) <= threshold).map(str::to_string).collect()
}
