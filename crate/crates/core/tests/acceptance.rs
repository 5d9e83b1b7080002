//! One line per acceptance criterion. Exits non-zero if any fails.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;

use correttore::apostrophe::{correct_pair_tokens, correct_via_drift};
use correttore::mwe::enumerate_ngrams;
use correttore::{
    build_kb, bundled, deletions, dl_distance, edit_threshold, lookup, merged_lookup, tokenize, EditParams,
    KnowledgeBase, Lexicon, Ratio, Role, Term,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const SENTENCE: &str = "aspettiamo la risposta dlla cmnità erupea e della presidenza del cosniglio dei ministri";

type Outcome = Result<String, String>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn dictionary_kb() -> KnowledgeBase {
    build_kb(bundled::dictionary(), EditParams::with_max_edit(EditParams::DEFAULT_DICT_MAX_EDIT))
}

fn deletion_expansion() -> Outcome {
    let got: BTreeSet<String> = deletions("acqua", 1).into_iter().collect();
    let want: BTreeSet<String> = ["cqua", "aqua", "acua", "acqa", "acqu"].into_iter().map(String::from).collect();
    let oracle = common::deletion_set("acqua", 1);
    check(got == want && got == oracle, format!("{got:?}"))
}

fn distances() -> Outcome {
    let cases = [
        ("smartfon", "smartphone", 3),
        ("smartfon", "smartbox", 2),
        ("cmnità erupea", "comunità europea", 4),
        ("presidenza del cosniglio", "presidenza del consiglio", 1),
        ("presidenza del cosniglio dei ministri", "presidenza del consiglio dei ministri", 1),
    ];
    let bad: Vec<String> = cases
        .iter()
        .filter_map(|&(a, b, d)| {
            let got = dl_distance(a, b);
            let oracle = common::osa_distance(a, b);
            (got != d || oracle != d).then(|| format!("dl({a},{b})={got} oracle={oracle} want {d}"))
        })
        .collect();
    check(bad.is_empty(), if bad.is_empty() { "5/5 exact".into() } else { bad.join("; ") })
}

fn lookup_ranking() -> Outcome {
    let kb = dictionary_kb();
    let smartphone = kb.lexicon().frequency("smartphone").unwrap_or(0);
    let smartbox = kb.lexicon().frequency("smartbox").unwrap_or(0);
    let first = |set: correttore::CandidateSet| set.best().map(|c| c.term.as_str().to_string()).unwrap_or_default();
    let a = first(lookup("smartfon", &kb));
    let b = first(lookup("smartfone", &kb));
    let c = first(merged_lookup("smart", "fon", &kb));
    check(
        smartphone > 10 * smartbox && a == "smartbox" && b == "smartphone" && c == "smartphone",
        format!("smartfon->{a} smartfone->{b} 'smart fon'->{c} (freq {smartphone} vs {smartbox})"),
    )
}

fn threshold_formula() -> Outcome {
    let table = [0, 1, 1, 1, 2, 2, 2, 3, 3, 3, 4, 4, 4, 5, 5, 5, 6, 6, 6, 7, 7, 7, 8, 8, 8, 9, 9, 9, 10, 10];
    let eight = edit_threshold(8, &EditParams::with_max_edit(3));
    let unbounded = EditParams::with_max_edit(usize::MAX);
    let mismatch: Vec<usize> = (1..=30).filter(|&l| edit_threshold(l, &unbounded) != table[l - 1]).collect();
    check(eight == 3 && mismatch.is_empty(), format!("L=8 -> {eight}; table mismatches at {mismatch:?}"))
}

fn apostrophe_drift() -> Outcome {
    let kb = dictionary_kb();
    let drift = correct_via_drift("dllaltro", &kb).map(|d| (d.candidate.term.into_string(), d.candidate.distance));
    let l_acqua = correct_pair_tokens("l", "acqua", &kb).map(|c| c.term.into_string());
    let le_acque = correct_pair_tokens("le", "acque", &kb);
    let la_strada = correct_pair_tokens("la", "strada", &kb);
    check(
        drift == Some(("dell'altro".into(), 1))
            && l_acqua.as_deref() == Some("l'acqua")
            && le_acque.is_none()
            && la_strada.is_none(),
        format!("dllaltro->{drift:?} (l,acqua)->{l_acqua:?} (le,acque)->{le_acque:?} (la,strada)->{la_strada:?}"),
    )
}

fn expressions_end_to_end() -> Outcome {
    let result = bundled::corrector().correct(SENTENCE);
    let want = "aspettiamo la risposta della comunità europea e della presidenza del consiglio dei ministri";
    let steps: Vec<(String, String, usize)> =
        result.derivation.iter().map(|s| (s.id.to_string(), s.token.clone(), s.distance)).collect();
    let incremental = result.derivation.len() >= 2
        && result.derivation[0].expression.as_str() == "presidenza del consiglio"
        && result.derivation[1].token == "EP1 dei ministri"
        && result.derivation[1].sentence.contains("EP2")
        && !result.derivation[1].sentence.contains("EP1");
    check(
        result.corrected == want && result.catalogue.len() == 2 && incremental,
        format!("'{}' eps={} derivation={steps:?}", result.corrected, result.catalogue.len()),
    )
}

fn span_enumeration() -> Outcome {
    let len = tokenize(SENTENCE).len();
    let counts: Vec<usize> = [2, 3, 5].iter().map(|&n| enumerate_ngrams(len, n).map_or(0, |s| s.len())).collect();
    check(len == 13 && counts == [12, 11, 9], format!("tokens={len} n=2/3/5 -> {counts:?}"))
}

fn random_lexicon(rng: &mut StdRng) -> Vec<String> {
    const ALPHABET: &[char] = &['a', 'b', 'c', 'd', 'e', 'f', 'g', 'h'];
    let size = rng.gen_range(1..=200);
    let mut terms = BTreeSet::new();
    while terms.len() < size {
        let len = rng.gen_range(3..=10);
        terms.insert((0..len).map(|_| ALPHABET[rng.gen_range(0..ALPHABET.len())]).collect::<String>());
    }
    terms.into_iter().collect()
}

fn random_query(rng: &mut StdRng, terms: &[String]) -> String {
    const ALPHABET: &[char] = &['a', 'b', 'c', 'd', 'e', 'f', 'g', 'h'];
    if rng.gen_bool(0.5) {
        let len = rng.gen_range(1..=12);
        return (0..len).map(|_| ALPHABET[rng.gen_range(0..ALPHABET.len())]).collect();
    }
    let mut chars: Vec<char> = terms[rng.gen_range(0..terms.len())].chars().collect();
    for _ in 0..rng.gen_range(0..=3) {
        match rng.gen_range(0..4) {
            0 if chars.len() > 1 => {
                chars.remove(rng.gen_range(0..chars.len()));
            }
            1 => chars.insert(rng.gen_range(0..=chars.len()), ALPHABET[rng.gen_range(0..ALPHABET.len())]),
            2 => {
                let i = rng.gen_range(0..chars.len());
                chars[i] = ALPHABET[rng.gen_range(0..ALPHABET.len())];
            }
            _ if chars.len() > 1 => {
                let i = rng.gen_range(0..chars.len() - 1);
                chars.swap(i, i + 1);
            }
            _ => {}
        }
    }
    chars.into_iter().collect()
}

fn oracle_equivalence() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_ab1e);
    let mut compared = 0usize;
    let mut hits = 0usize;
    for lexicon_no in 0..50 {
        let terms = random_lexicon(&mut rng);
        let lex = Lexicon::from_counts(
            Role::Dictionary,
            terms.iter().enumerate().map(|(i, t)| (Term::parse(t).unwrap(), i as u64 + 1)),
        );
        let kbs: Vec<(usize, KnowledgeBase)> = [1, 2]
            .into_iter()
            .map(|t| (t, build_kb(lex.clone(), EditParams::new(Ratio::new(1, 1), t).unwrap())))
            .collect();
        for _ in 0..500 {
            let query = random_query(&mut rng, &terms);
            for (threshold, kb) in &kbs {
                let got: BTreeSet<String> =
                    lookup(&query, kb).candidates.into_iter().map(|c| c.term.into_string()).collect();
                // k = 1: the threshold is the query length, capped at the depth.
                let effective = (*threshold).min(query.chars().count());
                let want = common::scan(&query, terms.iter().map(String::as_str), effective);
                if got != want {
                    return Err(format!("lexicon {lexicon_no} query {query} t={threshold}: {got:?} != {want:?}"));
                }
                compared += 1;
                hits += got.len();
            }
        }
    }
    Ok(format!("{compared} lookups equal to linear scan ({hits} candidates)"))
}

fn idempotence() -> Outcome {
    let corrector = bundled::corrector();
    let unstable: Vec<String> = bundled::SENTENCES
        .lines()
        .filter(|l| !l.trim().is_empty())
        .filter_map(|line| {
            let once = corrector.correct(line).corrected;
            let twice = corrector.correct(&once).corrected;
            (once != twice).then(|| format!("'{line}': '{once}' -> '{twice}'"))
        })
        .collect();
    let total = bundled::SENTENCES.lines().filter(|l| !l.trim().is_empty()).count();
    check(
        unstable.is_empty(),
        if unstable.is_empty() { format!("{total} sentences stable") } else { unstable.join("; ") },
    )
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 9] = [
        ("deletion expansion", deletion_expansion),
        ("edit distances", distances),
        ("lookup ranking", lookup_ranking),
        ("threshold formula", threshold_formula),
        ("apostrophe drift and pairing", apostrophe_drift),
        ("expression recognition end to end", expressions_end_to_end),
        ("span enumeration", span_enumeration),
        ("oracle equivalence", oracle_equivalence),
        ("idempotence", idempotence),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
