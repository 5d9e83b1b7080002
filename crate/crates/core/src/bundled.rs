//! A small Italian lexicon shipped with the crate: a frequency dictionary,
//! a compound-expression list and a toy corpus for bigrams.

use crate::compound::Corrector;
use crate::edit_distance::EditParams;
use crate::lexicon::{build_kb, extract_bigrams, merge_lexicons, Lexicon, Role};

pub const DICTIONARY_TSV: &str = include_str!("../data/dizionario.tsv");
pub const COMPOUNDS_TSV: &str = include_str!("../data/polirematiche.tsv");
pub const CORPUS: &str = include_str!("../data/corpus.txt");
/// Example sentences, one per line.
pub const SENTENCES: &str = include_str!("../data/frasi.txt");

pub fn dictionary() -> Lexicon {
    Lexicon::read_tsv(Role::Dictionary, DICTIONARY_TSV.as_bytes()).expect("bundled dictionary is well formed")
}

pub fn compounds() -> Lexicon {
    Lexicon::read_tsv(Role::Compounds, COMPOUNDS_TSV.as_bytes()).expect("bundled compounds are well formed")
}

/// Corrector over the bundled data with the given parameters.
pub fn corrector_with(dictionary_params: EditParams, compound_params: EditParams) -> Corrector {
    let d = dictionary();
    let g = merge_lexicons(&d, &compounds());
    let bigrams = extract_bigrams(CORPUS.as_bytes()).expect("bundled corpus is UTF-8");
    Corrector::new(build_kb(d, dictionary_params), build_kb(g, compound_params), bigrams)
}

/// Corrector with k = 1/3, depth 3 for words and 4 for compounds.
pub fn corrector() -> Corrector {
    corrector_with(
        EditParams::with_max_edit(EditParams::DEFAULT_DICT_MAX_EDIT),
        EditParams::with_max_edit(EditParams::DEFAULT_COMPOUND_MAX_EDIT),
    )
}
