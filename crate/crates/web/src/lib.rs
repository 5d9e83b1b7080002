//! WebAssembly bindings over the bundled Italian data. Every call returns a
//! JSON string.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use correttore::apostrophe::{correct_via_drift, drift_determinations};
use correttore::edit_distance::parse_k;
use correttore::text::normalize;
use correttore::{build_kb, bundled, Corrector, EditParams, KnowledgeBase, Ratio};
use serde::Serialize;
use wasm_bindgen::prelude::*;

type DictionaryCache = HashMap<(Ratio<u32>, usize), Rc<KnowledgeBase>>;

thread_local! {
    static DICTIONARIES: RefCell<DictionaryCache> = RefCell::new(HashMap::new());
    static CORRECTOR: Rc<Corrector> = Rc::new(bundled::corrector());
}

fn dictionary(params: EditParams) -> Rc<KnowledgeBase> {
    DICTIONARIES.with(|cache| {
        cache
            .borrow_mut()
            .entry((params.k(), params.max_edit()))
            .or_insert_with(|| Rc::new(build_kb(bundled::dictionary(), params)))
            .clone()
    })
}

#[derive(Serialize)]
struct LookupView<'a> {
    threshold: usize,
    candidates: &'a [correttore::Candidate],
}

pub fn lookup_json(word: &str, k: &str, max_edit: usize) -> Result<String, String> {
    let params = EditParams::new(parse_k(k).map_err(|e| e.to_string())?, max_edit).map_err(|e| e.to_string())?;
    let query = normalize(word.trim());
    let kb = dictionary(params);
    let set = correttore::lookup(&query, &kb);
    let view = LookupView { threshold: params.threshold(query.chars().count()), candidates: &set.candidates };
    Ok(serde_json::to_string(&view).expect("serializable"))
}

#[derive(Serialize)]
struct DriftView {
    determinations: Vec<String>,
    best: Option<correttore::apostrophe::DriftCorrection>,
}

pub fn drift_json(token: &str) -> Result<String, String> {
    let token = normalize(token.trim());
    let determinations = drift_determinations(&token).map_err(|e| e.to_string())?;
    let kb = dictionary(EditParams::default());
    let view = DriftView {
        determinations: determinations.into_iter().map(|d| d.text).collect(),
        best: correct_via_drift(&token, &kb),
    };
    Ok(serde_json::to_string(&view).expect("serializable"))
}

pub fn correct_json(sentence: &str) -> String {
    let corrector = CORRECTOR.with(Rc::clone);
    serde_json::to_string(&corrector.correct(sentence)).expect("serializable")
}

#[wasm_bindgen]
pub fn lookup(word: &str, k: &str, max_edit: usize) -> Result<String, JsError> {
    lookup_json(word, k, max_edit).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn drift(token: &str) -> Result<String, JsError> {
    drift_json(token).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn correct(sentence: &str) -> String {
    correct_json(sentence)
}
