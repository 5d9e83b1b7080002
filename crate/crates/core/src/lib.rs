//! Dictionary-driven spelling correction for Italian-style text.
//!
//! The engine indexes a frequency dictionary by symmetric deletion
//! ([`lexicon::build_kb`]) and corrects single words ([`lookup::lookup`]),
//! elided forms ([`apostrophe`]), multiword expressions ([`mwe`]) and whole
//! sentences ([`compound::Corrector`]).

pub mod apostrophe;
pub mod bundled;
pub mod cache;
pub mod compound;
pub mod edit_distance;
pub mod error;
pub mod lexicon;
pub mod lookup;
pub mod mwe;
pub mod text;

pub use compound::{CorrectionResult, Corrector, Resolution, TokenDecision};
pub use edit_distance::{deletions, dl_distance, edit_threshold, EditParams};
pub use error::{Error, Result};
pub use lexicon::{build_kb, merge_lexicons, BigramList, KnowledgeBase, Lexicon, Role};
pub use lookup::{lookup, lookup_compounds, merged_lookup, split_lookup, Candidate, CandidateSet};
pub use num_rational::Ratio;
pub use text::{tokenize, Sentence, Term};
