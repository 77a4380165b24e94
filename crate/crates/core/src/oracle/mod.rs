//! Brute-force ground truth for small instances: witness verification,
//! enumeration of all uniform words, and exhaustive coloring searches.

mod enumerate;
mod search;
mod verify;

pub use enumerate::{enumerate_uniform_words, uniform_word_count, UniformWords};
pub use search::{
    minimal_n_search, uhjp_check, MinimalNReport, SearchReport, Verdict, WordSearchExtractor,
};
pub use verify::{verify_witness, ClassReport, VerifyReport};
