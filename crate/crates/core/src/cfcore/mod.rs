//! Finite continued fractions: words, continuants, Euclid's algorithm, the
//! continued-fraction algorithm on series, and the continuant identities.

mod continuant;
pub(crate) mod expand;
mod identities;
mod word;

pub use continuant::{
    cf_eval, continuant, continuant_derived, continuant_from_left, continuant_of, continuant_truncated, convergents,
    ConvergentPair,
};
pub use expand::{cf_of_series, complete_quotient, euclid_cf};
pub use identities::{identity_suite, IdentityCheck, IdentityReport};
pub use word::{format_list, Word, WordJson};
