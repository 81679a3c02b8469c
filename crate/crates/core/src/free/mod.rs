//! The free algebra of the variety at bounded degree.

mod calculus;
mod certificate;
mod term;
mod word;

pub use calculus::{
    decompose, delta, full_linearization, multilinear_basis, normal_form, normal_form_of, rk_tag,
    substitute, Decomposition, RkTag, DEFAULT_DEGREE_CAP,
};
pub use certificate::{independence_certificate, IndependenceCertificate};
pub use term::{Term, TermSum};
pub use word::{left_mul_word, mul_words, right_mul_word, FreeElement, NormalWord};
