//! Singular words and extremal continuant arrangements.
//!
//! A finite word over an ordered alphabet is *singular* when none of its
//! factorizations `reverse(u)·v·w` orders `(v, reverse(v))` the same way as
//! `(u, w)`. Singular arrangements of a multiset of digits are exactly the
//! candidates for the largest semi-regular continuant; on three letters there
//! is one per abelian class (up to reversal) and [`ternary::construct_ternary`]
//! builds it.
//!
//! The crate also covers brute-force extremal search, the binary (Christoffel)
//! case, the Markoff property on eventually periodic bi-infinite words, and
//! natural codings of symmetric interval exchanges with their language
//! conditions. All arithmetic is exact.

pub mod binary;
pub mod continuant;
pub mod error;
pub mod extremal;
pub mod iet;
pub mod language;
pub mod morphism;
mod serde_util;
pub mod singular;
pub mod stream;
pub mod ternary;
pub mod word;

pub use error::{Error, Result};
pub use singular::{classify_singular, classify_singular_fast, Classification, Verdict};
pub use word::{lex_compare, parikh, Alphabet, ParikhVector, Word};
