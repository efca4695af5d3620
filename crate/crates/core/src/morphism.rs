//! The letter-inserting maps used by the ternary construction.
//!
//! `λ_d` puts a `d` before every other letter, `ρ_d` puts one after. `ξ` works
//! on the ternary alphabet `a<b<c`: it lengthens each run of `b` by one and
//! splits every `aa` and `cc` with a `b`. It is a sequential map, run here as a
//! four-state left-to-right transducer.

use std::fmt;

use crate::error::{Error, Result};
use crate::word::{Alphabet, Word};

/// The three map families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MorphismTag {
    Lambda(char),
    Rho(char),
    XiBounded,
}

impl MorphismTag {
    pub fn apply(self, x: &Word) -> Result<Word> {
        match self {
            MorphismTag::Lambda(d) => lambda_apply(d, x),
            MorphismTag::Rho(d) => rho_apply(d, x),
            MorphismTag::XiBounded => xi_bounded(x),
        }
    }
}

impl fmt::Display for MorphismTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MorphismTag::Lambda(d) => write!(f, "λ_{d}"),
            MorphismTag::Rho(d) => write!(f, "ρ_{d}"),
            MorphismTag::XiBounded => f.write_str("c⁻¹ξ(c·c)c⁻¹"),
        }
    }
}

fn doubling(d: char, x: &Word, before: bool) -> Result<Word> {
    let dr = x.alphabet().rank_of(d)?;
    let mut out = Vec::with_capacity(2 * x.len());
    for &r in x.ranks() {
        if r == dr {
            out.push(r);
        } else if before {
            out.extend([dr, r]);
        } else {
            out.extend([r, dr]);
        }
    }
    Ok(Word::from_ranks_unchecked(x.alphabet(), out))
}

/// `λ_d`: `d' ↦ d d'` for `d' ≠ d`, `d ↦ d`.
pub fn lambda_apply(d: char, x: &Word) -> Result<Word> {
    doubling(d, x, true)
}

/// `ρ_d`: `d' ↦ d' d` for `d' ≠ d`, `d ↦ d`.
pub fn rho_apply(d: char, x: &Word) -> Result<Word> {
    doubling(d, x, false)
}

/// Appends one letter.
pub fn push_letter(x: &Word, d: char) -> Result<Word> {
    let r = x.alphabet().rank_of(d)?;
    let mut out = x.ranks().to_vec();
    out.push(r);
    Ok(Word::from_ranks_unchecked(x.alphabet(), out))
}

/// `x d⁻¹`. Panics unless `x` ends in `d`: the construction only cancels
/// letters it knows are there.
pub fn drop_last(x: &Word, d: char) -> Word {
    let r = x.alphabet().rank(d);
    assert!(
        r.is_some() && x.last_rank() == r,
        "cannot cancel {d:?}: {x:?} does not end with it"
    );
    x.factor(0, x.len() - 1)
}

/// `λ_a(x)·a` with `a` the least letter.
pub fn lambda_min_append(x: &Word) -> Word {
    let a = x.alphabet().min_letter();
    push_letter(&lambda_apply(a, x).expect("a is in the alphabet"), a).expect("a is in the alphabet")
}

/// `ρ_c(x)·c⁻¹` with `c` the greatest letter; `x` nonempty.
pub fn rho_max_drop(x: &Word) -> Word {
    let c = x.alphabet().max_letter();
    drop_last(&rho_apply(c, x).expect("c is in the alphabet"), c)
}

const A: u8 = 0;
const B: u8 = 1;
const C: u8 = 2;

fn require_ternary(alphabet: &Alphabet) -> Result<()> {
    if alphabet.len() == 3 {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "ξ is defined on a three-letter alphabet, got {alphabet}"
        )))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum XiState {
    Start,
    AfterA,
    AfterB,
    AfterC,
}

impl XiState {
    /// One transition: returns the next state and writes the output.
    fn step(self, letter: u8, out: &mut Vec<u8>) -> XiState {
        use XiState::*;
        match (self, letter) {
            (AfterA, A) => out.extend([B, A]),
            (AfterC, C) => out.extend([B, C]),
            (AfterB, B) => out.push(B),
            (_, B) => out.extend([B, B]),
            (_, l) => out.push(l),
        }
        match letter {
            A => AfterA,
            B => AfterB,
            _ => AfterC,
        }
    }
}

fn xi_ranks(x: &[u8]) -> Vec<u8> {
    let mut out = Vec::with_capacity(2 * x.len());
    x.iter()
        .fold(XiState::Start, |state, &l| state.step(l, &mut out));
    out
}

/// `ξ(x)` over the ternary alphabet.
pub fn xi_apply(x: &Word) -> Result<Word> {
    require_ternary(x.alphabet())?;
    Ok(Word::from_ranks_unchecked(x.alphabet(), xi_ranks(x.ranks())))
}

/// `c⁻¹ ξ(c x c) c⁻¹`. Sends `ε` to `b`.
pub fn xi_bounded(x: &Word) -> Result<Word> {
    require_ternary(x.alphabet())?;
    let mut padded = Vec::with_capacity(x.len() + 2);
    padded.push(C);
    padded.extend_from_slice(x.ranks());
    padded.push(C);
    let out = xi_ranks(&padded);
    debug_assert!(out.first() == Some(&C) && out.last() == Some(&C));
    Ok(Word::from_ranks_unchecked(
        x.alphabet(),
        out[1..out.len() - 1].to_vec(),
    ))
}

/// Why a word is outside the image of [`xi_bounded`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ImageViolation {
    Empty,
    Factor(&'static str),
    StartsWithC,
    EndsWithC,
    StartsWithBA,
    EndsWithAB,
}

impl fmt::Display for ImageViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ImageViolation::Empty => f.write_str("the empty word is not an image"),
            ImageViolation::Factor(s) => write!(f, "contains the factor {s}"),
            ImageViolation::StartsWithC => f.write_str("begins with c"),
            ImageViolation::EndsWithC => f.write_str("ends with c"),
            ImageViolation::StartsWithBA => f.write_str("begins with ba"),
            ImageViolation::EndsWithAB => f.write_str("ends with ab"),
        }
    }
}

/// Membership test for the image of [`xi_bounded`], naming the first failed
/// condition.
pub fn xi_bounded_image_check(x: &Word) -> Result<Option<ImageViolation>> {
    require_ternary(x.alphabet())?;
    let r = x.ranks();
    if r.is_empty() {
        return Ok(Some(ImageViolation::Empty));
    }
    const FORBIDDEN: [(&[u8], &str); 4] = [
        (&[A, A], "aa"),
        (&[A, B, C], "abc"),
        (&[C, B, A], "cba"),
        (&[C, C], "cc"),
    ];
    for (pat, name) in FORBIDDEN {
        if r.windows(pat.len()).any(|w| w == pat) {
            return Ok(Some(ImageViolation::Factor(name)));
        }
    }
    if r[0] == C {
        return Ok(Some(ImageViolation::StartsWithC));
    }
    if r[r.len() - 1] == C {
        return Ok(Some(ImageViolation::EndsWithC));
    }
    if r.starts_with(&[B, A]) {
        return Ok(Some(ImageViolation::StartsWithBA));
    }
    if r.ends_with(&[A, B]) {
        return Ok(Some(ImageViolation::EndsWithAB));
    }
    Ok(None)
}

/// The unique preimage under [`xi_bounded`]: one `b` removed from every run.
pub fn xi_bounded_inverse(x: &Word) -> Result<Word> {
    if let Some(v) = xi_bounded_image_check(x)? {
        return Err(Error::domain(format!("{x:?} is not in the image of ξ: {v}")));
    }
    let r = x.ranks();
    let out: Vec<u8> = r
        .iter()
        .enumerate()
        .filter(|&(i, &l)| !(l == B && (i == 0 || r[i - 1] != B)))
        .map(|(_, &l)| l)
        .collect();
    Ok(Word::from_ranks_unchecked(x.alphabet(), out))
}
