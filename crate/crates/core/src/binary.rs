//! Binary singular words.
//!
//! Over `a<b` a word is singular exactly when it or its reversal is `b^n`,
//! `a b^n`, or `a y a` where `a y b` is a power of a Christoffel word. Every
//! nonzero Parikh vector has one such word up to reversal.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::singular::is_balanced;
use crate::word::{Alphabet, Word};

/// `C_{p,q}^power`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChristoffelSpec {
    pub p: usize,
    pub q: usize,
    pub power: usize,
}

impl ChristoffelSpec {
    pub fn new(p: usize, q: usize, power: usize) -> Result<Self> {
        if p + q == 0 {
            return Err(Error::domain("Christoffel word needs p + q >= 1"));
        }
        if p.gcd(&q) != 1 {
            return Err(Error::domain(format!("gcd({p}, {q}) != 1")));
        }
        if power == 0 {
            return Err(Error::domain("power must be positive"));
        }
        Ok(ChristoffelSpec { p, q, power })
    }

    /// The unique spec whose word has `p` a's and `q` b's in total.
    pub fn for_counts(p: usize, q: usize) -> Result<Self> {
        if p + q == 0 {
            return Err(Error::domain("no Christoffel power with zero letters"));
        }
        let g = p.gcd(&q);
        ChristoffelSpec::new(p / g, q / g, g)
    }

    pub fn ranks(&self) -> Vec<u8> {
        christoffel_ranks(self.p, self.q).repeat(self.power)
    }
}

/// Lower Christoffel word of slope `q/p`: letter `k` (from 1) is `a` unless the
/// line `y = q x / (p+q)` crosses an integer between `k-1` and `k`.
fn christoffel_ranks(p: usize, q: usize) -> Vec<u8> {
    let n = p + q;
    (1..=n)
        .map(|k| if (k * q) / n == ((k - 1) * q) / n { 0 } else { 1 })
        .collect()
}

fn require_binary(alphabet: &Alphabet) -> Result<()> {
    if alphabet.len() == 2 {
        Ok(())
    } else {
        Err(Error::domain(format!("expected a binary alphabet, got {alphabet}")))
    }
}

/// `C_{p,q}` over a binary alphabet, `p` copies of the smaller letter.
pub fn christoffel(alphabet: &Alphabet, p: usize, q: usize) -> Result<Word> {
    require_binary(alphabet)?;
    let spec = ChristoffelSpec::new(p, q, 1)?;
    Ok(Word::from_ranks_unchecked(alphabet, spec.ranks()))
}

/// Ranks of the singular binary word with `n_a` zeros and `n_b` ones, in the
/// orientation the construction produces (beginning with `a` when `n_a > 0`).
pub(crate) fn singular_binary_ranks(n_a: usize, n_b: usize) -> Result<Vec<u8>> {
    match n_a {
        0 if n_b == 0 => Err(Error::domain("Parikh vector is zero")),
        0 => Ok(vec![1; n_b]),
        1 => {
            let mut v = vec![0];
            v.extend(std::iter::repeat_n(1, n_b));
            Ok(v)
        }
        _ => {
            let mut v = ChristoffelSpec::for_counts(n_a - 1, n_b + 1)?.ranks();
            let last = v.last_mut().expect("nonempty");
            debug_assert_eq!(*last, 1);
            *last = 0;
            Ok(v)
        }
    }
}

/// The singular pair `{x, reverse(x)}` with Parikh vector `(n_a, n_b)`.
pub fn binary_singular_from_parikh(
    alphabet: &Alphabet,
    n_a: usize,
    n_b: usize,
) -> Result<(Word, Word)> {
    require_binary(alphabet)?;
    let x = Word::from_ranks_unchecked(alphabet, singular_binary_ranks(n_a, n_b)?);
    let rx = x.reverse();
    Ok((x, rx))
}

fn is_christoffel_power(r: &[u8]) -> bool {
    let p = r.iter().filter(|&&l| l == 0).count();
    let q = r.len() - p;
    match ChristoffelSpec::for_counts(p, q) {
        Ok(spec) => spec.ranks() == r,
        Err(_) => false,
    }
}

fn has_singular_form(r: &[u8]) -> bool {
    if r.iter().all(|&l| l == 1) {
        return true;
    }
    if r[0] == 0 && r[1..].iter().all(|&l| l == 1) {
        return true;
    }
    if r.len() >= 2 && r[0] == 0 && r[r.len() - 1] == 0 {
        let mut ayb = r.to_vec();
        *ayb.last_mut().expect("nonempty") = 1;
        return is_christoffel_power(&ayb);
    }
    false
}

/// Singularity of a binary word read off its shape, without searching
/// factorizations.
pub fn is_binary_singular(x: &Word) -> Result<bool> {
    require_binary(x.alphabet())?;
    let r = x.ranks();
    let rev: Vec<u8> = r.iter().rev().copied().collect();
    Ok(has_singular_form(r) || has_singular_form(&rev))
}

/// `a y`, `b y`, `y a` and `y b` are all balanced.
pub fn is_bispecial_sturmian(y: &Word) -> Result<bool> {
    require_binary(y.alphabet())?;
    let mut ok = true;
    for letter in 0..2u8 {
        let mut left = vec![letter];
        left.extend_from_slice(y.ranks());
        let mut right = y.ranks().to_vec();
        right.push(letter);
        for ext in [left, right] {
            ok &= is_balanced(&Word::from_ranks_unchecked(y.alphabet(), ext)).balanced;
        }
    }
    Ok(ok)
}
