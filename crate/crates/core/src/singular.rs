//! The singular / reversible dichotomy for finite words, and balance.
//!
//! A factorization `x = reverse(u)·v·w` with `v` not a palindrome and `u ≠ w`
//! is *reversible* when `v` vs `reverse(v)` and `u` vs `w` compare the same way.
//! A word with no reversible factorization is *singular*.

use std::cmp::Ordering;
use std::collections::HashSet;

use serde::Serialize;

use crate::word::{Alphabet, Word};

/// `x = reverse(u) · v · w`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Factorization {
    pub u: Word,
    pub v: Word,
    pub w: Word,
}

impl Factorization {
    /// Rebuilds `reverse(u) · v · w`.
    pub fn reconstruct(&self) -> Word {
        let mut letters: Vec<u8> = self.u.ranks().iter().rev().copied().collect();
        letters.extend_from_slice(self.v.ranks());
        letters.extend_from_slice(self.w.ranks());
        Word::from_ranks_unchecked(self.v.alphabet(), letters)
    }

    /// Checks the reversible condition directly from the three parts.
    pub fn is_reversible(&self) -> bool {
        let v = self.v.ranks();
        let rv: Vec<u8> = v.iter().rev().copied().collect();
        let vc = crate::word::cmp_ranks(v, &rv);
        let uc = crate::word::cmp_ranks(self.u.ranks(), self.w.ranks());
        !self.v.is_empty() && vc != Ordering::Equal && vc == uc
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Singular,
    Reversible,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub verdict: Verdict,
    pub witness: Option<Factorization>,
}

impl Classification {
    pub fn is_singular(&self) -> bool {
        self.verdict == Verdict::Singular
    }

    fn from_witness(x: &Word, hit: Option<(usize, usize)>) -> Self {
        match hit {
            None => Classification {
                verdict: Verdict::Singular,
                witness: None,
            },
            Some((i, j)) => Classification {
                verdict: Verdict::Reversible,
                witness: Some(Factorization {
                    u: x.factor(0, i).reverse(),
                    v: x.factor(i, j),
                    w: x.factor(j, x.len()),
                }),
            },
        }
    }
}

/// Order of `x[i..j]` against its reversal.
fn cmp_with_reverse(x: &[u8], i: usize, j: usize) -> Ordering {
    let (mut lo, mut hi) = (i, j - 1);
    while lo < hi {
        if x[lo] != x[hi] {
            return x[lo].cmp(&x[hi]);
        }
        lo += 1;
        hi -= 1;
    }
    Ordering::Equal
}

/// Order of `u = reverse(x[..i])` against `w = x[j..]`.
fn cmp_outward(x: &[u8], i: usize, j: usize) -> Ordering {
    let (mut l, mut r) = (i, j);
    while l > 0 && r < x.len() {
        if x[l - 1] != x[r] {
            return x[l - 1].cmp(&x[r]);
        }
        l -= 1;
        r += 1;
    }
    // the shorter side is a prefix of the longer one; longer is smaller
    let u_left = l;
    let w_left = x.len() - r;
    w_left.cmp(&u_left)
}

fn is_reversible_at(x: &[u8], i: usize, j: usize) -> bool {
    let vc = cmp_with_reverse(x, i, j);
    vc != Ordering::Equal && vc == cmp_outward(x, i, j)
}

/// Exhaustive classifier over every factorization. When several reversible
/// factorizations exist the witness minimizes `|v|`, then the start of `v`.
pub fn classify_singular(x: &Word) -> Classification {
    let r = x.ranks();
    let n = r.len();
    let hit = (1..=n)
        .flat_map(|len| (0..=n - len).map(move |i| (i, i + len)))
        .find(|&(i, j)| is_reversible_at(r, i, j));
    Classification::from_witness(x, hit)
}

/// Same verdict as [`classify_singular`], inspecting only factorizations where
/// `v` begins and ends with different letters.
pub fn classify_singular_fast(x: &Word) -> Classification {
    let r = x.ranks();
    let n = r.len();
    let hit = (2..=n)
        .flat_map(|len| (0..=n - len).map(move |i| (i, i + len)))
        .filter(|&(i, j)| r[i] != r[j - 1])
        .find(|&(i, j)| is_reversible_at(r, i, j));
    Classification::from_witness(x, hit)
}

pub fn is_singular(x: &Word) -> bool {
    classify_singular_fast(x).is_singular()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BalanceWitness {
    /// The factor with more occurrences of `letter`.
    pub heavy: Word,
    /// An equal-length factor with at least two fewer.
    pub light: Word,
    pub letter: char,
    pub counts: (usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BalanceReport {
    pub balanced: bool,
    pub witness: Option<BalanceWitness>,
    /// Binary alphabets only: a shortest palindrome `z` with `aza` and `bzb`
    /// both factors.
    pub palindrome: Option<Word>,
}

/// Balance of a finite word. The witness is the first violation found scanning
/// factor lengths upward, then letters in alphabet order.
pub fn is_balanced(x: &Word) -> BalanceReport {
    let factors = factor_set(x.ranks(), x.len());
    balance_of_factors(x.alphabet(), &factors, x.len())
}

pub(crate) fn factor_set(r: &[u8], max_len: usize) -> HashSet<Vec<u8>> {
    let mut out = HashSet::new();
    for len in 1..=max_len.min(r.len()) {
        for f in r.windows(len) {
            out.insert(f.to_vec());
        }
    }
    out
}

/// Balance over an explicit factor set (all factors of length `1..=max_len`).
pub(crate) fn balance_of_factors(
    alphabet: &Alphabet,
    factors: &HashSet<Vec<u8>>,
    max_len: usize,
) -> BalanceReport {
    let mut by_len: Vec<Vec<&Vec<u8>>> = vec![Vec::new(); max_len + 1];
    for f in factors {
        if f.len() <= max_len {
            by_len[f.len()].push(f);
        }
    }
    for fs in by_len.iter_mut() {
        fs.sort();
    }
    let mut witness = None;
    'outer: for fs in by_len.iter().skip(1) {
        for letter in 0..alphabet.len() as u8 {
            let count = |f: &Vec<u8>| f.iter().filter(|&&c| c == letter).count();
            let mut hi: Option<(&Vec<u8>, usize)> = None;
            let mut lo: Option<(&Vec<u8>, usize)> = None;
            for f in fs {
                let c = count(f);
                if hi.is_none_or(|(_, h)| c > h) {
                    hi = Some((f, c));
                }
                if lo.is_none_or(|(_, l)| c < l) {
                    lo = Some((f, c));
                }
            }
            if let (Some((hf, hc)), Some((lf, lc))) = (hi, lo) {
                if hc >= lc + 2 {
                    witness = Some(BalanceWitness {
                        heavy: Word::from_ranks_unchecked(alphabet, hf.clone()),
                        light: Word::from_ranks_unchecked(alphabet, lf.clone()),
                        letter: alphabet.symbol(letter),
                        counts: (hc, lc),
                    });
                    break 'outer;
                }
            }
        }
    }
    let palindrome = if alphabet.len() == 2 && witness.is_some() {
        unbalancing_palindrome(alphabet, factors, max_len)
    } else {
        None
    };
    BalanceReport {
        balanced: witness.is_none(),
        witness,
        palindrome,
    }
}

fn unbalancing_palindrome(
    alphabet: &Alphabet,
    factors: &HashSet<Vec<u8>>,
    max_len: usize,
) -> Option<Word> {
    let mut candidates: Vec<&Vec<u8>> = factors
        .iter()
        .filter(|f| f.len() + 2 <= max_len && f.iter().eq(f.iter().rev()))
        .collect();
    candidates.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let empty = Vec::new();
    std::iter::once(&empty)
        .chain(candidates)
        .find(|z| {
            let wrap = |c: u8| {
                let mut v = vec![c];
                v.extend_from_slice(z);
                v.push(c);
                v
            };
            factors.contains(&wrap(0)) && factors.contains(&wrap(1))
        })
        .map(|z| Word::from_ranks_unchecked(alphabet, z.clone()))
}
