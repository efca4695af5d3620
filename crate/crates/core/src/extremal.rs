//! Exhaustive search for the arrangements of a digit multiset with extremal
//! continuant.
//!
//! This is the reference oracle: every distinct arrangement is evaluated, one
//! per reversal pair, with no pruning.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use crate::continuant::{continuant, continuant_u128, ContinuantKind};
use crate::error::{Error, Result};
use crate::singular::classify_singular_fast;
use crate::ternary::{construct_ternary, Vector3};
use crate::word::{Alphabet, Word};

pub const DEFAULT_CAP: usize = 12;

/// Digits with multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multiset {
    entries: BTreeMap<u64, usize>,
}

impl Multiset {
    pub fn from_digits(digits: &[u64]) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for &d in digits {
            if d == 0 {
                return Err(Error::domain("digits must be positive"));
            }
            *entries.entry(d).or_insert(0) += 1;
        }
        if entries.is_empty() {
            return Err(Error::domain("multiset is empty"));
        }
        Ok(Multiset { entries })
    }

    pub fn from_counts(pairs: impl IntoIterator<Item = (u64, usize)>) -> Result<Self> {
        let mut digits = Vec::new();
        for (d, n) in pairs {
            digits.extend(std::iter::repeat_n(d, n));
        }
        Multiset::from_digits(&digits)
    }

    /// Accepts `3,4,4,5` or `3:1,4:2,5:1`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut digits = Vec::new();
        for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let num = |t: &str| {
                t.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::parse(format!("bad multiset entry {item:?}")))
            };
            match item.split_once(':') {
                Some((d, n)) => digits.extend(std::iter::repeat_n(num(d)?, num(n)? as usize)),
                None => digits.push(num(item)?),
            }
        }
        Multiset::from_digits(&digits)
    }

    pub fn entries(&self) -> &BTreeMap<u64, usize> {
        &self.entries
    }

    pub fn size(&self) -> usize {
        self.entries.values().sum()
    }

    /// All digits, ascending.
    pub fn digits(&self) -> Vec<u64> {
        self.entries
            .iter()
            .flat_map(|(&d, &n)| std::iter::repeat_n(d, n))
            .collect()
    }

    pub fn min_digit(&self) -> u64 {
        *self.entries.keys().next().expect("nonempty")
    }
}

impl fmt::Display for Multiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|(d, n)| format!("{d}:{n}")).collect();
        f.write_str(&parts.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Objective {
    #[serde(rename = "regular-max")]
    RegularMax,
    #[serde(rename = "regular-min")]
    RegularMin,
    #[serde(rename = "semi-max")]
    SemiMax,
    #[serde(rename = "semi-min")]
    SemiMin,
}

impl Objective {
    pub const ALL: [Objective; 4] = [
        Objective::RegularMax,
        Objective::RegularMin,
        Objective::SemiMax,
        Objective::SemiMin,
    ];

    pub fn kind(self) -> ContinuantKind {
        match self {
            Objective::RegularMax | Objective::RegularMin => ContinuantKind::Regular,
            Objective::SemiMax | Objective::SemiMin => ContinuantKind::Semi,
        }
    }

    pub fn maximizes(self) -> bool {
        matches!(self, Objective::RegularMax | Objective::SemiMax)
    }
}

impl FromStr for Objective {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "regular-max" => Ok(Objective::RegularMax),
            "regular-min" => Ok(Objective::RegularMin),
            "semi-max" => Ok(Objective::SemiMax),
            "semi-min" => Ok(Objective::SemiMin),
            _ => Err(Error::parse(format!(
                "unknown objective {s:?} (expected regular-max, regular-min, semi-max or semi-min)"
            ))),
        }
    }
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Objective::RegularMax => "regular-max",
            Objective::RegularMin => "regular-min",
            Objective::SemiMax => "semi-max",
            Objective::SemiMin => "semi-min",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtremalResult {
    pub objective: Objective,
    #[serde(serialize_with = "crate::serde_util::biguint_str")]
    pub value: BigUint,
    /// Canonical representatives (the smaller of `w`, `reverse(w)` as digit
    /// sequences), sorted.
    #[serde(rename = "arrangements")]
    pub argext: Vec<Vec<u64>>,
    #[serde(rename = "unique")]
    pub unique_up_to_reversal: bool,
}

/// Rearranges `v` into the next permutation in dictionary order; false once
/// `v` is the last one.
fn next_permutation(v: &mut [u64]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn is_canonical(w: &[u64]) -> bool {
    w.iter().le(w.iter().rev())
}

/// Visits every arrangement starting with `first`, canonical ones only.
fn for_each_with_first(m: &Multiset, first: u64, mut f: impl FnMut(&[u64])) {
    let mut rest = m.digits();
    let pos = rest.iter().position(|&d| d == first).expect("first is in m");
    rest.remove(pos);
    let mut w = Vec::with_capacity(rest.len() + 1);
    loop {
        w.clear();
        w.push(first);
        w.extend_from_slice(&rest);
        if is_canonical(&w) {
            f(&w);
        }
        if !next_permutation(&mut rest) {
            break;
        }
    }
}

/// One representative of each reversal pair of distinct arrangements, in
/// dictionary order.
pub fn enumerate_arrangements(m: &Multiset) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for &first in m.entries.keys() {
        for_each_with_first(m, first, |w| out.push(w.to_vec()));
    }
    out
}

/// A continuant value that stays in `u128` until it cannot.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Value {
    Small(u128),
    Big(BigUint),
}

impl Value {
    fn of(w: &[u64], kind: ContinuantKind) -> Value {
        match continuant_u128(w, kind) {
            Some(v) => Value::Small(v),
            None => Value::Big(continuant(w, kind).expect("digits checked")),
        }
    }

    fn into_big(self) -> BigUint {
        match self {
            Value::Small(v) => BigUint::from(v),
            Value::Big(v) => v,
        }
    }
}

impl Ord for Value {
    // continuants only grow along the recurrence, so an overflowed value
    // exceeds every u128
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Value::Small(a), Value::Small(b)) => a.cmp(b),
            (Value::Small(_), Value::Big(_)) => Ordering::Less,
            (Value::Big(_), Value::Small(_)) => Ordering::Greater,
            (Value::Big(a), Value::Big(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for Value {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

type Partial = Option<(Value, BTreeSet<Vec<u64>>)>;

fn merge(maximize: bool, a: Partial, b: Partial) -> Partial {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some((va, mut sa)), Some((vb, sb))) => {
            let ord = if maximize { va.cmp(&vb) } else { vb.cmp(&va) };
            match ord {
                Ordering::Greater => Some((va, sa)),
                Ordering::Less => Some((vb, sb)),
                Ordering::Equal => {
                    sa.extend(sb);
                    Some((va, sa))
                }
            }
        }
    }
}

/// Exhaustive extremum over all arrangements of `m`. Work is split by first
/// digit and run on the current rayon pool; ties are all kept, so the result
/// does not depend on scheduling.
pub fn brute_extremal(m: &Multiset, objective: Objective, cap: usize) -> Result<ExtremalResult> {
    if m.size() > cap {
        return Err(Error::SizeLimit {
            size: m.size(),
            cap,
        });
    }
    let kind = objective.kind();
    if m.min_digit() < kind.min_digit() {
        return Err(Error::domain(format!(
            "{objective} needs digits of at least {}",
            kind.min_digit()
        )));
    }
    let maximize = objective.maximizes();
    let firsts: Vec<u64> = m.entries.keys().copied().collect();
    let best = firsts
        .par_iter()
        .map(|&first| {
            let mut local: Partial = None;
            for_each_with_first(m, first, |w| {
                let v = Value::of(w, kind);
                match &mut local {
                    None => local = Some((v, [w.to_vec()].into())),
                    Some((best, set)) => {
                        let ord = if maximize { v.cmp(best) } else { (*best).cmp(&v) };
                        match ord {
                            Ordering::Greater => local = Some((v, [w.to_vec()].into())),
                            Ordering::Equal => {
                                set.insert(w.to_vec());
                            }
                            Ordering::Less => {}
                        }
                    }
                }
            });
            local
        })
        .reduce(|| None, |a, b| merge(maximize, a, b));
    let (value, argext) = best.expect("at least one arrangement");
    let argext: Vec<Vec<u64>> = argext.into_iter().collect();
    Ok(ExtremalResult {
        objective,
        value: value.into_big(),
        unique_up_to_reversal: argext.len() == 1,
        argext,
    })
}

/// The maximizing arrangement for regular continuants, `digits` as
/// `(digit, multiplicity)` pairs. Writing `L_i` for `a_i^(n_i - 1)`, the digits
/// from the largest down alternate sides around the central block `a_1^n_1`:
/// `a_k L_(k-1) a_(k-2) ... a_1^n_1 ... L_(k-2) a_(k-1) L_k`.
pub fn regular_max_pattern(m: &Multiset) -> Vec<u64> {
    let entries: Vec<(u64, usize)> = m.entries.iter().map(|(&d, &n)| (d, n)).collect();
    let mut left = Vec::new();
    let mut right_rev = Vec::new();
    for (j, &(d, n)) in entries[1..].iter().rev().enumerate() {
        let single = vec![d];
        let block = vec![d; n - 1];
        let (l, r) = if j % 2 == 0 { (single, block) } else { (block, single) };
        left.extend(l);
        right_rev.extend(r.into_iter().rev());
    }
    let (a1, n1) = entries[0];
    left.extend(std::iter::repeat_n(a1, n1));
    left.extend(right_rev.into_iter().rev());
    left
}

/// All singular arrangements of a Parikh vector, as words.
pub fn singular_arrangements(alphabet: &Alphabet, counts: &[usize]) -> Result<Vec<Word>> {
    if counts.len() != alphabet.len() {
        return Err(Error::domain("one count per letter is required"));
    }
    let m = Multiset::from_counts(counts.iter().enumerate().map(|(i, &n)| (i as u64 + 1, n)))?;
    let mut out = Vec::new();
    for w in enumerate_arrangements(&m) {
        let ranks: Vec<u8> = w.iter().map(|&d| (d - 1) as u8).collect();
        let x = Word::from_ranks_unchecked(alphabet, ranks);
        if classify_singular_fast(&x).is_singular() {
            let rx = x.reverse();
            if rx != x {
                out.push(rx);
            }
            out.push(x);
        }
    }
    out.sort_by(|a, b| a.ranks().cmp(b.ranks()));
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassCheck {
    pub vector: Vector3,
    #[serde(serialize_with = "crate::serde_util::biguint_str")]
    pub value: BigUint,
    /// The maximizers read back as words over `a<b<c`.
    pub argmax: Vec<String>,
    pub unique: bool,
    pub matches_construction: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TernaryReport {
    pub max_total: usize,
    pub assignment: [u64; 3],
    pub classes: Vec<ClassCheck>,
    pub violations: Vec<Vector3>,
}

impl TernaryReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// For every ternary class of size `1..=max_total`, compares the semi-regular
/// maximizers under `assignment` with the constructed singular pair.
pub fn verify_ternary_conjecture(max_total: usize, assignment: [u64; 3]) -> Result<TernaryReport> {
    if assignment[0] < 2 || !assignment.windows(2).all(|p| p[0] < p[1]) {
        return Err(Error::domain(
            "assignment must be strictly increasing with digits of at least 2",
        ));
    }
    let alphabet = Alphabet::latin(3)?;
    let mut vectors = Vec::new();
    for total in 1..=max_total {
        for a in 0..=total {
            for b in 0..=total - a {
                vectors.push([a, b, total - a - b]);
            }
        }
    }
    let classes: Vec<ClassCheck> = vectors
        .par_iter()
        .map(|&v| -> Result<ClassCheck> {
            let m = Multiset::from_counts((0..3).map(|i| (assignment[i], v[i])))?;
            let res = brute_extremal(&m, Objective::SemiMax, max_total.max(DEFAULT_CAP))?;
            let to_word = |w: &Vec<u64>| -> String {
                w.iter()
                    .map(|d| alphabet.symbol(assignment.iter().position(|a| a == d).unwrap() as u8))
                    .collect()
            };
            let argmax: Vec<String> = res.argext.iter().map(to_word).collect();
            let (x, rx) = construct_ternary(&alphabet, v)?;
            let built = [x.to_string(), rx.to_string()];
            let matches_construction =
                res.unique_up_to_reversal && built.contains(&argmax[0]);
            Ok(ClassCheck {
                vector: v,
                value: res.value,
                argmax,
                unique: res.unique_up_to_reversal,
                matches_construction,
            })
        })
        .collect::<Result<_>>()?;
    let violations = classes
        .iter()
        .filter(|c| !c.matches_construction)
        .map(|c| c.vector)
        .collect();
    Ok(TernaryReport {
        max_total,
        assignment,
        classes,
        violations,
    })
}
