//! Regular and semi-regular continuants, exact.
//!
//! `K` is the denominator of `[0; x1, ..., xn]` and `K̇` the denominator of the
//! minus-sign continued fraction `1/(x1 - 1/(x2 - ...))`. Both are the
//! permanent and the determinant of the tridiagonal matrix with the digits on
//! the diagonal and ones beside it; [`tridiagonal_check`] computes those two
//! directly as an independent cross-check.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::word::Word;

pub const DEFAULT_TRIDIAGONAL_BOUND: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ContinuantKind {
    Regular,
    Semi,
}

impl std::str::FromStr for ContinuantKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "regular" => Ok(ContinuantKind::Regular),
            "semi" | "semiregular" | "semi-regular" => Ok(ContinuantKind::Semi),
            _ => Err(Error::parse(format!("unknown continuant kind {s:?}"))),
        }
    }
}

impl std::fmt::Display for ContinuantKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ContinuantKind::Regular => "regular",
            ContinuantKind::Semi => "semi",
        })
    }
}

impl ContinuantKind {
    pub fn min_digit(self) -> u64 {
        match self {
            ContinuantKind::Regular => 1,
            ContinuantKind::Semi => 2,
        }
    }
}

/// Parses `4,5,6,4,6,3`.
pub fn parse_digits(s: &str) -> Result<Vec<u64>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<u64>()
                .map_err(|_| Error::parse(format!("bad digit {t:?}")))
        })
        .collect()
}

fn check_digits(d: &[u64], kind: ContinuantKind) -> Result<()> {
    let min = kind.min_digit();
    match d.iter().find(|&&x| x < min) {
        Some(x) => Err(Error::domain(format!(
            "digit {x} below {min} in a {} continuant",
            match kind {
                ContinuantKind::Regular => "regular",
                ContinuantKind::Semi => "semi-regular",
            }
        ))),
        None => Ok(()),
    }
}

/// `K_0 = 1`, `K_1 = x1`, `K_n = x_n K_{n-1} + K_{n-2}`.
pub fn continuant_regular(d: &[u64]) -> Result<BigUint> {
    check_digits(d, ContinuantKind::Regular)?;
    let (mut prev, mut cur) = (BigUint::zero(), BigUint::one());
    for &x in d {
        let next = &cur * x + &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(cur)
}

/// `K̇_0 = 1`, `K̇_1 = x1`, `K̇_n = x_n K̇_{n-1} - K̇_{n-2}`; digits at least 2.
pub fn continuant_semiregular(d: &[u64]) -> Result<BigUint> {
    check_digits(d, ContinuantKind::Semi)?;
    let (mut prev, mut cur) = (BigUint::zero(), BigUint::one());
    for &x in d {
        // x >= 2 keeps the sequence strictly increasing, so this never underflows
        let next = &cur * x - &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(cur)
}

pub fn continuant(d: &[u64], kind: ContinuantKind) -> Result<BigUint> {
    match kind {
        ContinuantKind::Regular => continuant_regular(d),
        ContinuantKind::Semi => continuant_semiregular(d),
    }
}

/// Unchecked fast path for the exhaustive searches. `None` on u128 overflow.
pub(crate) fn continuant_u128(d: &[u64], kind: ContinuantKind) -> Option<u128> {
    let (mut prev, mut cur) = (0u128, 1u128);
    for &x in d {
        let scaled = cur.checked_mul(x as u128)?;
        let next = match kind {
            ContinuantKind::Regular => scaled.checked_add(prev)?,
            ContinuantKind::Semi => scaled - prev,
        };
        prev = cur;
        cur = next;
    }
    Some(cur)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TridiagonalCheck {
    #[serde(serialize_with = "crate::serde_util::biguint_str")]
    pub permanent: BigUint,
    #[serde(serialize_with = "crate::serde_util::bigint_str")]
    pub determinant: BigInt,
}

/// Permanent (Ryser's formula) and determinant (Bareiss elimination) of the
/// tridiagonal matrix with `d` on the diagonal and unit off-diagonals. Both
/// are computed on the dense matrix, without using its band structure.
pub fn tridiagonal_check(d: &[u64], bound: usize) -> Result<TridiagonalCheck> {
    if d.len() > bound {
        return Err(Error::SizeLimit {
            size: d.len(),
            cap: bound,
        });
    }
    let m = tridiagonal_matrix(d);
    Ok(TridiagonalCheck {
        permanent: ryser_permanent(&m),
        determinant: bareiss_determinant(&m),
    })
}

fn tridiagonal_matrix(d: &[u64]) -> Vec<Vec<i64>> {
    let n = d.len();
    let mut m = vec![vec![0i64; n]; n];
    for i in 0..n {
        m[i][i] = d[i] as i64;
        if i + 1 < n {
            m[i][i + 1] = 1;
            m[i + 1][i] = 1;
        }
    }
    m
}

fn ryser_permanent(m: &[Vec<i64>]) -> BigUint {
    let n = m.len();
    if n == 0 {
        return BigUint::one();
    }
    let mut total = BigInt::zero();
    for subset in 1u32..(1 << n) {
        let mut prod = BigInt::one();
        for row in m {
            let s: i64 = (0..n).filter(|j| subset >> j & 1 == 1).map(|j| row[j]).sum();
            prod *= s;
        }
        if (n - subset.count_ones() as usize) % 2 == 1 {
            total -= prod;
        } else {
            total += prod;
        }
    }
    total
        .to_biguint()
        .expect("permanent of a nonnegative matrix is nonnegative")
}

fn bareiss_determinant(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut sign = BigInt::one();
    let mut prev_pivot = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev_pivot;
            }
        }
        prev_pivot = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// A letter-to-digit map for reading words as digit sequences.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    map: BTreeMap<char, u64>,
}

impl Assignment {
    pub fn new(pairs: impl IntoIterator<Item = (char, u64)>) -> Self {
        Assignment {
            map: pairs.into_iter().collect(),
        }
    }

    /// Pairs the alphabet's letters, in order, with `digits`.
    pub fn positional(alphabet: &crate::word::Alphabet, digits: &[u64]) -> Result<Self> {
        if digits.len() != alphabet.len() {
            return Err(Error::domain(format!(
                "{} digits for {} letters",
                digits.len(),
                alphabet.len()
            )));
        }
        Ok(Assignment::new(
            alphabet.symbols().iter().copied().zip(digits.iter().copied()),
        ))
    }

    /// Parses `a=3,b=4,c=5`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut map = BTreeMap::new();
        for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (l, v) = item
                .split_once('=')
                .ok_or_else(|| Error::parse(format!("expected letter=digit, got {item:?}")))?;
            let mut cs = l.trim().chars();
            let c = match (cs.next(), cs.next()) {
                (Some(c), None) => c,
                _ => return Err(Error::parse(format!("bad letter {l:?}"))),
            };
            let v: u64 = v
                .trim()
                .parse()
                .map_err(|_| Error::parse(format!("bad digit {v:?}")))?;
            if v == 0 {
                return Err(Error::domain("digits must be positive"));
            }
            if map.insert(c, v).is_some() {
                return Err(Error::parse(format!("letter {c:?} assigned twice")));
            }
        }
        Ok(Assignment { map })
    }

    pub fn get(&self, letter: char) -> Option<u64> {
        self.map.get(&letter).copied()
    }

    /// Strictly increasing along the alphabet order, on the letters it maps.
    pub fn is_order_preserving(&self, alphabet: &crate::word::Alphabet) -> bool {
        let images: Vec<u64> = alphabet
            .symbols()
            .iter()
            .filter_map(|&c| self.get(c))
            .collect();
        images.windows(2).all(|p| p[0] < p[1])
    }

    pub fn apply(&self, x: &Word) -> Result<Vec<u64>> {
        (0..x.len())
            .map(|i| {
                let c = x.letter(i);
                self.get(c)
                    .ok_or_else(|| Error::domain(format!("letter {c:?} has no assigned digit")))
            })
            .collect()
    }
}

/// Reads `x` through `assignment` and evaluates the continuant of that kind.
pub fn evaluate_word(
    x: &Word,
    assignment: &Assignment,
    kind: ContinuantKind,
    require_order_preserving: bool,
) -> Result<BigUint> {
    if require_order_preserving && !assignment.is_order_preserving(x.alphabet()) {
        return Err(Error::domain("assignment is not order-preserving"));
    }
    let digits = assignment.apply(x)?;
    continuant(&digits, kind)
}

/// Semi-regular continuant as a signed value via the determinant; used only by
/// tests that need the sign.
pub fn determinant_value(d: &[u64]) -> BigInt {
    bareiss_determinant(&tridiagonal_matrix(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Alphabet;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn regular_examples() {
        assert_eq!(continuant_regular(&[]).unwrap(), big(1));
        assert_eq!(continuant_regular(&[7]).unwrap(), big(7));
        // [0;2,1,2] = 1/(2 + 1/(1 + 1/2)) = 1/(2 + 2/3) = 3/8
        assert_eq!(continuant_regular(&[2, 1, 2]).unwrap(), big(8));
        assert_eq!(continuant_regular(&[1, 1, 1, 1, 1]).unwrap(), big(8));
        assert!(matches!(continuant_regular(&[1, 0]), Err(Error::Domain(_))));
    }

    #[test]
    fn semiregular_examples() {
        assert_eq!(continuant_semiregular(&[5, 7]).unwrap(), big(34));
        assert_eq!(continuant_semiregular(&[4, 5, 6, 4, 6, 3]).unwrap(), big(6827));
        assert_eq!(continuant_semiregular(&[4, 6, 4, 5, 6, 3]).unwrap(), big(6825));
        assert_eq!(continuant_semiregular(&[4, 16, 4, 15, 16, 3]).unwrap(), big(171135));
        assert!(matches!(continuant_semiregular(&[2, 1]), Err(Error::Domain(_))));
    }

    #[test]
    fn tridiagonal_examples() {
        let t = tridiagonal_check(&[3, 3], DEFAULT_TRIDIAGONAL_BOUND).unwrap();
        assert_eq!(t.permanent, big(10));
        assert_eq!(t.determinant, BigInt::from(8));
        let t = tridiagonal_check(&[4, 5, 6, 4, 6, 3], DEFAULT_TRIDIAGONAL_BOUND).unwrap();
        assert_eq!(t.determinant, BigInt::from(6827));
        assert_eq!(
            tridiagonal_check(&[2; 11], DEFAULT_TRIDIAGONAL_BOUND),
            Err(Error::SizeLimit { size: 11, cap: 10 })
        );
    }

    #[test]
    fn determinant_pivoting_with_ones() {
        // digit 1 can zero a pivot; the determinant may then be zero or negative
        assert_eq!(determinant_value(&[1, 1]), BigInt::from(0));
        assert_eq!(determinant_value(&[1, 1, 1]), BigInt::from(-1));
    }

    #[test]
    fn word_evaluation() {
        let abcd = Alphabet::latin(4).unwrap();
        let x = Word::parse(&abcd, "bcdbda").unwrap();
        let asg = Assignment::parse("a=3,b=4,c=5,d=6").unwrap();
        assert_eq!(evaluate_word(&x, &asg, ContinuantKind::Semi, true).unwrap(), big(6827));
        let x2 = Word::parse(&abcd, "bdbcda").unwrap();
        let asg2 = Assignment::positional(&abcd, &[3, 4, 7, 8]).unwrap();
        assert_eq!(evaluate_word(&x2, &asg2, ContinuantKind::Semi, true).unwrap(), big(18247));
        let a = Alphabet::latin(1).unwrap();
        let one = Word::parse(&a, "a").unwrap();
        assert_eq!(
            evaluate_word(&one, &Assignment::parse("a=5").unwrap(), ContinuantKind::Regular, true)
                .unwrap(),
            big(5)
        );
    }

    #[test]
    fn word_evaluation_errors() {
        let abc = Alphabet::latin(3).unwrap();
        let x = Word::parse(&abc, "abc").unwrap();
        let partial = Assignment::parse("a=2,b=3").unwrap();
        assert!(evaluate_word(&x, &partial, ContinuantKind::Semi, false).is_err());
        let backwards = Assignment::parse("a=4,b=3,c=2").unwrap();
        assert!(evaluate_word(&x, &backwards, ContinuantKind::Semi, true).is_err());
        assert!(evaluate_word(&x, &backwards, ContinuantKind::Semi, false).is_ok());
    }

    #[test]
    fn u128_path_agrees() {
        let d = [4, 16, 4, 15, 16, 3];
        assert_eq!(continuant_u128(&d, ContinuantKind::Semi), Some(171135));
        assert_eq!(continuant_u128(&[u64::MAX; 4], ContinuantKind::Regular), None);
    }
}
