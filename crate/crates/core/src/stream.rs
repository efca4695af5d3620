//! Eventually periodic infinite words.
//!
//! A [`Stream`] is `pre · period^ω`. A [`BiWord`] is `… ℓ ℓ · c · r r …` with
//! `c` starting at position 0, so position `-1` holds the last letter of `ℓ`:
//!
//! ```text
//!   … ℓ ℓ ℓ | c_0 c_1 … c_(m-1) | r r r …
//!        -1    0                  m
//! ```
//!
//! Two eventually periodic words agreeing on `max(pre) + lcm(periods)` letters
//! agree everywhere, so all comparisons here are exact.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::singular::{balance_of_factors, factor_set, BalanceReport};
use crate::word::{Alphabet, Word};

/// `preperiod · period^ω`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Stream {
    preperiod: Word,
    period: Word,
}

impl Stream {
    pub fn new(preperiod: Word, period: Word) -> Result<Self> {
        preperiod.same_alphabet(&period)?;
        if period.is_empty() {
            return Err(Error::domain("the period of a stream must be nonempty"));
        }
        Ok(Stream { preperiod, period })
    }

    pub fn periodic(period: Word) -> Result<Self> {
        Stream::new(Word::empty(period.alphabet()), period)
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.period.alphabet()
    }

    pub fn preperiod(&self) -> &Word {
        &self.preperiod
    }

    pub fn period(&self) -> &Word {
        &self.period
    }

    pub fn rank_at(&self, i: usize) -> u8 {
        let pre = self.preperiod.ranks();
        if i < pre.len() {
            pre[i]
        } else {
            let p = self.period.ranks();
            p[(i - pre.len()) % p.len()]
        }
    }

    pub fn prefix(&self, n: usize) -> Word {
        Word::from_ranks_unchecked(self.alphabet(), (0..n).map(|i| self.rank_at(i)).collect())
    }

    /// The suffix starting at position `k`.
    pub fn shift(&self, k: usize) -> Stream {
        let pre = self.preperiod.ranks();
        if k <= pre.len() {
            return Stream {
                preperiod: Word::from_ranks_unchecked(self.alphabet(), pre[k..].to_vec()),
                period: self.period.clone(),
            };
        }
        let p = self.period.ranks();
        let off = (k - pre.len()) % p.len();
        let rotated = p[off..].iter().chain(&p[..off]).copied().collect();
        Stream {
            preperiod: Word::empty(self.alphabet()),
            period: Word::from_ranks_unchecked(self.alphabet(), rotated),
        }
    }

    /// Positions after which the two streams cannot first differ.
    fn horizon(&self, other: &Stream) -> usize {
        self.preperiod.len().max(other.preperiod.len()) + self.period.len().lcm(&other.period.len())
    }
}

impl fmt::Display for Stream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})^ω", self.preperiod, self.period)
    }
}

/// Index of the first letter where the streams differ, `None` if equal.
pub fn first_difference(s1: &Stream, s2: &Stream) -> Result<Option<usize>> {
    if s1.alphabet() != s2.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    Ok((0..s1.horizon(s2)).find(|&i| s1.rank_at(i) != s2.rank_at(i)))
}

/// Lexicographic comparison of two streams, decided exactly.
pub fn stream_compare(s1: &Stream, s2: &Stream) -> Result<Ordering> {
    Ok(match first_difference(s1, s2)? {
        None => Ordering::Equal,
        Some(i) => s1.rank_at(i).cmp(&s2.rank_at(i)),
    })
}

/// `… ℓ ℓ · center · r r …`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BiWord {
    left: Word,
    center: Word,
    right: Word,
}

impl BiWord {
    pub fn new(left: Word, center: Word, right: Word) -> Result<Self> {
        left.same_alphabet(&center)?;
        left.same_alphabet(&right)?;
        if left.is_empty() || right.is_empty() {
            return Err(Error::domain("the tail periods of a bi-infinite word must be nonempty"));
        }
        Ok(BiWord { left, center, right })
    }

    pub fn parse(alphabet: &Alphabet, left: &str, center: &str, right: &str) -> Result<Self> {
        BiWord::new(
            Word::parse(alphabet, left)?,
            Word::parse(alphabet, center)?,
            Word::parse(alphabet, right)?,
        )
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.left.alphabet()
    }

    pub fn left(&self) -> &Word {
        &self.left
    }

    pub fn center(&self) -> &Word {
        &self.center
    }

    pub fn right(&self) -> &Word {
        &self.right
    }

    pub fn rank_at(&self, i: i64) -> u8 {
        let c = self.center.len() as i64;
        if i < 0 {
            let l = self.left.ranks();
            let back = ((-i - 1) as usize) % l.len();
            l[l.len() - 1 - back]
        } else if i < c {
            self.center.ranks()[i as usize]
        } else {
            let r = self.right.ranks();
            r[(i - c) as usize % r.len()]
        }
    }

    /// `x_i x_(i+1) x_(i+2) …`.
    pub fn right_stream(&self, i: i64) -> Stream {
        let start_tail = i.max(self.center.len() as i64);
        let pre = (i..start_tail).map(|k| self.rank_at(k)).collect();
        let per = (start_tail..start_tail + self.right.len() as i64)
            .map(|k| self.rank_at(k))
            .collect();
        self.stream(pre, per)
    }

    /// `x_i x_(i-1) x_(i-2) …`.
    pub fn left_stream(&self, i: i64) -> Stream {
        let start_tail = i.min(-1);
        let pre = ((start_tail + 1)..=i).rev().map(|k| self.rank_at(k)).collect();
        let per = ((start_tail - self.left.len() as i64 + 1)..=start_tail)
            .rev()
            .map(|k| self.rank_at(k))
            .collect();
        self.stream(pre, per)
    }

    fn stream(&self, pre: Vec<u8>, per: Vec<u8>) -> Stream {
        Stream {
            preperiod: Word::from_ranks_unchecked(self.alphabet(), pre),
            period: Word::from_ranks_unchecked(self.alphabet(), per),
        }
    }

    /// The same symbols over another ordering of the letters.
    pub fn reinterpret(&self, alphabet: &Alphabet) -> Result<BiWord> {
        BiWord::new(
            self.left.reinterpret(alphabet)?,
            self.center.reinterpret(alphabet)?,
            self.right.reinterpret(alphabet)?,
        )
    }

    /// Compares `u = x_(s-1) x_(s-2) …` with `w = x_e x_(e+1) …`, returning the
    /// order and the first index where they differ.
    fn outward_cmp(&self, s: i64, e: i64) -> (Ordering, Option<usize>) {
        let pre_u = s.max(0) as usize;
        let pre_w = (self.center.len() as i64 - e).max(0) as usize;
        let bound = pre_u.max(pre_w) + self.left.len().lcm(&self.right.len());
        for j in 0..bound {
            let a = self.rank_at(s - 1 - j as i64);
            let b = self.rank_at(e + j as i64);
            if a != b {
                return (a.cmp(&b), Some(j));
            }
        }
        (Ordering::Equal, None)
    }
}

impl fmt::Display for BiWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "…({})·{}·({})…", self.left, self.center, self.right)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum MarkoffVerdict {
    Holds,
    /// The factor `a'b'` at `position`, `position + 1` has outward words that
    /// first differ at `index` the wrong way round.
    Violation { position: i64, index: usize },
}

/// Property (M): at each `a'b'` with `a' ≠ b'`, the words read outward from it
/// are equal or first differ with `b'` on the left and `a'` on the right.
///
/// Beyond `2|ℓ| + 2` letters to the left of the center, and `2|r| + 2` to the
/// right, the outcome at a position repeats with the tail period, so only
/// that range is scanned.
pub fn markoff_check(x: &BiWord) -> Result<MarkoffVerdict> {
    if x.alphabet().len() != 2 {
        return Err(Error::domain("property (M) is defined over two letters"));
    }
    let lo = -2 * x.left.len() as i64 - 2;
    let hi = x.center.len() as i64 + 2 * x.right.len() as i64 + 2;
    let found = (lo..=hi).into_par_iter().find_first(|&i| {
        let (a, b) = (x.rank_at(i), x.rank_at(i + 1));
        if a == b {
            return false;
        }
        match x.outward_cmp(i, i + 2) {
            (_, None) => false,
            (_, Some(j)) => x.rank_at(i - 1 - j as i64) != b,
        }
    });
    Ok(match found {
        None => MarkoffVerdict::Holds,
        Some(i) => MarkoffVerdict::Violation {
            position: i,
            index: x.outward_cmp(i, i + 2).1.expect("differs"),
        },
    })
}

/// What the window check runs on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WindowSubject {
    BiWord(BiWord),
    Stream(Stream),
    /// A finite prefix of some one-sided infinite word whose continuation is
    /// unknown.
    Prefix(Word),
}

impl WindowSubject {
    fn rank_at(&self, i: i64) -> u8 {
        match self {
            WindowSubject::BiWord(x) => x.rank_at(i),
            WindowSubject::Stream(x) => x.rank_at(i as usize),
            WindowSubject::Prefix(x) => x.ranks()[i as usize],
        }
    }

    /// Range of positions `v` may occupy.
    fn window(&self, radius: usize) -> (i64, i64) {
        let r = radius as i64;
        match self {
            WindowSubject::BiWord(x) => (-r, x.center.len() as i64 + r),
            WindowSubject::Stream(x) => (0, x.preperiod.len() as i64 + r),
            WindowSubject::Prefix(x) => (0, x.len().min(radius) as i64),
        }
    }

    fn alphabet(&self) -> &Alphabet {
        match self {
            WindowSubject::BiWord(x) => x.alphabet(),
            WindowSubject::Stream(x) => x.alphabet(),
            WindowSubject::Prefix(x) => x.alphabet(),
        }
    }

    /// `u` against `w` around `v = x[s..e)`, `None` when the known letters do
    /// not settle it.
    fn outward_cmp(&self, s: i64, e: i64) -> Option<(Ordering, Option<usize>)> {
        let (known_w, x) = match self {
            WindowSubject::BiWord(x) => return Some(x.outward_cmp(s, e)),
            WindowSubject::Stream(_) => (usize::MAX, self),
            WindowSubject::Prefix(w) => ((w.len() as i64 - e) as usize, self),
        };
        // u is finite, of length s
        let u_len = s as usize;
        for j in 0.. {
            match (j < u_len, j < known_w) {
                (true, true) => {
                    let a = x.rank_at(s - 1 - j as i64);
                    let b = x.rank_at(e + j as i64);
                    if a != b {
                        return Some((a.cmp(&b), Some(j)));
                    }
                }
                // u is a proper prefix of the infinite w, so w < u
                (false, _) => return Some((Ordering::Greater, None)),
                (true, false) => return None,
            }
        }
        unreachable!()
    }
}

/// A reversible factorization `x = reverse(u) · x[start..end) · w` of an
/// infinite word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InfiniteFactorization {
    pub start: i64,
    pub end: i64,
    pub v: Word,
    #[serde(serialize_with = "crate::serde_util::ordering_str")]
    pub v_vs_reverse: Ordering,
    #[serde(serialize_with = "crate::serde_util::ordering_str")]
    pub u_vs_w: Ordering,
    /// First index where `u` and `w` differ; `None` when one is a prefix of
    /// the other.
    pub first_difference: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum WindowVerdict {
    DefiniteViolation { witness: InfiniteFactorization },
    NoViolationWithin { radius: usize },
}

impl WindowVerdict {
    pub fn is_violation(&self) -> bool {
        matches!(self, WindowVerdict::DefiniteViolation { .. })
    }
}

/// Searches factorizations whose middle part lies within `radius` of the
/// center (of the preperiod, for streams; of the window, for prefixes) for a
/// reversible one. A violation is reported only when both comparisons are
/// settled, so it is always genuine; finding none proves nothing beyond the
/// window. The shortest, then leftmost, violation is returned.
pub fn window_singular_check(x: &WindowSubject, radius: usize) -> WindowVerdict {
    let (lo, hi) = x.window(radius);
    for len in 1..=(hi - lo) {
        for s in lo..=(hi - len) {
            let e = s + len;
            let vc = {
                let (mut i, mut j) = (s, e - 1);
                let mut c = Ordering::Equal;
                while i < j {
                    let (a, b) = (x.rank_at(i), x.rank_at(j));
                    if a != b {
                        c = a.cmp(&b);
                        break;
                    }
                    i += 1;
                    j -= 1;
                }
                c
            };
            if vc == Ordering::Equal {
                continue;
            }
            if let Some((uc, diff)) = x.outward_cmp(s, e) {
                if uc == vc {
                    let v = (s..e).map(|k| x.rank_at(k)).collect();
                    return WindowVerdict::DefiniteViolation {
                        witness: InfiniteFactorization {
                            start: s,
                            end: e,
                            v: Word::from_ranks_unchecked(x.alphabet(), v),
                            v_vs_reverse: vc,
                            u_vs_w: uc,
                            first_difference: diff,
                        },
                    };
                }
            }
        }
    }
    WindowVerdict::NoViolationWithin { radius }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum LyndonVerdict {
    Consistent,
    /// The suffix from `index` is strictly smaller than the stream.
    Violation { index: usize },
}

/// Checks `x <= shift^i(x)` for `1 <= i <= horizon`.
pub fn lyndon_prefix_check(x: &Stream, horizon: usize) -> LyndonVerdict {
    (1..=horizon)
        .find(|&i| stream_compare(x, &x.shift(i)).expect("same alphabet") == Ordering::Greater)
        .map_or(LyndonVerdict::Consistent, |index| LyndonVerdict::Violation { index })
}

/// Balance of all factors of length up to `max_len`, read from a stretch of
/// the word long enough to contain each of them.
pub fn balance_check_biword(x: &BiWord, max_len: usize) -> BalanceReport {
    let m_left = max_len.div_ceil(x.left.len()) + 1;
    let m_right = max_len.div_ceil(x.right.len()) + 1;
    let lo = -((m_left * x.left.len()) as i64);
    let hi = (x.center.len() + m_right * x.right.len()) as i64;
    let layout: Vec<u8> = (lo..hi).map(|i| x.rank_at(i)).collect();
    balance_of_factors(x.alphabet(), &factor_set(&layout, max_len), max_len)
}

#[cfg(test)]
mod tests {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;

    fn ab() -> Alphabet {
        Alphabet::latin(2).unwrap()
    }

    fn word(a: &Alphabet, s: &str) -> Word {
        Word::parse(a, s).unwrap()
    }

    fn stream(a: &Alphabet, pre: &str, per: &str) -> Stream {
        Stream::new(word(a, pre), word(a, per)).unwrap()
    }

    fn bi(l: &str, c: &str, r: &str) -> BiWord {
        BiWord::parse(&ab(), l, c, r).unwrap()
    }

    #[test]
    fn compare_examples() {
        let a = ab();
        let cmp = |x: &Stream, y: &Stream| stream_compare(x, y).unwrap();
        assert_eq!(cmp(&stream(&a, "", "ab"), &stream(&a, "", "ab")), Ordering::Equal);
        assert_eq!(cmp(&stream(&a, "", "a"), &stream(&a, "", "ab")), Ordering::Less);
        assert_eq!(cmp(&stream(&a, "a", "ba"), &stream(&a, "", "ab")), Ordering::Equal);
        assert_eq!(cmp(&stream(&a, "ab", "b"), &stream(&a, "", "ab")), Ordering::Greater);
        // equal for 6 letters, then differ at 6: lcm bound must reach it
        assert_eq!(cmp(&stream(&a, "", "aab"), &stream(&a, "", "aabaab")), Ordering::Equal);
        assert_eq!(cmp(&stream(&a, "", "ab"), &stream(&a, "", "ababab")), Ordering::Equal);
        assert_eq!(cmp(&stream(&a, "", "ababa"), &stream(&a, "", "ab")), Ordering::Less);
        let other = Alphabet::latin(3).unwrap();
        assert!(stream_compare(&stream(&a, "", "a"), &stream(&other, "", "a")).is_err());
        assert!(Stream::new(word(&a, "a"), Word::empty(&a)).is_err());
    }

    #[test]
    fn shifts_and_prefixes() {
        let a = ab();
        let s = stream(&a, "bb", "aab");
        assert_eq!(s.prefix(8).to_string(), "bbaabaab");
        assert_eq!(s.shift(3).prefix(5).to_string(), "abaab");
        assert_eq!(s.shift(1).prefix(4).to_string(), "baab");
    }

    #[test]
    fn biword_coordinates() {
        let x = bi("ab", "ba", "aab");
        let letters: String = (-4..8).map(|i| ab().symbol(x.rank_at(i))).collect();
        assert_eq!(letters, "ababbaaabaab");
        assert_eq!(x.right_stream(-1).prefix(6).to_string(), "bbaaab");
        assert_eq!(x.left_stream(1).prefix(6).to_string(), "abbaba");
        assert_eq!(x.left_stream(-3).prefix(4).to_string(), "baba");
        assert_eq!(x.right_stream(5).prefix(4).to_string(), "aaba");
    }

    #[test]
    fn markoff_examples() {
        assert_eq!(markoff_check(&bi("ab", "", "ab")).unwrap(), MarkoffVerdict::Holds);
        assert!(matches!(
            markoff_check(&bi("ab", "aabb", "ab")).unwrap(),
            MarkoffVerdict::Violation { .. }
        ));
        assert_eq!(markoff_check(&bi("abaab", "", "abaab")).unwrap(), MarkoffVerdict::Holds);
        let abc = Alphabet::latin(3).unwrap();
        assert!(markoff_check(&BiWord::parse(&abc, "ab", "", "c").unwrap()).is_err());
    }

    fn markoff_wide(x: &BiWord, reach: i64) -> bool {
        (-reach..=reach).all(|i| {
            let (a, b) = (x.rank_at(i), x.rank_at(i + 1));
            if a == b {
                return true;
            }
            let u = x.left_stream(i - 1);
            let w = x.right_stream(i + 2);
            match first_difference(&u, &w).unwrap() {
                None => true,
                Some(j) => u.rank_at(j) == b,
            }
        })
    }

    #[test]
    fn markoff_scan_range_is_enough() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut gen = |lo: usize| -> String {
            let n = rng.gen_range(lo..=5);
            (0..n).map(|_| if rng.gen_bool(0.6) { 'a' } else { 'b' }).collect()
        };
        for _ in 0..400 {
            let x = bi(&gen(1), &gen(0), &gen(1));
            let fast = markoff_check(&x).unwrap() == MarkoffVerdict::Holds;
            assert_eq!(fast, markoff_wide(&x, 60), "{x}");
        }
    }

    #[test]
    fn window_examples() {
        let v = window_singular_check(&WindowSubject::BiWord(bi("ab", "aabb", "ab")), 6);
        assert!(v.is_violation());
        let v = window_singular_check(&WindowSubject::BiWord(bi("a", "", "a")), 8);
        assert_eq!(v, WindowVerdict::NoViolationWithin { radius: 8 });
        let abc = Alphabet::latin(3).unwrap();
        let x = word(&abc, "acabcacacabcabcabcacac");
        assert!(!window_singular_check(&WindowSubject::Prefix(x), 30).is_violation());
        let s = stream(&abc, "acabc", "abcac");
        assert!(!window_singular_check(&WindowSubject::Stream(s), 20).is_violation());
    }

    #[test]
    fn window_prefix_needs_known_letters() {
        // aabb is reversible as a finite word, but as a prefix of an unknown
        // infinite word only decided comparisons count
        let x = word(&ab(), "aabb");
        match window_singular_check(&WindowSubject::Prefix(x.clone()), 4) {
            WindowVerdict::DefiniteViolation { witness } => {
                assert_eq!((witness.start, witness.end), (1, 3));
                assert_eq!(witness.v.to_string(), "ab");
                assert_eq!(witness.u_vs_w, Ordering::Less);
            }
            v => panic!("{v:?}"),
        }
        // u = ε is the largest word, so a prefix v with v > reverse(v) is reversible
        let x = word(&ab(), "ba");
        assert!(window_singular_check(&WindowSubject::Prefix(x), 2).is_violation());
        let x = word(&ab(), "ab");
        assert!(!window_singular_check(&WindowSubject::Prefix(x), 2).is_violation());
    }

    #[test]
    fn lyndon_examples() {
        let a = ab();
        assert_eq!(lyndon_prefix_check(&stream(&a, "", "ab"), 10), LyndonVerdict::Consistent);
        assert_eq!(
            lyndon_prefix_check(&stream(&a, "", "ba"), 10),
            LyndonVerdict::Violation { index: 1 }
        );
        assert_eq!(lyndon_prefix_check(&stream(&a, "a", "ab"), 10), LyndonVerdict::Consistent);
    }

    #[test]
    fn balance_examples() {
        assert!(balance_check_biword(&bi("ab", "", "ab"), 12).balanced);
        let r = balance_check_biword(&bi("ab", "aabb", "ab"), 12);
        assert!(!r.balanced);
        assert_eq!(r.palindrome.unwrap().len(), 0);
        assert!(balance_check_biword(&bi("abaab", "", "abaab"), 20).balanced);
        // the center alone is balanced but meets the tails badly
        assert!(!balance_check_biword(&bi("b", "a", "a"), 6).balanced);
    }
}
