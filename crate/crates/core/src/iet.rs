//! Symmetric interval exchanges with exact rational lengths, their natural
//! codings, and substitutive words used as test material.
//!
//! Interval `i` is `[γ_(i-1), γ_i)`; the map reverses the order of the
//! intervals, so on `I_i` it adds `Σ_(j>i) α_j - Σ_(j<i) α_j`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::word::{Alphabet, Word};

/// Interval lengths of a symmetric exchange.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IetSpec {
    lengths: Vec<BigRational>,
    /// `offsets[i]` is `Σ_(j<i) α_j`.
    offsets: Vec<BigRational>,
    /// `image_offsets[i]` is `Σ_(j>i) α_j`.
    image_offsets: Vec<BigRational>,
}

impl IetSpec {
    pub fn new(lengths: Vec<BigRational>) -> Result<Self> {
        if lengths.len() < 2 {
            return Err(Error::domain("an exchange needs at least two intervals"));
        }
        if lengths.len() > 36 {
            return Err(Error::domain("at most 36 intervals are supported"));
        }
        let zero = BigRational::zero();
        let one = BigRational::one();
        if let Some(a) = lengths.iter().find(|a| **a <= zero || **a >= one) {
            return Err(Error::domain(format!("length {a} is outside (0, 1)")));
        }
        let total: BigRational = lengths.iter().sum();
        if total != one {
            return Err(Error::domain(format!("lengths sum to {total}, not 1")));
        }
        let mut offsets = Vec::with_capacity(lengths.len());
        let mut acc = BigRational::zero();
        for a in &lengths {
            offsets.push(acc.clone());
            acc += a;
        }
        let image_offsets = offsets
            .iter()
            .zip(&lengths)
            .map(|(o, a)| &one - o - a)
            .collect();
        Ok(IetSpec {
            lengths,
            offsets,
            image_offsets,
        })
    }

    /// Parses `1/3,1/4,5/12`.
    pub fn parse(s: &str) -> Result<Self> {
        let lengths = s
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()?;
        IetSpec::new(lengths)
    }

    pub fn k(&self) -> usize {
        self.lengths.len()
    }

    pub fn lengths(&self) -> &[BigRational] {
        &self.lengths
    }

    /// Letters `1 < 2 < … < k`.
    pub fn alphabet(&self) -> Alphabet {
        Alphabet::numeric(self.k()).expect("k is at most 36")
    }

    pub fn discontinuities(&self) -> Discontinuities {
        let one = BigRational::one();
        Discontinuities {
            gammas: self.offsets[1..].to_vec(),
            betas: (1..self.k())
                .map(|i| &one - &self.offsets[self.k() - i])
                .collect(),
        }
    }

    /// Index (from 0) of the interval containing `x`.
    pub fn interval_of(&self, x: &BigRational) -> Result<usize> {
        check_unit(x)?;
        Ok(self.offsets.partition_point(|o| o <= x) - 1)
    }

    fn image_interval_of(&self, y: &BigRational) -> usize {
        // image intervals are laid out right to left
        self.image_offsets.partition_point(|o| o > y)
    }
}

impl fmt::Display for IetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.lengths.iter().map(|a| a.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

/// Parses `p/q` or an integer.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::parse(format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

fn check_unit(x: &BigRational) -> Result<()> {
    if *x < BigRational::zero() || *x >= BigRational::one() {
        Err(Error::domain(format!("{x} is outside [0, 1)")))
    } else {
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Discontinuities {
    /// `γ_i = α_1 + … + α_i`, the breaks of the map.
    #[serde(serialize_with = "rationals")]
    pub gammas: Vec<BigRational>,
    /// `β_i = α_(k+1-i) + … + α_k`, the breaks of the inverse.
    #[serde(serialize_with = "rationals")]
    pub betas: Vec<BigRational>,
}

fn rationals<S: serde::Serializer>(v: &[BigRational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|r| r.to_string()))
}

pub fn iet_apply(spec: &IetSpec, x: &BigRational) -> Result<BigRational> {
    let i = spec.interval_of(x)?;
    Ok(x + &spec.image_offsets[i] - &spec.offsets[i])
}

pub fn iet_inverse_apply(spec: &IetSpec, y: &BigRational) -> Result<BigRational> {
    check_unit(y)?;
    let i = spec.image_interval_of(y);
    Ok(y - &spec.image_offsets[i] + &spec.offsets[i])
}

/// `x_lo … x_hi` of the natural coding; `word[n - origin]` is `x_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodingWindow {
    pub origin: i64,
    pub word: Word,
}

impl CodingWindow {
    pub fn letter_at(&self, n: i64) -> Option<char> {
        let i = n - self.origin;
        (0..self.word.len() as i64)
            .contains(&i)
            .then(|| self.word.letter(i as usize))
    }
}

pub fn natural_coding(spec: &IetSpec, gamma: &BigRational, lo: i64, hi: i64) -> Result<CodingWindow> {
    check_unit(gamma)?;
    if lo > 0 || hi < 0 {
        return Err(Error::domain("the window must contain position 0"));
    }
    let mut forward = Vec::with_capacity(hi as usize + 1);
    let mut p = gamma.clone();
    for n in 0..=hi {
        forward.push(spec.interval_of(&p)? as u8);
        if n < hi {
            p = iet_apply(spec, &p)?;
        }
    }
    let mut backward = Vec::with_capacity((-lo) as usize);
    let mut p = gamma.clone();
    for _ in lo..0 {
        p = iet_inverse_apply(spec, &p)?;
        backward.push(spec.interval_of(&p)? as u8);
    }
    backward.reverse();
    backward.extend(forward);
    Ok(CodingWindow {
        origin: lo,
        word: Word::from_ranks_unchecked(&spec.alphabet(), backward),
    })
}

/// Length of the orbit of `gamma`, if it closes within `cap` steps. Orbits of
/// rational exchanges always close.
pub fn orbit_period(spec: &IetSpec, gamma: &BigRational, cap: usize) -> Result<Option<usize>> {
    check_unit(gamma)?;
    let mut p = iet_apply(spec, gamma)?;
    for n in 1..=cap {
        if p == *gamma {
            return Ok(Some(n));
        }
        p = iet_apply(spec, &p)?;
    }
    Ok(None)
}

/// A letter-to-word substitution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Substitution {
    domain: Alphabet,
    codomain: Alphabet,
    images: Vec<Vec<u8>>,
}

impl Substitution {
    /// `images` in the order of `domain`'s letters; none may be empty.
    pub fn new(domain: &Alphabet, codomain: &Alphabet, images: &[&str]) -> Result<Self> {
        if images.len() != domain.len() {
            return Err(Error::domain(format!(
                "{} images for {} letters",
                images.len(),
                domain.len()
            )));
        }
        let images = images
            .iter()
            .map(|s| {
                let w = Word::parse(codomain, s)?;
                if w.is_empty() {
                    Err(Error::domain("substitution images must be nonempty"))
                } else {
                    Ok(w.into_ranks())
                }
            })
            .collect::<Result<_>>()?;
        Ok(Substitution {
            domain: domain.clone(),
            codomain: codomain.clone(),
            images,
        })
    }

    /// Parses `0->01,1->0`; both alphabets are the letters seen, in order of
    /// their first appearance unless they are all digits, which sort.
    pub fn parse(s: &str) -> Result<Self> {
        let mut rules = Vec::new();
        for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (l, r) = item
                .split_once("->")
                .ok_or_else(|| Error::parse(format!("expected letter->word, got {item:?}")))?;
            let mut cs = l.trim().chars();
            let c = match (cs.next(), cs.next()) {
                (Some(c), None) => c,
                _ => return Err(Error::parse(format!("bad letter {l:?}"))),
            };
            rules.push((c, r.trim().to_string()));
        }
        let collect = |chars: Vec<char>| -> Result<Alphabet> {
            let mut seen: Vec<char> = Vec::new();
            for c in chars {
                if !seen.contains(&c) {
                    seen.push(c);
                }
            }
            if seen.iter().all(char::is_ascii_digit) {
                seen.sort_unstable();
            }
            Alphabet::new(seen)
        };
        let domain = collect(rules.iter().map(|(c, _)| *c).collect())?;
        if domain.len() != rules.len() {
            return Err(Error::parse("a letter has two rules"));
        }
        let codomain = collect(rules.iter().flat_map(|(_, r)| r.chars()).collect())?;
        let mut images = vec![String::new(); domain.len()];
        for (c, r) in rules {
            images[domain.rank_of(c)? as usize] = r;
        }
        let refs: Vec<&str> = images.iter().map(String::as_str).collect();
        Substitution::new(&domain, &codomain, &refs)
    }

    pub fn domain(&self) -> &Alphabet {
        &self.domain
    }

    pub fn codomain(&self) -> &Alphabet {
        &self.codomain
    }

    /// The first `length` letters of the image of `seed`.
    pub fn image_prefix(&self, seed: &Word, length: usize) -> Result<Word> {
        let seed = seed.reinterpret(&self.domain)?;
        let mut out = Vec::with_capacity(length);
        for &r in seed.ranks() {
            if out.len() >= length {
                break;
            }
            out.extend_from_slice(&self.images[r as usize]);
        }
        if out.len() < length {
            return Err(Error::domain(format!(
                "the seed only yields {} of {length} letters",
                out.len()
            )));
        }
        out.truncate(length);
        Ok(Word::from_ranks_unchecked(&self.codomain, out))
    }

    /// Prefix of the fixed point beginning with `start`, which must map to a
    /// longer word beginning with itself.
    pub fn fixed_point_prefix(&self, start: char, length: usize) -> Result<Word> {
        if self.domain != self.codomain {
            return Err(Error::domain("a fixed point needs an endomorphism"));
        }
        let s = self.domain.rank_of(start)?;
        let img = &self.images[s as usize];
        if img[0] != s || img.len() < 2 {
            return Err(Error::domain(format!("{start} does not grow into a fixed point")));
        }
        let mut w = vec![s];
        while w.len() < length {
            w = w.iter().flat_map(|&r| self.images[r as usize].iter().copied()).collect();
        }
        w.truncate(length);
        Ok(Word::from_ranks_unchecked(&self.domain, w))
    }
}

/// Prefix of the Fibonacci word, the fixed point of `0 -> 01, 1 -> 0`.
pub fn fibonacci_word(length: usize) -> Word {
    Substitution::parse("0->01,1->0")
        .and_then(|s| s.fixed_point_prefix('0', length))
        .expect("valid substitution")
}

/// `length` letters of the image of `seed` under `rules`.
pub fn morphic_word(rules: &Substitution, seed: &Word, length: usize) -> Result<Word> {
    rules.image_prefix(seed, length)
}

/// The ternary example word: `0 ·` Fibonacci, under `0 -> 1213, 1 -> 12213`.
pub fn weak_bispecial_example(length: usize) -> Word {
    let rules = Substitution::parse("0->1213,1->12213").expect("valid substitution");
    let mut seed = vec![0u8];
    seed.extend(fibonacci_word(length / 4 + 2).into_ranks());
    let seed = Word::from_ranks_unchecked(rules.domain(), seed);
    rules.image_prefix(&seed, length).expect("seed is long enough")
}

/// Orbit points keyed by value, for cycle checks in tests and tools.
pub fn orbit_points(spec: &IetSpec, gamma: &BigRational, steps: usize) -> Result<HashMap<BigRational, usize>> {
    let mut seen = HashMap::new();
    let mut p = gamma.clone();
    for n in 0..steps {
        seen.entry(p.clone()).or_insert(n);
        p = iet_apply(spec, &p)?;
    }
    Ok(seen)
}

#[cfg(test)]
mod tests {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;

    fn q(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    fn spec(s: &str) -> IetSpec {
        IetSpec::parse(s).unwrap()
    }

    #[test]
    fn spec_validation() {
        assert!(IetSpec::parse("1/2,1/2").is_ok());
        assert!(IetSpec::parse("1/2,1/3").is_err());
        assert!(IetSpec::parse("1").is_err());
        assert!(IetSpec::parse("0,1").is_err());
        assert!(IetSpec::parse("1/2,x").is_err());
        assert!(parse_rational("1/0").is_err());
        let d = spec("1/3,1/4,5/12").discontinuities();
        assert_eq!(d.gammas, vec![q("1/3"), q("7/12")]);
        assert_eq!(d.betas, vec![q("5/12"), q("2/3")]);
    }

    #[test]
    fn apply_examples() {
        let s = spec("1/3,2/3");
        assert_eq!(iet_apply(&s, &q("0")).unwrap(), q("2/3"));
        assert_eq!(iet_apply(&s, &q("1/2")).unwrap(), q("1/6"));
        let s3 = spec("1/2,1/3,1/6");
        assert_eq!(iet_apply(&s3, &q("0")).unwrap(), q("1/2"));
        assert!(iet_apply(&s, &q("1")).is_err());
        assert!(iet_apply(&s, &q("-1/5")).is_err());
    }

    #[test]
    fn inverse_examples() {
        let s = spec("1/3,2/3");
        assert_eq!(iet_inverse_apply(&s, &q("2/3")).unwrap(), q("0"));
        assert_eq!(iet_inverse_apply(&s, &q("1/6")).unwrap(), q("1/2"));
        let s3 = spec("1/2,1/3,1/6");
        assert_eq!(iet_inverse_apply(&s3, &q("1/2")).unwrap(), q("0"));
    }

    #[test]
    fn round_trip_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let k = rng.gen_range(2..=5);
            let d: i64 = rng.gen_range(k as i64..=60);
            let mut cuts: Vec<i64> = Vec::new();
            while cuts.len() < k - 1 {
                let c = rng.gen_range(1..d);
                if !cuts.contains(&c) {
                    cuts.push(c);
                }
            }
            cuts.sort();
            cuts.insert(0, 0);
            cuts.push(d);
            let lengths = cuts
                .windows(2)
                .map(|w| BigRational::new((w[1] - w[0]).into(), d.into()))
                .collect();
            let s = IetSpec::new(lengths).unwrap();
            let y = BigRational::new(rng.gen_range(0..997).into(), 997.into());
            let x = iet_inverse_apply(&s, &y).unwrap();
            assert_eq!(iet_apply(&s, &x).unwrap(), y);
            assert_eq!(iet_inverse_apply(&s, &iet_apply(&s, &y).unwrap()).unwrap(), y);
        }
    }

    #[test]
    fn coding_examples() {
        let s = spec("1/3,2/3");
        let c = natural_coding(&s, &q("0"), 0, 5).unwrap();
        assert_eq!(c.word.to_string(), "122122");
        let c = natural_coding(&s, &q("1/2"), 0, 0).unwrap();
        assert_eq!(c.word.to_string(), "2");
        let c = natural_coding(&s, &q("0"), -3, 2).unwrap();
        assert_eq!(c.word.to_string(), "122122");
        assert_eq!(c.letter_at(0), Some('1'));
        assert_eq!(c.letter_at(-1), Some('2'));
        assert_eq!(c.letter_at(3), None);
        assert!(natural_coding(&s, &q("0"), 1, 2).is_err());
    }

    #[test]
    fn two_interval_coding_is_a_rotation_coding() {
        // x_n = 1 iff {γ + n α_2} < α_1
        let s = spec("13/34,21/34");
        let a1 = q("13/34");
        let a2 = q("21/34");
        let gamma = q("5/34");
        let c = natural_coding(&s, &gamma, 0, 200).unwrap();
        for n in 0..=200i64 {
            let mut p = &gamma + &a2 * BigRational::from_integer(n.into());
            p = &p - p.floor();
            let expect = if p < a1 { '1' } else { '2' };
            assert_eq!(c.letter_at(n), Some(expect), "n = {n}");
        }
    }

    #[test]
    fn orbits_close() {
        let s = spec("1/3,1/4,5/12");
        let n = orbit_period(&s, &q("1/7"), 1000).unwrap().unwrap();
        assert_eq!(orbit_points(&s, &q("1/7"), n).unwrap().len(), n);
        assert_eq!(orbit_period(&spec("1/3,2/3"), &q("0"), 10).unwrap(), Some(3));
    }

    #[test]
    fn substitution_examples() {
        assert_eq!(fibonacci_word(11).to_string(), "01001010010");
        let x = weak_bispecial_example(20);
        assert_eq!(x.to_string(), "12131213122131213121");
        let id = Substitution::parse("a->a,b->b").unwrap();
        let seed = Word::parse(id.domain(), "abba").unwrap();
        assert_eq!(morphic_word(&id, &seed, 3).unwrap().to_string(), "abb");
        assert!(morphic_word(&id, &seed, 5).is_err());
        assert!(Substitution::parse("a->,b->a").is_err());
        assert!(Substitution::parse("a->b,a->a").is_err());
    }
}
