//! Ordered alphabets, finite words and the reversed-prefix lexicographic order.
//!
//! Letters are stored as ranks into their [`Alphabet`], so comparing two ranks
//! compares the letters in the declared order. Symbols are only consulted for
//! parsing and display.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A nonempty, totally ordered set of letters. The order is the order of
/// declaration.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Arc<[char]>,
}

impl Alphabet {
    pub fn new(symbols: impl IntoIterator<Item = char>) -> Result<Self> {
        let symbols: Vec<char> = symbols.into_iter().collect();
        if symbols.is_empty() {
            return Err(Error::InvalidAlphabet("alphabet is empty".into()));
        }
        if symbols.len() > u8::MAX as usize {
            return Err(Error::InvalidAlphabet(format!(
                "{} letters, at most 255 supported",
                symbols.len()
            )));
        }
        for (i, c) in symbols.iter().enumerate() {
            if symbols[..i].contains(c) {
                return Err(Error::InvalidAlphabet(format!("duplicate letter {c:?}")));
            }
        }
        Ok(Alphabet {
            symbols: symbols.into(),
        })
    }

    /// Parses `a<b<c`, `a,b,c` or the bare form `abc`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let tokens: Vec<&str> = if s.contains('<') || s.contains(',') {
            s.split(['<', ',']).map(str::trim).collect()
        } else {
            return Alphabet::new(s.chars());
        };
        let mut symbols = Vec::with_capacity(tokens.len());
        for t in tokens {
            let mut chars = t.chars();
            match (chars.next(), chars.next()) {
                (Some(c), None) => symbols.push(c),
                _ => {
                    return Err(Error::InvalidAlphabet(format!(
                        "letter {t:?} must be a single character"
                    )))
                }
            }
        }
        Alphabet::new(symbols)
    }

    /// The first `k` lowercase latin letters, `a<b<...`.
    pub fn latin(k: usize) -> Result<Self> {
        if k == 0 || k > 26 {
            return Err(Error::InvalidAlphabet(format!("no latin alphabet of size {k}")));
        }
        Alphabet::new((0..k as u8).map(|i| (b'a' + i) as char))
    }

    /// `1<2<...<k`, the alphabet of interval exchange codings. Letters past 9
    /// continue with `a`, `b`, ... (base-36 digits).
    pub fn numeric(k: usize) -> Result<Self> {
        if k == 0 || k > 35 {
            return Err(Error::InvalidAlphabet(format!("no numeric alphabet of size {k}")));
        }
        Alphabet::new((1..=k as u32).map(|i| char::from_digit(i, 36).expect("digit < 36")))
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn symbol(&self, rank: u8) -> char {
        self.symbols[rank as usize]
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn rank(&self, letter: char) -> Option<u8> {
        self.symbols.iter().position(|&c| c == letter).map(|i| i as u8)
    }

    pub fn rank_of(&self, letter: char) -> Result<u8> {
        self.rank(letter).ok_or(Error::UnknownLetter(letter))
    }

    pub fn min_letter(&self) -> char {
        self.symbols[0]
    }

    pub fn max_letter(&self) -> char {
        self.symbols[self.symbols.len() - 1]
    }

    /// Same letters, opposite order.
    pub fn reversed(&self) -> Alphabet {
        Alphabet {
            symbols: self.symbols.iter().rev().copied().collect::<Vec<_>>().into(),
        }
    }

    /// Restriction to the letters at the given ranks, keeping their relative order.
    pub fn sub_alphabet(&self, ranks: &[u8]) -> Result<Alphabet> {
        let mut ranks = ranks.to_vec();
        ranks.sort_unstable();
        ranks.dedup();
        Alphabet::new(ranks.into_iter().map(|r| self.symbol(r)))
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.symbols.iter().enumerate() {
            if i > 0 {
                f.write_str("<")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Alphabet({self})")
    }
}

impl Serialize for Alphabet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// A finite word over an [`Alphabet`]. The empty word is allowed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word {
    alphabet: Alphabet,
    letters: Vec<u8>,
}

impl Word {
    pub fn empty(alphabet: &Alphabet) -> Word {
        Word {
            alphabet: alphabet.clone(),
            letters: Vec::new(),
        }
    }

    /// Parses a plain letter string. `""` and `"ε"` both denote the empty word.
    pub fn parse(alphabet: &Alphabet, s: &str) -> Result<Word> {
        let s = s.trim();
        if s == "ε" && alphabet.rank('ε').is_none() {
            return Ok(Word::empty(alphabet));
        }
        let letters = s
            .chars()
            .map(|c| alphabet.rank_of(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(Word {
            alphabet: alphabet.clone(),
            letters,
        })
    }

    pub fn from_ranks(alphabet: &Alphabet, letters: Vec<u8>) -> Result<Word> {
        if let Some(&bad) = letters.iter().find(|&&r| r as usize >= alphabet.len()) {
            return Err(Error::domain(format!(
                "rank {bad} outside an alphabet of {} letters",
                alphabet.len()
            )));
        }
        Ok(Word {
            alphabet: alphabet.clone(),
            letters,
        })
    }

    /// Caller guarantees every rank is in range.
    pub(crate) fn from_ranks_unchecked(alphabet: &Alphabet, letters: Vec<u8>) -> Word {
        debug_assert!(letters.iter().all(|&r| (r as usize) < alphabet.len()));
        Word {
            alphabet: alphabet.clone(),
            letters,
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn ranks(&self) -> &[u8] {
        &self.letters
    }

    pub fn into_ranks(self) -> Vec<u8> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letter(&self, i: usize) -> char {
        self.alphabet.symbol(self.letters[i])
    }

    pub fn first_rank(&self) -> Option<u8> {
        self.letters.first().copied()
    }

    pub fn last_rank(&self) -> Option<u8> {
        self.letters.last().copied()
    }

    pub fn reverse(&self) -> Word {
        Word {
            alphabet: self.alphabet.clone(),
            letters: self.letters.iter().rev().copied().collect(),
        }
    }

    pub fn is_palindrome(&self) -> bool {
        self.letters.iter().eq(self.letters.iter().rev())
    }

    pub fn factor(&self, start: usize, end: usize) -> Word {
        Word {
            alphabet: self.alphabet.clone(),
            letters: self.letters[start..end].to_vec(),
        }
    }

    pub fn concat(&self, other: &Word) -> Result<Word> {
        self.same_alphabet(other)?;
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Word {
            alphabet: self.alphabet.clone(),
            letters,
        })
    }

    pub fn count(&self, rank: u8) -> usize {
        self.letters.iter().filter(|&&r| r == rank).count()
    }

    pub fn parikh(&self) -> ParikhVector {
        parikh(self)
    }

    /// The same symbols read over another alphabet (e.g. with the order flipped).
    pub fn reinterpret(&self, alphabet: &Alphabet) -> Result<Word> {
        let letters = self
            .letters
            .iter()
            .map(|&r| alphabet.rank_of(self.alphabet.symbol(r)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Word {
            alphabet: alphabet.clone(),
            letters,
        })
    }

    pub fn same_alphabet(&self, other: &Word) -> Result<()> {
        if self.alphabet == other.alphabet {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch)
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &r in &self.letters {
            write!(f, "{}", self.alphabet.symbol(r))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            f.write_str("ε")
        } else {
            write!(f, "{self}")
        }
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Lexicographic order on rank sequences where a word is *smaller* than each of
/// its proper prefixes. The empty word is the maximum.
pub fn cmp_ranks(x: &[u8], y: &[u8]) -> Ordering {
    for (a, b) in x.iter().zip(y) {
        if a != b {
            return a.cmp(b);
        }
    }
    y.len().cmp(&x.len())
}

/// Compares two words in the reversed-prefix lexicographic order.
pub fn lex_compare(x: &Word, y: &Word) -> Result<Ordering> {
    x.same_alphabet(y)?;
    Ok(cmp_ranks(&x.letters, &y.letters))
}

pub fn reverse(x: &Word) -> Word {
    x.reverse()
}

/// Letter counts, indexed by rank.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ParikhVector {
    alphabet: Alphabet,
    counts: Vec<usize>,
}

impl ParikhVector {
    pub fn new(alphabet: &Alphabet, counts: Vec<usize>) -> Result<Self> {
        if counts.len() != alphabet.len() {
            return Err(Error::domain(format!(
                "{} counts for an alphabet of {} letters",
                counts.len(),
                alphabet.len()
            )));
        }
        Ok(ParikhVector {
            alphabet: alphabet.clone(),
            counts,
        })
    }

    /// Parses `a=3,b=5,c=7`. Letters not mentioned count zero.
    pub fn parse(alphabet: &Alphabet, s: &str) -> Result<Self> {
        let mut counts = vec![0usize; alphabet.len()];
        let mut seen = vec![false; alphabet.len()];
        for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (letter, n) = item
                .split_once('=')
                .ok_or_else(|| Error::parse(format!("expected letter=count, got {item:?}")))?;
            let mut chars = letter.trim().chars();
            let c = match (chars.next(), chars.next()) {
                (Some(c), None) => c,
                _ => return Err(Error::parse(format!("bad letter {letter:?}"))),
            };
            let r = alphabet.rank_of(c)? as usize;
            if seen[r] {
                return Err(Error::parse(format!("letter {c:?} given twice")));
            }
            seen[r] = true;
            counts[r] = n
                .trim()
                .parse()
                .map_err(|_| Error::parse(format!("bad count {n:?}")))?;
        }
        Ok(ParikhVector {
            alphabet: alphabet.clone(),
            counts,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn count(&self, rank: u8) -> usize {
        self.counts[rank as usize]
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }
}

impl fmt::Display for ParikhVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, n) in self.counts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}={n}", self.alphabet.symbol(i as u8))?;
        }
        Ok(())
    }
}

impl fmt::Debug for ParikhVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

pub fn parikh(x: &Word) -> ParikhVector {
    let mut counts = vec![0usize; x.alphabet.len()];
    for &r in &x.letters {
        counts[r as usize] += 1;
    }
    ParikhVector {
        alphabet: x.alphabet.clone(),
        counts,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::parse("a<b").unwrap()
    }

    fn w(a: &Alphabet, s: &str) -> Word {
        Word::parse(a, s).unwrap()
    }

    #[test]
    fn alphabet_forms() {
        let a = Alphabet::parse("a<b<c").unwrap();
        assert_eq!(a, Alphabet::parse("a,b,c").unwrap());
        assert_eq!(a, Alphabet::parse("abc").unwrap());
        assert_eq!(a.to_string(), "a<b<c");
        assert_eq!(a.reversed().to_string(), "c<b<a");
        assert!(Alphabet::parse("a<a").is_err());
        assert!(Alphabet::parse("").is_err());
        assert!(Alphabet::parse("ab<c").is_err());
        assert_eq!(Alphabet::numeric(3).unwrap().to_string(), "1<2<3");
    }

    #[test]
    fn lex_examples() {
        let a = ab();
        assert_eq!(lex_compare(&w(&a, "ab"), &w(&a, "b")).unwrap(), Ordering::Less);
        assert_eq!(lex_compare(&w(&a, "ab"), &w(&a, "a")).unwrap(), Ordering::Less);
        assert_eq!(lex_compare(&w(&a, "a"), &w(&a, "ab")).unwrap(), Ordering::Greater);
        assert_eq!(lex_compare(&w(&a, "abba"), &w(&a, "abba")).unwrap(), Ordering::Equal);
    }

    #[test]
    fn empty_word_is_maximal() {
        let a = ab();
        let e = Word::empty(&a);
        assert_eq!(lex_compare(&e, &e).unwrap(), Ordering::Equal);
        for s in ["a", "b", "ba", "bbb"] {
            assert_eq!(lex_compare(&w(&a, s), &e).unwrap(), Ordering::Less);
            assert_eq!(lex_compare(&e, &w(&a, s)).unwrap(), Ordering::Greater);
        }
    }

    #[test]
    fn mismatched_alphabets() {
        let x = w(&ab(), "ab");
        let y = w(&Alphabet::parse("a<b<c").unwrap(), "ab");
        assert_eq!(lex_compare(&x, &y), Err(Error::AlphabetMismatch));
    }

    #[test]
    fn reverse_examples() {
        let a = Alphabet::latin(3).unwrap();
        assert_eq!(w(&a, "abc").reverse(), w(&a, "cba"));
        assert_eq!(Word::empty(&a).reverse(), Word::empty(&a));
        assert_eq!(w(&a, "aba").reverse(), w(&a, "aba"));
        assert!(w(&a, "aba").is_palindrome());
    }

    #[test]
    fn parikh_examples() {
        let a = ab();
        assert_eq!(w(&a, "aabb").parikh().counts(), &[2, 2]);
        let abc = Alphabet::latin(3).unwrap();
        let p = w(&abc, "acbcbcbcacbcbca").parikh();
        assert_eq!(p.counts(), &[3, 5, 7]);
        assert_eq!(p.to_string(), "a=3,b=5,c=7");
        assert_eq!(ParikhVector::parse(&abc, "a=3,b=5,c=7").unwrap(), p);
        assert_eq!(Word::empty(&abc).parikh().counts(), &[0, 0, 0]);
        assert!(ParikhVector::parse(&abc, "a=1,a=2").is_err());
        assert!(ParikhVector::parse(&abc, "d=1").is_err());
    }

    #[test]
    fn unknown_letter() {
        assert_eq!(Word::parse(&ab(), "abc"), Err(Error::UnknownLetter('c')));
    }
}
