//! The singular pair of a ternary abelian class.
//!
//! The Parikh vector is reduced step by step until a base case is reached whose
//! singular word is known in closed form. The steps are then undone with the
//! matching morphism, each of which preserves singularity.

use std::fmt;

use serde::Serialize;

use crate::binary::singular_binary_ranks;
use crate::error::{Error, Result};
use crate::morphism::{lambda_min_append, rho_max_drop, xi_bounded};
use crate::word::{Alphabet, Word};

/// Counts of `a`, `b`, `c`.
pub type Vector3 = [usize; 3];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Rule {
    ReduceA,
    ReduceC,
    ReduceB,
    Stop,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// One reduction step taken from `vector`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionState {
    pub vector: Vector3,
    /// `n_c - n_a + 1`.
    pub delta: i64,
    pub rule_applied: Rule,
}

impl ReductionState {
    /// The vector after the step, `None` at a base case.
    pub fn next(&self) -> Option<Vector3> {
        let [a, b, c] = self.vector;
        match self.rule_applied {
            Rule::Stop => None,
            Rule::ReduceA => Some([a - b - c - 1, b, c]),
            Rule::ReduceC => Some([a, b, c + 1 - a - b]),
            Rule::ReduceB => Some([a, b - self.delta.unsigned_abs() as usize, c]),
        }
    }
}

pub fn is_base_case(v: Vector3) -> bool {
    let [a, b, c] = v;
    a * b * c == 0 || a == c + 1
}

/// Chooses the step for `v`. The stop test comes first, then the rules in
/// order; the first that applies wins.
pub fn reduce_vector(v: Vector3) -> ReductionState {
    let [a, b, c] = v;
    let delta = c as i64 - a as i64 + 1;
    let rule_applied = if is_base_case(v) {
        Rule::Stop
    } else if a > b + c {
        Rule::ReduceA
    } else if c + 1 >= a + b {
        Rule::ReduceC
    } else {
        debug_assert!(b as u64 >= delta.unsigned_abs() && delta != 0);
        Rule::ReduceB
    };
    ReductionState {
        vector: v,
        delta,
        rule_applied,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionTrace {
    /// Ends with the `Stop` state of the base case.
    pub states: Vec<ReductionState>,
}

impl ReductionTrace {
    pub fn base(&self) -> Vector3 {
        self.states.last().expect("trace is never empty").vector
    }
}

pub fn reduction_trace(v: Vector3) -> ReductionTrace {
    let mut states = Vec::new();
    let mut cur = v;
    loop {
        let s = reduce_vector(cur);
        states.push(s);
        match s.next() {
            None => break,
            Some(n) => {
                assert!(
                    n.iter().sum::<usize>() < cur.iter().sum::<usize>(),
                    "reduction of {cur:?} did not shrink"
                );
                cur = n;
            }
        }
    }
    ReductionTrace { states }
}

fn require_ternary(alphabet: &Alphabet) -> Result<()> {
    if alphabet.len() == 3 {
        Ok(())
    } else {
        Err(Error::Scope(format!(
            "the ternary construction needs exactly three letters, got {alphabet}"
        )))
    }
}

/// The known singular word of a base-case vector.
pub fn base_case_word(alphabet: &Alphabet, v: Vector3) -> Result<Word> {
    require_ternary(alphabet)?;
    if !is_base_case(v) {
        return Err(Error::domain(format!("{v:?} is not a base case")));
    }
    let [p, q, r] = v;
    let ranks = if let Some(zero) = v.iter().position(|&n| n == 0) {
        // the two surviving letters, in alphabet order
        let keep: Vec<u8> = (0..3u8).filter(|&i| i as usize != zero).collect();
        singular_binary_ranks(v[keep[0] as usize], v[keep[1] as usize])?
            .into_iter()
            .map(|l| keep[l as usize])
            .collect()
    } else {
        let mut out = vec![0];
        out.extend(std::iter::repeat_n(1, q));
        for _ in 0..r {
            out.extend([2, 0]);
        }
        debug_assert_eq!(p, r + 1);
        out
    };
    Ok(Word::from_ranks_unchecked(alphabet, ranks))
}

/// The singular pair of the class `v`. The first word is the replayed output
/// unless its reversal begins with a strictly smaller letter.
pub fn construct_ternary(alphabet: &Alphabet, v: Vector3) -> Result<(Word, Word)> {
    require_ternary(alphabet)?;
    if v == [0, 0, 0] {
        return Err(Error::domain("Parikh vector is zero"));
    }
    let trace = reduction_trace(v);
    let mut x = base_case_word(alphabet, trace.base())?;
    for s in trace.states.iter().rev().skip(1) {
        x = match s.rule_applied {
            Rule::ReduceA => lambda_min_append(&x),
            Rule::ReduceC => rho_max_drop(&x),
            Rule::ReduceB => xi_bounded(&x)?,
            Rule::Stop => unreachable!("only the last state stops"),
        };
    }
    debug_assert_eq!(x.parikh().counts(), &v);
    let rx = x.reverse();
    if rx.first_rank() < x.first_rank() {
        Ok((rx, x))
    } else {
        Ok((x, rx))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeparatingReport {
    /// Letters occurring in every length-2 factor. Every letter qualifies
    /// when the word is shorter than 2.
    pub letters: Vec<char>,
    /// Singular ternary words only: `|x|_a >= |x|_b + |x|_c + 1`.
    pub a_excess: Option<bool>,
    /// Singular ternary words only: `|x|_c >= |x|_a + |x|_b - 1`.
    pub c_excess: Option<bool>,
}

pub fn separating_report(x: &Word) -> SeparatingReport {
    let r = x.ranks();
    let alphabet = x.alphabet();
    let letters = (0..alphabet.len() as u8)
        .filter(|&d| r.windows(2).all(|f| f.contains(&d)))
        .map(|d| alphabet.symbol(d))
        .collect();
    let (a_excess, c_excess) =
        if alphabet.len() == 3 && crate::singular::is_singular(x) {
            let [a, b, c] = [x.count(0), x.count(1), x.count(2)];
            (Some(a > b + c), Some(c + 1 >= a + b))
        } else {
            (None, None)
        };
    SeparatingReport {
        letters,
        a_excess,
        c_excess,
    }
}

/// Number of maximal runs of `letter`.
pub fn count_runs(x: &Word, letter: char) -> Result<usize> {
    let d = x.alphabet().rank_of(letter)?;
    let r = x.ranks();
    Ok((0..r.len())
        .filter(|&i| r[i] == d && (i == 0 || r[i - 1] != d))
        .count())
}

/// Number of maximal runs of the middle letter of a ternary word.
pub fn count_b_runs(x: &Word) -> Result<usize> {
    require_ternary(x.alphabet())?;
    count_runs(x, x.alphabet().symbol(1))
}

#[cfg(test)]
mod tests {
    use std::collections::{BTreeSet, HashMap};

    use rayon::prelude::*;

    use super::*;
    use crate::singular::classify_singular_fast;

    fn abc() -> Alphabet {
        Alphabet::latin(3).unwrap()
    }

    fn w(s: &str) -> Word {
        Word::parse(&abc(), s).unwrap()
    }

    #[test]
    fn reduction_examples() {
        let s = reduce_vector([3, 5, 7]);
        assert_eq!((s.rule_applied, s.next()), (Rule::ReduceC, Some([3, 5, 0])));
        let s = reduce_vector([3, 4, 5]);
        assert_eq!((s.rule_applied, s.next()), (Rule::ReduceB, Some([3, 1, 5])));
        assert_eq!(s.delta, 3);
        let s = reduce_vector([3, 1, 5]);
        assert_eq!((s.rule_applied, s.next()), (Rule::ReduceC, Some([3, 1, 2])));
        assert_eq!(reduce_vector([3, 1, 2]).rule_applied, Rule::Stop);
        assert_eq!(reduce_vector([1, 1, 0]).rule_applied, Rule::Stop);
    }

    #[test]
    fn trace_of_3_7_5() {
        let t = reduction_trace([3, 7, 5]);
        let vs: Vec<Vector3> = t.states.iter().map(|s| s.vector).collect();
        assert_eq!(vs, vec![[3, 7, 5], [3, 4, 5], [3, 1, 5], [3, 1, 2]]);
    }

    #[test]
    fn base_cases() {
        assert_eq!(base_case_word(&abc(), [3, 1, 2]).unwrap().to_string(), "abcaca");
        assert_eq!(base_case_word(&abc(), [2, 3, 1]).unwrap().to_string(), "abbbca");
        assert_eq!(base_case_word(&abc(), [0, 4, 0]).unwrap().to_string(), "bbbb");
        assert_eq!(base_case_word(&abc(), [0, 2, 3]).unwrap().to_string(), "bcccb");
        assert_eq!(base_case_word(&abc(), [2, 0, 1]).unwrap().to_string(), "aca");
        assert!(base_case_word(&abc(), [2, 2, 2]).is_err());
        assert!(classify_singular_fast(&w("abbbca")).is_singular());
    }

    #[test]
    fn construction_examples() {
        let (x, rx) = construct_ternary(&abc(), [3, 5, 7]).unwrap();
        assert_eq!(x.to_string(), "acbcbcbcacbcbca");
        assert_eq!(rx, x.reverse());
        let (y, _) = construct_ternary(&abc(), [3, 7, 5]).unwrap();
        assert_eq!(y.to_string(), "acbbbcbbcacbbca");
        assert_eq!(construct_ternary(&abc(), [4, 0, 0]).unwrap().0.to_string(), "aaaa");
        assert!(construct_ternary(&abc(), [0, 0, 0]).is_err());
        assert!(construct_ternary(&Alphabet::latin(4).unwrap(), [1, 1, 1]).is_err());
    }

    #[test]
    fn separating_examples() {
        assert_eq!(separating_report(&w("acbcbcbcacbcbca")).letters, vec!['c']);
        assert_eq!(separating_report(&w("abacaba")).letters, vec!['a']);
        // strict alternation: both letters separate
        assert_eq!(separating_report(&w("acacaca")).letters, vec!['a', 'c']);
        let ab = Word::parse(&Alphabet::latin(2).unwrap(), "abab").unwrap();
        assert_eq!(separating_report(&ab).letters, vec!['a', 'b']);
        assert_eq!(separating_report(&w("b")).letters, vec!['a', 'b', 'c']);
        let r = separating_report(&w("acacaca"));
        assert_eq!((r.a_excess, r.c_excess), (Some(true), Some(true)));
    }

    #[test]
    fn run_examples() {
        assert_eq!(count_b_runs(&w("acbbbcbbcacbbca")).unwrap(), 3);
        assert_eq!(count_b_runs(&w("bbbb")).unwrap(), 1);
        assert_eq!(count_b_runs(&w("acacaca")).unwrap(), 0);
        assert_eq!(count_b_runs(&w("")).unwrap(), 0);
    }

    fn words_of_length(n: usize) -> Vec<Vec<u8>> {
        (0..3usize.pow(n as u32))
            .map(|mut code| {
                (0..n)
                    .map(|_| {
                        let l = (code % 3) as u8;
                        code /= 3;
                        l
                    })
                    .collect()
            })
            .collect()
    }

    fn singular_classes(max: usize) -> HashMap<Vector3, BTreeSet<Vec<u8>>> {
        let found: Vec<Vec<u8>> = (1..=max)
            .into_par_iter()
            .flat_map(|n| {
                words_of_length(n)
                    .into_par_iter()
                    .filter(|r| {
                        classify_singular_fast(&Word::from_ranks_unchecked(&abc(), r.clone()))
                            .is_singular()
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
        let mut classes: HashMap<Vector3, BTreeSet<Vec<u8>>> = HashMap::new();
        for r in found {
            let mut v = [0; 3];
            for &l in &r {
                v[l as usize] += 1;
            }
            classes.entry(v).or_default().insert(r);
        }
        classes
    }

    #[test]
    fn construction_is_the_whole_singular_class_up_to_12() {
        let classes = singular_classes(12);
        let mut seen = 0;
        for total in 1..=12 {
            for a in 0..=total {
                for b in 0..=total - a {
                    let v = [a, b, total - a - b];
                    let (x, rx) = construct_ternary(&abc(), v).unwrap();
                    let expect: BTreeSet<Vec<u8>> =
                        [x.ranks().to_vec(), rx.ranks().to_vec()].into();
                    assert_eq!(classes.get(&v), Some(&expect), "{v:?}");
                    seen += 1;
                }
            }
        }
        assert_eq!(seen, classes.len());
    }

    #[test]
    fn run_count_and_forbidden_bigrams_on_singular_words() {
        for (v, words) in singular_classes(11) {
            let [a, b, c] = v;
            let delta = c as i64 - a as i64 + 1;
            for r in words {
                let x = Word::from_ranks_unchecked(&abc(), r.clone());
                if b as u64 >= delta.unsigned_abs() && delta != 0 && a + b > 1 {
                    assert_eq!(count_b_runs(&x).unwrap() as u64, delta.unsigned_abs(), "{x:?}");
                }
                let has = |p: [u8; 2]| r.windows(2).any(|f| f == p);
                if delta > 0 {
                    assert!(!has([0, 1]) && !has([1, 0]), "{x:?}");
                }
                if delta < 0 {
                    assert!(!has([1, 2]) && !has([2, 1]), "{x:?}");
                }
            }
        }
    }
}
