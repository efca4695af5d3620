use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use singular_core::continuant::{continuant_regular, continuant_semiregular, tridiagonal_check};
use singular_core::extremal::verify_ternary_conjecture;
use singular_core::iet::{iet_apply, iet_inverse_apply, natural_coding, orbit_period, IetSpec};
use singular_core::language::{collect_language, soc_check, SocVerdict};
use singular_core::stream::{balance_check_biword, markoff_check, window_singular_check, BiWord, MarkoffVerdict, WindowSubject};
use singular_core::{Alphabet, Result, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Ternary,
    Markoff,
    Continuant,
    Iet,
}

#[derive(Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub checked: usize,
    pub failures: Vec<String>,
    pub holds: bool,
}

pub struct Params {
    pub seed: u64,
    pub samples: usize,
    pub max_total: usize,
    pub assignment: [u64; 3],
    pub radius: usize,
    pub max_factor_len: usize,
}

pub fn run(suite: Suite, p: &Params) -> Result<SuiteReport> {
    let (name, seed, checked, failures) = match suite {
        Suite::Ternary => {
            let r = verify_ternary_conjecture(p.max_total, p.assignment)?;
            let failures = r.violations.iter().map(|v| format!("{v:?}")).collect();
            ("ternary", None, r.classes.len(), failures)
        }
        Suite::Markoff => ("markoff", Some(p.seed), p.samples, markoff(p)?),
        Suite::Continuant => ("continuant", Some(p.seed), p.samples, continuant(p)?),
        Suite::Iet => ("iet", Some(p.seed), p.samples, iet(p)?),
    };
    Ok(SuiteReport {
        suite: name.into(),
        seed,
        checked,
        holds: failures.is_empty(),
        failures,
    })
}

/// One generator per sample, so results do not depend on scheduling.
fn rng_for(seed: u64, i: usize) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(i as u64);
    r
}

fn random_word(rng: &mut ChaCha8Rng, alphabet: &Alphabet, lo: usize, hi: usize) -> Word {
    let n = rng.gen_range(lo..=hi);
    let k = alphabet.len() as u8;
    Word::from_ranks(alphabet, (0..n).map(|_| rng.gen_range(0..k)).collect()).expect("ranks in range")
}

fn collect_failures(results: Vec<Result<Option<String>>>) -> Result<Vec<String>> {
    Ok(results.into_iter().collect::<Result<Vec<_>>>()?.into_iter().flatten().collect())
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// Property (M), balance, and the window search must agree.
fn markoff(p: &Params) -> Result<Vec<String>> {
    let ab = Alphabet::latin(2)?;
    let results = (0..p.samples)
        .into_par_iter()
        .map(|i| -> Result<Option<String>> {
            let mut rng = rng_for(p.seed, i);
            let x = BiWord::new(
                random_word(&mut rng, &ab, 1, 6),
                random_word(&mut rng, &ab, 0, 6),
                random_word(&mut rng, &ab, 1, 6),
            )?;
            let (l, r) = (x.left().len(), x.right().len());
            let n = x.center().len() + 2 * (l / gcd(l, r) * r) + 4;
            let radius = p.radius.max(2 * l.max(r) + 3 + x.center().len());
            let m = markoff_check(&x)? == MarkoffVerdict::Holds;
            let b = balance_check_biword(&x, n).balanced;
            let w = !window_singular_check(&WindowSubject::BiWord(x.clone()), radius).is_violation()
                && !window_singular_check(&WindowSubject::BiWord(x.reinterpret(&ab.reversed())?), radius)
                    .is_violation();
            Ok((m != b || m != w).then(|| format!("{x}: markoff {m}, balanced {b}, window {w}")))
        })
        .collect();
    collect_failures(results)
}

fn k_ref(d: &[u64], minus: bool) -> num_bigint::BigInt {
    let (mut prev, mut cur) = (num_bigint::BigInt::from(0), num_bigint::BigInt::from(1));
    for &x in d {
        let next = if minus { &cur * x - &prev } else { &cur * x + &prev };
        prev = cur;
        cur = next;
    }
    cur
}

/// Matrix identities and reversal symmetry.
fn continuant(p: &Params) -> Result<Vec<String>> {
    let results = (0..p.samples)
        .into_par_iter()
        .map(|i| -> Result<Option<String>> {
            let mut rng = rng_for(p.seed, i);
            let n = rng.gen_range(0..=8);
            let d: Vec<u64> = (0..n).map(|_| rng.gen_range(2..=50)).collect();
            let t = tridiagonal_check(&d, 8)?;
            if num_bigint::BigInt::from(t.permanent) != k_ref(&d, false) || t.determinant != k_ref(&d, true) {
                return Ok(Some(format!("{d:?}: matrix identity")));
            }
            let n = rng.gen_range(0..=20);
            let d: Vec<u64> = (0..n).map(|_| rng.gen_range(2..=1000)).collect();
            let r: Vec<u64> = d.iter().rev().copied().collect();
            let sym = continuant_regular(&d)? == continuant_regular(&r)?
                && continuant_semiregular(&d)? == continuant_semiregular(&r)?;
            Ok((!sym).then(|| format!("{d:?}: reversal")))
        })
        .collect();
    collect_failures(results)
}

/// Round trips and the symmetric order condition on rational exchanges.
fn iet(p: &Params) -> Result<Vec<String>> {
    let results = (0..p.samples)
        .into_par_iter()
        .map(|i| -> Result<Option<String>> {
            let mut rng = rng_for(p.seed, i);
            let rat = |n: i64, d: i64| BigRational::new(n.into(), d.into());
            let k = rng.gen_range(2..=4usize);
            let den = rng.gen_range(k as i64..=50);
            let mut cuts = std::collections::BTreeSet::from([0, den]);
            while cuts.len() < k + 1 {
                cuts.insert(rng.gen_range(1..den));
            }
            let cuts: Vec<i64> = cuts.into_iter().collect();
            let spec = IetSpec::new(cuts.windows(2).map(|c| rat(c[1] - c[0], den)).collect())?;
            let gd = rng.gen_range(1..=50);
            let gamma = rat(rng.gen_range(0..gd), gd);
            let image = iet_apply(&spec, &gamma)?;
            if iet_inverse_apply(&spec, &image)? != gamma || iet_apply(&spec, &iet_inverse_apply(&spec, &gamma)?)? != gamma {
                return Ok(Some(format!("{:?} at {gamma}: round trip", spec.lengths())));
            }
            let period = orbit_period(&spec, &gamma, 100_000)?.unwrap_or(0);
            let hi = (period + p.max_factor_len).max(2 * p.max_factor_len) as i64;
            let lang = collect_language(&natural_coding(&spec, &gamma, 0, hi)?.word, p.max_factor_len)?;
            Ok(match soc_check(&lang) {
                SocVerdict::Holds => None,
                v => Some(format!("{:?} at {gamma}: {v:?}", spec.lengths())),
            })
        })
        .collect();
    collect_failures(results)
}
