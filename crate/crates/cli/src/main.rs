mod config;
mod output;
mod verify;

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use singular_core::binary::{binary_singular_from_parikh, christoffel};
use singular_core::continuant::{continuant, parse_digits, tridiagonal_check, ContinuantKind};
use singular_core::extremal::{brute_extremal, Multiset, Objective};
use singular_core::iet::{
    natural_coding, orbit_period, parse_rational, weak_bispecial_example, IetSpec,
};
use singular_core::language::{collect_language, h_conditions_check, soc_check, symmetry_check};
use singular_core::stream::{
    balance_check_biword, markoff_check, window_singular_check, BiWord, MarkoffVerdict, Stream,
    WindowSubject, WindowVerdict,
};
use singular_core::ternary::{construct_ternary, reduction_trace};
use singular_core::{classify_singular, classify_singular_fast, Alphabet, Error, ParikhVector, Verdict, Word};

use config::Config;
use output::{show, Report};

#[derive(Parser)]
#[command(name = "singular", version, about = "Singular words and extremal continuant arrangements")]
struct Cli {
    /// Emit one JSON object instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    /// `key = value` file with default caps.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Regular or semi-regular continuant of a digit sequence.
    Continuant {
        #[arg(long, default_value = "regular")]
        kind: ContinuantKind,
        #[arg(long, allow_hyphen_values = true)]
        digits: String,
        /// Also compute the permanent and determinant of the tridiagonal matrix.
        #[arg(long)]
        matrix: bool,
    },
    /// Singular or reversible, with a witness factorization.
    Classify {
        /// Letters in increasing order, e.g. `a<b<c`; defaults to the letters of the word.
        #[arg(long)]
        alphabet: Option<String>,
        #[arg(long)]
        word: String,
        /// Report any witness instead of the minimal one.
        #[arg(long)]
        fast: bool,
    },
    /// The singular pair with a given Parikh vector over two or three letters.
    Construct {
        #[arg(long)]
        parikh: String,
        #[arg(long)]
        alphabet: Option<String>,
    },
    /// The Christoffel word with `p` lower and `q` upper letters.
    Christoffel {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long, default_value = "a<b")]
        alphabet: String,
    },
    /// Brute-force extremal arrangements of a multiset.
    Search {
        #[arg(long)]
        multiset: String,
        #[arg(long, default_value = "semi-max")]
        objective: Objective,
        /// Largest multiset size to enumerate.
        #[arg(long)]
        cap: Option<usize>,
        #[command(flatten)]
        threads: Threads,
    },
    /// Exhaustive or randomized property suites.
    Verify {
        #[arg(long, value_enum, default_value = "ternary")]
        suite: verify::Suite,
        /// Largest component sum for the ternary suite.
        #[arg(long, default_value_t = 8)]
        max_total: usize,
        /// Digits for a<b<c in the ternary suite.
        #[arg(long, default_value = "2,3,4")]
        assignment: String,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        threads: Threads,
    },
    /// Property (M) on an eventually periodic bi-infinite binary word.
    Markoff {
        #[command(flatten)]
        biword: BiWordArgs,
        #[arg(long, default_value = "a<b")]
        alphabet: String,
    },
    /// Searches a window of an infinite word for a reversible factorization.
    Window {
        /// A prefix of a one-sided infinite word.
        #[arg(long, conflicts_with_all = ["left", "center", "right", "preperiod", "period"])]
        word: Option<String>,
        #[command(flatten)]
        biword: OptBiWordArgs,
        #[arg(long, conflicts_with_all = ["left", "center", "right"])]
        preperiod: Option<String>,
        #[arg(long, conflicts_with_all = ["left", "center", "right"])]
        period: Option<String>,
        #[arg(long)]
        alphabet: Option<String>,
        #[arg(long)]
        radius: Option<usize>,
    },
    /// Symmetric interval exchanges.
    #[command(subcommand)]
    Iet(IetCommand),
}

#[derive(Args)]
struct Threads {
    /// Worker threads; results do not depend on it.
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args)]
struct BiWordArgs {
    #[arg(long)]
    left: String,
    #[arg(long, default_value = "")]
    center: String,
    #[arg(long)]
    right: String,
}

#[derive(Args)]
struct OptBiWordArgs {
    #[arg(long, requires = "right")]
    left: Option<String>,
    #[arg(long)]
    center: Option<String>,
    #[arg(long, requires = "left")]
    right: Option<String>,
}

#[derive(Subcommand)]
enum IetCommand {
    /// A window of the natural coding of a point.
    Code {
        #[arg(long)]
        lengths: String,
        #[arg(long, default_value = "0")]
        point: String,
        /// `lo:hi`, both inclusive.
        #[arg(long, default_value = "0:99", allow_hyphen_values = true)]
        window: String,
    },
    /// Language conditions on a coding window.
    Check {
        #[arg(long, required_unless_present = "example")]
        lengths: Option<String>,
        #[arg(long, default_value = "0")]
        point: String,
        /// Use the built-in ternary example word instead of a coding.
        #[arg(long, conflicts_with = "lengths")]
        example: bool,
        #[arg(long)]
        max_factor_len: Option<usize>,
        /// Number of letters to read.
        #[arg(long)]
        window: Option<usize>,
        /// Window size for the recurrence test.
        #[arg(long)]
        span: Option<usize>,
    },
}

/// Bad input from the command line as opposed to a failed computation.
enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::InvalidAlphabet(_) | Error::UnknownLetter(_) => Failure::Usage(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

type Outcome = std::result::Result<Report, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let config = match &cli.config {
        Some(path) => match Config::load(path) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        },
        None => Config::default(),
    };
    match run(cli.command, &config) {
        Ok(report) => {
            println!("{}", report.render(cli.json));
            ExitCode::from(if report.failed { 1 } else { 0 })
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(msg)) => {
            if cli.json {
                let body = json!({ "schema_version": output::SCHEMA_VERSION, "error": msg });
                println!("{}", serde_json::to_string_pretty(&body).expect("valid JSON"));
            } else {
                eprintln!("error: {msg}");
            }
            ExitCode::from(1)
        }
    }
}

fn alphabet_or_infer(alphabet: Option<&str>, texts: &[&str]) -> Result<Alphabet, Failure> {
    match alphabet {
        Some(a) => Ok(Alphabet::parse(a)?),
        None => {
            let letters: BTreeSet<char> = texts.iter().flat_map(|t| t.chars()).collect();
            if letters.is_empty() {
                return Err(Failure::Usage("cannot infer an alphabet from empty input; pass --alphabet".into()));
            }
            Ok(Alphabet::new(letters)?)
        }
    }
}

fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, Failure> {
    match threads {
        None => Ok(f()),
        Some(0) => Err(Failure::Usage("--threads must be positive".into())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map(|pool| pool.install(f))
            .map_err(|e| Failure::Domain(e.to_string())),
    }
}

fn run(command: Command, config: &Config) -> Outcome {
    match command {
        Command::Continuant { kind, digits, matrix } => cmd_continuant(kind, &digits, matrix, config),
        Command::Classify { alphabet, word, fast } => cmd_classify(alphabet.as_deref(), &word, fast),
        Command::Construct { parikh, alphabet } => cmd_construct(&parikh, alphabet.as_deref()),
        Command::Christoffel { p, q, alphabet } => {
            let w = christoffel(&Alphabet::parse(&alphabet)?, p, q)?;
            Ok(Report::new("christoffel", &json!({ "p": p, "q": q, "word": w }), w.to_string()))
        }
        Command::Search { multiset, objective, cap, threads } => {
            let m = Multiset::parse(&multiset)?;
            let cap = cap.unwrap_or(config.search_cap);
            let r = with_threads(threads.threads, || brute_extremal(&m, objective, cap))??;
            let mut plain = format!("{} = {}\n", r.objective, r.value);
            for a in &r.argext {
                let s: Vec<String> = a.iter().map(u64::to_string).collect();
                plain.push_str(&s.join(","));
                plain.push('\n');
            }
            plain.push_str(if r.unique_up_to_reversal { "unique up to reversal" } else { "not unique" });
            Ok(Report::new("search", &r, plain))
        }
        Command::Verify { suite, max_total, assignment, samples, seed, threads } => {
            let a = parse_digits(&assignment)?;
            let assignment: [u64; 3] = a
                .try_into()
                .map_err(|_| Failure::Usage("--assignment needs three digits".into()))?;
            let params = verify::Params {
                seed: seed.unwrap_or(config.seed),
                samples: samples.unwrap_or(config.verify_samples),
                max_total,
                assignment,
                radius: config.window_radius,
                max_factor_len: config.max_factor_len,
            };
            let r = with_threads(threads.threads, || verify::run(suite, &params))??;
            let mut plain = format!(
                "{}: {} checked, {}\n",
                r.suite,
                r.checked,
                if r.holds { "all hold" } else { "FAILURES" }
            );
            for f in &r.failures {
                plain.push_str(&format!("  {f}\n"));
            }
            let failed = !r.holds;
            Ok(Report::new("verify", &r, plain).failing(failed))
        }
        Command::Markoff { biword, alphabet } => {
            let x = BiWord::parse(&Alphabet::parse(&alphabet)?, &biword.left, &biword.center, &biword.right)?;
            cmd_markoff(x)
        }
        Command::Window { word, biword, preperiod, period, alphabet, radius } => {
            let radius = radius.unwrap_or(config.window_radius);
            let texts: Vec<&str> = [&word, &biword.left, &biword.center, &biword.right, &preperiod, &period]
                .into_iter()
                .flatten()
                .map(String::as_str)
                .collect();
            let ab = alphabet_or_infer(alphabet.as_deref(), &texts)?;
            let subject = if let Some(w) = word {
                WindowSubject::Prefix(Word::parse(&ab, &w)?)
            } else if let (Some(l), Some(r)) = (&biword.left, &biword.right) {
                WindowSubject::BiWord(BiWord::parse(&ab, l, biword.center.as_deref().unwrap_or(""), r)?)
            } else if let Some(p) = period {
                let pre = Word::parse(&ab, preperiod.as_deref().unwrap_or(""))?;
                WindowSubject::Stream(Stream::new(pre, Word::parse(&ab, &p)?)?)
            } else {
                return Err(Failure::Usage(
                    "give --word, --left/--center/--right, or --preperiod/--period".into(),
                ));
            };
            let v = window_singular_check(&subject, radius);
            let plain = match &v {
                WindowVerdict::NoViolationWithin { radius } => format!("no reversible factorization within radius {radius}"),
                WindowVerdict::DefiniteViolation { witness } => format!(
                    "reversible: v = {} at [{}, {}), first difference {}",
                    witness.v,
                    witness.start,
                    witness.end,
                    witness.first_difference.map_or("none".into(), |j| j.to_string())
                ),
            };
            Ok(Report::new("window", &v, plain))
        }
        Command::Iet(c) => cmd_iet(c, config),
    }
}

fn cmd_continuant(kind: ContinuantKind, digits: &str, matrix: bool, config: &Config) -> Outcome {
    let d = parse_digits(digits)?;
    let value = continuant(&d, kind)?;
    let mut plain = value.to_string();
    let mut body = json!({ "kind": kind.to_string(), "digits": d, "value": value.to_string() });
    if matrix {
        let t = tridiagonal_check(&d, config.tridiagonal_bound)?;
        plain.push_str(&format!("\npermanent {}\ndeterminant {}", t.permanent, t.determinant));
        body["matrix"] = serde_json::to_value(&t).expect("serializes");
    }
    Ok(Report::new("continuant", &body, plain))
}

fn cmd_classify(alphabet: Option<&str>, word: &str, fast: bool) -> Outcome {
    let ab = alphabet_or_infer(alphabet, &[word])?;
    let x = Word::parse(&ab, word)?;
    let c = if fast { classify_singular_fast(&x) } else { classify_singular(&x) };
    let plain = match (&c.verdict, &c.witness) {
        (Verdict::Reversible, Some(f)) => {
            format!("reversible: u = {}, v = {}, w = {}", show(&f.u), show(&f.v), show(&f.w))
        }
        _ => "singular".into(),
    };
    #[derive(Serialize)]
    struct Body<'a> {
        alphabet: &'a Alphabet,
        word: &'a Word,
        #[serde(flatten)]
        classification: &'a singular_core::Classification,
    }
    let body = Body { alphabet: &ab, word: &x, classification: &c };
    Ok(Report::new("classify", &body, plain))
}

fn cmd_construct(parikh: &str, alphabet: Option<&str>) -> Outcome {
    let keys: Vec<String> = parikh
        .split(',')
        .filter_map(|p| p.split_once('=').map(|(k, _)| k.trim().to_string()))
        .collect();
    let ab = alphabet_or_infer(alphabet, &keys.iter().map(String::as_str).collect::<Vec<_>>())?;
    let pv = ParikhVector::parse(&ab, parikh)?;
    let counts = pv.counts();
    let (x, rx, trace) = match counts.len() {
        2 => {
            let (x, rx) = binary_singular_from_parikh(&ab, counts[0], counts[1])?;
            (x, rx, None)
        }
        3 => {
            let v = [counts[0], counts[1], counts[2]];
            let (x, rx) = construct_ternary(&ab, v)?;
            (x, rx, Some(reduction_trace(v)))
        }
        k => return Err(Failure::Domain(format!("construction needs two or three letters, got {k}"))),
    };
    let body = json!({ "parikh": pv.to_string(), "word": x, "reverse": rx, "trace": trace });
    Ok(Report::new("construct", &body, x.to_string()))
}

fn cmd_markoff(x: BiWord) -> Outcome {
    let (l, r) = (x.left().len(), x.right().len());
    let lcm = l / gcd(l, r) * r;
    let bound = x.center().len() + 2 * lcm + 4;
    let m = markoff_check(&x)?;
    let b = balance_check_biword(&x, bound);
    let plain = match m {
        MarkoffVerdict::Holds => format!("holds (balanced up to length {bound}: {})", b.balanced),
        MarkoffVerdict::Violation { position, index } => format!(
            "violation at positions {position}, {} (outward words differ at index {index}); balanced up to length {bound}: {}",
            position + 1,
            b.balanced
        ),
    };
    let body = json!({ "biword": x, "markoff": m, "balance_bound": bound, "balance": b });
    Ok(Report::new("markoff", &body, plain))
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn parse_window(s: &str) -> Result<(i64, i64), Failure> {
    let bad = || Failure::Usage(format!("window {s:?} is not of the form lo:hi"));
    let (lo, hi) = s.split_once(':').ok_or_else(bad)?;
    let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn cmd_iet(c: IetCommand, config: &Config) -> Outcome {
    match c {
        IetCommand::Code { lengths, point, window } => {
            let spec = IetSpec::parse(&lengths)?;
            let gamma = parse_rational(&point)?;
            let (lo, hi) = parse_window(&window)?;
            let w = natural_coding(&spec, &gamma, lo, hi)?;
            let period = orbit_period(&spec, &gamma, 1 << 16)?;
            let body = json!({
                "lengths": spec.lengths().iter().map(ToString::to_string).collect::<Vec<_>>(),
                "point": gamma.to_string(),
                "discontinuities": spec.discontinuities(),
                "coding": w,
                "period": period,
            });
            Ok(Report::new("iet code", &body, w.word.to_string()))
        }
        IetCommand::Check { lengths, point, example, max_factor_len, window, span } => {
            let l = max_factor_len.unwrap_or(config.max_factor_len);
            let n = window.unwrap_or(config.iet_window);
            if n == 0 {
                return Err(Failure::Usage("--window must be positive".into()));
            }
            let (x, k, source) = if example {
                (weak_bispecial_example(n), 3, json!("example"))
            } else {
                let spec = IetSpec::parse(lengths.as_deref().expect("required by clap"))?;
                let gamma = parse_rational(&point)?;
                let w = natural_coding(&spec, &gamma, 0, n as i64 - 1)?.word;
                let src = json!({
                    "lengths": spec.lengths().iter().map(ToString::to_string).collect::<Vec<_>>(),
                    "point": gamma.to_string(),
                });
                (w, spec.k(), src)
            };
            let lang = collect_language(&x, l)?;
            let h = h_conditions_check(&lang, k, span)?;
            let soc = soc_check(&lang);
            let sym = symmetry_check(&lang);
            let mut plain = String::new();
            for (name, c) in [
                ("H0", &h.h0),
                ("H1", &h.h1),
                ("H2", &h.h2),
                ("H3", &h.h3),
                ("H4", &h.h4),
                ("H5", &h.h5),
                ("intervals", &h.interval_property),
                ("stable extension", &h.idoc_hypothesis),
            ] {
                let verdict = if c.holds() { "holds" } else { "fails" };
                match &c.witness {
                    Some(w) => plain.push_str(&format!("{name}: {verdict} {}\n", serde_json::to_string(w).expect("serializes"))),
                    None => plain.push_str(&format!("{name}: {verdict}\n")),
                }
            }
            plain.push_str(&format!("SOC: {}\n", serde_json::to_string(&soc).expect("serializes")));
            plain.push_str(&format!("symmetric: {}\n", sym.symmetric));
            let body = json!({
                "source": source,
                "letters": x.len(),
                "max_factor_len": l,
                "h_conditions": h,
                "soc": soc,
                "symmetry": sym,
            });
            Ok(Report::new("iet check", &body, plain))
        }
    }
}
