//! `cf`: continued fractions of rational and algebraic power series over
//! prime fields. [`run`] executes one command line and returns what the
//! binary prints and its exit code.

mod output;

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use formal_cf::algebraic::{
    expand_root_certified, expand_root_certified_from_seed, expand_root_certified_with_budget, expand_root_direct,
    expand_root_frobenius, hensel_root, root_series, AlgebraicEquation, DEFAULT_PRECISION_BUDGET,
};
use formal_cf::cfcore::{cf_of_series, euclid_cf, identity_suite, Word};
use formal_cf::families::{
    family_degrees, family_equation, family_word, fibonacci_poly, quartic13_support, theta_word, FamilySpec,
};
use formal_cf::ffpoly::{parse_constant, parse_poly_with, parse_rational, Bindings, Poly, PrimeField};
use formal_cf::laurent::LaurentSeries;
use formal_cf::measure::{nu_closed_form, nu_estimate_degrees, to_f64, MeasureEstimate, DEFAULT_WINDOW};
use formal_cf::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use output::{render_word, Format, Sink};

#[derive(Parser)]
#[command(name = "cf", version, about = "Continued fractions of formal power series over F_p")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the main output to a file instead of stdout.
    #[arg(short = 'o', long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Continued fraction of P/Q by the Euclidean algorithm.
    Rational(RationalArgs),
    /// Partial quotients of a root of a polynomial equation in x.
    Root(RootArgs),
    /// Word, equation or polynomials of a named family.
    Family(FamilyArgs),
    /// Compare a family's generated word with the expansion of its equation.
    Verify(VerifyArgs),
    /// Degree ratios and irrationality-measure estimates.
    Measure(MeasureArgs),
    /// Laurent expansion of a root or a rational function.
    Series(SeriesArgs),
    /// Evaluate the continuant identities on given or random words.
    Identities(IdentityArgs),
}

#[derive(Args)]
struct RationalArgs {
    /// Characteristic.
    #[arg(short = 'p', long = "prime")]
    p: u64,
    /// Numerator.
    num: String,
    /// Denominator.
    den: String,
    #[arg(long, value_delimiter = ',')]
    bind: Vec<String>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Engine {
    Direct,
    Certified,
    Both,
    Frobenius,
}

#[derive(Args)]
struct RootArgs {
    /// Characteristic.
    #[arg(short = 'p', long = "prime")]
    p: u64,
    /// Equation in x and t, e.g. "x^4 + x^2 - t*x + 1".
    equation: String,
    /// Field constants, e.g. a=1,b=2,c=2*a+1/b (evaluated in order).
    #[arg(long, value_delimiter = ',')]
    bind: Vec<String>,
    /// Number of partial quotients after the head.
    #[arg(short = 'n', long, default_value_t = 20)]
    count: usize,
    #[arg(long, value_enum, default_value = "direct")]
    engine: Engine,
    /// Precision cap of the certified engine, in coefficients.
    #[arg(long)]
    budget: Option<usize>,
    /// Largest input degree absorbed by the Frobenius engine.
    #[arg(long)]
    max_degree: Option<usize>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
enum FamilyName {
    Phi,
    FibonacciPoly,
    Mahler,
    MahlerDual,
    Schmidt,
    Robbins3,
    Quartic13Support,
    Theta,
    Robbins,
    ModifiedRobbins,
    Gamma,
    TripleT,
}

#[derive(Args, Clone)]
struct FamilySel {
    #[arg(long, value_enum)]
    family: FamilyName,
    /// Characteristic; inferred from --r when omitted.
    #[arg(long)]
    p: Option<u64>,
    /// First theta parameter, nonzero in F_p.
    #[arg(long, allow_hyphen_values = true)]
    a: Option<i64>,
    /// Second theta parameter, nonzero in F_p.
    #[arg(long, allow_hyphen_values = true)]
    b: Option<i64>,
    /// Frobenius exponent, a power of p.
    #[arg(long)]
    r: Option<usize>,
    /// Base word of a schmidt family, letters separated by commas.
    #[arg(long)]
    base: Option<String>,
    /// Index of a Fibonacci polynomial, or the last A_k of quartic13_support.
    #[arg(long)]
    index: Option<usize>,
}

#[derive(Args)]
struct FamilyArgs {
    #[command(flatten)]
    sel: FamilySel,
    #[arg(short = 'n', long, default_value_t = 20)]
    count: usize,
    /// Print the defining equation instead of the word.
    #[arg(long)]
    equation: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum VerifyEngine {
    /// Frobenius for theta, certified from the seed 1/T for mahler, direct otherwise.
    Auto,
    Direct,
    Certified,
    Frobenius,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    sel: FamilySel,
    #[arg(short = 'n', long, default_value_t = 100)]
    count: usize,
    #[arg(long, value_enum, default_value = "auto")]
    engine: VerifyEngine,
    /// Largest input degree absorbed by the Frobenius engine.
    #[arg(long)]
    max_degree: Option<usize>,
    /// Run the check for each listed prime in parallel.
    #[arg(long, value_delimiter = ',')]
    all_primes: Vec<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MeasureFormat {
    Text,
    Csv,
    Json,
}

#[derive(Args)]
struct MeasureArgs {
    #[arg(long, value_enum)]
    family: Option<FamilyName>,
    /// Characteristic; inferred from --r when omitted.
    #[arg(long)]
    p: Option<u64>,
    /// First theta parameter, nonzero in F_p.
    #[arg(long, allow_hyphen_values = true)]
    a: Option<i64>,
    /// Second theta parameter, nonzero in F_p.
    #[arg(long, allow_hyphen_values = true)]
    b: Option<i64>,
    /// Frobenius exponent, a power of p.
    #[arg(long)]
    r: Option<usize>,
    /// Base word of a schmidt family, letters separated by commas.
    #[arg(long)]
    base: Option<String>,
    /// Read degrees from a file holding "[d1, d2, ...]" instead.
    #[arg(long, conflicts_with = "family")]
    degrees_file: Option<PathBuf>,
    #[arg(short = 'n', long, default_value_t = 100)]
    count: usize,
    /// Number of final ratios the tail estimate looks at.
    #[arg(long, default_value_t = DEFAULT_WINDOW)]
    window: usize,
    #[arg(long, value_enum, default_value = "text")]
    format: MeasureFormat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SeriesFormat {
    Text,
    Json,
}

#[derive(Args)]
struct SeriesArgs {
    #[arg(short = 'p', long = "prime")]
    p: u64,
    /// Expand the dominant root of this equation.
    #[arg(long, conflicts_with = "rational", required_unless_present = "rational")]
    equation: Option<String>,
    /// Expand this rational function of t.
    #[arg(long)]
    rational: Option<String>,
    #[arg(long, value_delimiter = ',')]
    bind: Vec<String>,
    /// Number of coefficients.
    #[arg(long, default_value_t = 30)]
    precision: usize,
    /// Start Newton's iteration at this rational function of t instead of
    /// the dominant root's convergent.
    #[arg(long, requires = "equation")]
    seed: Option<String>,
    /// Raise the series to this power before printing.
    #[arg(long)]
    power: Option<u64>,
    /// Also print the continued fraction of the series and its certified length.
    #[arg(long)]
    cf: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: SeriesFormat,
}

#[derive(Args)]
struct IdentityArgs {
    #[arg(short = 'p', long = "prime")]
    p: u64,
    /// Letters separated by commas.
    #[arg(long, conflicts_with = "random", required_unless_present = "random")]
    word: Option<String>,
    /// Number of random words to check.
    #[arg(long)]
    random: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Split point for the concatenation laws; every split when omitted.
    #[arg(long)]
    split: Option<usize>,
    /// Scalar for the scaling laws with --word (2, or 1 over F_2, when
    /// omitted); random words draw their own.
    #[arg(long)]
    y: Option<i64>,
}

/// Failure of a command, mapped to the process exit code.
enum Failure {
    /// A verified disagreement or failed check.
    Disagreement(String),
    /// Bad arguments or unparsable input.
    Usage(String),
    /// A mathematical precondition failed.
    Math(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Syntax { .. }
            | Error::EmptyInput
            | Error::NotPrime(_)
            | Error::InvalidParameter(_)
            | Error::UnsupportedFamily(_) => Failure::Usage(e.to_string()),
            e => Failure::Math(e),
        }
    }
}

type CmdResult = Result<(), Failure>;

/// Exit codes and captured streams of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    /// 0 success or agreement, 1 verified disagreement, 2 usage or parse
    /// error, 3 failed mathematical precondition.
    pub code: u8,
    /// Main output, empty when it went to an `-o` file.
    pub stdout: String,
    pub stderr: String,
}

/// Runs `cf` on `args`, the first of which is the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let mut sink = Sink::new(cli.output);
    let result = match cli.command {
        Command::Rational(a) => cmd_rational(a, &mut sink),
        Command::Root(a) => cmd_root(a, &mut sink),
        Command::Family(a) => cmd_family(a, &mut sink),
        Command::Verify(a) => cmd_verify(a, &mut sink),
        Command::Measure(a) => cmd_measure(a, &mut sink),
        Command::Series(a) => cmd_series(a, &mut sink),
        Command::Identities(a) => cmd_identities(a, &mut sink),
    };
    let (stdout, mut stderr) = match sink.finish() {
        Ok(streams) => streams,
        Err(e) => {
            return Outcome {
                code: 2,
                stdout: String::new(),
                stderr: format!("error: cannot write output: {e}\n"),
            };
        }
    };
    let code = match result {
        Ok(()) => 0,
        Err(Failure::Disagreement(msg)) => {
            stderr.push_str(&format!("{msg}\n"));
            1
        }
        Err(Failure::Usage(msg)) => {
            stderr.push_str(&format!("error: {msg}\n"));
            2
        }
        Err(Failure::Math(e)) => {
            stderr.push_str(&format!("error: {e}\n"));
            3
        }
    };
    Outcome { code, stdout, stderr }
}

fn field(p: u64) -> Result<PrimeField, Failure> {
    Ok(PrimeField::new(p)?)
}

fn bindings(f: PrimeField, items: &[String]) -> Result<Bindings, Failure> {
    let mut env = Bindings::new();
    for item in items {
        let (name, value) = item
            .split_once('=')
            .ok_or_else(|| Failure::Usage(format!("binding {item:?} is not of the form name=value")))?;
        let v = parse_constant(value, f, &env)?;
        env.insert(name.trim().to_string(), v);
    }
    Ok(env)
}

fn cmd_rational(a: RationalArgs, out: &mut Sink) -> CmdResult {
    let f = field(a.p)?;
    let env = bindings(f, &a.bind)?;
    let num = parse_poly_with(&a.num, f, &env)?;
    let den = parse_poly_with(&a.den, f, &env)?;
    out.line(render_word(&euclid_cf(&num, &den)?, a.format));
    Ok(())
}

/// Index (1-based over the terms, head included) of the first difference
/// between two words, over their common length.
fn first_difference(x: &Word, y: &Word) -> Option<usize> {
    let (tx, ty) = (x.terms(), y.terms());
    if x.head().is_some() != y.head().is_some() {
        return Some(1);
    }
    tx.iter().zip(&ty).position(|(u, v)| u != v).map(|i| i + 1)
}

fn cmd_root(a: RootArgs, out: &mut Sink) -> CmdResult {
    let f = field(a.p)?;
    let env = bindings(f, &a.bind)?;
    let eq = AlgebraicEquation::parse(&a.equation, f, &env)?;
    let certified = |n| match a.budget {
        Some(b) => expand_root_certified_with_budget(&eq, n, b),
        None => expand_root_certified(&eq, n),
    };
    let w = match a.engine {
        Engine::Direct => expand_root_direct(&eq, a.count)?,
        Engine::Certified => certified(a.count)?,
        Engine::Frobenius => {
            let hq = eq
                .as_hyperquadratic()
                .ok_or_else(|| Failure::Usage("equation is not of the form A x^(r+1) + B x^r + C x + D".into()))?;
            expand_root_frobenius(&hq, a.count, a.max_degree)?
        }
        Engine::Both => {
            let d = expand_root_direct(&eq, a.count)?;
            let c = certified(a.count)?;
            out.line(render_word(&d, a.format));
            return match first_difference(&d, &c).or((d.len() != c.len()).then_some(d.len().min(c.len()) + 1)) {
                None => {
                    out.line(format!("agree to {}", d.len()));
                    Ok(())
                }
                Some(k) => {
                    out.line(format!("disagree at {k}"));
                    Err(Failure::Disagreement(format!("engines disagree at term {k}")))
                }
            };
        }
    };
    if w.len() < a.count && a.engine != Engine::Frobenius {
        out.note(format!(
            "note: expansion terminated after {} letters (rational root)",
            w.len()
        ));
    }
    out.line(render_word(&w, a.format));
    Ok(())
}

fn smallest_prime_factor(r: usize) -> u64 {
    let r = r as u64;
    (2..=r).find(|d| r.is_multiple_of(*d)).unwrap_or(r)
}

fn need<T>(v: Option<T>, what: &str, family: &str) -> Result<T, Failure> {
    v.ok_or_else(|| Failure::Usage(format!("--{what} is required for {family}")))
}

fn family_spec(sel: &FamilySel) -> Result<FamilySpec, Failure> {
    let p = sel.p.or_else(|| sel.r.map(smallest_prime_factor));
    let name = sel
        .family
        .to_possible_value()
        .map(|v| v.get_name().to_string())
        .unwrap_or_default();
    let p_of = |p: Option<u64>| need(p, "p", &name);
    Ok(match sel.family {
        FamilyName::Phi => FamilySpec::Phi { p: p_of(p)? },
        FamilyName::FibonacciPoly => FamilySpec::FibonacciPoly {
            p: p_of(p)?,
            n: sel.index.unwrap_or(0),
        },
        FamilyName::Mahler => FamilySpec::Mahler {
            p: p_of(p)?,
            r: need(sel.r, "r", &name)?,
        },
        FamilyName::MahlerDual => FamilySpec::MahlerDual {
            p: p_of(p)?,
            r: need(sel.r, "r", &name)?,
        },
        FamilyName::Schmidt => {
            let f = field(p_of(p)?)?;
            let base = need(sel.base.as_deref(), "base", &name)?;
            FamilySpec::Schmidt {
                base: parse_word(f, base)?,
                r: need(sel.r, "r", &name)?,
            }
        }
        FamilyName::Robbins3 => FamilySpec::Robbins3Word,
        FamilyName::Quartic13Support => FamilySpec::Quartic13Support,
        FamilyName::Theta => FamilySpec::Theta {
            p: p_of(p)?,
            a: need(sel.a, "a", &name)?,
            b: need(sel.b, "b", &name)?,
        },
        FamilyName::Robbins => FamilySpec::Robbins { p: p_of(p)? },
        FamilyName::ModifiedRobbins => FamilySpec::ModifiedRobbins { p: p_of(p)? },
        FamilyName::Gamma => {
            let r = need(sel.r, "r", &name)?;
            FamilySpec::Gamma {
                p: p.unwrap_or_else(|| smallest_prime_factor(r)),
                r,
            }
        }
        FamilyName::TripleT => FamilySpec::TripleT,
    })
}

fn parse_word(f: PrimeField, text: &str) -> Result<Word, Failure> {
    let letters = text
        .split(',')
        .map(|s| parse_poly_with(s, f, &Bindings::new()))
        .collect::<Result<Vec<Poly>, _>>()?;
    Ok(Word::from_letters(f, letters)?)
}

fn cmd_family(a: FamilyArgs, out: &mut Sink) -> CmdResult {
    let spec = family_spec(&a.sel)?;
    let f = spec.field()?;
    match spec {
        FamilySpec::FibonacciPoly { n, .. } => {
            out.line(fibonacci_poly(a.sel.index.unwrap_or(n), f).to_string());
            return Ok(());
        }
        FamilySpec::Quartic13Support => {
            let (polys, exps) = quartic13_support(a.sel.index.unwrap_or(2), a.count);
            for (k, u) in polys.iter().enumerate() {
                out.line(format!("A_{k} = {u}"));
            }
            out.line(format!("i = {}", formal_cf::cfcore::format_list(&exps)));
            return Ok(());
        }
        _ => {}
    }
    if a.equation {
        out.line(format!("{}", family_equation(&spec)?));
        return Ok(());
    }
    out.line(render_word(&family_word(&spec, a.count)?, a.format));
    Ok(())
}

/// Outcome of one verification.
struct Verdict {
    agree: usize,
    disagree_at: Option<usize>,
    capped: bool,
}

fn verify_one(spec: &FamilySpec, count: usize, engine: VerifyEngine, cap: Option<usize>) -> Result<Verdict, Failure> {
    let eq = family_equation(spec)?;
    // Mahler's series is the root of x = 1/T + x^r near 1/T, not the dominant one
    let seed = matches!(spec, FamilySpec::Mahler { .. }).then(|| LaurentSeries::from_coeffs(eq.field(), -1, vec![1]));
    let engine = match (engine, spec) {
        (VerifyEngine::Auto, FamilySpec::Theta { .. }) => VerifyEngine::Frobenius,
        (VerifyEngine::Auto, FamilySpec::Mahler { .. }) => VerifyEngine::Certified,
        (VerifyEngine::Auto, _) => VerifyEngine::Direct,
        (e, _) => e,
    };
    let expanded = match engine {
        VerifyEngine::Certified if seed.is_some() => {
            expand_root_certified_from_seed(&eq, seed.as_ref().unwrap(), count, DEFAULT_PRECISION_BUDGET)?
        }
        VerifyEngine::Frobenius => {
            let hq = eq
                .as_hyperquadratic()
                .ok_or_else(|| Failure::Usage(format!("{} is not hyperquadratic", spec.name())))?;
            expand_root_frobenius(&hq, count, cap)?
        }
        VerifyEngine::Certified => expand_root_certified(&eq, count)?,
        _ => expand_root_direct(&eq, count)?,
    };
    let n = expanded.len();
    let generated = match spec {
        FamilySpec::Theta { p, a, b } => theta_word(*p, *a, *b, n)?,
        _ => family_word(spec, n)?,
    };
    let disagree_at =
        first_difference(&expanded, &generated).or((generated.len() != n).then_some(generated.len().min(n) + 1));
    let agree = disagree_at.map_or(n, |k| k - 1);
    Ok(Verdict {
        agree,
        disagree_at,
        capped: n < count,
    })
}

fn cmd_verify(a: VerifyArgs, out: &mut Sink) -> CmdResult {
    let report = |v: &Verdict| match v.disagree_at {
        Some(k) => format!("disagree at {k}"),
        None if v.capped => format!("agree to {} (degree cap reached)", v.agree),
        None => format!("agree to {}", v.agree),
    };
    if a.all_primes.is_empty() {
        let spec = family_spec(&a.sel)?;
        let v = verify_one(&spec, a.count, a.engine, a.max_degree)?;
        out.line(report(&v));
        return match v.disagree_at {
            Some(k) => Err(Failure::Disagreement(format!(
                "{} disagrees at letter {k}",
                spec.name()
            ))),
            None => Ok(()),
        };
    }
    let results: Vec<(u64, Result<Verdict, Failure>)> = std::thread::scope(|s| {
        let handles: Vec<_> = a
            .all_primes
            .iter()
            .map(|&p| {
                let mut sel = a.sel.clone();
                sel.p = Some(p);
                let (count, engine, cap) = (a.count, a.engine, a.max_degree);
                (
                    p,
                    s.spawn(move || family_spec(&sel).and_then(|spec| verify_one(&spec, count, engine, cap))),
                )
            })
            .collect();
        handles
            .into_iter()
            .map(|(p, h)| {
                (
                    p,
                    h.join()
                        .unwrap_or_else(|_| Err(Failure::Usage("worker panicked".into()))),
                )
            })
            .collect()
    });
    let mut disagreement = None;
    let mut error = None;
    for (p, r) in results {
        match r {
            Ok(v) => {
                out.line(format!("p={p}: {}", report(&v)));
                if v.disagree_at.is_some() {
                    disagreement = Some(p);
                }
            }
            Err(e) => {
                let msg = match &e {
                    Failure::Usage(m) | Failure::Disagreement(m) => m.clone(),
                    Failure::Math(e) => e.to_string(),
                };
                out.line(format!("p={p}: error: {msg}"));
                error.get_or_insert(e);
            }
        }
    }
    if let Some(p) = disagreement {
        return Err(Failure::Disagreement(format!("disagreement for p = {p}")));
    }
    error.map_or(Ok(()), Err)
}

fn read_degrees(path: &PathBuf) -> Result<Vec<u64>, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    text.trim()
        .trim_start_matches('[')
        .trim_end_matches(']')
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            s.trim()
                .parse::<u64>()
                .map_err(|e| Failure::Usage(format!("bad degree {s:?}: {e}")))
        })
        .collect()
}

fn cmd_measure(a: MeasureArgs, out: &mut Sink) -> CmdResult {
    let (degrees, spec) = match (&a.degrees_file, a.family) {
        (Some(path), _) => {
            let mut d = read_degrees(path)?;
            d.truncate(a.count);
            (d, None)
        }
        (None, Some(family)) => {
            let sel = FamilySel {
                family,
                p: a.p,
                a: a.a,
                b: a.b,
                r: a.r,
                base: a.base.clone(),
                index: None,
            };
            let spec = family_spec(&sel)?;
            (family_degrees(&spec, a.count)?, Some(spec))
        }
        (None, None) => return Err(Failure::Usage("give --family or --degrees-file".into())),
    };
    let est = nu_estimate_degrees(&degrees, a.window)?;
    let closed = spec.as_ref().and_then(|s| nu_closed_form(s).ok());
    match a.format {
        MeasureFormat::Csv => out.line(est.to_csv().trim_end()),
        MeasureFormat::Json => out.line(measure_json(&est, closed).to_string()),
        MeasureFormat::Text => {
            out.line(format!("letters: {}", est.degrees.len()));
            out.line(format!(
                "nu lower bound: {} ({:.6})",
                est.nu_lower(),
                to_f64(est.nu_lower())
            ));
            out.line(format!(
                "nu tail estimate (window {}): {} ({:.6})",
                est.window,
                est.nu_tail(),
                to_f64(est.nu_tail())
            ));
            if let Some(c) = closed {
                out.line(format!("nu closed form: {c} ({:.6})", to_f64(c)));
            }
        }
    }
    Ok(())
}

fn measure_json(est: &MeasureEstimate, closed: Option<impl ToString>) -> serde_json::Value {
    json!({
        "degrees": est.degrees,
        "ratios": est.ratios.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "running_sup": est.running_sup.to_string(),
        "tail_sup": est.tail_sup.to_string(),
        "window": est.window,
        "nu_lower": est.nu_lower().to_string(),
        "nu_tail": est.nu_tail().to_string(),
        "nu_closed_form": closed.map(|c| c.to_string()),
    })
}

fn series_pow(s: &LaurentSeries, e: u64) -> LaurentSeries {
    let f = s.field();
    let mut acc = LaurentSeries::from_poly(&Poly::one(f), -(s.precision() as i64));
    let mut base = s.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&base);
        }
        e >>= 1;
        if e > 0 {
            base = base.mul(&base);
        }
    }
    acc
}

fn cmd_series(a: SeriesArgs, out: &mut Sink) -> CmdResult {
    let f = field(a.p)?;
    let env = bindings(f, &a.bind)?;
    let mut s = match (&a.equation, &a.rational) {
        (Some(text), _) => {
            let eq = AlgebraicEquation::parse(text, f, &env)?;
            match &a.seed {
                Some(seed) => {
                    let (num, den) = parse_rational(seed, f, &env)?;
                    let x0 = LaurentSeries::from_rational(&num, &den, a.precision)?;
                    hensel_root(&eq, &x0, a.precision)?
                }
                None => root_series(&eq, a.precision)?,
            }
        }
        (None, Some(text)) => {
            let (num, den) = parse_rational(text, f, &env)?;
            LaurentSeries::from_rational(&num, &den, a.precision)?
        }
        (None, None) => return Err(Failure::Usage("give --equation or --rational".into())),
    };
    if let Some(e) = a.power {
        s = series_pow(&s, e);
    }
    let cf = a.cf.then(|| cf_of_series(&s));
    match a.format {
        SeriesFormat::Text => {
            out.line(s.to_string());
            if let Some((w, certified)) = &cf {
                out.line(format!("cf: {w}"));
                out.line(format!("certified: {certified}"));
            }
        }
        SeriesFormat::Json => {
            let mut v = json!({ "p": a.p, "series": s.to_json() });
            if let Some((w, certified)) = &cf {
                v["cf"] = serde_json::to_value(w.to_json()).unwrap_or_default();
                v["certified"] = json!(certified);
            }
            out.line(v.to_string());
        }
    }
    Ok(())
}

fn random_word(f: PrimeField, rng: &mut ChaCha8Rng) -> Word {
    let len = rng.gen_range(0..=8);
    let letters = (0..len)
        .map(|_| {
            let deg = rng.gen_range(1..=3);
            let mut c: Vec<i64> = (0..deg).map(|_| rng.gen_range(0..f.modulus() as i64)).collect();
            c.push(rng.gen_range(1..f.modulus() as i64));
            Poly::from_ints(f, &c)
        })
        .collect();
    Word::from_letters(f, letters).expect("letters have positive degree")
}

fn cmd_identities(a: IdentityArgs, out: &mut Sink) -> CmdResult {
    let f = field(a.p)?;
    if let Some(text) = &a.word {
        let y = f.elem(a.y.unwrap_or(if a.p == 2 { 1 } else { 2 }));
        if y.is_zero() {
            return Err(Failure::Usage("--y must be nonzero in F_p".into()));
        }
        let w = parse_word(f, text)?;
        let splits: Vec<usize> = match a.split {
            Some(s) => vec![s],
            None => (0..=w.len()).collect(),
        };
        let mut failed = false;
        for split in splits {
            for c in identity_suite(&w, split, y).checks {
                out.line(format!(
                    "{} split={split} {}",
                    if c.holds { "PASS" } else { "FAIL" },
                    c.name
                ));
                failed |= !c.holds;
            }
        }
        return if failed {
            Err(Failure::Disagreement("an identity failed".into()))
        } else {
            Ok(())
        };
    }
    let words = a.random.unwrap_or(0);
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let (mut checks, mut failures) = (0usize, 0usize);
    for _ in 0..words {
        let w = random_word(f, &mut rng);
        let split = a.split.unwrap_or_else(|| rng.gen_range(0..=w.len()));
        let ys = rng.gen_range(1..f.modulus() as i64);
        let report = identity_suite(&w, split, f.elem(ys));
        checks += report.checks.len();
        for name in report.failures() {
            failures += 1;
            out.line(format!("FAIL {name} on {w} split={split} y={ys}"));
        }
    }
    out.line(format!("{words} words, {checks} checks, {failures} failures"));
    if failures > 0 {
        return Err(Failure::Disagreement(format!("{failures} identity checks failed")));
    }
    Ok(())
}
