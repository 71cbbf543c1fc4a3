//! The `interlace` command-line tool.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails or the
//! computation errors, 2 on malformed input.

pub mod repro;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactnum::{parse_rational, to_decimal, QuadNum, Rational};
use crate::interlace::verify_theorem;
use crate::isolate::isolate_roots;
use crate::landmarks::{check_sign_lemma, landmarks_and_case};
use crate::scan::{compute_c_star, scan_conjecture, SweepConfig};
use crate::sequence::{generate, Params};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "interlace",
    version,
    about = "Exact zero analysis of W_n = (az+b)W_{n-1} + (cz+d)W_{n-2}, W_0 = 1, W_1 = z"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print W_0..W_n.
    Seq {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        json: bool,
    },
    /// Cutting points, thresholds and intervals as JSON.
    Landmarks {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 6)]
        digits: usize,
    },
    /// Isolated real zeros of W_n.
    Roots {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        n: usize,
        /// Width of the reported isolating intervals.
        #[arg(long, default_value = "1e-12", allow_hyphen_values = true)]
        eps: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Emit `n,approx` rows for W_1..W_n instead.
        #[arg(long)]
        csv_per_n: bool,
    },
    /// Check root counts, interlacing, monotonicity and sign laws.
    Verify {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 20)]
        n_max: usize,
        #[arg(long)]
        json: bool,
    },
    /// Seeded random sweep counting non-real zeros.
    Scan {
        #[arg(long)]
        config: Option<PathBuf>,
        /// JSON-lines record log.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        n_max: Option<usize>,
    },
    /// Re-run a worked-example fixture against its printed values.
    Repro {
        /// One of 3.1a, 3.1b, 3.2, 5.3a, 5.3b.
        id: Option<String>,
        #[arg(long, conflicts_with = "id")]
        all: bool,
        #[arg(long)]
        json: bool,
    },
    /// Threshold on c beyond which every W_n is real-rooted.
    Cstar {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, allow_hyphen_values = true)]
        d: String,
        #[arg(long, default_value_t = 16)]
        n_max: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Args)]
struct ParamArgs {
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    #[arg(long, allow_hyphen_values = true)]
    b: String,
    #[arg(long, allow_hyphen_values = true)]
    c: String,
    #[arg(long, allow_hyphen_values = true)]
    d: String,
}

impl ParamArgs {
    fn parse(&self) -> Result<Params> {
        Params::parse(&self.a, &self.b, &self.c, &self.d)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

/// Parses `args` (including the program name) and runs the command,
/// writing normal output to `out` and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::ParseRational(_)
                | Error::InvalidParameters(_)
                | Error::Regime(_)
                | Error::UnknownFixture(_)
                | Error::Config(_)
                | Error::UnsupportedCase(_)
                | Error::NotApplicable(_) => EXIT_USAGE,
                _ => EXIT_CHECK_FAILED,
            }
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Seq { params, n, json } => seq(&params.parse()?, n, json, out),
        Command::Landmarks { params, digits } => {
            let v = landmarks_json(&params.parse()?, digits)?;
            writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
            Ok(EXIT_OK)
        }
        Command::Roots {
            params,
            n,
            eps,
            format,
            csv_per_n,
        } => roots(
            &params.parse()?,
            n,
            &parse_rational(&eps)?,
            format,
            csv_per_n,
            out,
        ),
        Command::Verify {
            params,
            n_max,
            json,
        } => verify(&params.parse()?, n_max, json, out),
        Command::Scan {
            config,
            out: log,
            seed,
            samples,
            n_max,
        } => {
            let mut cfg = match config {
                Some(path) => SweepConfig::parse(&std::fs::read_to_string(path)?)?,
                None => SweepConfig::default(),
            };
            cfg.seed = seed.unwrap_or(cfg.seed);
            cfg.samples = samples.unwrap_or(cfg.samples);
            cfg.n_max = n_max.unwrap_or(cfg.n_max);
            if log.is_some() {
                cfg.out = log;
            }
            scan(&cfg, out)
        }
        Command::Repro { id, all, json } => {
            let ids: Vec<String> = match (id, all) {
                (Some(id), false) => vec![id],
                (None, true) => repro::FIXTURE_IDS.iter().map(|s| s.to_string()).collect(),
                _ => {
                    return Err(Error::InvalidParameters(
                        "give a fixture id or --all".into(),
                    ))
                }
            };
            let mut tables = Vec::new();
            for id in &ids {
                tables.push(repro::run_repro(id)?);
            }
            if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&tables)?)?;
            } else {
                for t in &tables {
                    write!(out, "{t}")?;
                }
            }
            Ok(if tables.iter().all(|t| t.passed()) {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            })
        }
        Command::Cstar {
            a,
            b,
            d,
            n_max,
            json,
        } => {
            let report = compute_c_star(
                &parse_rational(&a)?,
                &parse_rational(&b)?,
                &parse_rational(&d)?,
                n_max,
            )?;
            if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
            } else {
                writeln!(out, "discriminant of W_3 in c: {}", report.quartic_display)?;
                writeln!(out, "largest zero N: {:?}", report.n_root)?;
                writeln!(
                    out,
                    "c+ = {:.6}, ratio term = {}",
                    report.c_plus, report.ratio_term
                )?;
                writeln!(out, "c* = {:.6} ({:?})", report.c_star, report.attained_by)?;
                writeln!(
                    out,
                    "sample c = {} [{}]",
                    report.sample_c, report.sample_case
                )?;
                writeln!(
                    out,
                    "non-real counts W_1..W_{}: {:?}",
                    report.n_max, report.nonreal
                )?;
            }
            let ok = report.leading_positive && report.all_real_rooted;
            Ok(if ok { EXIT_OK } else { EXIT_CHECK_FAILED })
        }
    }
}

fn seq(params: &Params, n: usize, json: bool, out: &mut dyn Write) -> Result<i32> {
    let bundle = generate(params, n.max(1))?;
    let polys = &bundle.polys[..=n];
    if json {
        let items: Vec<Value> = polys
            .iter()
            .enumerate()
            .map(|(k, p)| json!({"n": k, "coeffs": p.to_fraction_strings(), "display": p.to_string()}))
            .collect();
        let v = json!({"params": params, "polys": items});
        writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
    } else {
        for (k, p) in polys.iter().enumerate() {
            writeln!(out, "W_{k}(z) = {p}")?;
        }
    }
    Ok(EXIT_OK)
}

fn quad_json(x: &QuadNum, digits: usize) -> Value {
    json!({"exact": x.to_string(), "approx": x.to_decimal(digits)})
}

fn rat_json(x: &Rational, digits: usize) -> Value {
    json!({"exact": x.to_string(), "approx": to_decimal(x, digits)})
}

pub fn landmarks_json(params: &Params, digits: usize) -> Result<Value> {
    let (lm, case) = landmarks_and_case(params)?;
    let opt = |x: Option<&QuadNum>| x.map_or(Value::Null, |x| quad_json(x, digits));
    let intervals: Vec<Value> = lm
        .pieces()
        .into_iter()
        .chain(lm.j_g())
        .map(|iv| {
            json!({
                "label": iv.label,
                "lo": iv.lo.to_string(),
                "lo_closed": iv.lo_closed,
                "hi": iv.hi.to_string(),
                "hi_closed": iv.hi_closed,
            })
        })
        .collect();
    let absent: serde_json::Map<String, Value> = lm
        .absent
        .iter()
        .map(|(k, reason)| (k.to_string(), Value::String(reason.clone())))
        .collect();
    Ok(json!({
        "params": params,
        "regime": lm.regime,
        "case": case.labels(),
        "x_A": rat_json(&lm.x_a, digits),
        "x_B": rat_json(&lm.x_b, digits),
        "delta_Delta": rat_json(&lm.delta_delta, digits),
        "delta_g": rat_json(&lm.delta_g, digits),
        "x_Delta_minus": quad_json(&lm.x_delta_minus, digits),
        "x_Delta_plus": quad_json(&lm.x_delta_plus, digits),
        "c_minus": quad_json(&lm.c_minus, digits),
        "c_plus": quad_json(&lm.c_plus, digits),
        "x_g_minus": opt(lm.x_g_minus()),
        "x_g_plus": opt(lm.x_g_plus()),
        "n_plus": opt(lm.n_plus.as_ref()),
        "x_0": opt(lm.x_0.as_ref()),
        "absent": absent,
        "intervals": intervals,
    }))
}

fn roots(
    params: &Params,
    n: usize,
    eps: &Rational,
    format: Format,
    per_n: bool,
    out: &mut dyn Write,
) -> Result<i32> {
    if *eps <= Rational::from_integer(0.into()) {
        return Err(Error::InvalidParameters("eps must be positive".into()));
    }
    if n < 1 {
        return Err(Error::InvalidParameters("n must be at least 1".into()));
    }
    let bundle = generate(params, n)?;
    if per_n {
        writeln!(out, "n,approx")?;
        for k in 1..=n {
            let rep = isolate_roots(bundle.w(k), k)?.refined(eps);
            for iv in &rep.real_roots {
                for _ in 0..iv.multiplicity {
                    writeln!(out, "{k},{:.12e}", iv.approx())?;
                }
            }
        }
        return Ok(EXIT_OK);
    }
    let rep = isolate_roots(bundle.w(n), n)?.refined(eps);
    match format {
        Format::Csv => {
            writeln!(out, "n,index,lo,hi,approx,multiplicity")?;
            for (i, iv) in rep.real_roots.iter().enumerate() {
                writeln!(
                    out,
                    "{n},{i},{},{},{:.12e},{}",
                    iv.lo,
                    iv.hi,
                    iv.approx(),
                    iv.multiplicity
                )?;
            }
        }
        Format::Json => {
            let items: Vec<Value> = rep
                .real_roots
                .iter()
                .map(|iv| {
                    json!({
                        "lo": iv.lo.to_string(),
                        "hi": iv.hi.to_string(),
                        "approx": iv.approx(),
                        "multiplicity": iv.multiplicity,
                    })
                })
                .collect();
            let v = json!({
                "params": params,
                "n": n,
                "degree": rep.degree,
                "eps": eps.to_string(),
                "real_roots": items,
                "n_real_with_mult": rep.n_real_with_mult,
                "n_nonreal": rep.n_nonreal,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
        }
    }
    Ok(EXIT_OK)
}

fn verify(params: &Params, n_max: usize, json: bool, out: &mut dyn Write) -> Result<i32> {
    let report = verify_theorem(params, n_max)?;
    let signs = check_sign_lemma(params, n_max)?;
    let passed = report.passed() && signs.passed();
    if json {
        let v = json!({"passed": passed, "report": report, "sign_laws": signs});
        writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
    } else {
        writeln!(out, "{params}: {}", report.labels.join(" + "))?;
        writeln!(
            out,
            "{} count checks, {} interlacing verdicts, {} traces, {} sign laws",
            report.checks.len(),
            report.verdicts.len(),
            report.traces.len(),
            signs.checks.len()
        )?;
        for t in &report.traces {
            writeln!(
                out,
                "  {}: {:?} (expected {:?})",
                t.label, t.observed, t.expected
            )?;
        }
        for note in &report.notes {
            writeln!(out, "  note: {note}")?;
        }
        for f in report.failures() {
            writeln!(out, "  FAIL {f}")?;
        }
        for s in signs.violations() {
            writeln!(out, "  FAIL sign law {} (n={:?})", s.law, s.n)?;
        }
        writeln!(out, "{}", if passed { "PASS" } else { "FAIL" })?;
    }
    Ok(if passed { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn scan(cfg: &SweepConfig, out: &mut dyn Write) -> Result<i32> {
    let (summary, _) = match &cfg.out {
        Some(path) => {
            let mut log = BufWriter::new(File::create(path)?);
            let result = scan_conjecture(cfg, Some(&mut log))?;
            log.flush()?;
            result
        }
        None => scan_conjecture(cfg, None)?,
    };
    writeln!(out, "{}", serde_json::to_string_pretty(&summary)?)?;
    Ok(if summary.violations == 0 && summary.inconsistent == 0 {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    })
}
