//! Front end for the `toric-gens` binary.
//!
//! [`parse_args`] turns an argument vector into a [`CommandRequest`];
//! [`run`] executes it and returns the rendered output with an exit code
//! (0 success, 1 failure or violated invariant, 2 bad input).

use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::complex::components;
use crate::ideal::{
    degree_bound, generator_bidegrees, generator_bidegrees_checked, rank_oracle, render_binomial,
    verify_main_theorem, GeneratorReport,
};
use crate::multisets::Multiset;
use crate::values::ValueSet;
use crate::walks::{connect, verify_certificate};
use crate::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Degree bound r + s of the gcd-normalized exponents
    Bound,
    /// Bidegrees carrying minimal generators, with representative binomials
    Gens,
    /// Certificate that two vertices of Δ(q,c) are connected
    Connect,
    /// Check connectivity of every Δ(q,c) just above the bound
    Verify,
    /// Exact rank computation of the generator count in one bidegree
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandRequest {
    pub command: Command,
    pub a: Vec<i64>,
    pub q: Option<usize>,
    pub c: Option<i64>,
    pub x: Option<i64>,
    pub y: Option<i64>,
    pub extra: usize,
    pub format: Format,
    pub skip_oracle: bool,
    pub out: Option<PathBuf>,
}

/// A rejected command line: message for stderr and the exit code to use.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError {
    pub message: String,
    pub exit_code: i32,
}

impl UsageError {
    fn new(message: impl Into<String>) -> Self {
        UsageError {
            message: message.into(),
            exit_code: EXIT_USAGE,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "toric-gens",
    version,
    about = "Minimal generator degrees of homogeneous dimension-2 toric ideals"
)]
struct Args {
    command: Command,
    /// Comma-separated, strictly increasing exponents a_1 < … < a_n
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    /// Degree: multiset size (connect, oracle)
    #[arg(long)]
    q: Option<usize>,
    /// Weight: multiset sum (connect, oracle)
    #[arg(long, allow_hyphen_values = true)]
    c: Option<i64>,
    /// Start vertex (connect)
    #[arg(long, allow_hyphen_values = true)]
    x: Option<i64>,
    /// End vertex (connect)
    #[arg(long, allow_hyphen_values = true)]
    y: Option<i64>,
    /// Number of degrees above the bound to check (verify)
    #[arg(long, default_value_t = 2)]
    extra: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Do not cross-check generator counts against the rank oracle (gens)
    #[arg(long)]
    skip_oracle: bool,
    /// Also write the output to this file
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Parses arguments, not including the program name.
pub fn parse_args<I, S>(argv: I) -> Result<CommandRequest, UsageError>
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let argv = std::iter::once(std::ffi::OsString::from("toric-gens"))
        .chain(argv.into_iter().map(Into::into));
    let args = Args::try_parse_from(argv).map_err(|e| UsageError {
        message: e.render().to_string(),
        exit_code: e.exit_code(),
    })?;

    let a = parse_values(&args.a)?;
    ValueSet::new(a.clone()).map_err(|e| UsageError::new(format!("--a: {e}")))?;

    let missing = |name: &str| UsageError::new(format!("{:?} requires --{name}", args.command));
    match args.command {
        Command::Connect => {
            for (name, present) in [
                ("q", args.q.is_some()),
                ("c", args.c.is_some()),
                ("x", args.x.is_some()),
                ("y", args.y.is_some()),
            ] {
                if !present {
                    return Err(missing(name));
                }
            }
        }
        Command::Oracle => {
            if args.q.is_none() {
                return Err(missing("q"));
            }
            if args.c.is_none() {
                return Err(missing("c"));
            }
        }
        _ => {}
    }
    if args.format == Format::Csv && args.command != Command::Gens {
        return Err(UsageError::new("--format csv is only available for gens"));
    }

    Ok(CommandRequest {
        command: args.command,
        a,
        q: args.q,
        c: args.c,
        x: args.x,
        y: args.y,
        extra: args.extra,
        format: args.format,
        skip_oracle: args.skip_oracle,
        out: args.out,
    })
}

fn parse_values(raw: &str) -> Result<Vec<i64>, UsageError> {
    raw.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|e| UsageError::new(format!("--a: cannot parse {t:?}: {e}")))
        })
        .collect()
}

/// Executes a parsed request, returning stdout text and the exit code.
pub fn run(req: &CommandRequest) -> (String, i32) {
    match execute(req) {
        Ok(out) => out,
        Err(e) => {
            let text = match req.format {
                Format::Json => json!({ "error": e.to_string() }).to_string(),
                _ => format!("error: {e}"),
            };
            (text + "\n", EXIT_FAILURE)
        }
    }
}

fn execute(req: &CommandRequest) -> Result<(String, i32), Error> {
    let values = ValueSet::new(req.a.clone())?;
    // checked by parse_args for requests that came from the command line
    let need = |v: Option<i64>, name: &str| {
        v.ok_or_else(|| Error::Validation(format!("missing --{name}")))
    };
    match req.command {
        Command::Bound => Ok((render_bound(&values, req.format), EXIT_OK)),
        Command::Gens => {
            let report = if req.skip_oracle {
                generator_bidegrees(&values)?
            } else {
                generator_bidegrees_checked(&values)?
            };
            Ok((render_gens(&report, req.format)?, EXIT_OK))
        }
        Command::Connect => {
            let q = req.q.ok_or_else(|| Error::Validation("missing --q".into()))?;
            let (c, x, y) = (need(req.c, "c")?, need(req.x, "x")?, need(req.y, "y")?);
            let cert = connect(&values, q, c, x, y)?;
            let valid = verify_certificate(&values, &cert);
            let text = match req.format {
                Format::Json => json!({
                    "x": cert.x,
                    "y": cert.y,
                    "q": cert.bidegree.q,
                    "c": cert.bidegree.c,
                    "chain": cert.chain,
                    "valid": valid,
                })
                .to_string(),
                _ => {
                    let mut t = format!("x={} y={} q={} c={} valid={valid}", x, y, q, c);
                    for m in &cert.chain {
                        t.push('\n');
                        t.push_str(&m.to_string());
                    }
                    t
                }
            };
            Ok((text + "\n", if valid { EXIT_OK } else { EXIT_FAILURE }))
        }
        Command::Verify => {
            let v = verify_main_theorem(&values, req.extra)?;
            let text = match req.format {
                Format::Json => serde_json::to_string(&v).expect("serializable"),
                _ => match v.counterexample {
                    None => format!(
                        "pass: {} cells with {} < q <= {} connected",
                        v.cells_checked,
                        v.bound,
                        v.bound + v.extra as i64
                    ),
                    Some(ce) => format!(
                        "fail: Δ({}, {}) has {} components above bound {}",
                        ce.q, ce.c, ce.k, v.bound
                    ),
                },
            };
            Ok((text + "\n", if v.pass { EXIT_OK } else { EXIT_FAILURE }))
        }
        Command::Oracle => {
            let q = req.q.ok_or_else(|| Error::Validation("missing --q".into()))?;
            let c = need(req.c, "c")?;
            let rank = rank_oracle(&values, q, c)?;
            let k = components(&values, q, c)?.k;
            let agree = rank.min_gen_count == k.saturating_sub(1);
            let text = match req.format {
                Format::Json => json!({
                    "q": q,
                    "c": c,
                    "dim_I": rank.dim_i,
                    "dim_I_less": rank.dim_i_less,
                    "min_gen_count": rank.min_gen_count,
                    "components": k,
                    "agree": agree,
                })
                .to_string(),
                _ => format!(
                    "dim_I={} dim_I_less={} min_gen_count={} components={k} agree={agree}",
                    rank.dim_i, rank.dim_i_less, rank.min_gen_count
                ),
            };
            Ok((text + "\n", if agree { EXIT_OK } else { EXIT_FAILURE }))
        }
    }
}

fn render_bound(values: &ValueSet, format: Format) -> String {
    let b = degree_bound(values);
    let text = match format {
        Format::Json => json!({
            "r": b.gaps.map(|g| g.0),
            "s": b.gaps.map(|g| g.1),
            "bound": b.bound,
            "normalized_a": b.normalized.values,
            "scale": b.normalized.scale,
            "offset": b.normalized.offset,
            "zero_ideal": b.zero_ideal(),
        })
        .to_string(),
        _ => match b.gaps {
            Some((r, s)) => format!("r={r} s={s} bound={}", b.bound),
            None => "zero ideal bound=0".to_string(),
        },
    };
    text + "\n"
}

#[derive(Serialize)]
struct BinomialOut<'a> {
    plus: &'a Multiset,
    minus: &'a Multiset,
    text: String,
}

#[derive(Serialize)]
struct EntryOut<'a> {
    q: usize,
    c: i64,
    k: usize,
    count: usize,
    binomials: Vec<BinomialOut<'a>>,
}

#[derive(Serialize)]
struct GensOut<'a> {
    a: &'a ValueSet,
    bound: i64,
    zero_ideal: bool,
    oracle_checked: bool,
    total: usize,
    entries: Vec<EntryOut<'a>>,
}

fn render_gens(report: &GeneratorReport, format: Format) -> Result<String, Error> {
    let entries = report
        .entries
        .iter()
        .map(|e| {
            let binomials = e
                .binomials
                .iter()
                .map(|b| {
                    Ok(BinomialOut {
                        plus: &b.plus,
                        minus: &b.minus,
                        text: render_binomial(b, &report.values)?,
                    })
                })
                .collect::<Result<Vec<_>, Error>>()?;
            Ok(EntryOut {
                q: e.q,
                c: e.c,
                k: e.k,
                count: e.count,
                binomials,
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;

    Ok(match format {
        Format::Json => {
            let out = GensOut {
                a: &report.values,
                bound: report.bound,
                zero_ideal: report.zero_ideal,
                oracle_checked: report.oracle_checked,
                total: report.total_generators(),
                entries,
            };
            serde_json::to_string(&out).expect("serializable") + "\n"
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| Error::Validation(format!("csv: {e}"));
            w.write_record(["q", "c", "k", "count", "binomial_text"])
                .map_err(io)?;
            for e in &entries {
                for b in &e.binomials {
                    w.write_record([
                        e.q.to_string(),
                        e.c.to_string(),
                        e.k.to_string(),
                        e.count.to_string(),
                        b.text.clone(),
                    ])
                    .map_err(io)?;
                }
            }
            let bytes = w
                .into_inner()
                .map_err(|e| Error::Validation(format!("csv: {e}")))?;
            String::from_utf8(bytes).expect("csv output is utf-8")
        }
        Format::Text => {
            let mut t = if report.zero_ideal {
                "zero ideal: no generators\n".to_string()
            } else {
                format!(
                    "bound={} generators={}\n",
                    report.bound,
                    report.total_generators()
                )
            };
            for e in &entries {
                for b in &e.binomials {
                    t.push_str(&format!("({}, {}) k={}: {}\n", e.q, e.c, e.k, b.text));
                }
            }
            t
        }
    })
}
