//! Batch command-line front end.
//!
//! Exit codes: 0 on success, 1 on invalid input, 2 when an internal check
//! fails (a failed selftest or universal property).

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use crate::carriers::{embed_finite_pomonoid, FinitePomonoid, FinitePoset};
use crate::coeff::AnyRing;
use crate::expr::{self, Context, ExprError};
use crate::finmonoid::{MonoidElement, PartialFinitenessMonoid, Window};
use crate::finpf::{check_category, morphism_violation, VerifyConfig};
use crate::json::{self as j, JsonError};

#[derive(Debug, Parser)]
#[command(name = "finseries", version, about = "Generalized power series over partial finiteness monoids")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a series expression and print its terms in a window.
    SeriesEval {
        #[arg(long, default_value = "nat")]
        monoid: String,
        #[arg(long, default_value = "int")]
        ring: String,
        #[arg(long)]
        expr: Option<String>,
        /// `MAX` or `MIN..MAX`.
        #[arg(long, allow_hyphen_values = true)]
        window: String,
        /// Series JSON, available in the expression as `input`.
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Tabulate an arithmetic function built from zeta, moebius and `[n]`.
    Dirichlet {
        #[arg(long)]
        expr: String,
        #[arg(long)]
        n_max: u64,
        #[arg(long, default_value = "int")]
        ring: String,
    },
    /// Evaluate a Puiseux series expression over ℚ exponents.
    Puiseux {
        #[arg(long)]
        expr: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        window: String,
        #[arg(long, default_value = "rat")]
        ring: String,
        /// Largest denominator listed for non-explicit supports.
        #[arg(long, default_value_t = Window::DEFAULT_MAX_DEN)]
        max_den: u64,
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Classify a support descriptor on a carrier.
    Classify {
        #[arg(long)]
        monoid: Option<String>,
        /// Descriptor JSON, e.g. `{"all":true}`.
        #[arg(long)]
        descriptor: Option<String>,
        /// `{"monoid": .., "descriptor": ..}`.
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Poset and pomonoid analysis.
    Poset {
        #[arg(long, value_enum)]
        op: PosetOp,
        #[arg(long)]
        input: PathBuf,
    },
    /// Verify limits, colimits and closure of the finite category.
    CategoryCheck {
        #[arg(long, default_value_t = 2)]
        max_size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest test object used when enumerating mediators.
        #[arg(long)]
        probe_size: Option<usize>,
        /// `{"source": space, "target": space, "map": {"graph": ..}}` to check a single morphism.
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Run every module's property checks.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PosetOp {
    LongestChain,
    LargestAntichain,
    IsStrictPomonoid,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Json(#[from] JsonError),
    #[error("{0}")]
    Expr(#[from] ExprError),
    #[error("{0}")]
    Invalid(String),
    /// An internal check failed; carries the report printed so far.
    #[error("{0}")]
    Check(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Check(_) => 2,
            _ => 1,
        }
    }
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Outcome {
                    stdout: text,
                    stderr: String::new(),
                    code: 0,
                },
                _ => Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code: 1,
                },
            };
        }
    };
    let res = std::panic::catch_unwind(|| execute(&cli));
    match res {
        Ok(Ok(stdout)) => Outcome {
            stdout,
            stderr: String::new(),
            code: 0,
        },
        Ok(Err(CliError::Check(report))) => Outcome {
            stdout: report,
            stderr: "internal check failed\n".into(),
            code: 2,
        },
        Ok(Err(e)) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: e.exit_code(),
        },
        Err(_) => Outcome {
            stdout: String::new(),
            stderr: "internal error: invariant violated\n".into(),
            code: 2,
        },
    }
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn read_json(path: &PathBuf) -> Result<Value, CliError> {
    let text = read(path)?;
    j::parse(&text).map_err(|e| match e {
        JsonError::Syntax(s) => CliError::Invalid(format!("{}: malformed JSON: {s}", path.display())),
        other => other.into(),
    })
}

/// `MAX` or `MIN..MAX`.
pub fn parse_window(s: &str) -> Result<Window, CliError> {
    let bad = || CliError::Usage(format!("window `{s}` must be MAX or MIN..MAX"));
    let w = match s.split_once("..") {
        Some((lo, hi)) => Window::between(lo.trim().parse().map_err(|_| bad())?, hi.trim().parse().map_err(|_| bad())?),
        None => Window::upto(s.trim().parse().map_err(|_| bad())?),
    };
    if w.min.is_some_and(|lo| lo > w.max) {
        return Err(bad());
    }
    Ok(w)
}

fn json_out(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn execute(cli: &Cli) -> Result<String, CliError> {
    let fmt = cli.format;
    match &cli.command {
        Command::SeriesEval {
            monoid,
            ring,
            expr,
            window,
            input,
        } => {
            let monoid = j::carrier_from_str(monoid)?;
            eval_series(fmt, monoid, ring, expr.as_deref(), parse_window(window)?, input.as_ref())
        }
        Command::Puiseux {
            expr,
            window,
            ring,
            max_den,
            input,
        } => {
            let monoid = j::carrier_from_json(&json!("rational"))?;
            let w = parse_window(window)?.with_max_den(*max_den);
            eval_series(fmt, monoid, ring, expr.as_deref(), w, input.as_ref())
        }
        Command::Dirichlet { expr, n_max, ring } => dirichlet(fmt, expr, *n_max, ring),
        Command::Classify {
            monoid,
            descriptor,
            input,
        } => classify(fmt, monoid.as_deref(), descriptor.as_deref(), input.as_ref()),
        Command::Poset { op, input } => poset(fmt, *op, input),
        Command::CategoryCheck {
            max_size,
            seed,
            probe_size,
            input,
        } => category(fmt, *max_size, *seed, *probe_size, input.as_ref()),
        Command::Selftest { seed } => {
            let rep = crate::selftest::run(*seed);
            let out = match fmt {
                Format::Text => {
                    let mut s = rep.lines.join("\n");
                    let _ = writeln!(s, "\n{}", if rep.passed() { "selftest passed" } else { "selftest FAILED" });
                    s
                }
                Format::Json => json_out(&json!({"checks": rep.lines, "passed": rep.passed()})),
            };
            if rep.passed() {
                Ok(out)
            } else {
                Err(CliError::Check(out))
            }
        }
    }
}

fn eval_series(
    fmt: Format,
    monoid: PartialFinitenessMonoid,
    ring: &str,
    src: Option<&str>,
    window: Window,
    input: Option<&PathBuf>,
) -> Result<String, CliError> {
    let ring = AnyRing::parse(ring).map_err(JsonError::from)?;
    let input = match input {
        Some(p) => {
            let v = read_json(p)?;
            if v.get("builtin").and_then(Value::as_str) == Some("moebius") {
                let bound = v.get("bound").and_then(Value::as_i64).unwrap_or(0);
                if window.max > bound {
                    return Err(CliError::Invalid(format!(
                        "moebius is tabulated up to {bound}; the window reaches {}",
                        window.max
                    )));
                }
            }
            let s = j::series_from_json(&v)?;
            if s.monoid() != &monoid || s.ring() != &ring {
                return Err(CliError::Invalid(format!(
                    "input series lives in {}⟨{}⟩, expected {}⟨{}⟩",
                    s.ring().name(),
                    s.monoid().name(),
                    ring.name(),
                    monoid.name()
                )));
            }
            Some(s)
        }
        None => None,
    };
    let src = match (src, &input) {
        (Some(e), _) => e,
        (None, Some(_)) => "input",
        (None, None) => return Err(CliError::Usage("need --expr or --input".into())),
    };
    let ctx = Context {
        monoid,
        ring,
        window,
        input,
    };
    let s = expr::evaluate(src, &ctx)?;
    Ok(match fmt {
        Format::Text => format!("{}\n", s.render(&window)),
        Format::Json => json_out(&j::series_to_json(&s, &window)),
    })
}

fn dirichlet(fmt: Format, src: &str, n_max: u64, ring: &str) -> Result<String, CliError> {
    if n_max == 0 || n_max > i64::MAX as u64 {
        return Err(CliError::Usage("--n-max must be positive".into()));
    }
    let ctx = Context {
        monoid: j::carrier_from_json(&json!("posnat-mul"))?,
        ring: AnyRing::parse(ring).map_err(JsonError::from)?,
        window: Window::upto(n_max as i64),
        input: None,
    };
    let s = expr::evaluate(src, &ctx)?;
    let rows: Vec<(u64, String)> = (1..=n_max)
        .map(|n| (n, s.coeff(&MonoidElement::PosNat(n)).to_string()))
        .collect();
    Ok(match fmt {
        Format::Text => {
            let mut out = String::from("n\tvalue\n");
            for (n, v) in &rows {
                let _ = writeln!(out, "{n}\t{v}");
            }
            out
        }
        Format::Json => {
            let values: Vec<Value> = (1..=n_max)
                .map(|n| json!([n, j::coeff_to_json(s.ring(), &s.coeff(&MonoidElement::PosNat(n)))]))
                .collect();
            json_out(&json!({"ring": s.ring().name(), "n_max": n_max, "values": values}))
        }
    })
}

fn classify(fmt: Format, monoid: Option<&str>, desc: Option<&str>, input: Option<&PathBuf>) -> Result<String, CliError> {
    let (carrier_v, desc_v) = match input {
        Some(p) => {
            let v = read_json(p)?;
            let m = v.get("monoid").cloned().ok_or_else(|| CliError::Invalid("missing field `monoid`".into()))?;
            let d = v
                .get("descriptor")
                .cloned()
                .ok_or_else(|| CliError::Invalid("missing field `descriptor`".into()))?;
            (m, d)
        }
        None => {
            let m = monoid.ok_or_else(|| CliError::Usage("need --monoid or --input".into()))?;
            let d = desc.ok_or_else(|| CliError::Usage("need --descriptor or --input".into()))?;
            let d = j::parse(d).map_err(|e| match e {
                JsonError::Syntax(s) => CliError::Invalid(format!("descriptor: malformed JSON: {s}")),
                other => other.into(),
            })?;
            (Value::String(m.into()), d)
        }
    };
    let m = j::carrier_from_json(&carrier_v)?;
    let d = j::descriptor_from_json(&m, &desc_v)?;
    let cls = m.classify(&d).map_err(JsonError::from)?;
    let admitted = m.admits(&d).is_ok();
    Ok(match fmt {
        Format::Text => format!(
            "carrier: {}\ndescriptor: {d}\nartinian: {}\nnoetherian: {}\nnarrow: {}\nfinite: {}\nadmitted: {admitted}\n",
            m.name(),
            cls.artinian,
            cls.noetherian,
            cls.narrow,
            cls.finite
        ),
        Format::Json => json_out(&json!({
            "carrier": m.name(),
            "descriptor": j::descriptor_to_json(&m, &d),
            "classification": cls,
            "admitted": admitted,
        })),
    })
}

fn poset(fmt: Format, op: PosetOp, input: &PathBuf) -> Result<String, CliError> {
    let v = read_json(input)?;
    let names = |p: &FinitePoset, xs: &[usize]| xs.iter().map(|&i| p.label(i).to_string()).collect::<Vec<_>>();
    match op {
        PosetOp::LongestChain | PosetOp::LargestAntichain => {
            let p: FinitePoset = serde_json::from_value(v).map_err(|e| CliError::Invalid(e.to_string()))?;
            let (key, xs) = if op == PosetOp::LongestChain {
                ("chain", p.longest_chain())
            } else {
                ("antichain", p.largest_antichain().map_err(|e| CliError::Invalid(e.to_string()))?)
            };
            let labels = names(&p, &xs);
            Ok(match fmt {
                Format::Text => format!("{key} ({}): {}\n", labels.len(), labels.join(" ")),
                Format::Json => json_out(&json!({key: labels, "size": labels.len()})),
            })
        }
        PosetOp::IsStrictPomonoid => {
            let m: FinitePomonoid = serde_json::from_value(v).map_err(|e| CliError::Invalid(e.to_string()))?;
            let witness = m.strictness_violation();
            let strict = witness.is_none();
            debug_assert_eq!(strict, embed_finite_pomonoid(&m).is_ok());
            let l = |i: usize| m.poset().label(i).to_string();
            Ok(match (fmt, witness) {
                (Format::Text, None) => "strict: true\n".into(),
                (Format::Text, Some((a, b, c))) => {
                    format!("strict: false\nwitness: {} < {} but {}·{} ≮ {}·{}\n", l(a), l(b), l(a), l(c), l(b), l(c))
                }
                (Format::Json, w) => json_out(&json!({
                    "strict": strict,
                    "witness": w.map(|(a, b, c)| json!([l(a), l(b), l(c)])),
                })),
            })
        }
    }
}

fn category(
    fmt: Format,
    max_size: usize,
    seed: u64,
    probe: Option<usize>,
    input: Option<&PathBuf>,
) -> Result<String, CliError> {
    if let Some(p) = input {
        let v = read_json(p)?;
        let get = |k: &str| v.get(k).ok_or_else(|| CliError::Invalid(format!("missing field `{k}`")));
        let src = j::set_system_from_json(get("source")?)?;
        let dst = j::set_system_from_json(get("target")?)?;
        let f = j::partial_fn_from_json(get("map")?, src.carrier(), dst.carrier())?;
        let violation = morphism_violation(&f, &src, &dst);
        let detail = violation.as_ref().map(|v| format!("{v:?}"));
        return Ok(match fmt {
            Format::Text => match detail {
                None => "morphism: true\n".into(),
                Some(d) => format!("morphism: false\nviolation: {d}\n"),
            },
            Format::Json => json_out(&json!({"morphism": violation.is_none(), "violation": detail})),
        });
    }
    if max_size > 3 {
        return Err(CliError::Usage("--max-size is limited to 3".into()));
    }
    let cfg = VerifyConfig {
        max_size,
        probe_size: probe.unwrap_or(VerifyConfig::default().probe_size),
        ..VerifyConfig::default()
    };
    if cfg.probe_size > 3 {
        return Err(CliError::Usage("--probe-size is limited to 3".into()));
    }
    let rep = check_category(&cfg, seed).map_err(|e| CliError::Invalid(e.to_string()))?;
    let out = match fmt {
        Format::Text => {
            let mut s = rep.lines.join("\n");
            s.push('\n');
            for f in &rep.failures {
                let _ = writeln!(s, "failure: {f}");
            }
            s.push_str(if rep.holds() {
                "all universal properties verified\n"
            } else {
                "universal property violations found\n"
            });
            s
        }
        Format::Json => json_out(&json!({
            "max_size": max_size,
            "seed": seed,
            "checks": rep.lines,
            "failures": rep.failures,
            "verified": rep.holds(),
        })),
    };
    if rep.holds() {
        Ok(out)
    } else {
        Err(CliError::Check(out))
    }
}
