//! Command-line front end. [`run`] is pure apart from `verify-sweep --out`,
//! so it can be driven directly from tests.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::antideriv::{
    anti_derivatives, construct_k0, construct_with_n_antis, count_anti, count_anti_rational,
};
use crate::error::{Error, Result};
use crate::limits;
use crate::oracle::{check_inc_prediction, sweep_invert_with, SweepConfig};
use crate::orbit::{classify, inc_profile, ord_sequence, period, reverse_construct, OrbitClass};
use crate::padic::{d_full, dp, parse_value, PValue, Parsed};
use crate::prime::Prime;
use crate::render;

#[derive(Debug, Parser)]
#[command(
    name = "pderiv",
    version,
    about = "Arithmetic partial derivative D_p over the integers"
)]
struct Cli {
    /// Print a JSON envelope instead of plain text.
    #[arg(long, global = true)]
    json: bool,

    /// Size guard in bits for any materialized integer.
    #[arg(long, global = true, value_name = "BITS")]
    max_bits: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// D_p(x)
    Dp {
        #[arg(long)]
        p: u64,
        #[arg(allow_negative_numbers = true)]
        x: String,
    },
    /// The full arithmetic derivative D(x)
    D {
        #[arg(allow_negative_numbers = true)]
        x: String,
    },
    /// Valuations along the D_p-orbit of x
    OrdSeq {
        #[arg(long)]
        p: u64,
        #[arg(allow_negative_numbers = true)]
        x: String,
        #[arg(long, default_value_t = 10)]
        terms: usize,
    },
    /// Predicted increment structure for a starting valuation ℓ ≥ p
    IncProfile {
        #[arg(long)]
        p: u64,
        ell: String,
    },
    /// Eventual period of the valuation sequence of x
    Period {
        #[arg(long)]
        p: u64,
        #[arg(allow_negative_numbers = true)]
        x: String,
    },
    /// Long-run behaviour of the D_p-orbit of x
    Classify {
        #[arg(long)]
        p: u64,
        #[arg(allow_negative_numbers = true)]
        x: String,
    },
    /// ℓ whose orbit has the given -1 run lengths i_0 … i_N
    Reverse {
        #[arg(long)]
        p: u64,
        #[arg(required = true, num_args = 2..)]
        runs: Vec<u64>,
    },
    /// All integral anti-partial derivatives of y
    Anti {
        #[arg(long)]
        p: u64,
        #[arg(allow_negative_numbers = true)]
        y: String,
    },
    /// Number of integral anti-partial derivatives of y
    CountAnti {
        #[arg(long)]
        p: u64,
        #[arg(allow_negative_numbers = true)]
        y: String,
    },
    /// Number of rational anti-partial derivatives of y
    CountAntiRational {
        #[arg(long)]
        p: u64,
        #[arg(allow_negative_numbers = true)]
        y: String,
    },
    /// x0 whose image has exactly n anti-partial derivatives
    Construct {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u64,
        #[arg(long, conflicts_with = "m")]
        k0: Option<u64>,
        /// Use k0 = p + p^2 + … + p^m
        #[arg(long)]
        m: Option<u64>,
    },
    /// Brute-force inversion over |x| ≤ p·range checked against enumeration
    VerifySweep {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        range: u64,
        #[arg(long)]
        jobs: Option<usize>,
        /// Write the JSON-lines report here
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the predicted increments with ord_step simulation
    VerifyInc {
        #[arg(long)]
        p: u64,
        /// Starting valuation; omit to check every ℓ in [p, --range]
        ell: Option<String>,
        #[arg(long)]
        range: Option<u64>,
        #[arg(long)]
        terms: Option<usize>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Error(i32),
}

/// Outcome of one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct CommandResult {
    pub status: Status,
    pub payload: Value,
    pub human: String,
    pub stdout: String,
    pub stderr: String,
    pub exit_code: i32,
}

impl CommandResult {
    fn ok(json: bool, human: String, payload: Value) -> Self {
        let stdout = if json {
            serde_json::to_string(&json!({ "status": "ok", "payload": payload }))
                .expect("serializable")
        } else {
            human.clone()
        };
        CommandResult {
            status: Status::Ok,
            payload,
            human,
            stdout,
            stderr: String::new(),
            exit_code: 0,
        }
    }

    fn failed(json: bool, code: i32, message: String, payload: Value) -> Self {
        let stdout = if json {
            serde_json::to_string(
                &json!({ "status": "error", "code": code, "message": message, "payload": payload }),
            )
            .expect("serializable")
        } else {
            String::new()
        };
        CommandResult {
            status: Status::Error(code),
            human: message.clone(),
            payload,
            stdout,
            stderr: format!("error: {message}"),
            exit_code: code,
        }
    }
}

struct Output {
    human: String,
    payload: Value,
    /// Nonzero when the command ran but a check failed.
    verdict: Option<String>,
}

impl Output {
    fn new(human: impl Into<String>, payload: Value) -> Self {
        Output {
            human: human.into(),
            payload,
            verdict: None,
        }
    }
}

fn prime(p: u64) -> Result<Prime> {
    Prime::new(p)
}

fn value(p: Prime, text: &str) -> Result<PValue> {
    parse_value(text)?.to_pvalue(p)
}

fn natural(text: &str) -> Result<BigUint> {
    match parse_value(text)? {
        Parsed::Int(x) if x.sign() != num_bigint::Sign::Minus => Ok(x.magnitude().clone()),
        Parsed::Int(x) => Err(Error::invalid(format!(
            "expected a natural number, found '{x}'"
        ))),
        Parsed::Form(_) => Err(Error::invalid(format!(
            "expected a decimal natural number, found '{text}'"
        ))),
    }
}

fn execute(cmd: Command) -> Result<Output> {
    match cmd {
        Command::Dp { p, x } => {
            let p = prime(p)?;
            let (x_json, result) = match parse_value(&x)? {
                Parsed::Int(v) => {
                    let d = dp(p, &v);
                    (render::json_int(&v), PValue::from_int(p, &d))
                }
                parsed @ Parsed::Form(_) => {
                    let v = parsed.to_pvalue(p)?;
                    (render::json_value(&v), v.dp())
                }
            };
            Ok(Output::new(
                render::text_value(&result),
                json!({ "p": p, "x": x_json, "dp": render::json_value(&result) }),
            ))
        }
        Command::D { x } => {
            let v = parse_value(&x)?.to_int()?;
            let d = d_full(&v)?;
            Ok(Output::new(
                d.to_string(),
                json!({ "x": render::json_int(&v), "d": render::json_int(&d) }),
            ))
        }
        Command::OrdSeq { p, x, terms } => {
            let p = prime(p)?;
            let v = value(p, &x)?;
            let seq = ord_sequence(p, &v, terms);
            let text = seq
                .terms
                .iter()
                .map(|t| t.to_string())
                .collect::<Vec<_>>()
                .join(" ");
            Ok(Output::new(
                text,
                json!({ "p": p, "x": render::json_value(&v), "terms": seq.terms }),
            ))
        }
        Command::IncProfile { p, ell } => {
            let p = prime(p)?;
            let profile = inc_profile(p, &natural(&ell)?)?;
            Ok(Output::new(
                profile.to_string(),
                render::json_profile(&profile),
            ))
        }
        Command::Period { p, x } => {
            let p = prime(p)?;
            let v = value(p, &x)?;
            let per = period(p, &v);
            Ok(Output::new(
                per.to_string(),
                json!({ "p": p, "x": render::json_value(&v), "period": per }),
            ))
        }
        Command::Classify { p, x } => {
            let p = prime(p)?;
            let v = value(p, &x)?;
            let class = classify(p, &v);
            let (text, landed) = match &class {
                OrbitClass::FixedPoint { value: Some(s) } => (
                    format!("fixed-point {}", render::text_split(s)),
                    render::json_split(s),
                ),
                other => (other.name().to_string(), Value::Null),
            };
            Ok(Output::new(
                text,
                json!({ "p": p, "x": render::json_value(&v), "class": class.name(), "value": landed }),
            ))
        }
        Command::Reverse { p, runs } => {
            let p = prime(p)?;
            let ell = reverse_construct(p, &runs)?;
            Ok(Output::new(
                ell.to_string(),
                json!({ "p": p, "runs": runs, "ell": render::json_nat(&ell) }),
            ))
        }
        Command::Anti { p, y } => {
            let p = prime(p)?;
            let set = anti_derivatives(p, &value(p, &y)?)?;
            Ok(Output::new(
                render::text_anti_set(&set),
                render::json_anti_set(&set),
            ))
        }
        Command::CountAnti { p, y } => {
            let p = prime(p)?;
            let v = value(p, &y)?;
            let n = count_anti(p, &v)?;
            Ok(Output::new(
                n.to_string(),
                json!({ "p": p, "y": render::json_value(&v), "count": n }),
            ))
        }
        Command::CountAntiRational { p, y } => {
            let p = prime(p)?;
            let v = value(p, &y)?;
            let n = count_anti_rational(p, &v)?;
            Ok(Output::new(
                n.to_string(),
                json!({ "p": p, "y": render::json_value(&v), "count": n }),
            ))
        }
        Command::Construct { p, n, k0, m } => {
            let p = prime(p)?;
            let k0 = match (k0, m) {
                (Some(k0), _) => k0,
                (None, Some(m)) => construct_k0(p, m)?,
                (None, None) => 0,
            };
            let r = construct_with_n_antis(p, n, k0)?;
            Ok(Output::new(
                render::text_construction(&r),
                render::json_construction(&r),
            ))
        }
        Command::VerifySweep {
            p,
            range,
            jobs,
            out,
        } => verify_sweep(prime(p)?, range, jobs, out),
        Command::VerifyInc {
            p,
            ell,
            range,
            terms,
        } => verify_inc(prime(p)?, ell, range, terms),
    }
}

fn verify_sweep(p: Prime, range: u64, jobs: Option<usize>, out: Option<PathBuf>) -> Result<Output> {
    let config = SweepConfig {
        jobs,
        keep_map: false,
        ..SweepConfig::default()
    };
    let mut writer = match &out {
        Some(path) => Some(BufWriter::new(File::create(path)?)),
        None => None,
    };
    let report = sweep_invert_with(p, range, &config, |rec| {
        if let Some(w) = writer.as_mut() {
            serde_json::to_writer(&mut *w, rec).map_err(|e| Error::Io(e.to_string()))?;
            w.write_all(b"\n")?;
        }
        Ok(())
    })?;
    if let Some(mut w) = writer {
        w.write_all(report.histogram_line().as_bytes())?;
        w.write_all(b"\n")?;
        w.flush()?;
    }
    let hist = report
        .histogram
        .iter()
        .map(|(n, c)| format!("{n}:{c}"))
        .collect::<Vec<_>>()
        .join(" ");
    let human = format!(
        "p={p} range={range} mismatches={}\nhistogram {hist}",
        report.mismatches.len()
    );
    let payload = json!({
        "p": p,
        "range": range,
        "mismatches": report.mismatches,
        "histogram": report.histogram.iter().map(|(&n, &c)| (n, c)).collect::<Vec<_>>(),
        "witnesses": report.witnesses.iter().map(|(&n, &y)| (n, y)).collect::<Vec<_>>(),
    });
    let verdict = (!report.mismatches.is_empty()).then(|| {
        let first = &report.mismatches[0];
        format!(
            "{} mismatches; first at y = {}: brute {:?}, analytic {:?}",
            report.mismatches.len(),
            first.y,
            first.brute,
            first.analytic
        )
    });
    Ok(Output {
        human,
        payload,
        verdict,
    })
}

fn verify_inc(
    p: Prime,
    ell: Option<String>,
    range: Option<u64>,
    terms: Option<usize>,
) -> Result<Output> {
    let ells: Vec<BigUint> = match (ell, range) {
        (Some(e), None) => vec![natural(&e)?],
        (None, Some(r)) => (p.get()..=r).map(BigUint::from).collect(),
        _ => return Err(Error::invalid("give exactly one of ELL or --range")),
    };
    let mut checked = 0u64;
    for ell in &ells {
        let profile = inc_profile(p, ell)?;
        let n = terms.unwrap_or(4 * p.get() as usize + profile.prefix_len as usize);
        let v = check_inc_prediction(p, ell, n)?;
        checked += 1;
        if !v.pass {
            let i = v.first_divergence.expect("fail has an index");
            let msg = format!(
                "FAIL ell={ell} at term {i}: predicted {:?} simulated {:?}",
                v.predicted, v.simulated
            );
            return Ok(Output {
                human: msg.clone(),
                payload: json!({ "p": p, "ell": render::json_nat(ell), "verdict": v }),
                verdict: Some(msg),
            });
        }
    }
    Ok(Output::new(
        format!("PASS checked={checked}"),
        json!({ "p": p, "checked": checked, "pass": true }),
    ))
}

fn wants_json(argv: &[String]) -> bool {
    argv.iter().any(|a| a == "--json")
}

/// Parses `argv` (program name first) and runs one subcommand.
pub fn run(argv: &[String]) -> CommandResult {
    let json = wants_json(argv);
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let text = e.to_string().trim_end().to_string();
                return CommandResult {
                    status: Status::Ok,
                    payload: Value::Null,
                    human: text.clone(),
                    stdout: text,
                    stderr: String::new(),
                    exit_code: 0,
                };
            }
            let line = e
                .to_string()
                .lines()
                .next()
                .unwrap_or("invalid arguments")
                .trim_start_matches("error: ")
                .to_string();
            return CommandResult::failed(json, 2, line, Value::Null);
        }
    };
    if let Some(bits) = cli.max_bits {
        limits::set_max_bits(bits);
    }
    match execute(cli.command) {
        Ok(Output {
            human,
            payload,
            verdict: None,
        }) => CommandResult::ok(cli.json, human, payload),
        Ok(Output {
            payload,
            verdict: Some(msg),
            ..
        }) => CommandResult::failed(cli.json, 4, msg, payload),
        Err(e) => CommandResult::failed(cli.json, e.exit_code(), e.to_string(), Value::Null),
    }
}
