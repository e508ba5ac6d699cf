//! Command-line front end. [`execute`] runs one invocation and returns the
//! exit status and both output streams, so it is testable without a process.
//!
//! Exit status: 0 success, 1 usage, 2 parse or validation failure, 3
//! uncolorable diagram, 4 internal assertion or failed verification.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::biquandle::{
    check_axioms, doodle_aggregate, doodle_pre_invariant, search_affine, solve_colorings,
    weight_condition, AxiomViolation, FiniteFlatBiquandle,
};
use crate::coloring::{colorability, lambda_coloring, propagate_coloring};
use crate::diagram_ops::{
    mirror, reverse, smooth_zero_weight, switch_crossings, virtualize, writhe,
};
use crate::error::{Error, Result};
use crate::gauss_code::{forget, parse_flat, parse_signed, SignedGaussCode};
use crate::invariant::{
    crossing_weights, enumerate_flat_knots, flat_nontriviality_certificate, graph_polynomial,
    knot_vassiliev, symbolic_link_weights, vassiliev_invariant, SingularCode, WeightTable, Witness,
};
use crate::moves::{invariance_report, random_walk};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "affine-index",
    version,
    about = "Affine Index Polynomial and related invariants of virtual knots"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a signed or flat code and print its canonical form.
    Parse { code: String },
    /// Weights, polynomial and low-order Vassiliev invariants of a knot.
    Invariant { code: String },
    /// Polynomial of a link with the coloring given by per-component offsets.
    LinkInvariant {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        offsets: Vec<i64>,
        code: String,
    },
    /// Weights as affine expressions in the component offsets.
    SymbolicWeights { code: String },
    /// Vassiliev invariants v_1 .. v_N.
    Vassiliev {
        #[arg(long, default_value_t = 4)]
        max_order: u32,
        code: String,
    },
    /// Apply a diagram transformation.
    Transform {
        #[command(flatten)]
        op: TransformOp,
        code: String,
    },
    /// Random Reidemeister walk.
    Moves {
        #[arg(long)]
        walk: usize,
        code: String,
    },
    /// Check that random walks preserve the polynomial.
    Verify {
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 20)]
        steps: usize,
        /// Seed codes (a built-in corpus when omitted).
        codes: Vec<String>,
    },
    /// Flat knot nontriviality certificates.
    Flat {
        #[arg(long)]
        certificate: bool,
        /// Scan every flat knot with at most this many crossings.
        #[arg(long)]
        scan: Option<usize>,
        code: Option<String>,
    },
    /// Polynomial of a code with some crossings made singular.
    Graph {
        #[arg(long, value_delimiter = ',', required = true)]
        singular: Vec<u32>,
        code: String,
    },
    /// Finite flat biquandles.
    Biquandle {
        #[command(subcommand)]
        command: BiquandleCommand,
    },
    /// Run `invariant` on every line of a file.
    Batch {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct TransformOp {
    #[arg(long)]
    mirror: bool,
    #[arg(long)]
    reverse: bool,
    #[arg(long, value_delimiter = ',')]
    switch: Option<Vec<u32>>,
    #[arg(long, value_delimiter = ',')]
    virtualize: Option<Vec<u32>>,
    #[arg(long)]
    smooth_zero: bool,
}

#[derive(Debug, Subcommand)]
pub enum BiquandleCommand {
    /// All affine flat biquandles over Z/N.
    Search { n: usize },
    /// Check the axioms and the weight condition of a table file.
    Check { file: PathBuf },
    /// All colorings of a flat code.
    Color { flat: String, file: PathBuf },
    /// Doodle pre-invariant for every coloring of a signed code.
    Doodle { code: String, file: PathBuf },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Seed codes for `verify` when none are given.
pub const DEFAULT_CORPUS: [&str; 5] = [
    "O1+ O2+ U1+ U2+",
    "O1+ U2+ O3+ U1+ O2+ U3+",
    "O1- O2+ U1- U2+",
    "O1+ O2+ U1+ O3+ U2+ U3+",
    "O1+ U2+ ; U1+ O2+",
];

pub fn execute<I, T>(args: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CliOutput {
                    code: 1,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                CliOutput {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match run(&cli) {
        Ok(out) => out,
        Err(e) => CliOutput {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn ok(stdout: String) -> Result<CliOutput> {
    Ok(CliOutput {
        code: 0,
        stdout,
        stderr: String::new(),
    })
}

fn read(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Format(format!("{}: {e}", path.display())))
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn weights_json(table: &WeightTable) -> Value {
    table
        .entries()
        .iter()
        .map(|w| json!({"id": w.crossing, "sign": w.sign.to_string(), "Wplus": w.w_plus, "W": w.weight}))
        .collect()
}

/// The `invariant` result object.
pub fn invariant_json(code: &SignedGaussCode) -> Result<Value> {
    let coloring = lambda_coloring(code)?;
    let table = crossing_weights(code, &coloring)?;
    let signed = table.signed_weights();
    let vassiliev: serde_json::Map<String, Value> = (1..=4)
        .map(|n| {
            (
                n.to_string(),
                Value::String(vassiliev_invariant(&signed, n).to_string()),
            )
        })
        .collect();
    Ok(json!({
        "code": code.to_string(),
        "canonical": code.canonicalize().to_string(),
        "writhe": writhe(code),
        "coloring": coloring.to_string(),
        "weights": weights_json(&table),
        "polynomial": table.polynomial().to_string(),
        "vassiliev": vassiliev,
    }))
}

const CSV_HEADER: &str = "code,writhe,polynomial,v2,v3,v4";

fn csv_row(v: &Value) -> String {
    let s = |x: &Value| match x {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    format!(
        "{},{},{},{},{},{}",
        s(&v["code"]),
        s(&v["writhe"]),
        s(&v["polynomial"]),
        s(&v["vassiliev"]["2"]),
        s(&v["vassiliev"]["3"]),
        s(&v["vassiliev"]["4"])
    )
}

fn invariant_text(v: &Value) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "code: {}", v["code"].as_str().unwrap_or_default());
    let _ = writeln!(out, "writhe: {}", v["writhe"]);
    let _ = writeln!(
        out,
        "coloring: {}",
        v["coloring"].as_str().unwrap_or_default()
    );
    for w in v["weights"].as_array().into_iter().flatten() {
        let _ = writeln!(
            out,
            "crossing {} ({}): W+ = {}, W = {}",
            w["id"],
            w["sign"].as_str().unwrap_or(""),
            w["Wplus"],
            w["W"]
        );
    }
    let _ = writeln!(out, "P = {}", v["polynomial"].as_str().unwrap_or_default());
    for n in 1..=4 {
        let _ = writeln!(
            out,
            "v{n} = {}",
            v["vassiliev"][n.to_string()].as_str().unwrap_or_default()
        );
    }
    out
}

fn run(cli: &Cli) -> Result<CliOutput> {
    let fmt = cli.format;
    match &cli.command {
        Command::Parse { code } => cmd_parse(fmt, code),
        Command::Invariant { code } => {
            let v = invariant_json(&parse_signed(code)?)?;
            ok(match fmt {
                Format::Json => pretty(&v),
                Format::Csv => format!("{CSV_HEADER}\n{}\n", csv_row(&v)),
                Format::Text => invariant_text(&v),
            })
        }
        Command::LinkInvariant { offsets, code } => {
            let code = parse_signed(code)?;
            let offsets = if offsets.is_empty() {
                vec![0; code.num_components()]
            } else {
                offsets.clone()
            };
            let coloring = propagate_coloring(&code, &offsets)?;
            let table = crossing_weights(&code, &coloring)?;
            let poly = table.polynomial().to_string();
            ok(match fmt {
                Format::Json => pretty(&json!({
                    "code": code.to_string(),
                    "offsets": offsets,
                    "coloring": coloring.to_string(),
                    "weights": weights_json(&table),
                    "polynomial": poly,
                })),
                Format::Csv => format!(
                    "code,offsets,polynomial\n{code},{},{poly}\n",
                    join(&offsets, ";")
                ),
                Format::Text => format!("coloring: {coloring}\nP = {poly}\n"),
            })
        }
        Command::SymbolicWeights { code } => {
            let code = parse_signed(code)?;
            let ws = symbolic_link_weights(&code)?;
            ok(match fmt {
                Format::Json => pretty(&json!({
                    "code": code.to_string(),
                    "weights": ws.iter().map(|w| json!({
                        "id": w.crossing,
                        "sign": w.sign.to_string(),
                        "constant": w.constant,
                        "plus_component": w.plus_component,
                        "minus_component": w.minus_component,
                        "expression": w.to_string(),
                    })).collect::<Vec<_>>(),
                })),
                Format::Csv => {
                    let mut s = "id,sign,constant,plus_component,minus_component\n".to_string();
                    for w in &ws {
                        let _ = writeln!(
                            s,
                            "{},{},{},{},{}",
                            w.crossing, w.sign, w.constant, w.plus_component, w.minus_component
                        );
                    }
                    s
                }
                Format::Text => ws
                    .iter()
                    .map(|w| format!("c{}: {w}\n", w.crossing))
                    .collect(),
            })
        }
        Command::Vassiliev { max_order, code } => {
            if *max_order == 0 {
                return Err(Error::Precondition("--max-order must be at least 1".into()));
            }
            let code = parse_signed(code)?;
            let values: Vec<(u32, String)> = (1..=*max_order)
                .map(|n| Ok((n, knot_vassiliev(&code, n)?.to_string())))
                .collect::<Result<_>>()?;
            ok(match fmt {
                Format::Json => {
                    let map: serde_json::Map<String, Value> = values
                        .iter()
                        .map(|(n, v)| (n.to_string(), Value::String(v.clone())))
                        .collect();
                    pretty(&json!({"code": code.to_string(), "vassiliev": map}))
                }
                Format::Csv => {
                    let mut s = "n,value\n".to_string();
                    for (n, v) in &values {
                        let _ = writeln!(s, "{n},{v}");
                    }
                    s
                }
                Format::Text => values
                    .iter()
                    .map(|(n, v)| format!("v{n} = {v}\n"))
                    .collect(),
            })
        }
        Command::Transform { op, code } => cmd_transform(fmt, op, code),
        Command::Moves { walk, code } => {
            let code = parse_signed(code)?;
            let w = random_walk(&code, *walk, cli.seed);
            let trace: Vec<String> = w.trace.iter().map(ToString::to_string).collect();
            ok(match fmt {
                Format::Json => pretty(&json!({
                    "code": code.to_string(),
                    "steps": walk,
                    "seed": cli.seed,
                    "result": w.code.to_string(),
                    "trace": trace,
                })),
                Format::Csv => {
                    let mut s = "step,move\n".to_string();
                    for (i, t) in trace.iter().enumerate() {
                        let _ = writeln!(s, "{},{t}", i + 1);
                    }
                    s
                }
                Format::Text => format!("{}\n{}", w.code, w.trace_text()),
            })
        }
        Command::Verify {
            trials,
            steps,
            codes,
        } => {
            let seeds: Vec<SignedGaussCode> = if codes.is_empty() {
                DEFAULT_CORPUS
                    .iter()
                    .map(|c| parse_signed(c))
                    .collect::<Result<_>>()?
            } else {
                codes
                    .iter()
                    .map(|c| parse_signed(c))
                    .collect::<Result<_>>()?
            };
            let report = invariance_report(&seeds, *steps, *trials, cli.seed);
            let stdout = match fmt {
                Format::Json => pretty(&serde_json::to_value(&report).expect("report serializes")),
                Format::Csv => format!(
                    "passed,failed,skipped\n{},{},{}\n",
                    report.passed, report.failed, report.skipped
                ),
                Format::Text => {
                    let mut s = format!(
                        "passed {} failed {} skipped {}\n",
                        report.passed, report.failed, report.skipped
                    );
                    for f in &report.failures {
                        let _ = writeln!(
                            s,
                            "counterexample: {} trial {} seed {}: {} -> {}",
                            f.seed_code, f.trial, f.trial_seed, f.before, f.after
                        );
                        for t in &f.trace {
                            let _ = writeln!(s, "  {t}");
                        }
                    }
                    s
                }
            };
            let code = if report.all_passed() { 0 } else { 4 };
            Ok(CliOutput {
                code,
                stdout,
                stderr: String::new(),
            })
        }
        Command::Flat {
            certificate,
            scan,
            code,
        } => cmd_flat(fmt, *certificate, *scan, code.as_deref()),
        Command::Graph { singular, code } => {
            let code = parse_signed(code)?;
            let g = SingularCode::from_signed(&code, singular)?;
            let p = graph_polynomial(&g)?;
            ok(match fmt {
                Format::Json => pretty(&json!({
                    "code": code.to_string(),
                    "singular": singular,
                    "graph": g.to_string(),
                    "polynomial": p.to_string(),
                })),
                Format::Csv => format!("graph,polynomial\n{g},{p}\n"),
                Format::Text => format!("{g}\nP = {p}\n"),
            })
        }
        Command::Biquandle { command } => cmd_biquandle(fmt, command),
        Command::Batch { input } => cmd_batch(fmt, input),
    }
}

fn join<T: ToString>(xs: &[T], sep: &str) -> String {
    xs.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(sep)
}

fn cmd_parse(fmt: Format, text: &str) -> Result<CliOutput> {
    let v = match parse_signed(text) {
        Ok(code) => {
            let report = colorability(&code);
            json!({
                "kind": "signed",
                "code": code.to_string(),
                "canonical": code.canonicalize().to_string(),
                "components": code.num_components(),
                "crossings": code.num_crossings(),
                "writhe": writhe(&code),
                "colorable": report.colorable,
                "imbalances": report.imbalances,
            })
        }
        Err(signed_err) => match parse_flat(text) {
            Ok(flat) => json!({
                "kind": "flat",
                "code": flat.to_string(),
                "canonical": flat.canonicalize().to_string(),
                "components": flat.num_components(),
                "crossings": flat.num_crossings(),
            }),
            Err(_) => return Err(signed_err),
        },
    };
    let s = |k: &str| v[k].as_str().unwrap_or_default().to_string();
    ok(match fmt {
        Format::Json => pretty(&v),
        Format::Csv => format!(
            "kind,code,canonical,components,crossings\n{},{},{},{},{}\n",
            s("kind"),
            s("code"),
            s("canonical"),
            v["components"],
            v["crossings"]
        ),
        Format::Text => format!("{}\n", s("canonical")),
    })
}

fn cmd_transform(fmt: Format, op: &TransformOp, text: &str) -> Result<CliOutput> {
    let code = parse_signed(text)?;
    let (out, coloring) = if op.mirror {
        (mirror(&code), None)
    } else if op.reverse {
        (reverse(&code), None)
    } else if let Some(ids) = &op.switch {
        (switch_crossings(&code, ids)?, None)
    } else if let Some(ids) = &op.virtualize {
        (virtualize(&code, ids)?, None)
    } else {
        let start = if code.is_knot() {
            lambda_coloring(&code)?
        } else {
            propagate_coloring(&code, &vec![0; code.num_components()])?
        };
        let (c, col) = smooth_zero_weight(&code, &start)?;
        (c, Some(col.to_string()))
    };
    ok(match fmt {
        Format::Json => {
            let mut v = json!({
                "code": code.to_string(),
                "result": out.to_string(),
                "canonical": out.canonicalize().to_string(),
            });
            if let Some(c) = coloring {
                v["coloring"] = Value::String(c);
            }
            pretty(&v)
        }
        Format::Csv => format!("code,result\n{code},{out}\n"),
        Format::Text => format!("{out}\n"),
    })
}

fn violation_json(v: &Option<AxiomViolation>) -> Value {
    match v {
        None => Value::String("pass".into()),
        Some(v) => json!({"elements": v.elements, "reason": v.reason}),
    }
}

fn cmd_flat(
    fmt: Format,
    certificate: bool,
    scan: Option<usize>,
    code: Option<&str>,
) -> Result<CliOutput> {
    if let Some(max) = scan {
        let all = enumerate_flat_knots(max);
        let certified: Vec<String> = all
            .par_iter()
            .map(|f| {
                Ok(flat_nontriviality_certificate(f)?
                    .certified
                    .then(|| f.to_string()))
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
        return ok(match fmt {
            Format::Json => {
                pretty(&json!({"max_crossings": max, "checked": all.len(), "certified": certified}))
            }
            Format::Csv => {
                let mut s = "code\n".to_string();
                for c in &certified {
                    let _ = writeln!(s, "{c}");
                }
                s
            }
            Format::Text => certified.iter().map(|c| format!("{c}\n")).collect(),
        });
    }
    if !certificate {
        return Err(Error::Precondition(
            "flat needs --certificate CODE or --scan MAX".into(),
        ));
    }
    let Some(text) = code else {
        return Err(Error::Precondition(
            "flat --certificate needs a code".into(),
        ));
    };
    let flat = parse_flat(text)?;
    let cert = flat_nontriviality_certificate(&flat)?;
    let witness = match &cert.witness {
        Witness::ZeroResolution(r) => json!({"zero_resolution": r.to_string()}),
        Witness::Polynomials(ps) => json!({
            "polynomials": ps.iter().map(|(r, p)| json!({"resolution": r.to_string(), "polynomial": p.to_string()})).collect::<Vec<_>>()
        }),
    };
    ok(match fmt {
        Format::Json => pretty(
            &json!({"code": flat.to_string(), "certified": cert.certified, "witness": witness}),
        ),
        Format::Csv => format!("code,certified\n{flat},{}\n", cert.certified),
        Format::Text => match &cert.witness {
            Witness::ZeroResolution(r) => format!("not certified: {r} has P = 0\n"),
            Witness::Polynomials(ps) => {
                let mut s = "certified\n".to_string();
                for (r, p) in ps {
                    let _ = writeln!(s, "{r}: {p}");
                }
                s
            }
        },
    })
}

fn load_biquandle(path: &PathBuf) -> Result<FiniteFlatBiquandle> {
    read(path)?.parse()
}

fn cmd_biquandle(fmt: Format, command: &BiquandleCommand) -> Result<CliOutput> {
    match command {
        BiquandleCommand::Search { n } => {
            if *n < 1 {
                return Err(Error::Precondition("N must be positive".into()));
            }
            let found = search_affine(*n);
            let lines: Vec<String> = found.iter().map(ToString::to_string).collect();
            ok(match fmt {
                Format::Json => pretty(&json!({"n": n, "count": found.len(), "params": lines})),
                Format::Csv => {
                    let mut s = "n,r,s,k,p,q,l\n".to_string();
                    for l in &lines {
                        let _ = writeln!(s, "{}", l.replace(' ', ","));
                    }
                    s
                }
                Format::Text => lines.iter().map(|l| format!("{l}\n")).collect(),
            })
        }
        BiquandleCommand::Check { file } => {
            let b = load_biquandle(file)?;
            let r = check_axioms(&b);
            let wc = weight_condition(&b);
            let wc_json = match wc {
                None => Value::String("pass".into()),
                Some((a, c)) => json!([a, c]),
            };
            ok(match fmt {
                Format::Json => pretty(&json!({
                    "n": b.size(),
                    "axiom1": violation_json(&r.axiom1),
                    "axiom2": violation_json(&r.axiom2),
                    "axiom3": violation_json(&r.axiom3),
                    "preflat": r.is_preflat(),
                    "flat_biquandle": r.is_flat_biquandle(),
                    "weight_condition": wc_json,
                })),
                Format::Csv => format!(
                    "n,preflat,flat_biquandle,weight_condition\n{},{},{},{}\n",
                    b.size(),
                    r.is_preflat(),
                    r.is_flat_biquandle(),
                    wc.is_none()
                ),
                Format::Text => {
                    let line = |name: &str, v: &Option<AxiomViolation>| match v {
                        None => format!("{name}: pass\n"),
                        Some(v) => format!("{name}: fail at {:?} ({})\n", v.elements, v.reason),
                    };
                    let mut s = line("axiom 1", &r.axiom1)
                        + &line("axiom 2", &r.axiom2)
                        + &line("axiom 3", &r.axiom3);
                    let _ = match wc {
                        None => writeln!(s, "weight condition: pass"),
                        Some((a, c)) => writeln!(s, "weight condition: fail at a={a} b={c}"),
                    };
                    s
                }
            })
        }
        BiquandleCommand::Color { flat, file } => {
            let flat = parse_flat(flat)?;
            let b = load_biquandle(file)?;
            let cols: Vec<String> = solve_colorings(&flat, &b, &[])?
                .iter()
                .map(ToString::to_string)
                .collect();
            ok(match fmt {
                Format::Json => pretty(
                    &json!({"code": flat.to_string(), "count": cols.len(), "colorings": cols}),
                ),
                Format::Csv => {
                    let mut s = "coloring\n".to_string();
                    for c in &cols {
                        let _ = writeln!(s, "\"{c}\"");
                    }
                    s
                }
                Format::Text => format!(
                    "{} colorings\n{}",
                    cols.len(),
                    cols.iter().map(|c| format!("{c}\n")).collect::<String>()
                ),
            })
        }
        BiquandleCommand::Doodle { code, file } => {
            let code = parse_signed(code)?;
            let b = load_biquandle(file)?;
            let cols = solve_colorings(&forget(&code), &b, &[])?;
            let per: Vec<(String, Vec<i64>)> = cols
                .iter()
                .map(|c| Ok((c.to_string(), doodle_pre_invariant(&code, &b, c)?)))
                .collect::<Result<_>>()?;
            let total = doodle_aggregate(&code, &b)?;
            ok(match fmt {
                Format::Json => pretty(&json!({
                    "code": code.to_string(),
                    "colorings": per.iter().map(|(c, v)| json!({"coloring": c, "vector": v})).collect::<Vec<_>>(),
                    "aggregate": total,
                })),
                Format::Csv => {
                    let mut s = "coloring,vector\n".to_string();
                    for (c, v) in &per {
                        let _ = writeln!(s, "\"{c}\",\"{}\"", join(v, " "));
                    }
                    s
                }
                Format::Text => {
                    let mut s = String::new();
                    for (c, v) in &per {
                        let _ = writeln!(s, "{c}: {}", join(v, " "));
                    }
                    let _ = writeln!(s, "aggregate: {}", join(&total, " "));
                    s
                }
            })
        }
    }
}

fn cmd_batch(fmt: Format, input: &PathBuf) -> Result<CliOutput> {
    let text = read(input)?;
    let jobs: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let results: Vec<(usize, &str, Result<Value>)> = jobs
        .par_iter()
        .map(|&(line, code)| {
            (
                line,
                code,
                parse_signed(code).and_then(|c| invariant_json(&c)),
            )
        })
        .collect();
    let mut stderr = String::new();
    let stdout = match fmt {
        Format::Json => {
            let records: Vec<Value> = results
                .iter()
                .map(|(line, code, r)| match r {
                    Ok(v) => json!({"line": line, "code": code, "result": v}),
                    Err(e) => json!({"line": line, "code": code, "error": e.to_string()}),
                })
                .collect();
            pretty(&Value::Array(records))
        }
        Format::Csv | Format::Text => {
            let mut s = if fmt == Format::Csv {
                format!("{CSV_HEADER}\n")
            } else {
                String::new()
            };
            for (line, code, r) in &results {
                match r {
                    Ok(v) if fmt == Format::Csv => {
                        let _ = writeln!(s, "{}", csv_row(v));
                    }
                    Ok(v) => {
                        let _ = writeln!(
                            s,
                            "{}: {}",
                            code,
                            v["polynomial"].as_str().unwrap_or_default()
                        );
                    }
                    Err(e) => {
                        let _ = writeln!(stderr, "line {line}: {code}: {e}");
                    }
                }
            }
            s
        }
    };
    Ok(CliOutput {
        code: 0,
        stdout,
        stderr,
    })
}
