use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;
use std::time::Instant;

use artin_core::determinantal::{beta_det, repair_determinantal, witness_det};
use artin_core::lifting::{hensel_lift, solve_linear_approx, tougeron_lift, val_json};
use artin_core::monomial::MonomialIdeal;
use artin_core::oracle::{oracle_beta, stability_check, OracleConfig, SystemKind, DEFAULT_BUDGET};
use artin_core::poly::{linear_parts, parse_poly, parse_system, ColonData};
use artin_core::verify::run_suite;
use artin_core::{ArtinError, Elem, MatrixR, PolySystem, RingCtx};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

#[derive(Parser, Debug)]
#[command(
    name = "artin",
    version,
    about = "Artin functions over truncated discrete valuation rings"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Include wall-clock timings in the report.
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Closed-form Artin function of a monomial ideal.
    BetaMono {
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long)]
        n: Option<u32>,
    },
    /// Closed-form Artin function of the ideal of r-minors.
    BetaDet {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        n: Option<u32>,
    },
    /// Repairs an approximate zero of a monomial ideal.
    RepairMono {
        #[arg(long)]
        ring: String,
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long)]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Repairs an approximate point of the determinantal variety.
    RepairDet {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        matrix: String,
    },
    /// Sharpness witness of order beta_n - 1.
    Witness {
        #[arg(long, value_enum)]
        kind: WitnessKind,
        #[arg(long)]
        ring: String,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        alphas: Option<String>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        l: Option<usize>,
        #[arg(long)]
        r: Option<usize>,
    },
    /// Lifts an approximate zero of a polynomial system to an exact one.
    Lift {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        system: String,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, value_enum, default_value_t = LiftMethod::Hensel)]
        method: LiftMethod,
        /// Bound on the Elkik ideal (tougeron).
        #[arg(long)]
        h: Option<u32>,
        /// Residual valuation to stop at (hensel); defaults to M.
        #[arg(long)]
        target: Option<u32>,
        /// Colon data file: lines `i j : g1 ; g2` with 1-based equation indices.
        #[arg(long)]
        colon: Option<String>,
    },
    /// Exact solution of A x = d near an approximate one.
    SolveLinear {
        #[arg(long)]
        ring: String,
        /// Linear system file; alternative to --matrix/--rhs.
        #[arg(long)]
        system: Option<String>,
        #[arg(long)]
        matrix: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        rhs: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long)]
        n: u32,
    },
    /// Brute-force Artin function over the finite ring.
    Oracle {
        #[arg(long)]
        ring: String,
        #[arg(long, value_enum)]
        kind: OracleKind,
        #[arg(long)]
        system: Option<String>,
        #[arg(long)]
        alphas: Option<String>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        l: Option<usize>,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        beta_max: Option<u32>,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Enumerate every point even for homogeneous systems.
        #[arg(long)]
        no_symmetry: bool,
        /// Skip the rerun at precision M + 1.
        #[arg(long)]
        no_stability: bool,
    },
    /// Runs a self-checking suite.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args, Debug)]
struct IdealArgs {
    /// Exponent vectors, e.g. "(1,1);(1,0)".
    #[arg(long)]
    alphas: Option<String>,
    /// System file whose equations are monomials.
    #[arg(long)]
    system: Option<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum WitnessKind {
    Mono,
    Det,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum LiftMethod {
    Hensel,
    Tougeron,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OracleKind {
    Monomial,
    Determinantal,
    Linear,
    General,
}

impl OracleKind {
    fn name(self) -> &'static str {
        match self {
            OracleKind::Monomial => "monomial",
            OracleKind::Determinantal => "determinantal",
            OracleKind::Linear => "linear",
            OracleKind::General => "general",
        }
    }
}

#[derive(Debug)]
enum Failure {
    Lib(ArtinError),
    Io(String),
    Usage(String),
    /// A suite ran and some case failed.
    Suite(Value),
}

impl From<ArtinError> for Failure {
    fn from(e: ArtinError) -> Failure {
        Failure::Lib(e)
    }
}

type Outcome<T> = Result<T, Failure>;

/// Inputs read while running, hashed into the report.
#[derive(Default)]
struct Inputs {
    files: Map<String, Value>,
    ring: Option<RingCtx>,
}

impl Inputs {
    fn read(&mut self, path: &str) -> Outcome<String> {
        let text = fs::read_to_string(path).map_err(|e| Failure::Io(format!("{path}: {e}")))?;
        self.files.insert(path.to_string(), json!(text));
        Ok(text)
    }

    fn ring(&mut self, s: &str) -> Outcome<RingCtx> {
        let ring: RingCtx = s.parse()?;
        self.ring = Some(ring);
        Ok(ring)
    }
}

fn parse_point(ring: &RingCtx, s: &str) -> Outcome<Vec<Elem>> {
    let body = s.trim().trim_start_matches('(').trim_end_matches(')');
    if body.trim().is_empty() {
        return Ok(Vec::new());
    }
    body.split(',')
        .map(|x| ring.parse_elem(x.trim()).map_err(Failure::from))
        .collect()
}

fn point_json(ring: &RingCtx, p: &[Elem]) -> Value {
    json!(ring.format_point(p))
}

fn load_ideal(
    inputs: &mut Inputs,
    ring: Option<&RingCtx>,
    args: &IdealArgs,
) -> Outcome<MonomialIdeal> {
    match (&args.alphas, &args.system) {
        (Some(a), None) => Ok(MonomialIdeal::parse_compact(a)?),
        (None, Some(path)) => {
            let text = inputs.read(path)?;
            // exponents do not depend on the ring; any context parses them
            let ring = match ring {
                Some(r) => *r,
                None => RingCtx::tseries(2, 1)?,
            };
            Ok(MonomialIdeal::from_system(&parse_system(&ring, &text)?)?)
        }
        _ => Err(Failure::Usage(
            "give exactly one of --alphas and --system".into(),
        )),
    }
}

fn parse_colon(ring: &RingCtx, sys: &PolySystem, text: &str) -> Outcome<ColonData> {
    let mut colon = ColonData::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |why: &str| ArtinError::MalformedColonData(format!("line {}: {why}", i + 1));
        let (lhs, rhs) = line
            .split_once(':')
            .ok_or_else(|| bad("expected `indices : generators`"))?;
        let mut subset = Vec::new();
        for tok in lhs
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
        {
            let k: usize = tok
                .parse()
                .map_err(|_| bad(&format!("bad index `{tok}`")))?;
            if k == 0 {
                return Err(bad("indices are 1-based").into());
            }
            subset.push(k - 1);
        }
        let gens = rhs
            .split(';')
            .filter(|g| !g.trim().is_empty())
            .map(|g| parse_poly(ring, g.trim(), sys.vars()))
            .collect::<Result<Vec<_>, _>>()?;
        colon.insert(subset, gens);
    }
    Ok(colon)
}

fn run(cmd: &Command, inputs: &mut Inputs) -> Outcome<Value> {
    match cmd {
        Command::BetaMono { ideal, n } => {
            let ideal = load_ideal(inputs, None, ideal)?;
            let bound = ideal.beta();
            let mut out = json!({
                "ideal": ideal.to_compact(),
                "s": ideal.s_index(),
                "formula": bound.to_string(),
            });
            if let Some(n) = n {
                out["beta"] = json!(bound.eval(*n));
            }
            Ok(out)
        }
        Command::BetaDet { r, n } => {
            if *r == 0 {
                return Err(ArtinError::OutOfRange {
                    what: "r",
                    detail: "must be at least 1".into(),
                }
                .into());
            }
            let mut out = json!({ "formula": format!("{r}n - {}", r - 1) });
            if let Some(n) = n {
                out["beta"] = json!(beta_det(*r, *n));
            }
            Ok(out)
        }
        Command::RepairMono {
            ring,
            ideal,
            n,
            point,
        } => {
            let ring = inputs.ring(ring)?;
            let ideal = load_ideal(inputs, Some(&ring), ideal)?;
            let a = parse_point(&ring, point)?;
            let rep = ideal.repair(&ring, &a, *n)?;
            Ok(json!({
                "point": point_json(&ring, &rep.point),
                "zeroed": rep.zeroed.iter().map(|j| j + 1).collect::<Vec<_>>(),
                "beta": ideal.beta().eval(*n),
                "verified": rep.verify(&ideal, &ring, &a, *n),
            }))
        }
        Command::RepairDet { ring, r, n, matrix } => {
            let ring = inputs.ring(ring)?;
            let a = MatrixR::parse(&ring, matrix)?;
            let rep = repair_determinantal(&ring, &a, *r, *n)?;
            let terms: Vec<Value> = rep
                .certificate
                .terms
                .iter()
                .map(|(u, w)| json!({"u": point_json(&ring, u), "w": point_json(&ring, w)}))
                .collect();
            Ok(json!({
                "matrix": rep.matrix.format(&ring),
                "certificate": terms,
                "beta": beta_det(*r as u32, *n),
                "verified": rep.verify(&ring, &a, *r, *n),
            }))
        }
        Command::Witness {
            kind,
            ring,
            n,
            alphas,
            k,
            l,
            r,
        } => {
            let ring = inputs.ring(ring)?;
            match kind {
                WitnessKind::Mono => {
                    let alphas = alphas
                        .as_deref()
                        .ok_or_else(|| Failure::Usage("--alphas is required".into()))?;
                    let ideal = MonomialIdeal::parse_compact(alphas)?;
                    let w = ideal.witness(&ring, *n)?;
                    Ok(json!({
                        "point": point_json(&ring, &w),
                        "order": val_json(ideal.eval_val(&ring, &w)?.val()),
                        "beta": ideal.beta().eval(*n),
                    }))
                }
                WitnessKind::Det => {
                    let need = |x: &Option<usize>, name: &str| {
                        x.ok_or_else(|| Failure::Usage(format!("--{name} is required")))
                    };
                    let (k, l, r) = (need(k, "k")?, need(l, "l")?, need(r, "r")?);
                    let w = witness_det(&ring, k, l, r, *n)?;
                    Ok(json!({
                        "matrix": w.format(&ring),
                        "order": val_json(w.minor_ideal_val(&ring, r)?),
                        "beta": beta_det(r as u32, *n),
                    }))
                }
            }
        }
        Command::Lift {
            ring,
            system,
            point,
            method,
            h,
            target,
            colon,
        } => {
            let ring = inputs.ring(ring)?;
            let text = inputs.read(system)?;
            let sys = parse_system(&ring, &text)?;
            let a = parse_point(&ring, point)?;
            let report = match method {
                LiftMethod::Hensel => hensel_lift(&sys, &a, target.unwrap_or(ring.prec()))?,
                LiftMethod::Tougeron => {
                    let h =
                        h.ok_or_else(|| Failure::Usage("--h is required for tougeron".into()))?;
                    let colon = match colon {
                        Some(path) => {
                            let text = inputs.read(path)?;
                            Some(parse_colon(&ring, &sys, &text)?)
                        }
                        None => None,
                    };
                    tougeron_lift(&sys, &a, h, colon.as_ref())?
                }
            };
            Ok(report.to_json(&ring))
        }
        Command::SolveLinear {
            ring,
            system,
            matrix,
            rhs,
            point,
            n,
        } => {
            let ring = inputs.ring(ring)?;
            let (a, d) = match (system, matrix, rhs) {
                (Some(path), None, None) => {
                    let text = inputs.read(path)?;
                    linear_parts(&parse_system(&ring, &text)?)?
                }
                (None, Some(m), Some(d)) => (MatrixR::parse(&ring, m)?, parse_point(&ring, d)?),
                _ => {
                    return Err(Failure::Usage(
                        "give --system, or both --matrix and --rhs".into(),
                    ))
                }
            };
            let x = parse_point(&ring, point)?;
            let sol = solve_linear_approx(&ring, &a, &d, &x, *n)?;
            Ok(json!({ "point": point_json(&ring, &sol.point), "offset": sol.offset }))
        }
        Command::Oracle {
            ring,
            kind,
            system,
            alphas,
            k,
            l,
            r,
            n,
            beta_max,
            jobs,
            budget,
            no_symmetry,
            no_stability,
        } => {
            let ring = inputs.ring(ring)?;
            let sk = match kind {
                OracleKind::Determinantal => {
                    let need = |x: &Option<usize>, name: &str| {
                        x.ok_or_else(|| Failure::Usage(format!("--{name} is required")))
                    };
                    SystemKind::Determinantal {
                        k: need(k, "k")?,
                        l: need(l, "l")?,
                        r: need(r, "r")?,
                    }
                }
                OracleKind::Monomial if alphas.is_some() => {
                    SystemKind::Monomial(MonomialIdeal::parse_compact(alphas.as_deref().unwrap())?)
                }
                _ => {
                    let path = system
                        .as_deref()
                        .ok_or_else(|| Failure::Usage("--system is required".into()))?;
                    let text = inputs.read(path)?;
                    SystemKind::from_system(kind.name(), &parse_system(&ring, &text)?)?
                }
            };
            let cfg = OracleConfig {
                ring,
                n: *n,
                beta_max: beta_max.unwrap_or(ring.prec()),
                jobs: *jobs,
                budget: *budget,
                symmetry: !no_symmetry,
            };
            let res = oracle_beta(&cfg, &sk)?;
            let stable = if *no_stability {
                Value::Null
            } else {
                match stability_check(&cfg, &sk) {
                    Ok(s) => json!(s.stable),
                    Err(ArtinError::BudgetExceeded { .. }) => Value::Null,
                    Err(e) => return Err(e.into()),
                }
            };
            Ok(json!({
                "kind": sk.name(),
                "beta": res.beta.map_or(json!("NOT_FOUND"), |b| json!(b)),
                "counterexample": res.counterexample.as_ref().map(|c| point_json(&ring, c)),
                "points_examined": res.points_examined,
                "stable": stable,
            }))
        }
        Command::Verify { suite, seed } => {
            let rep = run_suite(suite, *seed)?;
            let out = rep.to_json();
            if rep.all_passed() {
                Ok(out)
            } else {
                Err(Failure::Suite(out))
            }
        }
    }
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::BetaMono { .. } => "beta-mono",
        Command::BetaDet { .. } => "beta-det",
        Command::RepairMono { .. } => "repair-mono",
        Command::RepairDet { .. } => "repair-det",
        Command::Witness { .. } => "witness",
        Command::Lift { .. } => "lift",
        Command::SolveLinear { .. } => "solve-linear",
        Command::Oracle { .. } => "oracle",
        Command::Verify { .. } => "verify",
    }
}

fn digest(args: &[String], files: &Map<String, Value>) -> String {
    let canonical = json!({ "args": args, "files": files });
    hex::encode(Sha256::digest(canonical.to_string().as_bytes()))
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Flattens nested objects to dotted keys; arrays stay as JSON text.
fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&key, x, out);
            }
        }
        other => out.push((prefix.to_string(), scalar(other))),
    }
}

fn emit(report: &Value, format: Format) {
    let text = match format {
        Format::Json => format!(
            "{}\n",
            serde_json::to_string_pretty(report).expect("serializable")
        ),
        Format::Csv => {
            let mut rows = Vec::new();
            flatten("", report, &mut rows);
            let mut w = csv::Writer::from_writer(Vec::new());
            let mut write = || -> csv::Result<Vec<u8>> {
                w.write_record(["key", "value"])?;
                for (k, v) in &rows {
                    w.write_record([k, v])?;
                }
                w.flush()?;
                Ok(w.get_ref().clone())
            };
            String::from_utf8(write().expect("in-memory writer")).expect("utf-8 fields")
        }
    };
    let _ = io::stdout().write_all(text.as_bytes());
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let cli = Cli::parse();
    let start = Instant::now();
    let mut inputs = Inputs::default();
    let outcome = run(&cli.command, &mut inputs);

    let mut report = json!({
        "command": command_name(&cli.command),
        "args": args,
        "ring": inputs.ring.map(|r| r.to_string()),
        "inputs_digest": digest(&args, &inputs.files),
        "version": env!("CARGO_PKG_VERSION"),
    });
    if cli.timings {
        report["timings"] = json!({ "elapsed_ms": start.elapsed().as_secs_f64() * 1e3 });
    }
    let code = match outcome {
        Ok(out) => {
            report["outputs"] = out;
            0
        }
        Err(Failure::Suite(out)) => {
            report["outputs"] = out;
            1
        }
        Err(Failure::Lib(e)) => {
            let code = if e.is_input_error() { 2 } else { 1 };
            report["error"] = json!({ "kind": e.kind(), "message": e.to_string() });
            code
        }
        Err(Failure::Io(msg)) => {
            report["error"] = json!({ "kind": "Io", "message": msg });
            2
        }
        Err(Failure::Usage(msg)) => {
            report["error"] = json!({ "kind": "Usage", "message": msg });
            2
        }
    };
    emit(&report, cli.format);
    ExitCode::from(code)
}
