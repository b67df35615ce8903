//! Command-line front end. [`run`] parses arguments, runs one analysis and
//! returns the process exit code:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | ok, or `verify` passed |
//! | 1 | `verify` failed |
//! | 2 | unreadable input or bad arguments |
//! | 3 | numerical failure |
//! | 4 | no base solution of the equality |
//! | 5 | precondition not met (uncontrollable system, non-RHP selection) |

mod input;
mod render;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::analysis::{
    boundedness, extremal_solutions, parametrize, residual_spectrum, verify, Certificate, ParamPoint,
};
use crate::error::Error;
use crate::linalg::{Mat, SymMat};
use crate::riccati::{
    degenerate_classify, full_rank_simplified_solution, reduce, schur_family, solve_base_are, AriSolution,
    BaseChoice, DegenerateOutcome, HomogeneousForm,
};
use crate::system::{kalman_rank, HalfPlane, SpectralSplit};
use crate::tolerance::Tolerances;

pub use input::block_list;

#[derive(Parser, Debug)]
#[command(name = "ari", version, about = "Solution sets of algebraic Riccati inequalities")]
struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[arg(long = "tol-axis", global = true, value_name = "REL")]
    tol_axis: Option<f64>,
    #[arg(long = "tol-rank", global = true, value_name = "REL")]
    tol_rank: Option<f64>,
    #[arg(long = "tol-def", global = true, value_name = "REL")]
    tol_def: Option<f64>,
    /// Base solution; defaults to `given` when the file has K0, otherwise
    /// `antistabilizing`.
    #[arg(long, global = true, value_enum)]
    kind: Option<Kind>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Stabilizing,
    Antistabilizing,
    Given,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Spectral split, controllability and imaginary-axis behaviour.
    Classify { file: PathBuf },
    /// Solutions of the equality, one block subset or the whole family.
    Solve {
        file: PathBuf,
        /// Comma-separated 1-based block indices.
        #[arg(long = "rank-set", conflicts_with = "family")]
        rank_set: Option<String>,
        #[arg(long)]
        family: bool,
    },
    /// Maximal and minimal solutions.
    Extremal { file: PathBuf },
    /// Boundedness verdict with witness rays.
    Bounds { file: PathBuf },
    /// Full-rank solutions on RHP blocks from PSD parameters.
    Parametrize {
        file: PathBuf,
        /// Comma-separated 1-based RHP block indices; defaults to all RHP blocks.
        #[arg(long)]
        blocks: Option<String>,
        /// JSON file with the parameter under key "P".
        #[arg(long, conflicts_with = "sample")]
        param: Option<PathBuf>,
        /// Number of random positive definite parameters.
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Residual certificate for a candidate solution.
    Verify {
        file: PathBuf,
        /// JSON file with the candidate under key "K".
        #[arg(long = "K")]
        k: PathBuf,
        #[arg(long)]
        strict: bool,
    },
}

enum Failure {
    Input(String),
    Numeric(Error),
}

impl From<input::InputError> for Failure {
    fn from(e: input::InputError) -> Self {
        Failure::Input(e.0)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidInput(msg) => Failure::Input(msg),
            other => Failure::Numeric(other),
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidInput(_) => 2,
        Error::NoBaseSolution(_) | Error::BaseResidualTooLarge { .. } => 4,
        Error::Uncontrollable | Error::NotRhpSelection => 5,
        _ => 3,
    }
}

/// Runs the CLI on `args` (including the program name), writing the report
/// to `out` and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let echo: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    match execute(&cli) {
        Ok((report, code)) => {
            let mut report = report;
            report["command"] = json!(echo);
            let text = if cli.json {
                serde_json::to_string_pretty(&report).expect("report serializes") + "\n"
            } else {
                render::human(&report)
            };
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Numeric(e)) => {
            let _ = writeln!(err, "error: {}: {e}", e.name());
            if matches!(e, Error::Uncontrollable) {
                let _ = writeln!(err, "hint: `ari bounds` reports the unbounded directions");
            }
            exit_code(&e)
        }
    }
}

struct Session {
    h: HomogeneousForm,
    split: SpectralSplit,
    digest: String,
}

fn tolerances(cli: &Cli, file: Option<Tolerances>) -> Tolerances {
    let mut t = file.unwrap_or_default();
    if let Some(x) = cli.tol_axis {
        t.axis_tol = x;
    }
    if let Some(x) = cli.tol_rank {
        t.rank_tol = x;
    }
    if let Some(x) = cli.tol_def {
        t.def_tol = x;
    }
    t
}

fn open(cli: &Cli, file: &std::path::Path) -> Result<Session, Failure> {
    let loaded = input::load_problem(file)?;
    let tol = tolerances(cli, loaded.tolerances);
    let kind = cli.kind.unwrap_or(if loaded.k0.is_some() { Kind::Given } else { Kind::Antistabilizing });
    let choice = match kind {
        Kind::Stabilizing => BaseChoice::Stabilizing,
        Kind::Antistabilizing => BaseChoice::Antistabilizing,
        Kind::Given => BaseChoice::Given(
            loaded.k0.ok_or_else(|| Failure::Input("--kind given needs K0 in the problem file".into()))?,
        ),
    };
    let h = solve_base_are(&loaded.problem, choice, &tol)?;
    let split = h.split()?;
    Ok(Session { h, split, digest: loaded.digest })
}

fn execute(cli: &Cli) -> Result<(Value, i32), Failure> {
    let (s, results, code) = match &cli.command {
        Command::Classify { file } => {
            let s = open(cli, file)?;
            let r = classify(&s)?;
            (s, r, 0)
        }
        Command::Solve { file, rank_set, .. } => {
            let s = open(cli, file)?;
            let r = solve(&s, rank_set.as_deref())?;
            (s, r, 0)
        }
        Command::Extremal { file } => {
            let s = open(cli, file)?;
            let r = extremal(&s)?;
            (s, r, 0)
        }
        Command::Bounds { file } => {
            let s = open(cli, file)?;
            let r = bounds(&s)?;
            (s, r, 0)
        }
        Command::Parametrize { file, blocks, param, sample, seed } => {
            let s = open(cli, file)?;
            let r = param_cmd(&s, blocks.as_deref(), param.as_deref(), *sample, *seed)?;
            (s, r, 0)
        }
        Command::Verify { file, k, strict } => {
            let s = open(cli, file)?;
            let cand = input::load_symmetric(k, "K", s.h.tol.sym_tol)?;
            let (r, pass) = verify_cmd(&s, &cand, *strict)?;
            (s, r, if pass { 0 } else { 1 })
        }
    };
    let report = json!({
        "command": Value::Null,
        "inputDigest": s.digest,
        "base": base_json(&s.h),
        "results": results,
        "tolerances": s.h.tol,
    });
    Ok((report, code))
}

pub(crate) fn mat_json(m: &Mat) -> Value {
    let rows: Vec<Vec<f64>> = (0..m.nrows()).map(|i| m.row(i).iter().copied().collect()).collect();
    json!(rows)
}

fn eig_json(zs: &[Complex64]) -> Value {
    json!(zs.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>())
}

fn one_based(set: &[usize]) -> Vec<usize> {
    set.iter().map(|i| i + 1).collect()
}

fn base_json(h: &HomogeneousForm) -> Value {
    json!({
        "kind": h.kind,
        "K0": mat_json(h.k0.as_mat()),
        "baseResidual": h.base_residual,
    })
}

fn verdict_json(v: &crate::linalg::DefinitenessVerdict) -> Value {
    json!({ "class": v.class.as_str(), "minEig": v.min_eig, "maxEig": v.max_eig, "tolUsed": v.tol_used })
}

fn solution_json(s: &AriSolution) -> Value {
    json!({
        "blocks": one_based(&s.block_set),
        "rank": s.rank,
        "X": mat_json(s.x.as_mat()),
        "coordinates": mat_json(s.lcoord.as_mat()),
        "basis": mat_json(&s.basis),
        "residualNorm": s.residual.amax(),
        "residual": verdict_json(&s.residual_verdict),
    })
}

fn certificate_json(c: &Certificate) -> Value {
    serde_json::to_value(c).expect("certificate serializes")
}

fn classify(s: &Session) -> Result<Value, Failure> {
    let blocks: Vec<Value> = s
        .split
        .blocks
        .iter()
        .enumerate()
        .map(|(i, b)| {
            json!({
                "index": i + 1,
                "size": b.size,
                "eigenvalues": eig_json(&b.eigenvalues()),
                "halfPlane": b.half_plane.as_str(),
                "controllable": b.controllable,
            })
        })
        .collect();
    let degenerate: Vec<Value> = degenerate_classify(&s.h, &s.split)?
        .into_iter()
        .map(|(i, o)| match o {
            DegenerateOutcome::TrivialOnly => json!({ "block": i + 1, "outcome": "trivial-only" }),
            DegenerateOutcome::FreeFamily(g) => json!({
                "block": i + 1,
                "outcome": "free-family",
                "generator": mat_json(g.x.as_mat()),
            }),
        })
        .collect();
    let bounded = boundedness(&s.h, &s.split)?;
    Ok(json!({
        "n": s.h.n(),
        "kalmanRank": kalman_rank(&s.h.a0, &s.h.problem.b, &s.h.tol)?,
        "blocks": blocks,
        "degenerate": degenerate,
        "boundedness": bounded.verdict,
    }))
}

fn solve(s: &Session, rank_set: Option<&str>) -> Result<Value, Failure> {
    match rank_set {
        Some(list) => {
            let set = input::block_list(list)?;
            let entry = reduce(&s.h, &s.split, &set).and_then(|e| full_rank_simplified_solution(&s.h, &e));
            let item = match entry {
                Ok(sol) => present(&sol, None),
                Err(e @ (Error::InvalidInput(_) | Error::NoBaseSolution(_))) => return Err(e.into()),
                Err(e) => absent(&set, &e),
            };
            Ok(json!({ "solutions": [item] }))
        }
        None => {
            let family = schur_family(&s.h, &s.split)?;
            let items: Vec<Value> = family
                .iter()
                .map(|e| match &e.outcome {
                    Ok(sol) => present(sol, e.route_gap),
                    Err(err) => absent(&e.block_set, err),
                })
                .collect();
            let count = family.iter().filter(|e| e.outcome.is_ok()).count();
            Ok(json!({ "present": count, "solutions": items }))
        }
    }
}

fn present(sol: &AriSolution, route_gap: Option<f64>) -> Value {
    let mut v = solution_json(sol);
    v["present"] = json!(true);
    v["routeGap"] = json!(route_gap);
    v
}

fn absent(set: &[usize], e: &Error) -> Value {
    let mut sorted = set.to_vec();
    sorted.sort_unstable();
    json!({ "blocks": one_based(&sorted), "present": false, "reason": e.name(), "detail": e.to_string() })
}

fn extremal(s: &Session) -> Result<Value, Failure> {
    let pair = extremal_solutions(&s.h, &s.split)?;
    Ok(json!({
        "maximal": solution_json(&pair.lr),
        "minimal": solution_json(&pair.ll),
        "Kmax": mat_json(pair.kmax.as_mat()),
        "Kmin": mat_json(pair.kmin.as_mat()),
    }))
}

fn bounds(s: &Session) -> Result<Value, Failure> {
    let report = boundedness(&s.h, &s.split)?;
    let mut rays = Vec::new();
    for w in &report.witnesses {
        let sweep: Vec<Value> = w
            .sweep(&s.h)?
            .into_iter()
            .map(|(alpha, max_eig, thr)| json!({ "alpha": alpha, "maxEig": max_eig, "threshold": thr, "ok": max_eig <= thr }))
            .collect();
        rays.push(json!({
            "block": w.block + 1,
            "sign": w.sign,
            "direction": mat_json(w.direction.as_mat()),
            "sweep": sweep,
        }));
    }
    Ok(json!({ "verdict": report.verdict, "witnesses": rays }))
}

/// Random positive definite `G Gᵀ + I/10` with `G` uniform in `[-1, 1]`.
fn sample_pd(rng: &mut ChaCha8Rng, k: usize) -> SymMat {
    let g = DMatrix::from_fn(k, k, |_, _| rng.random_range(-1.0..=1.0));
    SymMat::symmetrize(&g * g.transpose() + Mat::identity(k, k) * 0.1)
}

fn param_cmd(
    s: &Session,
    blocks: Option<&str>,
    param: Option<&std::path::Path>,
    sample: Option<usize>,
    seed: u64,
) -> Result<Value, Failure> {
    let set = match blocks {
        Some(list) => input::block_list(list)?,
        None => s.split.indices_in(HalfPlane::Rhp),
    };
    if set.is_empty() {
        return Err(Error::NotRhpSelection.into());
    }
    let eqn = reduce(&s.h, &s.split, &set)?;
    let params: Vec<SymMat> = match (param, sample) {
        (Some(path), _) => vec![input::load_symmetric(path, "P", s.h.tol.sym_tol)?],
        (None, Some(count)) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..count).map(|_| sample_pd(&mut rng, eqn.k())).collect()
        }
        (None, None) => return Err(Failure::Input("parametrize needs --param or --sample".into())),
    };
    let mut items = Vec::new();
    for p in params {
        let point = ParamPoint::new(p, eqn.block_set.clone(), s.h.tol.def_tol)?;
        let out = parametrize(&s.h, &eqn, &point)?;
        let cert = verify(&s.h, &out.solution.k(&s.h), false)?;
        let mut v = solution_json(&out.solution);
        v["P"] = mat_json(point.p.as_mat());
        v["parameter"] = json!(point.verdict.class.as_str());
        v["K"] = mat_json(out.solution.k(&s.h).as_mat());
        v["reducedCertificate"] = certificate_json(&out.certificate);
        v["certificate"] = certificate_json(&cert);
        items.push(v);
    }
    Ok(json!({ "blocks": one_based(&eqn.block_set), "solutions": items }))
}

fn verify_cmd(s: &Session, k: &SymMat, strict: bool) -> Result<(Value, bool), Failure> {
    let cert = verify(&s.h, k, strict)?;
    let spectrum = residual_spectrum(&s.h, &k.sub(&s.h.k0))?;
    let v = json!({
        "certificate": certificate_json(&cert),
        "verdict": if cert.pass { "pass" } else { "fail" },
        "residualEigenvalues": spectrum,
    });
    Ok((v, cert.pass))
}
