use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use tdk_core::aluthge::{aluthge_data, shimorin_aluthge_coeffs, standard_aluthge_coeffs};
use tdk_core::classify::{positive_kernel_criterion, quasinormal_test, truncated_sa_criterion};
use tdk_core::kernel::KernelSpecJson;
use tdk_core::linalg::hermitian_sqrt;
use tdk_core::shimorin::{shimorin_coeffs, shimorin_tridiagonal_verdict};
use tdk_core::window::{left_inverse_window, lp_window, modulus_inv_sq_window, mz_window};
use tdk_core::{validate_spec, worked, CMatrix, CoefficientTable, Error, KernelSpec, Verdict, VerdictValue, C64};

/// Shifts on tridiagonal kernel spaces: operator windows, kernel tables and
/// classification tests. Reads a kernel spec as JSON and writes JSON to stdout.
#[derive(Parser)]
#[command(name = "tdk", version)]
struct Cli {
    /// Also print matrices in human-readable form on stderr.
    #[arg(long, global = true)]
    pretty: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the standing conditions on a spec.
    Validate {
        /// Spec file, or `-` for stdin.
        spec: PathBuf,
    },
    /// Print a window of an operator matrix.
    Matrix {
        #[arg(long, value_enum)]
        op: Op,
        /// Power for `--op lp`.
        #[arg(long, default_value_t = 2)]
        p: usize,
        #[arg(long, default_value_t = 8)]
        dim: usize,
        spec: PathBuf,
    },
    /// Shimorin kernel coefficients and the tridiagonality verdict.
    Shimorin {
        #[arg(long, default_value_t = 8)]
        max: usize,
        spec: PathBuf,
    },
    /// Shimorin-Aluthge or standard Aluthge kernel coefficients.
    Aluthge {
        #[arg(long, value_enum, default_value = "shimorin")]
        kernel: AluthgeKernel,
        #[arg(long, default_value_t = 8)]
        max: usize,
        spec: PathBuf,
    },
    /// Run a classification test.
    Classify {
        #[arg(long, value_enum)]
        test: Test,
        /// Positive operator for `--test positive`.
        #[arg(long, value_enum, default_value = "modinv")]
        operator: Operator,
        /// Window size for `quasinormal` and `positive`.
        #[arg(long, default_value_t = 12)]
        dim: usize,
        spec: PathBuf,
    },
    /// Recompute a worked example and check its known values.
    Examples {
        #[arg(long, value_enum)]
        name: Example,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    Mz,
    L,
    Lp,
    Modinvsq,
}

#[derive(Clone, Copy, ValueEnum)]
enum AluthgeKernel {
    Shimorin,
    Standard,
}

#[derive(Clone, Copy, ValueEnum)]
enum Test {
    Quasinormal,
    Positive,
    Truncated,
}

#[derive(Clone, Copy, ValueEnum)]
enum Operator {
    Modinv,
    Modinvsq,
    Identity,
}

#[derive(Clone, Copy, ValueEnum)]
enum Example {
    #[value(name = "nonzero-b0", alias = "sec4")]
    NonzeroB0,
    #[value(name = "modulus-block", alias = "sec5")]
    ModulusBlock,
    #[value(name = "b0-b1-one", alias = "sec9")]
    B0B1One,
    #[value(name = "split-modulus")]
    SplitModulus,
}

enum Failure {
    Input(String),
    Rejected(String),
    Indeterminate,
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NonzeroViolation { .. }
            | Error::InvalidSpec(_)
            | Error::NotLeftInvertible { .. }
            | Error::NotTruncated(_) => Failure::Rejected(e.to_string()),
            Error::IndeterminateBand { .. } => Failure::Indeterminate,
            Error::InvalidArgument(_) => Failure::Input(e.to_string()),
            other => Failure::Internal(other.to_string()),
        }
    }
}

/// JSON output plus whether any verdict in it was indeterminate.
struct Report {
    body: Value,
    indeterminate: bool,
}

impl Report {
    fn plain(body: Value) -> Self {
        Report {
            body,
            indeterminate: false,
        }
    }
}

fn read_spec(path: &Path) -> Result<KernelSpec, Failure> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Input(format!("reading stdin: {e}")))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?
    };
    let raw: KernelSpecJson =
        serde_json::from_str(&text).map_err(|e| Failure::Input(format!("malformed spec JSON: {e}")))?;
    Ok(raw.build()?)
}

fn complex_json(z: C64) -> Value {
    json!([z.re, z.im])
}

fn matrix_json(m: &CMatrix) -> Value {
    Value::Array(
        m.to_rows()
            .into_iter()
            .map(|r| Value::Array(r.into_iter().map(complex_json).collect()))
            .collect(),
    )
}

fn verdict_json(v: &Verdict) -> Value {
    serde_json::to_value(v).expect("verdicts serialize")
}

fn table_json(t: &CoefficientTable, verdict: &Verdict) -> Value {
    json!({
        "M": t.max_index(),
        "X": matrix_json(&t.entries),
        "verdict": verdict_json(verdict),
        "basis": t.basis,
        "doubling_deviation": t.doubling_deviation,
    })
}

fn show(pretty: bool, label: &str, m: &CMatrix) {
    if pretty {
        eprintln!("{label}:\n{m}");
    }
}

fn undecided(verdicts: &[&Verdict]) -> bool {
    verdicts.iter().any(|v| v.value == VerdictValue::Indeterminate)
}

fn validate(spec: &KernelSpec) -> Result<Report, Failure> {
    let report = validate_spec(spec);
    let body = serde_json::to_value(&report).map_err(|e| Failure::Internal(e.to_string()))?;
    if !report.analytic {
        println!("{}", serde_json::to_string_pretty(&body).unwrap_or_default());
        return Err(Failure::Rejected(
            "not analytic: |a_n / a_(n+1)| is not bounded away from zero".into(),
        ));
    }
    Ok(Report::plain(body))
}

fn matrix(spec: &KernelSpec, op: Op, p: usize, dim: usize, pretty: bool) -> Result<Report, Failure> {
    let w = match op {
        Op::Mz => mz_window(spec, dim),
        Op::L => left_inverse_window(spec, dim)?,
        Op::Lp => lp_window(spec, p, dim)?,
        Op::Modinvsq => modulus_inv_sq_window(spec, dim)?,
    };
    show(pretty, &w.source.to_string(), &w.entries);
    Ok(Report::plain(serde_json::to_value(&w).map_err(|e| Failure::Internal(e.to_string()))?))
}

fn shimorin(spec: &KernelSpec, max: usize, pretty: bool) -> Result<Report, Failure> {
    let table = shimorin_coeffs(spec, max)?;
    let ev = shimorin_tridiagonal_verdict(spec, max)?;
    show(pretty, "X", &table.entries);
    let mut body = table_json(&table, &ev.numeric);
    body["evidence"] = serde_json::to_value(&ev).map_err(|e| Failure::Internal(e.to_string()))?;
    Ok(Report {
        body,
        indeterminate: undecided(&[&ev.numeric, &ev.criterion]),
    })
}

fn aluthge(spec: &KernelSpec, kernel: AluthgeKernel, max: usize, pretty: bool) -> Result<Report, Failure> {
    let table = match kernel {
        AluthgeKernel::Shimorin => shimorin_aluthge_coeffs(spec, max)?,
        AluthgeKernel::Standard => standard_aluthge_coeffs(spec, max)?,
    };
    let verdict = table.tridiagonal_verdict();
    show(pretty, "X", &table.entries);
    Ok(Report {
        body: table_json(&table, &verdict),
        indeterminate: undecided(&[&verdict]),
    })
}

fn classify(spec: &KernelSpec, test: Test, operator: Operator, dim: usize, pretty: bool) -> Result<Report, Failure> {
    match test {
        Test::Quasinormal => {
            let q = quasinormal_test(spec, dim)?;
            let mut body = verdict_json(&q.commutator);
            body["r"] = json!(q.r);
            body["residual"] = json!(q.residual);
            body["inner_products"] = verdict_json(&q.inner_products);
            body["agree"] = json!(q.agree);
            Ok(Report {
                body,
                indeterminate: undecided(&[&q.commutator, &q.inner_products]),
            })
        }
        Test::Positive => {
            let p = match operator {
                Operator::Identity => CMatrix::identity(dim),
                Operator::Modinvsq => modulus_inv_sq_window(spec, dim)?.entries,
                Operator::Modinv => aluthge_data(spec, dim)?.mod_inv.restrict(dim),
            };
            show(pretty, "P", &p);
            let ev = positive_kernel_criterion(&p, spec, dim)?;
            let mut body = verdict_json(&ev.recurrence);
            body["direct"] = verdict_json(&ev.direct);
            body["agree"] = json!(ev.agree);
            Ok(Report {
                body,
                indeterminate: undecided(&[&ev.recurrence, &ev.direct]),
            })
        }
        Test::Truncated => {
            let ev = truncated_sa_criterion(spec)?;
            let mut body = verdict_json(&ev.verdict);
            body["order"] = json!(ev.order);
            body["factor_check"] = json!(ev.factor_check);
            body["block_check"] = json!(ev.block_check);
            Ok(Report {
                body,
                indeterminate: undecided(&[&ev.verdict]),
            })
        }
    }
}

fn close(x: f64, target: f64, tol: f64) -> bool {
    (x - target).abs() < tol
}

fn example(name: Example, pretty: bool) -> Result<Report, Failure> {
    let (body, passed) = match name {
        Example::NonzeroB0 => {
            let spec = worked::nonzero_b0();
            let table = shimorin_coeffs(&spec, 8)?;
            let ev = shimorin_tridiagonal_verdict(&spec, 8)?;
            show(pretty, "X", &table.entries);
            let x13 = table.get(1, 3).re;
            let witness = ev.numeric.witness.map(|w| (w.m, w.n));
            let passed = close(x13, 0.25, 1e-12) && ev.numeric.is_false() && witness == Some((1, 3)) && ev.agree;
            (
                json!({
                    "example": "nonzero-b0",
                    "X_13": x13,
                    "tridiagonal": ev.numeric.is_true(),
                    "verdict": verdict_json(&ev.numeric),
                    "criterion": verdict_json(&ev.criterion),
                }),
                passed,
            )
        }
        Example::ModulusBlock => {
            let spec = worked::nonzero_b0();
            let q = modulus_inv_sq_window(&spec, 4)?.entries;
            let inv = hermitian_sqrt(&q)?;
            let k = standard_aluthge_coeffs(&spec, 6)?;
            show(pretty, "|M|^-2", &q);
            show(pretty, "standard Aluthge coefficients", &k.entries);
            let (alpha, beta, gamma) = (inv[(0, 0)].re, inv[(0, 1)].re, inv[(1, 1)].re);
            let block = CMatrix::from_real_rows(&[&[1.0, -0.5], &[-0.5, 1.25]]);
            let passed = q.restrict(2).max_abs_diff(&block) < 1e-12
                && (alpha / 2.0 + beta).abs() > 1e-6
                && k.off_band_max() < 1e-10
                && close(k.get(0, 1).re, alpha / 2.0 + beta, 1e-10)
                && close(k.get(1, 1).re, alpha / 4.0 + beta + gamma, 1e-10);
            (
                json!({
                    "example": "modulus-block",
                    "mod_inv_sq_block": matrix_json(&q.restrict(2)),
                    "alpha": alpha,
                    "beta": beta,
                    "gamma": gamma,
                    "alpha_half_plus_beta": alpha / 2.0 + beta,
                    "off_band_max": k.off_band_max(),
                    "K": matrix_json(&k.entries.restrict(3)),
                }),
                passed,
            )
        }
        Example::B0B1One => {
            let spec = worked::b0_b1_one();
            let data = aluthge_data(&spec, 16)?;
            let sa = shimorin_aluthge_coeffs(&spec, 8)?;
            let std = standard_aluthge_coeffs(&spec, 8)?;
            show(pretty, "|M|^-1", &data.mod_inv.restrict(5));
            show(pretty, "Shimorin-Aluthge coefficients", &sa.entries);
            let corner = data.mod_inv[(1, 2)].re;
            let f_norm = data.f_vector.iter().map(|x| x.norm()).fold(0.0, f64::max);
            let x13 = sa.get(1, 3).norm();
            let sa_v = sa.tridiagonal_verdict();
            let std_v = std.tridiagonal_verdict();
            let root5 = 5f64.sqrt();
            let passed = close(corner, -1.0 / root5, 1e-10)
                && f_norm < 1e-12
                && close(x13, 1.0 / root5, 1e-9)
                && sa_v.is_false()
                && std_v.is_true();
            (
                json!({
                    "example": "b0-b1-one",
                    "corner_b": corner,
                    "F_norm": f_norm,
                    "tilde_X_13_abs": x13,
                    "standard_tridiagonal": std_v.is_true(),
                    "shimorin_aluthge_tridiagonal": sa_v.is_true(),
                }),
                passed,
            )
        }
        Example::SplitModulus => {
            let spec = worked::split_modulus();
            let sq = modulus_inv_sq_window(&spec, 10)?.entries;
            let inv = hermitian_sqrt(&sq)?;
            let a = positive_kernel_criterion(&sq, &spec, 10)?;
            let b = positive_kernel_criterion(&inv, &spec, 10)?;
            let passed = a.recurrence.is_true() && a.agree && b.recurrence.is_false() && b.agree;
            (
                json!({
                    "example": "split-modulus",
                    "mod_inv_sq_tridiagonal": a.recurrence.is_true(),
                    "mod_inv_tridiagonal": b.recurrence.is_true(),
                    "mod_inv_witness": b.recurrence.witness,
                }),
                passed,
            )
        }
    };
    let mut body = body;
    body["checks_passed"] = json!(passed);
    if !passed {
        println!("{}", serde_json::to_string_pretty(&body).unwrap_or_default());
        return Err(Failure::Internal("example values do not match".into()));
    }
    Ok(Report::plain(body))
}

fn run(cli: Cli) -> Result<Report, Failure> {
    let pretty = cli.pretty;
    match cli.command {
        Command::Validate { spec } => validate(&read_spec(&spec)?),
        Command::Matrix { op, p, dim, spec } => matrix(&read_spec(&spec)?, op, p, dim, pretty),
        Command::Shimorin { max, spec } => shimorin(&read_spec(&spec)?, max, pretty),
        Command::Aluthge { kernel, max, spec } => aluthge(&read_spec(&spec)?, kernel, max, pretty),
        Command::Classify {
            test,
            operator,
            dim,
            spec,
        } => classify(&read_spec(&spec)?, test, operator, dim, pretty),
        Command::Examples { name } => example(name, pretty),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(64),
            };
        }
    };
    match run(cli) {
        Ok(report) => {
            println!("{}", serde_json::to_string_pretty(&report.body).unwrap_or_default());
            if report.indeterminate {
                eprintln!("tdk: a verdict fell inside the indeterminate band");
                ExitCode::from(3)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(Failure::Input(msg)) | Err(Failure::Internal(msg)) => {
            eprintln!("tdk: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Rejected(msg)) => {
            eprintln!("tdk: rejected: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Indeterminate) => {
            eprintln!("tdk: result is numerically indeterminate");
            ExitCode::from(3)
        }
    }
}
