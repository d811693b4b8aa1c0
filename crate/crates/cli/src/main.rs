//! `ringforge`: command-line access to forms, orders and the verification engine.
//!
//! Output is JSON on stdout. Exit status is 0 on success, 1 on a domain error
//! or a failed check, 2 on a usage error.

use std::fs;
use std::io::Read as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use ringforge::arithmat::{self, ElementCoords, OrderContext, StructureConstants};
use ringforge::forms::{self, BinaryForm, UnimodularMatrix};
use ringforge::param::{self, ParamSystem};
use ringforge::serde_int::Int;
use ringforge::verify;
use ringforge::{Error, IntMatrix, Matrix, Polynomial};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "ringforge", version, about = "Exact algebra for binary forms and the rings they parametrize")]
struct Cli {
    /// Indent JSON output for reading.
    #[arg(long, global = true)]
    pretty: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Multiplication table of the order of a form.
    Table {
        #[command(flatten)]
        input: Inputs,
        /// Use the basis {1, φ, ψ = φ2 + c} (cubic forms only).
        #[arg(long)]
        normalized: bool,
    },
    /// Apply a unimodular matrix to a form.
    Act {
        #[command(flatten)]
        input: Inputs,
    },
    /// Arithmetic matrix of an element, or the sum/product of two elements.
    Arith {
        #[command(flatten)]
        input: Inputs,
        /// Second element, comma-separated coordinates.
        #[arg(long, allow_hyphen_values = true)]
        beta: Option<String>,
        #[arg(long, value_enum, default_value = "mul")]
        op: ArithOp,
        /// Print the general matrix with symbolic coefficients and coordinates.
        #[arg(long)]
        symbolic: bool,
        /// Degree for --symbolic.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Trace and norm of an element.
    TraceNorm {
        #[command(flatten)]
        input: Inputs,
    },
    /// Inverse of an element as coordinates over a denominator.
    Inverse {
        #[command(flatten)]
        input: Inputs,
    },
    /// The matrices A, B, Q, P, T for a form and matrix, or symbolically.
    Param {
        #[command(flatten)]
        input: Inputs,
        /// Degree for the symbolic system (when no form is given).
        #[arg(long)]
        n: Option<usize>,
    },
    /// Map an element of the ring of B∘M to the ring of B.
    Transport {
        #[command(flatten)]
        input: Inputs,
    },
    /// Check on random elements that the transport map is a ring homomorphism.
    CheckIso {
        #[command(flatten)]
        input: Inputs,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Certify the parametrization identity for one degree or a range.
    Verify {
        #[arg(long, conflicts_with = "up_to", required_unless_present = "up_to")]
        n: Option<usize>,
        /// Verify every degree from 3 to this value.
        #[arg(long)]
        up_to: Option<usize>,
        /// Also write the certificate(s) to this file.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Invariants, covariants and the syzygy check for a binary quartic.
    Covariants {
        #[command(flatten)]
        input: Inputs,
        /// Use symbolic coefficients a, b, c, d, e.
        #[arg(long)]
        symbolic: bool,
    },
    /// Recover the binary cubic form of a cubic ring from its table.
    FromOrder {
        /// JSON file (or - for stdin) holding a table, or an object with a "table" key.
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ArithOp {
    Add,
    Mul,
}

#[derive(Args)]
struct Inputs {
    /// Form coefficients a1,..,a(n+1).
    #[arg(long, allow_hyphen_values = true)]
    form: Option<String>,
    /// Unimodular matrix p,q,r,s.
    #[arg(long, allow_hyphen_values = true)]
    matrix: Option<String>,
    /// Element coordinates x0,..,x(n-1).
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    /// JSON file (or - for stdin) supplying "form", "matrix" and "alpha"/"coords".
    #[arg(long)]
    input: Option<PathBuf>,
}

/// Errors are either usage problems (exit 2) or domain failures (exit 1).
enum Failure {
    Usage(String),
    Domain(Error),
    /// A check ran and did not pass; the report was already printed.
    Check,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Domain(e)
    }
}

type Outcome = Result<Value, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn parse_ints(s: &str, what: &str) -> Result<Vec<BigInt>, Failure> {
    s.split(',')
        .map(|t| t.trim().parse::<BigInt>())
        .collect::<Result<_, _>>()
        .map_err(|_| usage(format!("{what}: expected comma-separated integers, got {s:?}")))
}

fn read_json(path: &PathBuf) -> Result<Value, Failure> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| usage(format!("reading stdin: {e}")))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| usage(format!("reading {}: {e}", path.display())))?
    };
    serde_json::from_str(&text).map_err(|e| usage(format!("invalid JSON in {}: {e}", path.display())))
}

fn decode<T: serde::de::DeserializeOwned>(v: &Value, what: &str) -> Result<T, Failure> {
    serde_json::from_value(v.clone()).map_err(|e| usage(format!("invalid {what}: {e}")))
}

#[derive(Deserialize)]
struct RawForm {
    degree: usize,
    coeffs: Vec<Int>,
}

#[derive(Deserialize)]
struct RawMatrix {
    p: Int,
    q: Int,
    r: Int,
    s: Int,
}

/// Shape problems are usage errors; invalid values are domain errors.
fn decode_form(v: &Value) -> Result<BinaryForm, Failure> {
    let raw: RawForm = decode(v, "form")?;
    Ok(BinaryForm::from_parts(raw.degree, raw.coeffs.into_iter().map(|c| c.0).collect())?)
}

fn decode_matrix(v: &Value) -> Result<UnimodularMatrix, Failure> {
    let raw: RawMatrix = decode(v, "matrix")?;
    Ok(UnimodularMatrix::new(raw.p.0, raw.q.0, raw.r.0, raw.s.0)?)
}

/// Command-line values, with a JSON document filling in whatever is missing.
struct Resolved {
    form: Option<BinaryForm>,
    matrix: Option<UnimodularMatrix>,
    alpha: Option<Vec<BigInt>>,
}

impl Inputs {
    fn resolve(&self) -> Result<Resolved, Failure> {
        let doc = self.input.as_ref().map(read_json).transpose()?;
        let doc = doc.as_ref();
        let form = match &self.form {
            Some(s) => Some(BinaryForm::new(parse_ints(s, "--form")?)?),
            None => match doc {
                Some(d) if d.get("degree").is_some() => Some(decode_form(d)?),
                Some(d) => d.get("form").filter(|f| !f.is_null()).map(decode_form).transpose()?,
                None => None,
            },
        };
        let matrix = match &self.matrix {
            Some(s) => {
                let v = parse_ints(s, "--matrix")?;
                let [p, q, r, s]: [BigInt; 4] = v
                    .try_into()
                    .map_err(|_| usage("--matrix: expected four integers p,q,r,s"))?;
                Some(UnimodularMatrix::new(p, q, r, s)?)
            }
            None => doc
                .and_then(|d| d.get("matrix"))
                .map(decode_matrix)
                .transpose()?,
        };
        let alpha = match &self.alpha {
            Some(s) => Some(parse_ints(s, "--alpha")?),
            None => match doc {
                Some(d) => match d.get("alpha").or(Some(d)).filter(|v| v.get("coords").is_some()) {
                    Some(v) => Some(decode::<ElementCoords>(v, "element")?.coords),
                    None => None,
                },
                None => None,
            },
        };
        Ok(Resolved { form, matrix, alpha })
    }
}

impl Resolved {
    fn form(&self) -> Result<&BinaryForm, Failure> {
        self.form.as_ref().ok_or_else(|| usage("a form is required (--form or --input)"))
    }

    fn matrix(&self) -> Result<&UnimodularMatrix, Failure> {
        self.matrix
            .as_ref()
            .ok_or_else(|| usage("a matrix is required (--matrix or --input)"))
    }

    fn alpha(&self) -> Result<&[BigInt], Failure> {
        self.alpha
            .as_deref()
            .ok_or_else(|| usage("an element is required (--alpha or --input)"))
    }

    fn ctx(&self) -> Result<Arc<OrderContext>, Failure> {
        Ok(OrderContext::new(self.form()?.clone())?)
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn ints(v: &[BigInt]) -> Value {
    to_value(&v.iter().cloned().map(Int).collect::<Vec<_>>())
}

fn int(v: &BigInt) -> Value {
    to_value(&Int(v.clone()))
}

fn int_matrix(m: &IntMatrix) -> Value {
    Value::Array((0..m.rows()).map(|i| ints(m.row(i))).collect())
}

fn poly_matrix(m: &Matrix<Polynomial>) -> Value {
    to_value(m)
}

fn element(coords: &[BigInt]) -> Value {
    json!({ "coords": ints(coords) })
}

fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Table { input, normalized } => {
            let r = input.resolve()?;
            let ctx = r.ctx()?;
            let table = if normalized {
                arithmat::normalized_cubic_table(ctx.form().coeffs())?
            } else {
                ctx.multiplication_table()
            };
            Ok(json!({
                "form": to_value(ctx.form()),
                "basis": if normalized { "normalized" } else { "phi" },
                "table": to_value(&table),
            }))
        }
        Command::Act { input } => {
            let r = input.resolve()?;
            let (form, m) = (r.form()?, r.matrix()?);
            Ok(json!({
                "form": to_value(form),
                "matrix": to_value(m),
                "result": to_value(&form.act(m)),
            }))
        }
        Command::Arith {
            input,
            beta,
            op,
            symbolic,
            n,
        } => {
            if symbolic {
                let n = n.ok_or_else(|| usage("--symbolic needs --n"))?;
                if !(2..=forms::MAX_DEGREE).contains(&n) {
                    return Err(Error::DegreeOutOfRange(n).into());
                }
                let m = arithmat::arithmetic_matrix(&forms::symbolic_coeffs(n), &arithmat::symbolic_coords(n));
                return Ok(json!({ "n": n, "matrix": poly_matrix(&m) }));
            }
            let r = input.resolve()?;
            let ctx = r.ctx()?;
            let alpha = ctx.element(r.alpha()?.to_vec())?;
            match beta {
                None => Ok(json!({
                    "form": to_value(ctx.form()),
                    "alpha": element(alpha.coords()),
                    "matrix": int_matrix(&alpha.matrix()),
                })),
                Some(b) => {
                    let beta = ctx.element(parse_ints(&b, "--beta")?)?;
                    let (name, out) = match op {
                        ArithOp::Add => ("add", arithmat::element_add(&alpha, &beta)?),
                        ArithOp::Mul => ("mul", arithmat::element_mul(&alpha, &beta)?),
                    };
                    Ok(json!({
                        "form": to_value(ctx.form()),
                        "op": name,
                        "alpha": element(alpha.coords()),
                        "beta": element(beta.coords()),
                        "result": element(out.coords()),
                    }))
                }
            }
        }
        Command::TraceNorm { input } => {
            let r = input.resolve()?;
            let ctx = r.ctx()?;
            let alpha = ctx.element(r.alpha()?.to_vec())?;
            Ok(json!({
                "form": to_value(ctx.form()),
                "alpha": element(alpha.coords()),
                "trace": int(&arithmat::trace(&alpha)),
                "norm": int(&arithmat::norm(&alpha)),
            }))
        }
        Command::Inverse { input } => {
            let r = input.resolve()?;
            let ctx = r.ctx()?;
            let alpha = ctx.element(r.alpha()?.to_vec())?;
            let inv = arithmat::element_inverse(&alpha)?;
            Ok(json!({
                "form": to_value(ctx.form()),
                "alpha": element(alpha.coords()),
                "inverse": to_value(&inv),
            }))
        }
        Command::Param { input, n } => {
            let r = input.resolve()?;
            match &r.form {
                Some(form) => {
                    let m = r.matrix()?;
                    let sys = ParamSystem::from_form(form, m)?;
                    Ok(json!({
                        "n": sys.n,
                        "form": to_value(form),
                        "matrix": to_value(m),
                        "b": ints(&sys.b),
                        "A": int_matrix(&sys.big_a),
                        "B": int_matrix(&sys.big_b),
                        "Q": int_matrix(&sys.q),
                        "P": int_matrix(&sys.p),
                        "T": int_matrix(&sys.t),
                    }))
                }
                None => {
                    let n = n.ok_or_else(|| usage("param needs --form and --matrix, or --n for the symbolic system"))?;
                    if n > forms::MAX_DEGREE {
                        return Err(Error::DegreeOutOfRange(n).into());
                    }
                    let sys = ParamSystem::symbolic(n)?;
                    Ok(json!({
                        "n": n,
                        "b": to_value(&sys.b),
                        "A": poly_matrix(&sys.big_a),
                        "B": poly_matrix(&sys.big_b),
                        "Q": poly_matrix(&sys.q),
                        "P": poly_matrix(&sys.p),
                        "T": poly_matrix(&sys.t),
                    }))
                }
            }
        }
        Command::Transport { input } => {
            let r = input.resolve()?;
            let (form, m) = (r.form()?, r.matrix()?);
            let out = param::transport_element(form, m, r.alpha()?)?;
            Ok(json!({
                "form": to_value(form),
                "matrix": to_value(m),
                "alpha": element(r.alpha()?),
                "result": element(&out),
            }))
        }
        Command::CheckIso { input, trials, seed } => {
            let r = input.resolve()?;
            let (form, m) = (r.form()?, r.matrix()?);
            let report = param::isomorphism_check(form, m, trials, seed)?;
            Ok(json!({
                "form": to_value(form),
                "matrix": to_value(m),
                "report": to_value(&report),
            }))
        }
        Command::Verify { n, up_to, json: out } => {
            let degrees: Vec<usize> = match (n, up_to) {
                (Some(n), _) => vec![n],
                (None, Some(hi)) => (3..=hi).collect(),
                (None, None) => return Err(usage("verify needs --n or --up-to")),
            };
            let mut certs = Vec::new();
            for d in degrees {
                certs.push(verify::verify_identity(d)?);
            }
            let value = if n.is_some() {
                to_value(&certs[0])
            } else {
                to_value(&certs)
            };
            if let Some(path) = out {
                let text = serde_json::to_string_pretty(&value).expect("serializable");
                fs::write(&path, text + "\n").map_err(|e| usage(format!("writing {}: {e}", path.display())))?;
            }
            Ok(value)
        }
        Command::Covariants { input, symbolic } => {
            let form = if symbolic {
                None
            } else {
                Some(input.resolve()?.form()?.clone())
            };
            let coeffs = match &form {
                Some(f) => f.to_poly(),
                None => forms::letter_coeffs(4),
            };
            let cov = verify::quartic_covariants(&coeffs)?;
            let syz = verify::syzygy_check(&coeffs)?;
            Ok(json!({
                "form": form.as_ref().map(to_value),
                "coeffs": to_value(&coeffs),
                "I": to_value(&cov.i),
                "J": to_value(&cov.j),
                "G": to_value(&cov.g),
                "H": to_value(&cov.h),
                "F": to_value(&cov.f),
                "syzygy": to_value(&syz),
            }))
        }
        Command::FromOrder { input } => {
            let doc = read_json(&input)?;
            let table_doc = match doc.get("table") {
                Some(t) if t.is_object() => t,
                _ => &doc,
            };
            let table: StructureConstants<BigInt> = decode(table_doc, "table")?;
            let form = arithmat::cubic_form_from_int_order(&table)?;
            Ok(json!({ "form": to_value(&form) }))
        }
    }
}

/// Whether a successful run should still exit nonzero because a check failed.
fn check_failed(v: &Value) -> bool {
    let status_failed = |c: &Value| c.get("status").and_then(Value::as_str) == Some("failed");
    match v {
        Value::Array(items) => items.iter().any(status_failed),
        _ => {
            status_failed(v)
                || v.pointer("/report/passed") == Some(&Value::Bool(false))
                || v.pointer("/syzygy/status").and_then(Value::as_str) == Some("fails")
        }
    }
}

fn print(v: &Value, pretty: bool) {
    let text = if pretty {
        serde_json::to_string_pretty(v)
    } else {
        serde_json::to_string(v)
    };
    println!("{}", text.expect("serializable"));
}

fn configure_threads() -> Result<(), Failure> {
    if let Ok(s) = std::env::var("RINGFORGE_THREADS") {
        let n: usize = s
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| usage(format!("RINGFORGE_THREADS must be a positive integer, got {s:?}")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| usage(format!("thread pool: {e}")))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|_| run(cli.command)).and_then(|v| {
        print(&v, cli.pretty);
        if check_failed(&v) {
            Err(Failure::Check)
        } else {
            Ok(())
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Domain(e)) => {
            print(&json!({ "error": { "kind": e.kind(), "message": e.to_string() } }), cli.pretty);
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
