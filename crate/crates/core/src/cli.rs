//! The `kzdual` command line.
//!
//! Exit codes: `0` all cases passed, `2` some case failed, `3` some case was
//! skipped as non-generic (or a `show` target hit a pole), `64` usage error.

use std::io::Write;

use clap::{Args as ClapArgs, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::duality::{plan, IdentityId, Report, Status, Verifier, Witness};
use crate::error::Error;
use crate::exactalg::scalar::q_to_fraction_string;
use crate::exactalg::{parse_q, MatrixOperator, Q};
use crate::exterior::SparseVector;
use crate::operators::{
    dd_rational, dd_trig, kz_rational, kz_trig, qdd_operator, qkz_operator, r_matrix_solve, r_matrix_spectral, Args,
    EvalPoint, FirstOrderOp, Normalization, ShiftOp, Substitution,
};
use crate::representation::{v_m_vector, FermionSpace, Side};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 2;
pub const EXIT_SKIPPED: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

/// Default cap on the basis size `2^{kn}`.
pub const DEFAULT_MAX_DIM: u64 = 1 << 16;

#[derive(Parser, Debug)]
#[command(name = "kzdual", version, about = "Exact checks of the (gl_k, gl_n) duality of KZ and dynamical operators")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run identity checks and report per-case results.
    Verify(VerifyOpts),
    /// Print one exact object.
    Show(ShowOpts),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(ClapArgs, Debug, Clone)]
pub struct VerifyOpts {
    /// Number of rows; with --n, replaces the default grid by one shape.
    #[arg(long, requires = "n")]
    pub k: Option<usize>,
    /// Number of columns.
    #[arg(long, requires = "k")]
    pub n: Option<usize>,
    /// Identities: ids, ranges like th1..th6, or all/theorems/comm/structure.
    #[arg(long, default_value = "all")]
    pub suite: String,
    /// Seeded points per shape.
    #[arg(long, default_value_t = 5)]
    pub points: usize,
    /// First seed; point j uses seed + j.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Record wall-clock milliseconds per case (reports are then not reproducible).
    #[arg(long)]
    pub timing: bool,
    /// Largest admissible basis size 2^(k*n).
    #[arg(long, default_value_t = DEFAULT_MAX_DIM)]
    pub max_dim: u64,
    /// Worker threads (0 = one per core).
    #[arg(long, env = "KZDUAL_THREADS", default_value_t = 0)]
    pub threads: usize,
}

#[derive(ClapArgs, Debug)]
pub struct ShowOpts {
    #[command(subcommand)]
    pub object: ShowObject,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RConstruction {
    /// Eigenprojector form.
    Spectral,
    /// Linear-system form normalized like the eigenprojector form.
    Solve,
    /// Linear-system form with R(v ⊗ w) = v ⊗ w on highest vectors.
    Literal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VectorKind {
    Vm,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OperatorKind {
    Kz,
    TrigKz,
    Dd,
    TrigDd,
    Qkz,
    Qdd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    /// gl_k acting column by column.
    Row,
    /// gl_n acting row by row.
    Column,
}

#[derive(Subcommand, Debug)]
pub enum ShowObject {
    /// R-matrix on V_m1 ⊗ V_m2 inside P_2n.
    Rmatrix {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m1: usize,
        #[arg(long)]
        m2: usize,
        #[arg(long, value_parser = parse_rational)]
        t: Q,
        #[arg(long, value_enum, default_value_t = RConstruction::Spectral)]
        construction: RConstruction,
    },
    /// A distinguished vector.
    Vector {
        #[arg(value_enum)]
        kind: VectorKind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m1: usize,
        #[arg(long)]
        m2: usize,
        #[arg(long)]
        m: usize,
    },
    /// One operator at an explicit point, natural argument order.
    Operator {
        #[arg(value_enum)]
        kind: OperatorKind,
        #[arg(long, value_enum)]
        side: SideArg,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        /// 1-based spectral or dynamical index.
        #[arg(long)]
        index: usize,
        /// Comma-separated z values.
        #[arg(long, value_parser = parse_rational_list)]
        z: RationalList,
        /// Comma-separated lambda values.
        #[arg(long, value_parser = parse_rational_list)]
        lambda: RationalList,
        #[arg(long, value_parser = parse_rational)]
        kappa: Q,
    },
}

#[derive(Clone, Debug)]
pub struct RationalList(pub Vec<Q>);

fn parse_rational(s: &str) -> Result<Q, String> {
    parse_q(s).ok_or_else(|| format!("'{s}' is not a rational p or p/q"))
}

fn parse_rational_list(s: &str) -> Result<RationalList, String> {
    s.split(',').map(parse_rational).collect::<Result<_, _>>().map(RationalList)
}

/// Parses `std::env::args`, runs, and returns the exit code.
pub fn main_entry() -> i32 {
    let mut out = std::io::stdout().lock();
    let mut err = std::io::stderr().lock();
    run(std::env::args_os(), &mut out, &mut err)
}

/// Testable entry point.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let res = match cli.command {
        Command::Verify(opts) => cmd_verify(&opts, out),
        Command::Show(opts) => cmd_show(&opts, out),
    };
    match res {
        Ok(code) => code,
        Err(e) => {
            let code = match e {
                Error::Genericity(_) => EXIT_SKIPPED,
                Error::Argument(_) => EXIT_USAGE,
                _ => EXIT_FAIL,
            };
            let _ = writeln!(err, "kzdual: {e}");
            code
        }
    }
}

fn usage(msg: String) -> Error {
    Error::Argument(msg)
}

pub fn cmd_verify(opts: &VerifyOpts, out: &mut dyn Write) -> Result<i32, Error> {
    let ids = IdentityId::parse_list(&opts.suite)?;
    let shape = opts.k.zip(opts.n);
    if let Some((k, n)) = shape {
        if k == 0 || n == 0 {
            return Err(usage("k and n must be positive".into()));
        }
        let kn = k * n;
        if kn >= 64 || (1u64 << kn) > opts.max_dim {
            return Err(usage(format!(
                "basis size 2^{kn} for {k}x{n} exceeds the guard of {} elements",
                opts.max_dim
            )));
        }
    }
    if opts.points == 0 {
        return Err(usage("--points must be at least 1".into()));
    }
    let cases = plan(&ids, shape, opts.points, opts.seed);
    if let Some(c) = cases.iter().find(|c| (1u64 << (c.k * c.n)) > opts.max_dim) {
        return Err(usage(format!("shape {}x{} exceeds the guard of {} elements", c.k, c.n, opts.max_dim)));
    }
    let verifier = Verifier::new().with_timing(opts.timing);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.threads)
        .build()
        .map_err(|e| usage(format!("thread pool: {e}")))?;
    let reports = pool.install(|| verifier.run_all(&cases));
    let text = match opts.format {
        Format::Text => verify_text(opts, &ids, &reports),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&verify_json(opts, &ids, &reports)).expect("JSON values serialize");
            s.push('\n');
            s
        }
    };
    out.write_all(text.as_bytes())
        .map_err(|e| Error::Integrity(format!("write failed: {e}")))?;
    Ok(exit_code(&reports))
}

/// `2` on any failure, else `3` on any skip, else `0`.
pub fn exit_code(reports: &[Report]) -> i32 {
    if reports.iter().any(|r| r.status == Status::Fail) {
        EXIT_FAIL
    } else if reports.iter().any(|r| r.status == Status::SkippedNongeneric) {
        EXIT_SKIPPED
    } else {
        EXIT_OK
    }
}

fn suite_label(ids: &[IdentityId]) -> Vec<Value> {
    ids.iter().map(|id| Value::from(id.label())).collect()
}

fn point_json(r: &Report) -> Value {
    let list = |xs: &[Q]| Value::Array(xs.iter().map(|x| Value::from(q_to_fraction_string(x))).collect());
    let mut m = Map::new();
    if let Some(p) = &r.point {
        m.insert("z".into(), list(&p.z));
        m.insert("lambda".into(), list(&p.lambda));
        m.insert("kappa".into(), Value::from(q_to_fraction_string(&p.kappa)));
    }
    if !r.params.is_empty() {
        m.insert("t".into(), list(&r.params));
    }
    if m.is_empty() {
        Value::Null
    } else {
        Value::Object(m)
    }
}

fn witness_json(w: &Witness) -> Value {
    let mut m = Map::new();
    m.insert("detail".into(), Value::from(w.detail.clone()));
    for (key, val) in [("basis", &w.basis), ("left", &w.left), ("right", &w.right)] {
        if let Some(v) = val {
            m.insert(key.into(), Value::from(v.clone()));
        }
    }
    Value::Object(m)
}

pub fn verify_json(opts: &VerifyOpts, ids: &[IdentityId], reports: &[Report]) -> Value {
    let cases: Vec<Value> = reports
        .iter()
        .map(|r| {
            let mut m = Map::new();
            m.insert("id".into(), Value::from(r.case.id.label()));
            m.insert("k".into(), Value::from(r.case.k));
            m.insert("n".into(), Value::from(r.case.n));
            m.insert("seed".into(), Value::from(r.case.seed));
            m.insert("point".into(), point_json(r));
            m.insert("status".into(), Value::from(r.status.label()));
            if let Some(w) = &r.witness {
                m.insert("witness".into(), witness_json(w));
            }
            m.insert("millis".into(), Value::from(r.millis));
            Value::Object(m)
        })
        .collect();
    let shape = match opts.k.zip(opts.n) {
        Some((k, n)) => json!({ "k": k, "n": n }),
        None => Value::from("default-grid"),
    };
    json!({
        "version": env!("CARGO_PKG_VERSION"),
        "config": {
            "shape": shape,
            "suites": suite_label(ids),
            "points": opts.points,
            "seed": opts.seed,
            "format": "json",
            "timing": opts.timing,
            "max_dim": opts.max_dim,
            "threads": opts.threads,
        },
        "cases": cases,
    })
}

pub fn verify_text(opts: &VerifyOpts, ids: &[IdentityId], reports: &[Report]) -> String {
    let mut s = String::new();
    let shape = match opts.k.zip(opts.n) {
        Some((k, n)) => format!("{k}x{n}"),
        None => "default grid".into(),
    };
    let suites: Vec<&str> = ids.iter().map(|i| i.label()).collect();
    s.push_str(&format!(
        "kzdual {} | shape {shape} | suites {} | points {} | seed {} | max-dim {} | threads {}\n",
        env!("CARGO_PKG_VERSION"),
        suites.join(","),
        opts.points,
        opts.seed,
        opts.max_dim,
        opts.threads
    ));
    for r in reports {
        s.push_str(&format!(
            "{:<10} k={} n={} seed={:<3} {:<18} checks={}",
            r.case.id.label(),
            r.case.k,
            r.case.n,
            r.case.seed,
            r.status.label(),
            r.checks
        ));
        if opts.timing {
            s.push_str(&format!(" {}ms", r.millis));
        }
        s.push('\n');
        if let Some(w) = &r.witness {
            s.push_str(&format!("    witness: {w}\n"));
        }
    }
    let count = |st: Status| reports.iter().filter(|r| r.status == st).count();
    s.push_str(&format!(
        "{} cases: {} pass, {} fail, {} skipped-nongeneric\n",
        reports.len(),
        count(Status::Pass),
        count(Status::Fail),
        count(Status::SkippedNongeneric)
    ));
    s
}

fn matrix_json(m: &MatrixOperator<Q>) -> Value {
    let basis: Vec<Value> = m.basis().monomials().iter().map(|d| Value::from(d.to_string())).collect();
    let rows: Vec<Value> = m
        .to_dense()
        .iter()
        .map(|r| Value::Array(r.iter().map(|x| Value::from(q_to_fraction_string(x))).collect()))
        .collect();
    json!({ "basis": basis, "rows": rows })
}

fn vector_json(v: &SparseVector) -> Value {
    let terms: Map<String, Value> = v
        .terms()
        .map(|(d, c)| (d.to_string(), Value::from(q_to_fraction_string(c))))
        .collect();
    Value::Object(terms)
}

enum Shown {
    First(FirstOrderOp<Q>),
    Shift(ShiftOp<Q>),
}

fn build_operator(
    kind: OperatorKind,
    side: Side,
    k: usize,
    n: usize,
    index: usize,
    pt: &EvalPoint,
) -> Result<Shown, Error> {
    if k == 0 || n == 0 || k * n > 16 {
        return Err(usage(format!("shape {k}x{n} outside 1 <= k*n <= 16")));
    }
    if pt.z.len() != n || pt.lambda.len() != k {
        return Err(usage(format!("need {n} z values and {k} lambda values")));
    }
    if index == 0 {
        return Err(usage("--index is 1-based".into()));
    }
    let space = FermionSpace::new(k, n)?;
    let args = Args::at(&Substitution::natural(side, k, n), pt);
    let i = index - 1;
    Ok(match kind {
        OperatorKind::Kz => Shown::First(kz_rational(&space, &args, i)?),
        OperatorKind::TrigKz => Shown::First(kz_trig(&space, &args, i)?),
        OperatorKind::Dd => Shown::First(dd_rational(&space, &args, i)?),
        OperatorKind::TrigDd => Shown::First(dd_trig(&space, &args, i)?),
        OperatorKind::Qkz => Shown::Shift(qkz_operator(&space, &args, i)?),
        OperatorKind::Qdd => Shown::Shift(qdd_operator(&space, &args, i)?),
    })
}

pub fn cmd_show(opts: &ShowOpts, out: &mut dyn Write) -> Result<i32, Error> {
    let (text, value) = match &opts.object {
        ShowObject::Rmatrix {
            n,
            m1,
            m2,
            t,
            construction,
        } => {
            if *n == 0 || 2 * n > 16 {
                return Err(usage(format!("n = {n} outside 1..=8")));
            }
            let r = match construction {
                RConstruction::Spectral => r_matrix_spectral(*n, *m1, *m2, t)?,
                RConstruction::Solve => r_matrix_solve(*n, *m1, *m2, t, Normalization::Spectral)?,
                RConstruction::Literal => r_matrix_solve(*n, *m1, *m2, t, Normalization::HighestVectors)?,
            };
            (r.to_string(), matrix_json(&r))
        }
        ShowObject::Vector { n, m1, m2, m, .. } => {
            if *n == 0 || 2 * n > 16 {
                return Err(usage(format!("n = {n} outside 1..=8")));
            }
            let v = v_m_vector(*n, *m1, *m2, *m)?;
            (format!("{v}\n"), vector_json(&v))
        }
        ShowObject::Operator {
            kind,
            side,
            k,
            n,
            index,
            z,
            lambda,
            kappa,
        } => {
            let side = match side {
                SideArg::Row => Side::RowAlgebra,
                SideArg::Column => Side::ColumnAlgebra,
            };
            let pt = EvalPoint::new(z.0.clone(), lambda.0.clone(), kappa.clone());
            match build_operator(*kind, side, *k, *n, *index, &pt)? {
                Shown::First(op) => {
                    let mut s = String::new();
                    let mut d = Map::new();
                    for (v, c) in &op.derivative {
                        s.push_str(&format!("d/d{v}: {}\n", q_to_fraction_string(c)));
                        d.insert(v.to_string(), Value::from(q_to_fraction_string(c)));
                    }
                    s.push_str(&op.zeroth.to_string());
                    (s, json!({ "derivative": d, "zeroth": matrix_json(&op.zeroth) }))
                }
                Shown::Shift(op) => {
                    let s = format!("shift {} by {}\n{}", op.var, q_to_fraction_string(&op.step), op.coeff);
                    let v = json!({
                        "shift": { "var": op.var.to_string(), "step": q_to_fraction_string(&op.step) },
                        "coeff": matrix_json(&op.coeff),
                    });
                    (s, v)
                }
            }
        }
    };
    let body = match opts.format {
        Format::Text => text,
        Format::Json => serde_json::to_string_pretty(&value).expect("JSON values serialize") + "\n",
    };
    out.write_all(body.as_bytes())
        .map_err(|e| Error::Integrity(format!("write failed: {e}")))?;
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("kzdual").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn guard_rejects_large_shapes() {
        let (code, _, err) = call(&["verify", "--k", "9", "--n", "9"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("guard"));
    }

    #[test]
    fn unknown_flags_and_ids_are_usage_errors() {
        assert_eq!(call(&["verify", "--bogus"]).0, EXIT_USAGE);
        assert_eq!(call(&["verify", "--suite", "th9"]).0, EXIT_USAGE);
        assert_eq!(call(&["verify", "--k", "2"]).0, EXIT_USAGE);
        assert_eq!(call(&["show", "vector", "vm", "--n", "2", "--m1", "3", "--m2", "1", "--m", "0"]).0, EXIT_USAGE);
        assert_eq!(call(&["show", "rmatrix", "--n", "2", "--m1", "1", "--m2", "1", "--t", "x"]).0, EXIT_USAGE);
    }

    #[test]
    fn help_exits_cleanly() {
        let (code, out, _) = call(&["--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("verify"));
    }

    #[test]
    fn show_vm_product_term() {
        let (code, out, _) = call(&["show", "vector", "vm", "--n", "2", "--m1", "1", "--m2", "1", "--m", "1"]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(out.trim(), "x[1,1]*x[2,1]");
    }

    #[test]
    fn show_rmatrix_at_three() {
        let (code, out, _) = call(&["show", "rmatrix", "--n", "2", "--m1", "1", "--m2", "1", "--t", "3", "--format", "json"]);
        assert_eq!(code, EXIT_OK);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["rows"].as_array().unwrap().len(), 4);
    }

    #[test]
    fn show_rmatrix_at_pole_is_skipped() {
        let (code, _, err) = call(&["show", "rmatrix", "--n", "2", "--m1", "1", "--m2", "1", "--t", "1"]);
        assert_eq!(code, EXIT_SKIPPED);
        assert!(err.contains("non-generic"));
    }

    #[test]
    fn show_operator_at_one_by_one() {
        let (code, out, _) = call(&[
            "show", "operator", "kz", "--side", "row", "--k", "1", "--n", "1", "--index", "1", "--z", "1/2", "--lambda",
            "3", "--kappa", "2",
        ]);
        assert_eq!(code, EXIT_OK, "{out}");
        assert!(out.starts_with("d/dz1: 2/1"));
    }

    #[test]
    fn verify_json_has_sorted_schema() {
        let (code, out, _) = call(&["verify", "--suite", "th1", "--k", "1", "--n", "2", "--points", "2", "--format", "json"]);
        assert_eq!(code, EXIT_OK, "{out}");
        let v: Value = serde_json::from_str(&out).unwrap();
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(keys, ["cases", "config", "version"]);
        let case = &v["cases"][0];
        let keys: Vec<&str> = case.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(keys, ["id", "k", "millis", "n", "point", "seed", "status"]);
        assert!(case["point"]["kappa"].as_str().unwrap().contains('/'));
    }
}
