use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ncforms::calculus::check_at_compatible;
use ncforms::liecomplex::{self, DiscreteVariant};
use ncforms::qspace::{self, GroupAlgebra, QMatrix};
use ncforms::quantum;
use ncforms::suites::{self, Config, SuiteReport};
use ncforms::{contract, parse, poincare_primitive, print, Derivation, Error, Form, RewriteSystem, Scalar, Signature};

#[derive(Parser)]
#[command(name = "ncforms", version, about = "Exact noncommutative differential forms")]
struct Cli {
    /// Emit `{ok, result?, residuals?, counterexample?}` JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Normal form of an expression.
    Normalize(ExprArgs),
    /// Differential, normalized.
    D(ExprArgs),
    /// Primitive ν and scalar remainder r with dν + r = input.
    Primitive(ExprArgs),
    /// Contraction of a vector field with a form (free algebras only).
    Contract {
        /// Field values X(x_1), …, X(x_n), separated by `;`.
        #[arg(long)]
        field: String,
        /// The field is odd.
        #[arg(long)]
        odd: bool,
        #[command(flatten)]
        expr: ExprArgs,
    },
    /// Partial derivative ∂H/∂u (Weyl and Q-space algebras).
    Partial {
        /// Variable name, e.g. `p1` or `x2`.
        #[arg(long)]
        var: String,
        #[command(flatten)]
        expr: ExprArgs,
    },
    /// Lie-algebra complexes.
    Complex {
        #[command(subcommand)]
        cmd: ComplexCmd,
    },
    /// Q-quantum space computations.
    Qspace {
        #[arg(long)]
        n: usize,
        /// Q.json with `{n, entries: [[i, j, "expr"], ...], group?: [N1, ...]}`.
        #[arg(long = "Q")]
        q: Option<PathBuf>,
        #[command(subcommand)]
        op: QOp,
    },
    /// Run a seeded property suite.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        cases: usize,
        #[arg(long, default_value_t = 4)]
        max_deg: usize,
        /// For `confluence`: check this JSON presentation instead of the shipped presets.
        #[arg(long)]
        system: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ComplexCmd {
    /// Print a preset as a JSON presentation.
    Build { name: String },
    /// Local confluence, d-compatibility and d² = 0 on generators.
    Audit {
        /// Preset name; omit when `--system` is given.
        name: Option<String>,
        #[arg(long)]
        system: Option<PathBuf>,
    },
    /// Discrete differential of a function of x, y.
    DiscreteD {
        #[arg(long, value_enum, default_value_t = Variant::Forward)]
        variant: Variant,
        expr: String,
    },
    /// Primitive of a closed discrete 1-form.
    DiscretePrimitive {
        #[arg(long, value_enum, default_value_t = Variant::Forward)]
        variant: Variant,
        expr: String,
    },
}

#[derive(Subcommand)]
enum QOp {
    D { expr: String },
    Primitive { expr: String },
    /// ∂_k with 1-based k.
    Partial { k: usize, expr: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    Forward,
    Backward,
}

impl From<Variant> for DiscreteVariant {
    fn from(v: Variant) -> DiscreteVariant {
        match v {
            Variant::Forward => DiscreteVariant::Forward,
            Variant::Backward => DiscreteVariant::Backward,
        }
    }
}

#[derive(Args)]
struct ExprArgs {
    /// `free`, `weyl`, `q`, a complex preset name, or `file` with `--system`.
    #[arg(long, default_value = "free")]
    algebra: String,
    #[arg(long, default_value_t = 3)]
    n: usize,
    /// Odd x-generators for `free`, e.g. `0,1,1`.
    #[arg(long)]
    parity: Option<String>,
    #[arg(long = "Q")]
    q: Option<PathBuf>,
    #[arg(long)]
    system: Option<PathBuf>,
    expr: String,
}

/// A failure with its exit code: 1 for a failed invariant, 2 for usage.
struct Failure {
    code: u8,
    message: String,
    extra: Option<Value>,
}

fn usage(e: impl ToString) -> Failure {
    Failure { code: 2, message: e.to_string(), extra: None }
}

fn from_error(e: Error) -> Failure {
    let code = match e {
        Error::NotClosed(_) | Error::NoHomotopy(_) | Error::IncompatibleRelations(_) => 1,
        _ => 2,
    };
    Failure { code, message: e.to_string(), extra: None }
}

enum Algebra {
    Plain(RewriteSystem),
    Q(QMatrix, RewriteSystem),
    Group(GroupAlgebra),
}

impl Algebra {
    fn sys(&self) -> &RewriteSystem {
        match self {
            Algebra::Plain(s) | Algebra::Q(_, s) => s,
            Algebra::Group(g) => &g.sys,
        }
    }
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {}", path.display(), e)))
}

fn q_algebra(n: usize, q: &Option<PathBuf>) -> Result<Algebra, Failure> {
    let Some(path) = q else {
        let qm = QMatrix::symbolic(n);
        let sys = qspace::q_algebra(&qm);
        return Ok(Algebra::Q(qm, sys));
    };
    let cfg = QMatrix::from_json(&read(path)?).map_err(from_error)?;
    if cfg.matrix.n != n {
        return Err(usage(format!("--n {} does not match n = {} in {}", n, cfg.matrix.n, path.display())));
    }
    match cfg.group {
        Some(g) => Ok(Algebra::Group(qspace::group_algebra(&cfg.matrix, &g, &cfg.group_entries).map_err(from_error)?)),
        None => {
            let sys = qspace::q_algebra(&cfg.matrix);
            Ok(Algebra::Q(cfg.matrix, sys))
        }
    }
}

fn select(a: &ExprArgs) -> Result<Algebra, Failure> {
    match a.algebra.as_str() {
        "free" => {
            let parities = match &a.parity {
                None => vec![false; a.n],
                Some(p) => p
                    .split(',')
                    .map(|t| match t.trim() {
                        "0" => Ok(false),
                        "1" => Ok(true),
                        other => Err(usage(format!("parity entries are 0 or 1, got `{}`", other))),
                    })
                    .collect::<Result<_, _>>()?,
            };
            Ok(Algebra::Plain(RewriteSystem::free("free", Signature::free(&parities))))
        }
        "weyl" => Ok(Algebra::Plain(quantum::weyl_algebra(a.n))),
        "q" => q_algebra(a.n, &a.q),
        "file" => {
            let path = a.system.as_ref().ok_or_else(|| usage("--algebra file needs --system"))?;
            Ok(Algebra::Plain(RewriteSystem::from_json(&read(path)?).map_err(from_error)?))
        }
        name => Ok(Algebra::Plain(liecomplex::preset(name).map_err(usage)?)),
    }
}

fn parse_in(text: &str, sys: &RewriteSystem) -> Result<Form, Failure> {
    parse(text, sys.sig()).map_err(from_error)
}

fn text_result(f: &Form, sys: &RewriteSystem) -> Value {
    json!({"ok": true, "result": print(f, sys.sig())})
}

/// `(ν, r)` with `d ν + r` equal to the normal form of `a`, checked before returning.
fn primitive(a: &Form, alg: &Algebra) -> Result<(Form, Scalar), Failure> {
    let sys = alg.sys();
    let a = sys.normalize(a);
    let da = sys.d(&a);
    if !da.is_zero() {
        return Err(Failure {
            code: 1,
            message: format!("form is not closed: d(a) = {}", print(&da, sys.sig())),
            extra: Some(json!({"counterexample": {"input": print(&a, sys.sig()), "residual": print(&da, sys.sig())}})),
        });
    }
    let (nu, r) = match alg {
        Algebra::Group(ga) => (qspace::equivariant_primitive(&a, ga).map_err(from_error)?, a.constant()),
        _ if check_at_compatible(sys).is_ok() => poincare_primitive(&a, sys.sig(), Some(sys)).map_err(from_error)?,
        _ => quantum::quantum_poincare(&a, sys).map_err(from_error)?,
    };
    let nu = sys.normalize(&nu);
    let back = sys.d(&nu) + Form::scalar(r.clone());
    if back != a {
        return Err(Failure {
            code: 1,
            message: format!("no primitive construction applies to {}", sys.name()),
            extra: None,
        });
    }
    Ok((nu, r))
}

fn primitive_value(nu: &Form, r: &Scalar, sys: &RewriteSystem) -> Value {
    json!({"ok": true, "result": print(nu, sys.sig()), "remainder": r.to_string()})
}

fn partial(h: &Form, var: &str, alg: &Algebra) -> Result<Form, Failure> {
    let sys = alg.sys();
    let g = sys.sig().by_name(var).ok_or_else(|| usage(format!("unknown variable `{}`", var)))?;
    match alg {
        Algebra::Q(qm, sys) => {
            let k = sys.sig().point_index(g).ok_or_else(|| usage(format!("`{}` is not a coordinate", var)))?;
            qspace::q_partial(h, k, qm, sys).map_err(from_error)
        }
        Algebra::Plain(sys) if sys.name().starts_with("weyl") => Ok(quantum::weyl_partial(h, g, sys)),
        _ => Err(usage("partial derivatives are defined for the weyl and q algebras")),
    }
}

fn verify(suite: &str, cfg: &Config, system: &Option<PathBuf>) -> Result<SuiteReport, Failure> {
    match system {
        None => suites::run(suite, cfg).map_err(usage),
        Some(path) if suite == "confluence" => {
            let sys = RewriteSystem::from_json(&read(path)?).map_err(from_error)?;
            let checks = suites::confluence_suite(&[sys], cfg);
            Ok(SuiteReport { suite: suite.to_owned(), seed: cfg.seed, checks })
        }
        Some(_) => Err(usage("--system applies to the confluence suite only")),
    }
}

fn report_text(r: &SuiteReport) -> String {
    let mut out = String::new();
    for c in &r.checks {
        out += &format!("{} {} ({} cases)\n", if c.is_ok() { "ok  " } else { "FAIL" }, c.check, c.cases);
    }
    if let Some(ce) = r.counterexample() {
        out += &format!("counterexample [{} case {}]: {}\nresidual: {}\n", ce.check, ce.case, ce.input, ce.residual);
    }
    let failed = r.checks.iter().filter(|c| !c.is_ok()).count();
    out += &format!("{}: {} checks, {} failed", r.suite, r.checks.len(), failed);
    out
}

fn audit_value(sys: &RewriteSystem) -> Value {
    let a = liecomplex::audit(sys);
    let sig = sys.sig();
    let word = |w: &ncforms::Word| print(&Form::term(w.clone(), Scalar::one()), sig);
    let mut v = json!({
        "ok": a.is_ok(),
        "system": sys.name(),
        "residuals": {
            "confluence": {"checked": a.confluence.checked, "failed": a.confluence.mismatches.len()},
            "d_compat": {"checked": a.d_compat.checked, "failed": a.d_compat.failures.len()},
            "d_squared": {"checked": sig.len(), "failed": a.d_squared.len()},
        },
    });
    let ce = if let Some(o) = a.confluence.mismatches.first() {
        Some(json!({"check": "confluence", "input": word(&o.word), "residual": print(&(&o.via_left - &o.via_right), sig)}))
    } else if let Some(f) = a.d_compat.failures.first() {
        let input = format!("{}*{}", sig.name(f.left.0), sig.name(f.left.1));
        Some(json!({"check": "d_compat", "input": input, "residual": print(&f.residual, sig)}))
    } else {
        a.d_squared.first().map(|(g, f)| json!({"check": "d_squared", "input": sig.name(*g), "residual": print(f, sig)}))
    };
    if let Some(ce) = ce {
        v["counterexample"] = ce;
    }
    v
}

fn audit_text(v: &Value) -> String {
    let r = &v["residuals"];
    let mut out = format!(
        "{}: confluence {}/{} failed, d-compatibility {}/{} failed, d^2 {}/{} failed",
        v["system"].as_str().unwrap_or(""),
        r["confluence"]["failed"],
        r["confluence"]["checked"],
        r["d_compat"]["failed"],
        r["d_compat"]["checked"],
        r["d_squared"]["failed"],
        r["d_squared"]["checked"],
    );
    if let Some(ce) = v.get("counterexample") {
        out += &format!(
            "\ncounterexample [{}]: {}\nresidual: {}",
            ce["check"].as_str().unwrap_or(""),
            ce["input"].as_str().unwrap_or(""),
            ce["residual"].as_str().unwrap_or("")
        );
    }
    out
}

/// Output value and its text rendering.
type Outcome = (Value, String);

fn plain(v: Value) -> Outcome {
    let text = v["result"].as_str().unwrap_or_default().to_owned();
    (v, text)
}

fn run(cmd: Cmd) -> Result<Outcome, Failure> {
    match cmd {
        Cmd::Normalize(a) => {
            let alg = select(&a)?;
            let sys = alg.sys();
            Ok(plain(text_result(&sys.normalize(&parse_in(&a.expr, sys)?), sys)))
        }
        Cmd::D(a) => {
            let alg = select(&a)?;
            let sys = alg.sys();
            Ok(plain(text_result(&sys.d(&parse_in(&a.expr, sys)?), sys)))
        }
        Cmd::Primitive(a) => {
            let alg = select(&a)?;
            let sys = alg.sys();
            let (nu, r) = primitive(&parse_in(&a.expr, sys)?, &alg)?;
            let text = format!("{}\nremainder: {}", print(&nu, sys.sig()), r);
            Ok((primitive_value(&nu, &r, sys), text))
        }
        Cmd::Contract { field, odd, expr } => {
            let alg = select(&expr)?;
            let sys = alg.sys();
            if !sys.rules().is_empty() {
                return Err(usage("contract works on free algebras"));
            }
            let sig = sys.sig();
            let values = field.split(';').map(|t| parse(t, sig).map_err(from_error)).collect::<Result<Vec<_>, _>>()?;
            if values.len() != sig.points().len() {
                return Err(usage(format!("--field needs {} values, got {}", sig.points().len(), values.len())));
            }
            let x = Derivation::new(odd, values);
            Ok(plain(text_result(&contract(&x, &parse_in(&expr.expr, sys)?, sig), sys)))
        }
        Cmd::Partial { var, expr } => {
            let alg = select(&expr)?;
            let h = parse_in(&expr.expr, alg.sys())?;
            Ok(plain(text_result(&partial(&h, &var, &alg)?, alg.sys())))
        }
        Cmd::Complex { cmd } => complex(cmd),
        Cmd::Qspace { n, q, op } => {
            let alg = q_algebra(n, &q)?;
            let sys = alg.sys();
            match op {
                QOp::D { expr } => Ok(plain(text_result(&sys.d(&parse_in(&expr, sys)?), sys))),
                QOp::Primitive { expr } => {
                    let (nu, r) = primitive(&parse_in(&expr, sys)?, &alg)?;
                    let text = format!("{}\nremainder: {}", print(&nu, sys.sig()), r);
                    Ok((primitive_value(&nu, &r, sys), text))
                }
                QOp::Partial { k, expr } => {
                    let Algebra::Q(qm, sys) = &alg else {
                        return Err(usage("partial derivatives need a Q.json without a group"));
                    };
                    if k == 0 || k > n {
                        return Err(usage(format!("k must lie in 1..={}", n)));
                    }
                    let p = qspace::q_partial(&parse_in(&expr, sys)?, k - 1, qm, sys).map_err(from_error)?;
                    Ok(plain(text_result(&p, sys)))
                }
            }
        }
        Cmd::Verify { suite, seed, cases, max_deg, system } => {
            let cfg = Config { seed, cases, max_deg };
            let r = verify(&suite, &cfg, &system)?;
            let (v, text) = (r.to_json(), report_text(&r));
            if r.is_ok() {
                Ok((v, text))
            } else {
                Err(Failure { code: 1, message: text, extra: Some(v) })
            }
        }
    }
}

fn complex(cmd: ComplexCmd) -> Result<Outcome, Failure> {
    match cmd {
        ComplexCmd::Build { name } => {
            let sys = liecomplex::preset(&name).map_err(usage)?;
            let p = serde_json::to_value(sys.to_presentation()).expect("serializable");
            let text = serde_json::to_string_pretty(&p).expect("serializable");
            Ok((json!({"ok": true, "result": p}), text))
        }
        ComplexCmd::Audit { name, system } => {
            let sys = match (name, system) {
                (Some(n), None) => liecomplex::preset(&n).map_err(usage)?,
                (None, Some(p)) => RewriteSystem::from_json(&read(&p)?).map_err(from_error)?,
                _ => return Err(usage("give either a preset name or --system")),
            };
            let v = audit_value(&sys);
            let text = audit_text(&v);
            if v["ok"] == json!(true) {
                Ok((v, text))
            } else {
                Err(Failure { code: 1, message: text, extra: Some(v) })
            }
        }
        ComplexCmd::DiscreteD { variant, expr } => {
            let v = DiscreteVariant::from(variant);
            let sys = liecomplex::discrete_system(v);
            let f = liecomplex::discrete_d(&parse_in(&expr, &sys)?, v, &sys).map_err(from_error)?;
            Ok(plain(text_result(&f, &sys)))
        }
        ComplexCmd::DiscretePrimitive { variant, expr } => {
            let v = DiscreteVariant::from(variant);
            let sys = liecomplex::discrete_system(v);
            let f = liecomplex::discrete_poincare(&parse_in(&expr, &sys)?, v, &sys).map_err(from_error)?;
            Ok(plain(text_result(&f, &sys)))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let json_out = cli.json;
    match run(cli.cmd) {
        Ok((v, text)) => {
            if json_out {
                println!("{}", v);
            } else {
                println!("{}", text);
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            if json_out {
                let mut v = f.extra.unwrap_or_else(|| json!({}));
                v["ok"] = json!(false);
                if v.get("residuals").is_none() {
                    v["error"] = json!(f.message);
                }
                println!("{}", v);
            } else if f.code == 1 && f.extra.is_some() {
                println!("{}", f.message);
            } else {
                eprintln!("error: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}
