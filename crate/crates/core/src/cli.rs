//! The batch driver behind the `cbrauer` binary: argument parsing, job
//! execution and machine-readable reports.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use serde_json::{json, Value};

use crate::brauer::cellular::BrauerCellular;
use crate::brauer::quotient::simplicity_table;
use crate::brauer::{admissible_omega, generic_dimension, omega_order, BrauerAlgebra};
use crate::combinat::Multipartition;
use crate::error::{input, Error, Result};
use crate::rational::{fmt_q, parse_q_list, Q};
use crate::repanalysis::decomposition_matrix;
use crate::tensoro::{check_micro_scale, verify_all, TensorSetting};
use crate::weights::{compute_u_params, saturation_check, HighestWeightConfig, RootDatum, RootType};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "cbrauer", version, about = "Cyclotomic Brauer algebras: ω tables, decomposition matrices, saturation and singular-vector checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// The admissible sequence ω_0, …, ω_K determined by u.
    Omega {
        #[command(flatten)]
        params: AlgebraParams,
        /// Highest index K of the table.
        #[arg(long, short = 'k')]
        order: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Decomposition matrix of the cell modules, with the simplicity comparison.
    Decomp {
        #[command(flatten)]
        params: AlgebraParams,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Saturation of the weight sets λ_{I,c} + 𝒦_j, j ≤ r.
    Saturation {
        #[command(flatten)]
        params: AlgebraParams,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Verification of the explicit singular vectors on the truncated tensor module.
    Singular {
        #[command(flatten)]
        params: AlgebraParams,
        /// Run outside the micro-scale guard (k = 1, r ≤ 2).
        #[arg(long)]
        force: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
}

/// Either direct parameters (--a, --u) or a Lie-side datum (--type, --n, --p, --i, --c).
#[derive(Args, Debug, Clone)]
pub struct AlgebraParams {
    /// Level a (number of parameters u).
    #[arg(long)]
    pub a: Option<usize>,
    /// Number of strands r.
    #[arg(long)]
    pub r: Option<usize>,
    /// Comma-separated rationals u_1, …, u_a.
    #[arg(long, allow_hyphen_values = true)]
    pub u: Option<String>,
    /// Root system type.
    #[arg(long = "type", value_enum)]
    pub phi: Option<TypeArg>,
    /// Rank n.
    #[arg(long)]
    pub n: Option<usize>,
    /// Comma-separated cut points p_1 < … < p_k = n.
    #[arg(long)]
    pub p: Option<String>,
    /// Parabolic flavour i ∈ {1, 2}.
    #[arg(long)]
    pub i: Option<usize>,
    /// Comma-separated rationals c_1, …, c_k.
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<String>,
    /// Upper bound on a^r (2r−1)!! and on enumeration sizes.
    #[arg(long, default_value_t = 5000)]
    pub budget: usize,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum TypeArg {
    B,
    C,
    D,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl From<TypeArg> for RootType {
    fn from(t: TypeArg) -> Self {
        match t {
            TypeArg::B => RootType::B,
            TypeArg::C => RootType::C,
            TypeArg::D => RootType::D,
        }
    }
}

/// A finished job: the JSON report, an optional CSV table and the exit code.
pub struct Outcome {
    pub report: Value,
    pub table: Vec<Vec<String>>,
    pub code: i32,
}

/// Exit code for an error: 2 input, 3 budget, 4 verification.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Input(_) | Error::Unsupported(_) => 2,
        Error::Budget { .. } => 3,
        Error::Verification(_) | Error::Truncation { .. } | Error::OmegaExhausted { .. } => 4,
    }
}

impl AlgebraParams {
    fn lie_side(&self) -> bool {
        self.phi.is_some() || self.n.is_some() || self.p.is_some() || self.i.is_some() || self.c.is_some()
    }

    /// The Lie-side datum; all of --type, --n, --p, --i, --c are required.
    pub fn config(&self) -> Result<HighestWeightConfig> {
        if self.a.is_some() || self.u.is_some() {
            return input("use either --a/--u or --type/--n/--p/--i/--c, not both");
        }
        let (Some(phi), Some(n), Some(p), Some(i), Some(c)) = (self.phi, self.n, &self.p, self.i, &self.c) else {
            return input("a Lie-side datum needs --type, --n, --p, --i and --c");
        };
        let p = p
            .split(',')
            .map(|s| s.trim().parse::<usize>().map_err(|_| Error::Input(format!("bad cut point {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        let datum = RootDatum::new_for_dictionary(phi.into(), n, p, i)?;
        HighestWeightConfig::new(datum, parse_q_list(c)?)
    }

    /// (a, u) from either parameter style.
    pub fn level_and_u(&self) -> Result<(usize, Vec<Q>)> {
        if self.lie_side() {
            let cfg = self.config()?;
            return Ok((cfg.datum.level(), compute_u_params(&cfg)?));
        }
        let Some(u) = &self.u else {
            return input("give --u (with optional --a) or a Lie-side datum");
        };
        let u = parse_q_list(u)?;
        if u.is_empty() {
            return input("--u must list at least one parameter");
        }
        if let Some(a) = self.a {
            if a != u.len() {
                return input(format!("--a {a} but {} parameters in --u", u.len()));
            }
        }
        Ok((u.len(), u))
    }

    fn strands(&self) -> Result<usize> {
        match self.r {
            Some(r) if r > 0 => Ok(r),
            Some(_) => input("--r must be positive"),
            None => input("--r is required"),
        }
    }

    fn check_budget(&self, a: usize, r: usize) -> Result<()> {
        let needed = generic_dimension(a, r);
        if needed > self.budget {
            return Err(Error::Budget { needed, budget: self.budget });
        }
        Ok(())
    }
}

fn q_list(v: &[Q]) -> Value {
    Value::from(v.iter().map(fmt_q).collect::<Vec<_>>())
}

fn label(f: usize, lambda: &Multipartition) -> Value {
    json!({ "f": f, "lambda": lambda.to_vecs() })
}

fn label_text(f: usize, lambda: &Multipartition) -> String {
    format!("{f}:{:?}", lambda.to_vecs()).replace(' ', "")
}

fn envelope(command: &str, body: Value) -> Value {
    let mut out = json!({ "schema": SCHEMA_VERSION, "command": command });
    if let (Value::Object(o), Value::Object(b)) = (&mut out, body) {
        o.extend(b);
    }
    out
}

pub fn cmd_omega(params: &AlgebraParams, order: Option<usize>) -> Result<Outcome> {
    let (a, u) = params.level_and_u()?;
    let order = order.unwrap_or_else(|| omega_order(a, params.r.unwrap_or(1)));
    if order > params.budget {
        return Err(Error::Budget { needed: order, budget: params.budget });
    }
    let omega = admissible_omega(&u, order);
    let table = std::iter::once(vec!["k".to_string(), "omega".to_string()])
        .chain(omega.iter().enumerate().map(|(k, w)| vec![k.to_string(), fmt_q(w)]))
        .collect();
    let report = envelope("omega", json!({ "a": a, "u": q_list(&u), "order": order, "omega": q_list(&omega) }));
    Ok(Outcome { report, table, code: 0 })
}

pub fn cmd_decomp(params: &AlgebraParams) -> Result<Outcome> {
    let (a, u) = params.level_and_u()?;
    let r = params.strands()?;
    params.check_budget(a, r)?;
    let alg = BrauerAlgebra::new(a, r, u.clone())?;
    let cells = BrauerCellular::new(&alg)?;
    let d = decomposition_matrix(&cells)?;
    let mut body = json!({
        "a": a,
        "r": r,
        "u": q_list(&u),
        "omega0": fmt_q(&alg.omega()[0]),
        "dimension": alg.dim(),
        "rows": d.rows.iter().map(|(f, l)| label(*f, l)).collect::<Vec<_>>(),
        "cols": d.cols.iter().map(|(f, l)| label(*f, l)).collect::<Vec<_>>(),
        "matrix": d.entries,
        "cell_dims": d.cell_dims,
        "simple_dims": d.col_rows.iter().map(|&j| d.simple_dims[j]).collect::<Vec<_>>(),
        "unitriangular": d.is_unitriangular(),
        "dimensions_reconcile": d.dimensions_reconcile(),
        "identity": d.is_identity(),
    });
    match simplicity_table(&cells) {
        Ok(rows) => {
            body["simplicity"] = rows
                .iter()
                .map(|row| {
                    json!({
                        "label": label(row.f, &row.lambda),
                        "simple_nonzero": row.brauer_dim > 0,
                        "hecke_nonzero": row.hecke_dim > 0,
                        "agrees": row.agrees(),
                    })
                })
                .collect();
        }
        Err(Error::Unsupported(msg)) => {
            body["warning"] = Value::from(format!("simplicity classification unsupported: {msg}"));
        }
        Err(e) => return Err(e),
    }
    let mut table = vec![std::iter::once("row".to_string())
        .chain(d.cols.iter().map(|(f, l)| label_text(*f, l)))
        .collect::<Vec<_>>()];
    for ((f, l), row) in d.rows.iter().zip(&d.entries) {
        table.push(std::iter::once(label_text(*f, l)).chain(row.iter().map(|x| x.to_string())).collect());
    }
    let ok = d.is_unitriangular() && d.dimensions_reconcile();
    Ok(Outcome { report: envelope("decomp", body), table, code: if ok { 0 } else { 4 } })
}

/// Adds a warning when the simplicity hypothesis fails; returns whether it holds.
fn simplicity_warning(cfg: &HighestWeightConfig, body: &mut Value) -> bool {
    let violations = cfg.simplicity_violations();
    if violations.is_empty() {
        true
    } else {
        body["warning"] = Value::from(format!(
            "λ_(I,c) violates the simplicity hypothesis for {} root(s); conclusions are not covered",
            violations.len()
        ));
        false
    }
}

fn omega_zero_warning(u: &[Q], body: &mut Value) {
    if admissible_omega(u, 0)[0].is_zero() {
        body["omega_zero_warning"] = Value::from("ω_0 = 0: the simplicity classification does not apply");
    }
}

pub fn cmd_saturation(params: &AlgebraParams) -> Result<Outcome> {
    let cfg = params.config()?;
    let r = params.strands()?;
    let report = saturation_check(&cfg, r, params.budget)?;
    let passed = report.passed();
    let mut body = json!({
        "type": format!("{:?}", cfg.datum.phi),
        "n": cfg.datum.n,
        "p": cfg.datum.p,
        "i": cfg.datum.i,
        "c": q_list(&cfg.c),
        "r": r,
        "saturated": passed,
        "set_sizes": report.set_sizes,
        "steps_checked": report.steps_checked,
        "witnesses": serde_json::to_value(&report.witnesses).map_err(|e| Error::Verification(e.to_string()))?,
    });
    let covered = simplicity_warning(&cfg, &mut body);
    let mut table = vec![vec!["j".to_string(), "set_size".to_string()]];
    table.extend(report.set_sizes.iter().enumerate().map(|(j, s)| vec![j.to_string(), s.to_string()]));
    let code = if passed || !covered { 0 } else { 4 };
    Ok(Outcome { report: envelope("saturation", body), table, code })
}

pub fn cmd_singular(params: &AlgebraParams, force: bool) -> Result<Outcome> {
    let cfg = params.config()?;
    let r = params.strands()?;
    check_micro_scale(&cfg, r, force)?;
    params.check_budget(cfg.datum.level(), r)?;
    cfg.check_block_sizes(r)?;
    let u = compute_u_params(&cfg)?;
    let mut body = json!({
        "type": format!("{:?}", cfg.datum.phi),
        "n": cfg.datum.n,
        "p": cfg.datum.p,
        "i": cfg.datum.i,
        "c": q_list(&cfg.c),
        "r": r,
        "u": q_list(&u),
    });
    let covered = simplicity_warning(&cfg, &mut body);
    omega_zero_warning(&u, &mut body);
    let setting = TensorSetting::new(cfg, r)?;
    let reports = verify_all(&setting)?;
    let passed = reports.iter().all(|x| x.passed());
    let mut table = vec![["f", "lambda", "expected", "independent_rank", "singular_space_dim", "passed"]
        .iter()
        .map(|s| s.to_string())
        .collect::<Vec<_>>()];
    let mut labels = Vec::new();
    for rep in &reports {
        let lambda = Multipartition::from_vecs(&rep.lambda)?;
        table.push(vec![
            rep.f.to_string(),
            format!("{:?}", rep.lambda).replace(' ', ""),
            rep.expected.to_string(),
            rep.independent_rank.to_string(),
            rep.singular_space_dim.to_string(),
            rep.passed().to_string(),
        ]);
        labels.push(json!({
            "label": label(rep.f, &lambda),
            "weight": serde_json::to_value(&rep.weight).map_err(|e| Error::Verification(e.to_string()))?,
            "expected": rep.expected,
            "independent_rank": rep.independent_rank,
            "singular_space_dim": rep.singular_space_dim,
            "passed": rep.passed(),
            "annihilation_failures": rep.annihilation_failures,
            "leading_term_failures": rep.leading_term_failures,
            "wrong_weight": rep.wrong_weight,
        }));
    }
    body["labels"] = Value::from(labels);
    body["passed"] = Value::from(passed);
    let code = if passed || !covered { 0 } else { 4 };
    Ok(Outcome { report: envelope("singular", body), table, code })
}

/// Runs a parsed command.
pub fn execute(cli: &Cli) -> Result<(Outcome, OutputArgs)> {
    match &cli.command {
        Command::Omega { params, order, output } => Ok((cmd_omega(params, *order)?, output.clone())),
        Command::Decomp { params, output } => Ok((cmd_decomp(params)?, output.clone())),
        Command::Saturation { params, output } => Ok((cmd_saturation(params)?, output.clone())),
        Command::Singular { params, force, output } => Ok((cmd_singular(params, *force)?, output.clone())),
    }
}

/// Renders an outcome in the requested format.
pub fn render(outcome: &Outcome, format: Format) -> Result<String> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&outcome.report).map_err(|e| Error::Verification(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for row in &outcome.table {
                w.write_record(row).map_err(|e| Error::Verification(e.to_string()))?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Verification(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| Error::Verification(e.to_string()))
        }
    }
}

/// The error report printed on failure.
pub fn error_report(e: &Error) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{}", json!({ "schema": SCHEMA_VERSION, "error": e.to_string(), "exit_code": exit_code(e) }));
    s
}
