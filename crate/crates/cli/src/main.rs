//! `fockcalc`: exact Toeplitz-operator calculus on Fock–Sobolev spaces from the command line.
//!
//! Exit codes: 0 success, 2 a requested check failed, 1 usage or input error.

mod paper;

use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use fockcalc_core::criteria::{
    necessary_sweep, remark24_check, remark27_bound, thm21_inequality, thm21_master, thm31_report,
    zn_c_form, CriterionReport, Thm31Variant, TwoTermSymbolParams,
};
use fockcalc_core::dsl::{parse_poly, parse_symbol};
use fockcalc_core::fock::{
    hyponormality_form, quasinormality_defect, toeplitz_adjoint_apply, toeplitz_apply,
};
use fockcalc_core::forms::{commutator_gram, psd_test, quasi_defect_matrix, quasi_zero_test, PiMatrix, QuasiVerdict};
use fockcalc_core::numeric::{compare_exact_numeric, QuadratureRule};
use fockcalc_core::scalar::rational_from_int;
use fockcalc_core::{AnalyticPoly, FockParams, GaussianRational, MixedSymbol};

#[derive(Parser)]
#[command(name = "fockcalc", version, about = "Exact Toeplitz-operator calculus on Fock-Sobolev spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Common {
    /// Fock-Sobolev order m (default 1; required with --json)
    #[arg(long)]
    m: Option<u32>,
    /// Emit a JSON report
    #[arg(long)]
    json: bool,
}

impl Common {
    fn params(&self) -> Result<FockParams> {
        match (self.m, self.json) {
            (Some(m), _) => Ok(FockParams::new(m)),
            (None, false) => Ok(FockParams::new(1)),
            (None, true) => bail!("--m is required with --json"),
        }
    }
}

#[derive(Args)]
struct OpArgs {
    /// Symbol, e.g. "z*zb^3 + z^2*zb"
    #[arg(long, allow_hyphen_values = true)]
    symbol: String,
    /// Polynomial in z, e.g. "z - z^4"
    #[arg(long, allow_hyphen_values = true)]
    poly: String,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct DefectArgs {
    #[arg(long, allow_hyphen_values = true)]
    symbol: String,
    #[arg(long, allow_hyphen_values = true)]
    poly: String,
    /// Second argument g of the sesquilinear defect (defaults to --poly)
    #[arg(long, allow_hyphen_values = true)]
    poly2: Option<String>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct MatrixArgs {
    #[arg(long, allow_hyphen_values = true)]
    symbol: String,
    /// Truncation degree: the matrix acts on span{1, z, ..., z^N}
    #[arg(long = "N", default_value_t = 8)]
    n_max: u32,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct SymbolK {
    /// Two-term symbol a z^p zb^n + b z^s zb^t
    #[arg(long, allow_hyphen_values = true)]
    symbol: String,
    /// Probe degree k
    #[arg(long)]
    k: u32,
    #[command(flatten)]
    common: Common,
}

#[derive(Subcommand)]
enum CriteriaCommand {
    /// Case-appropriate hyponormality inequality at z^k
    Thm21 {
        #[command(flatten)]
        args: SymbolK,
        /// Evaluate the coefficient-carrying master inequality instead
        #[arg(long)]
        master: bool,
    },
    /// The p - n = 1 = t - s inequality at z
    Remark24 {
        #[arg(long, allow_hyphen_values = true)]
        symbol: String,
        #[command(flatten)]
        common: Common,
    },
    /// Self-commutator form of T for z^n + C|z|^(2s) at a polynomial
    ZnC {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        s: u32,
        /// Gaussian rational C, e.g. "1/2-3*i"
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[command(flatten)]
        common: Common,
    },
    /// Discriminant bound (1+m)!^2 / (s^2 (m+s)!^2) on |C|^2
    Remark27 {
        #[arg(long)]
        s: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Quasinormality classification and identity at z^k
    Thm31 {
        #[command(flatten)]
        args: SymbolK,
        /// Use the identities as printed in the theorem statement
        #[arg(long)]
        as_stated: bool,
    },
}

#[derive(Subcommand)]
enum Command {
    /// Apply T_phi to a polynomial
    Apply(OpArgs),
    /// Apply the adjoint T_phi* to a polynomial
    AdjointApply(OpArgs),
    /// Self-commutator form ||T f||^2 - ||T* f||^2
    HypoForm(OpArgs),
    /// Quasinormality defect <(T*T^2 - T T* T) f, g>
    QuasiDefect(DefectArgs),
    /// Self-commutator Gram matrix on span{1, ..., z^N}
    Gram(MatrixArgs),
    /// Exact positive-semidefiniteness test of the Gram matrix
    Psd(MatrixArgs),
    /// Quasinormality defect matrix on span{1, ..., z^N}
    QuasiMatrix(MatrixArgs),
    /// Necessary-condition checkers
    Criteria {
        #[command(subcommand)]
        which: CriteriaCommand,
    },
    /// Evaluate the hyponormality inequality over an inclusive range of k
    Sweep {
        #[arg(long, allow_hyphen_values = true)]
        symbol: String,
        /// Inclusive range "a..b"
        #[arg(long = "k-range")]
        k_range: String,
        #[command(flatten)]
        common: Common,
    },
    /// Cross-check T_phi f against quadrature of the defining integral
    VerifyNumeric {
        #[arg(long, allow_hyphen_values = true)]
        symbol: String,
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        /// Radial Gauss-Laguerre node count (default: smallest exact)
        #[arg(long)]
        radial: Option<usize>,
        /// Angular node count (default: smallest exact)
        #[arg(long)]
        angular: Option<usize>,
        /// Relative tolerance for the pass verdict
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Recompute the worked examples and diff against their printed values
    PaperExamples {
        #[arg(long)]
        json: bool,
    },
}

/// Whether the requested check held.
enum Status {
    Ok,
    CheckFailed,
}

impl Status {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Ok
        } else {
            Status::CheckFailed
        }
    }
}

fn symbol(text: &str) -> Result<MixedSymbol> {
    parse_symbol(text).with_context(|| format!("invalid --symbol {text:?}"))
}

fn poly(text: &str, flag: &str) -> Result<AnalyticPoly> {
    parse_poly(text).with_context(|| format!("invalid {flag} {text:?}"))
}

fn two_term(text: &str) -> Result<TwoTermSymbolParams> {
    Ok(TwoTermSymbolParams::from_symbol(&symbol(text)?)?)
}

fn emit<T: Serialize>(json: bool, value: &T, text: impl FnOnce() -> String) -> Result<()> {
    if json {
        println!("{}", serde_json::to_string_pretty(value)?);
    } else {
        println!("{}", text());
    }
    Ok(())
}

fn report_text(r: &CriterionReport) -> String {
    format!(
        "theorem: {}\ncase: {}\nk: {}\nlhs: {}\nrhs: {}\nholds: {}\ncross_check: {}",
        r.theorem, r.case, r.k, r.lhs, r.rhs, r.holds, r.cross_check
    )
}

fn matrix_text(m: &PiMatrix) -> String {
    m.rows()
        .iter()
        .map(|row| {
            let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            format!("[{}]", cells.join(", "))
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn parse_k_range(text: &str) -> Result<std::ops::RangeInclusive<u32>> {
    let (a, b) = text
        .split_once("..=")
        .or_else(|| text.split_once(".."))
        .ok_or_else(|| anyhow!("--k-range must look like a..b, got {text:?}"))?;
    let a: u32 = a.trim().parse().with_context(|| format!("bad range start in {text:?}"))?;
    let b: u32 = b.trim().parse().with_context(|| format!("bad range end in {text:?}"))?;
    Ok(a..=b)
}

fn run_criteria(which: CriteriaCommand) -> Result<Status> {
    match which {
        CriteriaCommand::Thm21 { args, master } => {
            let params = two_term(&args.symbol)?;
            let m = args.common.params()?.m;
            let report = if master {
                thm21_master(&params, m, args.k)?
            } else {
                thm21_inequality(&params, m, args.k)?
            };
            emit(args.common.json, &report, || report_text(&report))?;
            Ok(Status::from_bool(report.holds))
        }
        CriteriaCommand::Remark24 { symbol: s, common } => {
            let params = two_term(&s)?;
            let report = remark24_check(&params, common.params()?.m)?;
            emit(common.json, &report, || report_text(&report))?;
            Ok(Status::from_bool(report.holds))
        }
        CriteriaCommand::ZnC { n, s, c, poly: p, common } => {
            let c: GaussianRational = c.parse().with_context(|| format!("invalid --c {c:?}"))?;
            let f = poly(&p, "--poly")?;
            let report = zn_c_form(n, s, &c, common.params()?.m, &f)?;
            emit(common.json, &report, || {
                format!(
                    "full: {}\nreduced: {}\nfull_holds: {}\nreduced_holds: {}",
                    report.full, report.reduced, report.full_holds, report.reduced_holds
                )
            })?;
            Ok(Status::from_bool(report.full_holds))
        }
        CriteriaCommand::Remark27 { s, common } => {
            let m = common.params()?.m;
            let bound = remark27_bound(m, s)?;
            let at_most_one = bound <= rational_from_int(1);
            let value = json!({ "m": m, "s": s, "bound": bound.to_string(), "at_most_one": at_most_one });
            emit(common.json, &value, || format!("|C|^2 <= {bound}"))?;
            Ok(Status::Ok)
        }
        CriteriaCommand::Thm31 { args, as_stated } => {
            let params = two_term(&args.symbol)?;
            let variant = if as_stated { Thm31Variant::AsStated } else { Thm31Variant::Derived };
            let report = thm31_report(&params, args.common.params()?.m, args.k, variant)?;
            emit(args.common.json, &report, || {
                let mut out = format!(
                    "theorem: {}\ncase: {}\nk: {}\nverdict: {}",
                    report.theorem, report.case, report.k, report.verdict
                );
                if let (Some(l), Some(r)) = (&report.lhs, &report.rhs) {
                    out.push_str(&format!("\nlhs: {l}\nrhs: {r}"));
                }
                out.push_str(&format!("\nholds: {}\ncross_check: {}", report.holds, report.cross_check));
                out
            })?;
            Ok(Status::from_bool(report.holds))
        }
    }
}

fn run(command: Command) -> Result<Status> {
    match command {
        Command::Apply(a) => {
            let (phi, f, params) = (symbol(&a.symbol)?, poly(&a.poly, "--poly")?, a.common.params()?);
            let out = toeplitz_apply(&phi, &f, params);
            let value = json!({ "command": "apply", "m": params.m, "symbol": phi.to_string(), "poly": f.to_string(), "result": out.to_string() });
            emit(a.common.json, &value, || out.to_string())?;
            Ok(Status::Ok)
        }
        Command::AdjointApply(a) => {
            let (phi, f, params) = (symbol(&a.symbol)?, poly(&a.poly, "--poly")?, a.common.params()?);
            let out = toeplitz_adjoint_apply(&phi, &f, params);
            let value = json!({ "command": "adjoint-apply", "m": params.m, "symbol": phi.to_string(), "poly": f.to_string(), "result": out.to_string() });
            emit(a.common.json, &value, || out.to_string())?;
            Ok(Status::Ok)
        }
        Command::HypoForm(a) => {
            let (phi, f, params) = (symbol(&a.symbol)?, poly(&a.poly, "--poly")?, a.common.params()?);
            let out = hyponormality_form(&phi, &f, params);
            let value = json!({ "command": "hypo-form", "m": params.m, "symbol": phi.to_string(), "poly": f.to_string(), "value": out });
            emit(a.common.json, &value, || out.to_string())?;
            Ok(Status::Ok)
        }
        Command::QuasiDefect(a) => {
            let (phi, f, params) = (symbol(&a.symbol)?, poly(&a.poly, "--poly")?, a.common.params()?);
            let g = match &a.poly2 {
                Some(t) => poly(t, "--poly2")?,
                None => f.clone(),
            };
            let out = quasinormality_defect(&phi, &f, &g, params);
            let value = json!({ "command": "quasi-defect", "m": params.m, "symbol": phi.to_string(), "poly": f.to_string(), "poly2": g.to_string(), "value": out });
            emit(a.common.json, &value, || out.to_string())?;
            Ok(Status::Ok)
        }
        Command::Gram(a) => {
            let (phi, params) = (symbol(&a.symbol)?, a.common.params()?);
            let gram = commutator_gram(&phi, params, a.n_max);
            let value = json!({ "command": "gram", "m": params.m, "symbol": phi.to_string(), "N": a.n_max, "matrix": gram.matrix().to_json_value() });
            emit(a.common.json, &value, || matrix_text(gram.matrix()))?;
            Ok(Status::Ok)
        }
        Command::Psd(a) => {
            let (phi, params) = (symbol(&a.symbol)?, a.common.params()?);
            let verdict = psd_test(&commutator_gram(&phi, params, a.n_max));
            let status = if verdict.is_psd() { "PSD" } else { "NotPSD" };
            let value = json!({
                "command": "psd",
                "m": params.m,
                "symbol": phi.to_string(),
                "N": a.n_max,
                "status": status,
                "witness": verdict.witness.as_ref().map(|w| w.to_string()),
                "witness_value": verdict.witness_value,
            });
            emit(a.common.json, &value, || match (&verdict.witness, &verdict.witness_value) {
                (Some(w), Some(v)) => format!("{status}\nwitness: {w}\nwitness_value: {v}"),
                _ => status.to_string(),
            })?;
            Ok(Status::from_bool(verdict.is_psd()))
        }
        Command::QuasiMatrix(a) => {
            let (phi, params) = (symbol(&a.symbol)?, a.common.params()?);
            let q = quasi_defect_matrix(&phi, params, a.n_max);
            let verdict = quasi_zero_test(&q);
            let verdict_json = match &verdict {
                QuasiVerdict::Zero => json!({ "zero": true }),
                QuasiVerdict::NonZero { j, k, value } => json!({ "zero": false, "j": j, "k": k, "value": value }),
            };
            let value = json!({ "command": "quasi-matrix", "m": params.m, "symbol": phi.to_string(), "N": a.n_max, "matrix": q.to_json_value(), "verdict": verdict_json });
            emit(a.common.json, &value, || {
                let tail = match &verdict {
                    QuasiVerdict::Zero => "verdict: zero".to_string(),
                    QuasiVerdict::NonZero { j, k, value } => format!("verdict: nonzero at ({j}, {k}) = {value}"),
                };
                format!("{}\n{tail}", matrix_text(&q))
            })?;
            Ok(Status::from_bool(matches!(verdict, QuasiVerdict::Zero)))
        }
        Command::Criteria { which } => run_criteria(which),
        Command::Sweep { symbol: s, k_range, common } => {
            let params = two_term(&s)?;
            let range = parse_k_range(&k_range)?;
            let report = necessary_sweep(&params, common.params()?.m, range)?;
            emit(common.json, &report, || {
                let mut out = String::from("k  case  holds  lhs  rhs\n");
                for r in &report.reports {
                    out.push_str(&format!("{}  {}  {}  {}  {}\n", r.k, r.case, r.holds, r.lhs, r.rhs));
                }
                match report.first_failing_k {
                    Some(k) => out.push_str(&format!("first failing k: {k}")),
                    None => out.push_str("first failing k: none"),
                }
                out
            })?;
            Ok(Status::from_bool(report.first_failing_k.is_none()))
        }
        Command::VerifyNumeric { symbol: s, poly: p, radial, angular, tol, common } => {
            let (phi, f, params) = (symbol(&s)?, poly(&p, "--poly")?, common.params()?);
            if tol.is_nan() || tol <= 0.0 {
                bail!("--tol must be positive");
            }
            let rule = match (radial, angular) {
                (None, None) => None,
                (Some(r), Some(a)) => Some(QuadratureRule::new(r, a)?),
                _ => bail!("--radial and --angular must be given together"),
            };
            let mut report = compare_exact_numeric(&phi, &f, params.m, rule.as_ref())?;
            report.pass = report.max_rel_err <= tol;
            emit(common.json, &report, || {
                format!(
                    "max_rel_err: {:e}\nnodes_radial: {}\nnodes_angular: {}\nkernel_truncation: {}\npass: {}",
                    report.max_rel_err, report.nodes_radial, report.nodes_angular, report.kernel_truncation, report.pass
                )
            })?;
            Ok(Status::from_bool(report.pass))
        }
        Command::PaperExamples { json } => {
            let suite = paper::run_suite();
            emit(json, &suite, || paper::render_text(&suite))?;
            Ok(Status::from_bool(suite.pass))
        }
    }
}

fn configure_threads() -> Result<()> {
    if let Ok(value) = std::env::var("FOCKCALC_THREADS") {
        let n: usize = value
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| anyhow!("FOCKCALC_THREADS must be a positive integer, got {value:?}"))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return if err.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let outcome = configure_threads().and_then(|()| run(cli.command));
    match outcome {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::CheckFailed) => ExitCode::from(2),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}
