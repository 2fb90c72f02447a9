//! The `mz-lab` command-line tool.
//!
//! Subcommands wrap the library operations one to one and print
//! deterministic reports: human `key: value` lines by default, machine
//! `key<TAB>value` lines under `--machine`. Exit codes follow one
//! contract everywhere: 0 success, 1 property violated or witness found,
//! 2 input error, 3 inconclusive (a cap, bound or truncation order was
//! too small). Any flag value starting with `@` is read from the named
//! file.

pub mod repro;

use std::ffi::OsString;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::locfin::{self, ClosureStatus, NormalizeOutcome};
use crate::operators::{GradedPieces, Operator};
use crate::parse::{
    eval_laurent, eval_localized, eval_series, parse_expr, parse_operator_spec, Expr,
    OperatorKind, OperatorSpec,
};
use crate::report::Report;
use crate::rings::{Carrier, FieldChar, LaurentPoly, MultiIndex, Scalar, TruncSeries};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CarrierKind {
    Laurent,
    Series,
    Localized,
}

#[derive(Parser, Debug)]
#[command(
    name = "mz-lab",
    version,
    about = "Exact-arithmetic workbench for Mathieu-Zhao space experiments",
    disable_help_subcommand = true
)]
struct Cli {
    /// Emit machine-readable key<TAB>value lines.
    #[arg(long, global = true)]
    machine: bool,
    /// Field characteristic: 0 for Q, or a prime p for F_p.
    #[arg(long = "char", global = true)]
    characteristic: Option<u64>,
    /// Number of variables (inferred from the inputs when omitted).
    #[arg(long, global = true)]
    nvars: Option<usize>,
    /// Truncation order for series carriers (default 32).
    #[arg(long, global = true)]
    order: Option<i64>,
    /// Dimension cap for closure searches (default 64).
    #[arg(long, global = true)]
    cap: Option<usize>,
    /// Carrier ring for expression evaluation (default laurent).
    #[arg(long, global = true, value_enum)]
    carrier: Option<CarrierKind>,
    /// Config file with `key = value` lines mirroring the global flags.
    #[arg(long, global = true)]
    config: Option<String>,
    #[command(subcommand)]
    command: Command,
}

/// Defaults loaded from a `key = value` config file. Flags given on the
/// command line always win.
#[derive(Debug, Default)]
struct ConfigDefaults {
    machine: Option<bool>,
    characteristic: Option<u64>,
    nvars: Option<usize>,
    order: Option<i64>,
    cap: Option<usize>,
    carrier: Option<CarrierKind>,
}

fn parse_config(text: &str) -> Result<ConfigDefaults> {
    let mut out = ConfigDefaults::default();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(Error::InvalidInput(format!(
                "config line {}: expected `key = value`, got `{raw}`",
                lineno + 1
            )));
        };
        let key = key.trim();
        let value = value.trim();
        let bad = |what: &str| {
            Error::InvalidInput(format!(
                "config line {}: bad {what} value `{value}`",
                lineno + 1
            ))
        };
        match key {
            "machine" => out.machine = Some(value.parse().map_err(|_| bad("machine"))?),
            "char" => out.characteristic = Some(value.parse().map_err(|_| bad("char"))?),
            "nvars" => out.nvars = Some(value.parse().map_err(|_| bad("nvars"))?),
            "order" => out.order = Some(value.parse().map_err(|_| bad("order"))?),
            "cap" => out.cap = Some(value.parse().map_err(|_| bad("cap"))?),
            "carrier" => {
                out.carrier = Some(match value {
                    "laurent" => CarrierKind::Laurent,
                    "series" => CarrierKind::Series,
                    "localized" => CarrierKind::Localized,
                    _ => return Err(bad("carrier")),
                })
            }
            other => {
                return Err(Error::InvalidInput(format!(
                    "config line {}: unknown key `{other}`",
                    lineno + 1
                )))
            }
        }
    }
    Ok(out)
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Apply an operator to an element.
    Apply {
        /// Operator spec: `derivation: D(x1)=...`, `endo: phi(x1)=...`
        /// or `ederivation: phi(x1)=...`.
        #[arg(long)]
        op: String,
        /// Element in the canonical expression syntax.
        #[arg(long)]
        f: String,
    },
    /// Apply the m-th iterate of an operator.
    Iterate {
        #[arg(long)]
        op: String,
        #[arg(long)]
        f: String,
        #[arg(long)]
        m: u64,
    },
    /// Close the span of the iterates of an element under an operator.
    Cyclic {
        #[arg(long)]
        op: String,
        #[arg(long)]
        f: String,
    },
    /// D-degree of an element under a locally nilpotent derivation.
    Ddeg {
        #[arg(long)]
        op: String,
        #[arg(long)]
        f: String,
    },
    /// Search for phi^i = phi^j with 1 <= i < j.
    Periodicity {
        #[arg(long)]
        op: String,
        /// Largest iterate to store and compare.
        #[arg(long, default_value_t = 24)]
        imax: u64,
    },
    /// Jordan-Chevalley decomposition of a rational matrix.
    Jc {
        /// Matrix file: first line n, then n rows of n rationals.
        #[arg(long)]
        matrix: String,
    },
    /// Factor the characteristic polynomial and certify root-of-unity
    /// orders.
    Cyclo {
        #[arg(long)]
        matrix: String,
    },
    /// Scan powers of an element for membership in a coefficient-kernel
    /// subspace.
    Radical {
        #[arg(long)]
        f: String,
        /// Subspace spec, e.g. `kernel-support: {(0,0)}`; defaults to
        /// the constant-term kernel.
        #[arg(long)]
        support: Option<String>,
        #[arg(long, default_value_t = 1)]
        m0: u64,
        #[arg(long)]
        mmax: Option<u64>,
    },
    /// Test the Mathieu-Zhao property for multipliers against a radical
    /// element.
    Mz {
        /// The radical element a.
        #[arg(long)]
        f: String,
        /// Multiplier b (repeatable).
        #[arg(long = "b", required = true)]
        multipliers: Vec<String>,
        #[arg(long)]
        support: Option<String>,
        #[arg(long)]
        mmax: Option<u64>,
    },
    /// Image membership for diagonal or bounded operators.
    Image {
        /// Diagonal endomorphism images, `phi(x1)=2*x1,...`: tests the
        /// image of the E-derivation 1 - phi coefficientwise.
        #[arg(long, conflicts_with_all = ["deriv_c", "op"])]
        endo: Option<String>,
        /// Diagonal derivation weights in Q^d, rows per variable
        /// separated by `;`, e.g. `1,0;0,1`.
        #[arg(long = "deriv-c", conflicts_with = "op")]
        deriv_c: Option<String>,
        /// General operator spec for the bounded search (needs --bound).
        #[arg(long, requires = "bound")]
        op: Option<String>,
        /// Support-degree bound for the exact linear solve.
        #[arg(long)]
        bound: Option<i64>,
        #[arg(long)]
        f: String,
    },
    /// Graded decomposition of a Laurent derivation under a weight
    /// vector.
    Grade {
        #[arg(long)]
        op: String,
        /// Strictly positive weight vector, e.g. `1,1`.
        #[arg(long)]
        weights: String,
    },
    /// Compositional inverse of a series system (formal inverse function
    /// theorem).
    Inverse {
        /// Components separated by `;`, each vanishing at 0.
        #[arg(long)]
        maps: String,
    },
    /// Eigen-coordinate normalization of a locally finite endomorphism
    /// of k\[\[x\]\].
    Normalize {
        #[arg(long)]
        op: String,
    },
    /// Run reproduction cases with golden outputs.
    Repro {
        /// Case identifier; see `repro --list`.
        case: Option<String>,
        /// Run every case with default parameters.
        #[arg(long)]
        all: bool,
        /// List the registered cases.
        #[arg(long)]
        list: bool,
        /// Skip the golden comparison (exploring non-default parameters).
        #[arg(long)]
        no_golden: bool,
        /// Prime for the characteristic-p cases.
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        mmax: Option<u64>,
        #[arg(long)]
        imax: Option<u64>,
    },
}

/// Parses argv and runs; returns the rendered output and the exit code.
pub fn execute<I, T>(args: I) -> (String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            return (e.render().to_string(), code);
        }
    };
    let config = match &cli.config {
        Some(path) => {
            let text = match std::fs::read_to_string(path) {
                Ok(t) => t,
                Err(e) => {
                    let err = Error::InvalidInput(format!("cannot read `{path}`: {e}"));
                    return (format!("error: {err}\n"), err.exit_code());
                }
            };
            match parse_config(&text) {
                Ok(c) => c,
                Err(e) => return (format!("error: {e}\n"), e.exit_code()),
            }
        }
        None => ConfigDefaults::default(),
    };
    let machine = cli.machine || config.machine.unwrap_or(false);
    match dispatch(cli, &config) {
        Ok((report, code)) => (report.render(machine), code),
        Err(e) => (format!("error: {e}\n"), e.exit_code()),
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

struct Ctx {
    nvars: usize,
    ch: FieldChar,
    order: i64,
    cap: usize,
    carrier: CarrierKind,
}

fn resolve_arg(value: &str) -> Result<String> {
    if let Some(path) = value.strip_prefix('@') {
        std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidInput(format!("cannot read `{path}`: {e}")))
    } else {
        Ok(value.to_string())
    }
}

fn characteristic_of(raw: u64) -> Result<FieldChar> {
    if raw == 0 {
        Ok(FieldChar::Zero)
    } else if raw >= 1 << 31 {
        Err(Error::InvalidInput(format!(
            "characteristic {raw} is out of range; primes below 2^31 are supported"
        )))
    } else if is_prime(raw) {
        Ok(FieldChar::Prime(raw))
    } else {
        Err(Error::NotPrime(raw))
    }
}

fn make_ctx(cli: &Cli, config: &ConfigDefaults, min_nvars: usize) -> Result<Ctx> {
    let nvars = cli
        .nvars
        .or(config.nvars)
        .unwrap_or_else(|| min_nvars.max(1));
    if nvars < min_nvars {
        return Err(Error::InvalidInput(format!(
            "--nvars {nvars} is smaller than the largest variable index {min_nvars}"
        )));
    }
    Ok(Ctx {
        nvars,
        ch: characteristic_of(cli.characteristic.or(config.characteristic).unwrap_or(0))?,
        order: cli.order.or(config.order).unwrap_or(32),
        cap: cli.cap.or(config.cap).unwrap_or(64),
        carrier: cli
            .carrier
            .or(config.carrier)
            .unwrap_or(CarrierKind::Laurent),
    })
}

fn dispatch(cli: Cli, config: &ConfigDefaults) -> Result<(Report, i32)> {
    match &cli.command {
        Command::Apply { op, f } => {
            let (spec, expr, ctx) = operator_and_element(&cli, config, op, f)?;
            cmd_apply(&spec, &expr, &ctx, 1, "apply")
        }
        Command::Iterate { op, f, m } => {
            let (spec, expr, ctx) = operator_and_element(&cli, config, op, f)?;
            cmd_apply(&spec, &expr, &ctx, *m, "iterate")
        }
        Command::Cyclic { op, f } => {
            let (spec, expr, ctx) = operator_and_element(&cli, config, op, f)?;
            cmd_cyclic(&spec, &expr, &ctx)
        }
        Command::Ddeg { op, f } => {
            let (spec, expr, ctx) = operator_and_element(&cli, config, op, f)?;
            cmd_ddeg(&spec, &expr, &ctx)
        }
        Command::Periodicity { op, imax } => {
            let spec = parse_operator_spec(&resolve_arg(op)?, None)?;
            let ctx = make_ctx(&cli, config, spec.min_nvars())?;
            cmd_periodicity(&spec, &ctx, *imax)
        }
        Command::Jc { matrix } => {
            let text = resolve_arg(matrix)?;
            let ctx = make_ctx(&cli, config, 1)?;
            cmd_jc(&text, &ctx)
        }
        Command::Cyclo { matrix } => {
            let text = resolve_arg(matrix)?;
            let ctx = make_ctx(&cli, config, 1)?;
            cmd_cyclo(&text, &ctx)
        }
        Command::Radical {
            f,
            support,
            m0,
            mmax,
        } => {
            let expr = parse_expr(&resolve_arg(f)?)?;
            let ctx = make_ctx(&cli, config, expr.min_nvars())?;
            cmd_radical(&expr, support.as_deref(), *m0, mmax.unwrap_or(50), &ctx)
        }
        Command::Mz {
            f,
            multipliers,
            support,
            mmax,
        } => {
            let a = parse_expr(&resolve_arg(f)?)?;
            let bs: Vec<Expr> = multipliers
                .iter()
                .map(|b| parse_expr(&resolve_arg(b)?))
                .collect::<Result<_>>()?;
            let min_nvars = bs
                .iter()
                .map(Expr::min_nvars)
                .chain([a.min_nvars()])
                .max()
                .unwrap();
            let ctx = make_ctx(&cli, config, min_nvars)?;
            cmd_mz(&a, &bs, support.as_deref(), mmax.unwrap_or(50), &ctx)
        }
        Command::Image {
            endo,
            deriv_c,
            op,
            bound,
            f,
        } => {
            let expr = parse_expr(&resolve_arg(f)?)?;
            cmd_image(&cli, config, endo.as_deref(), deriv_c.as_deref(), op.as_deref(), *bound, &expr)
        }
        Command::Grade { op, weights } => {
            let spec = parse_operator_spec(&resolve_arg(op)?, Some(OperatorKind::Derivation))?;
            let ctx = make_ctx(&cli, config, spec.min_nvars())?;
            cmd_grade(&spec, weights, &ctx)
        }
        Command::Inverse { maps } => {
            let parts: Vec<Expr> = resolve_arg(maps)?
                .split(';')
                .map(|s| parse_expr(s.trim()))
                .collect::<Result<_>>()?;
            let ctx = make_ctx(&cli, config, parts.iter().map(Expr::min_nvars).max().unwrap_or(1))?;
            cmd_inverse(&parts, &ctx)
        }
        Command::Normalize { op } => {
            let spec = parse_operator_spec(&resolve_arg(op)?, Some(OperatorKind::Endomorphism))?;
            let ctx = make_ctx(&cli, config, spec.min_nvars())?;
            cmd_normalize(&spec, &ctx)
        }
        Command::Repro {
            case,
            all,
            list,
            no_golden,
            p,
            mmax,
            imax,
        } => {
            let params = repro::ReproParams {
                p: *p,
                mmax: *mmax,
                order: cli.order,
                cap: cli.cap,
                imax: *imax,
            };
            repro::cmd_repro(case.as_deref(), *all, *list, *no_golden, &params)
        }
    }
}

fn operator_and_element(
    cli: &Cli,
    config: &ConfigDefaults,
    op: &str,
    f: &str,
) -> Result<(OperatorSpec, Expr, Ctx)> {
    let spec = parse_operator_spec(&resolve_arg(op)?, None)?;
    let expr = parse_expr(&resolve_arg(f)?)?;
    let ctx = make_ctx(cli, config, spec.min_nvars().max(expr.min_nvars()))?;
    Ok((spec, expr, ctx))
}

fn kind_str(kind: OperatorKind) -> &'static str {
    match kind {
        OperatorKind::Derivation => "derivation",
        OperatorKind::Endomorphism => "endomorphism",
        OperatorKind::EDerivation => "ederivation",
    }
}

fn cmd_apply(
    spec: &OperatorSpec,
    expr: &Expr,
    ctx: &Ctx,
    m: u64,
    label: &str,
) -> Result<(Report, i32)> {
    let mut report = Report::new();
    report.push("command", label);
    report.push("operator", kind_str(spec.kind));
    if m != 1 {
        report.push("m", m);
    }
    match ctx.carrier {
        CarrierKind::Laurent => {
            let op = spec.to_laurent_operator(ctx.nvars, ctx.ch)?;
            let f = eval_laurent(expr, ctx.nvars, ctx.ch)?;
            report.push("input", &f);
            let result = crate::operators::iterate_operator(&op, m, &f)?;
            report.push("result", &result);
        }
        CarrierKind::Series => {
            let op = spec.to_series_operator(ctx.nvars, ctx.ch, ctx.order)?;
            let f = eval_series(expr, ctx.nvars, ctx.ch, ctx.order)?;
            report.push("input", &f);
            let result = crate::operators::iterate_operator(&op, m, &f)?;
            report.push("result", &result);
            report.push("order", result.order());
        }
        CarrierKind::Localized => {
            return Err(Error::InvalidInput(
                "apply/iterate on the localized carrier is not supported; \
                 use the laurent or series carrier"
                    .into(),
            ))
        }
    }
    Ok((report, 0))
}

fn cmd_cyclic(spec: &OperatorSpec, expr: &Expr, ctx: &Ctx) -> Result<(Report, i32)> {
    let mut report = Report::new();
    report.push("command", "cyclic");
    report.push("operator", kind_str(spec.kind));
    report.push("cap", ctx.cap);
    let status = match ctx.carrier {
        CarrierKind::Laurent => {
            let op = spec.to_laurent_operator(ctx.nvars, ctx.ch)?;
            let f = eval_laurent(expr, ctx.nvars, ctx.ch)?;
            report.push("element", &f);
            let space = locfin::cyclic_space(&op, &f, ctx.cap)?;
            report.push("dim", space.dim());
            report.push("status", space.status.as_str());
            space.status
        }
        CarrierKind::Series => {
            let op = spec.to_series_operator(ctx.nvars, ctx.ch, ctx.order)?;
            let f = eval_series(expr, ctx.nvars, ctx.ch, ctx.order)?;
            report.push("element", &f);
            report.push("order", ctx.order);
            let space = locfin::cyclic_space(&op, &f, ctx.cap)?;
            report.push("dim", space.dim());
            report.push("status", space.status.as_str());
            space.status
        }
        CarrierKind::Localized => {
            return Err(Error::InvalidInput(
                "cyclic spaces run on the laurent or series carrier".into(),
            ))
        }
    };
    let code = match status {
        ClosureStatus::Closed => 0,
        ClosureStatus::ExceededCap => 3,
    };
    Ok((report, code))
}

fn cmd_ddeg(spec: &OperatorSpec, expr: &Expr, ctx: &Ctx) -> Result<(Report, i32)> {
    if spec.kind != OperatorKind::Derivation {
        return Err(Error::InvalidInput(
            "the D-degree is defined for derivations".into(),
        ));
    }
    let mut report = Report::new();
    report.push("command", "ddeg");
    match ctx.carrier {
        CarrierKind::Laurent => {
            let op = spec.to_laurent_operator(ctx.nvars, ctx.ch)?;
            let Operator::Derivation(d) = op else {
                unreachable!()
            };
            let f = eval_laurent(expr, ctx.nvars, ctx.ch)?;
            report.push("element", &f);
            let deg = locfin::d_degree(&d, &f, ctx.cap)?;
            report.push("ddeg", deg);
        }
        CarrierKind::Series => {
            let op = spec.to_series_operator(ctx.nvars, ctx.ch, ctx.order)?;
            let Operator::Derivation(d) = op else {
                unreachable!()
            };
            let f = eval_series(expr, ctx.nvars, ctx.ch, ctx.order)?;
            report.push("element", &f);
            let deg = locfin::d_degree(&d, &f, ctx.cap)?;
            report.push("ddeg", deg);
        }
        CarrierKind::Localized => {
            return Err(Error::InvalidInput(
                "the D-degree runs on the laurent or series carrier".into(),
            ))
        }
    }
    Ok((report, 0))
}

fn cmd_periodicity(spec: &OperatorSpec, ctx: &Ctx, imax: u64) -> Result<(Report, i32)> {
    if spec.kind == OperatorKind::Derivation {
        return Err(Error::InvalidInput(
            "periodicity search takes an endomorphism".into(),
        ));
    }
    let mut report = Report::new();
    report.push("command", "periodicity");
    report.push("i_max", imax);
    let cert = match ctx.carrier {
        CarrierKind::Laurent => {
            let op = spec.to_laurent_operator(ctx.nvars, ctx.ch)?;
            match op {
                Operator::Endomorphism(phi) => locfin::detect_periodicity(&phi, imax)?,
                Operator::EDerivation(e) => locfin::detect_periodicity(e.phi(), imax)?,
                _ => unreachable!(),
            }
        }
        CarrierKind::Series => {
            report.push("order", ctx.order);
            let op = spec.to_series_operator(ctx.nvars, ctx.ch, ctx.order)?;
            match op {
                Operator::Endomorphism(phi) => locfin::detect_periodicity(&phi, imax)?,
                Operator::EDerivation(e) => locfin::detect_periodicity(e.phi(), imax)?,
                _ => unreachable!(),
            }
        }
        CarrierKind::Localized => {
            return Err(Error::InvalidInput(
                "periodicity search runs on the laurent or series carrier".into(),
            ))
        }
    };
    match cert {
        Some(c) => {
            report.push("i", c.i);
            report.push("j", c.j);
            report.push("scope", c.scope.as_str());
            Ok((report, 0))
        }
        None => {
            report.push("result", "none");
            report.push(
                "note",
                "no pair found up to i_max; raise --imax or --order and retry",
            );
            Ok((report, 3))
        }
    }
}

fn push_matrix(report: &mut Report, label: &str, m: &Mat) {
    for i in 0..m.n_rows() {
        let row: Vec<String> = (0..m.n_cols()).map(|j| m.get(i, j).to_string()).collect();
        report.push(format!("{label}.{i}"), row.join(" "));
    }
}

fn cmd_jc(matrix_text: &str, ctx: &Ctx) -> Result<(Report, i32)> {
    if ctx.ch != FieldChar::Zero {
        return Err(Error::InvalidInput(
            "the Jordan-Chevalley decomposition runs over Q".into(),
        ));
    }
    let a = crate::jordan::parse_matrix(matrix_text, ctx.ch)?;
    let jc = crate::jordan::jc_decompose(&a)?;
    let mut report = Report::new();
    report.push("command", "jc");
    report.push("dim", a.n_rows());
    push_matrix(&mut report, "S", &jc.semisimple);
    push_matrix(&mut report, "N", &jc.nilpotent);
    report.push("sum_check", jc.semisimple.add(&jc.nilpotent) == a);
    report.push(
        "commute_check",
        jc.semisimple.mul(&jc.nilpotent) == jc.nilpotent.mul(&jc.semisimple),
    );
    report.push(
        "nilpotent_check",
        crate::jordan::nilpotence_index(&jc.nilpotent).is_ok(),
    );
    let minpoly_s = crate::jordan::min_poly(&jc.semisimple)?;
    report.push("semisimple_min_poly", &minpoly_s);
    report.push("squarefree_check", minpoly_s.is_squarefree());
    Ok((report, 0))
}

fn cmd_cyclo(matrix_text: &str, ctx: &Ctx) -> Result<(Report, i32)> {
    if ctx.ch != FieldChar::Zero {
        return Err(Error::InvalidInput(
            "cyclotomic certification runs over Q".into(),
        ));
    }
    let a = crate::jordan::parse_matrix(matrix_text, ctx.ch)?;
    let cyclo = crate::jordan::roots_of_unity_orders(&a)?;
    let mut report = Report::new();
    report.push("command", "cyclo");
    report.push("char_poly", &cyclo.char_poly);
    for (i, (f, mult, class)) in cyclo.factors.iter().enumerate() {
        report.push(
            format!("factor.{i}"),
            format!("{f} | multiplicity {mult} | {}", class.as_str()),
        );
    }
    match cyclo.order_lcm {
        Some(d) => report.push("d", d),
        None => report.push("d", "undefined (non-root-of-unity eigenvalue present)"),
    }
    let blocks = crate::jordan::jordan_block_check(&a)?;
    report.push(
        "blocks",
        if blocks.all_clean {
            "trivial at every nonzero eigenvalue".to_string()
        } else {
            let bad: Vec<String> = blocks
                .entries
                .iter()
                .filter(|(_, _, clean)| !clean)
                .map(|(f, mult, _)| format!("{f} with minimal-polynomial multiplicity {mult}"))
                .collect();
            format!("nontrivial: {}", bad.join("; "))
        },
    );
    report.push(
        "block_context",
        "matrix-level check; the local-domain reading applies when the matrix          represents an endomorphism action on an invariant subspace",
    );
    let code = if cyclo.has_non_cyclotomic() { 1 } else { 0 };
    // the (N, d) certificate rides along when available
    match crate::jordan::eventual_period_certificate(&a)? {
        crate::jordan::PeriodOutcome::Certificate { n_index, d } => {
            report.push("certificate", format!("A^(N+d) = A^N with N={n_index}, d={d}"));
        }
        crate::jordan::PeriodOutcome::Refusal { reason } => {
            report.push("refusal", reason);
        }
    }
    Ok((report, code))
}

fn subspace_of(support: Option<&str>, nvars: usize) -> Result<crate::mzspace::SubspaceSpec> {
    match support {
        None => Ok(crate::mzspace::SubspaceSpec::constant_term_kernel(nvars)),
        Some(text) => crate::mzspace::SubspaceSpec::parse(&resolve_arg(text)?, nvars),
    }
}

fn cmd_radical(
    expr: &Expr,
    support: Option<&str>,
    m0: u64,
    mmax: u64,
    ctx: &Ctx,
) -> Result<(Report, i32)> {
    let spec = subspace_of(support, ctx.nvars)?;
    let mut report = Report::new();
    report.push("command", "radical");
    report.push("subspace", &spec);
    report.push("m0", m0);
    report.push("m1", mmax);
    let outcome = match ctx.carrier {
        CarrierKind::Laurent => {
            let a = eval_laurent(expr, ctx.nvars, ctx.ch)?;
            report.push("element", &a);
            crate::mzspace::radical_membership(&a, &spec, m0, mmax)?
        }
        CarrierKind::Series => {
            let a = eval_series(expr, ctx.nvars, ctx.ch, ctx.order)?;
            report.push("element", &a);
            report.push("order", ctx.order);
            crate::mzspace::radical_membership(&a, &spec, m0, mmax)?
        }
        CarrierKind::Localized => {
            let a = eval_localized(expr, ctx.nvars, ctx.ch, ctx.order)?;
            report.push("element", &a);
            report.push("order", ctx.order);
            crate::mzspace::radical_membership(&a, &spec, m0, mmax)?
        }
    };
    match outcome.verdict {
        crate::mzspace::RadicalVerdict::InRadicalUpToBound => {
            report.push("verdict", "in_radical_up_to_bound");
            Ok((report, 0))
        }
        crate::mzspace::RadicalVerdict::NotInRadical { witness_m } => {
            report.push("verdict", "not_in_radical");
            report.push("witness_m", witness_m);
            Ok((report, 1))
        }
    }
}

fn render_witnesses(witnesses: &[u64]) -> String {
    witnesses
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn cmd_mz(
    a_expr: &Expr,
    b_exprs: &[Expr],
    support: Option<&str>,
    mmax: u64,
    ctx: &Ctx,
) -> Result<(Report, i32)> {
    let spec = subspace_of(support, ctx.nvars)?;
    let mut report = Report::new();
    report.push("command", "mz");
    report.push("subspace", &spec);
    report.push("m_max", mmax);
    let mut any_violation = false;
    macro_rules! run_mz {
        ($eval:expr) => {{
            let a = $eval(a_expr)?;
            report.push("element", &a);
            let bs: Vec<_> = b_exprs.iter().map($eval).collect::<Result<_>>()?;
            let outcome = crate::mzspace::mz_falsify(&a, &spec, &bs, mmax)?;
            for (i, (b, verdict)) in outcome.per_b.iter().enumerate() {
                report.push(format!("b.{i}"), b);
                match verdict {
                    crate::mzspace::MzVerdict::TailInM { n_b } => {
                        report.push(format!("verdict.{i}"), format!("tail_in_M N_b={n_b}"));
                    }
                    crate::mzspace::MzVerdict::Violated { witnesses } => {
                        any_violation = true;
                        report.push(
                            format!("verdict.{i}"),
                            format!("violated witnesses={}", render_witnesses(witnesses)),
                        );
                    }
                }
            }
        }};
    }
    match ctx.carrier {
        CarrierKind::Laurent => {
            run_mz!(|e: &Expr| eval_laurent(e, ctx.nvars, ctx.ch))
        }
        CarrierKind::Series => {
            report.push("order", ctx.order);
            run_mz!(|e: &Expr| eval_series(e, ctx.nvars, ctx.ch, ctx.order))
        }
        CarrierKind::Localized => {
            report.push("order", ctx.order);
            run_mz!(|e: &Expr| eval_localized(e, ctx.nvars, ctx.ch, ctx.order))
        }
    }
    Ok((report, if any_violation { 1 } else { 0 }))
}

fn diagonal_lambdas(spec: &OperatorSpec, nvars: usize) -> Result<Vec<num_rational::BigRational>> {
    let images: Vec<LaurentPoly> = spec
        .entries
        .iter()
        .map(|e| eval_laurent(e, nvars, FieldChar::Zero))
        .collect::<Result<_>>()?;
    images
        .iter()
        .enumerate()
        .map(|(i, im)| {
            im.as_unit()
                .filter(|(idx, _)| *idx == &MultiIndex::unit(nvars, i))
                .and_then(|(_, c)| c.as_rational().cloned())
                .ok_or_else(|| {
                    Error::InvalidInput(format!(
                        "--endo expects a diagonal map; phi(x{}) = {im} is not \
                         a scalar multiple of x{}",
                        i + 1,
                        i + 1
                    ))
                })
        })
        .collect()
}

fn parse_weight_rows(text: &str) -> Result<Vec<Vec<num_rational::BigRational>>> {
    text.split(';')
        .map(|row| {
            row.split(',')
                .map(|tok| {
                    let s = Scalar::parse(tok.trim(), FieldChar::Zero)?;
                    Ok(s.as_rational().unwrap().clone())
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect()
}

fn cmd_image(
    cli: &Cli,
    config: &ConfigDefaults,
    endo: Option<&str>,
    deriv_c: Option<&str>,
    op: Option<&str>,
    bound: Option<i64>,
    f_expr: &Expr,
) -> Result<(Report, i32)> {
    let mut report = Report::new();
    report.push("command", "image");
    if let Some(endo_text) = endo {
        let spec = parse_operator_spec(
            &resolve_arg(endo_text)?,
            Some(OperatorKind::Endomorphism),
        )?;
        let ctx = make_ctx(cli, config, spec.min_nvars().max(f_expr.min_nvars()))?;
        let lambdas = diagonal_lambdas(&spec, ctx.nvars)?;
        let f = eval_laurent(f_expr, ctx.nvars, FieldChar::Zero)?;
        report.push("operator", "ederivation of the diagonal endomorphism");
        report.push("f", &f);
        match crate::mzspace::image_membership_diagonal_endo(&lambdas, &f)? {
            crate::mzspace::DiagImageOutcome::Member { preimage } => {
                report.push("verdict", "member");
                report.push("preimage", &preimage);
                Ok((report, 0))
            }
            crate::mzspace::DiagImageOutcome::NonMember { obstruction } => {
                report.push("verdict", "non_member");
                report.push("obstruction", multiindex_set(&obstruction));
                Ok((report, 1))
            }
        }
    } else if let Some(c_text) = deriv_c {
        let weights = parse_weight_rows(&resolve_arg(c_text)?)?;
        let ctx = make_ctx(cli, config, weights.len().max(f_expr.min_nvars()))?;
        if weights.len() != ctx.nvars {
            return Err(Error::NvarsMismatch(weights.len(), ctx.nvars));
        }
        let f = eval_laurent(f_expr, ctx.nvars, FieldChar::Zero)?;
        report.push("operator", "diagonal derivation with Q^d weights");
        report.push("f", &f);
        match crate::mzspace::image_membership_diagonal_derivation(&weights, &f)? {
            crate::mzspace::DerivImageOutcome::Member { preimage } => {
                report.push("verdict", "member");
                for (i, (a, num, den)) in preimage.terms.iter().enumerate() {
                    let den_str = den
                        .iter()
                        .map(|r| r.to_string())
                        .collect::<Vec<_>>()
                        .join(",");
                    report.push(
                        format!("preimage_term.{i}"),
                        format!("x^{a} coefficient {num} / <c,a>=({den_str})"),
                    );
                }
                Ok((report, 0))
            }
            crate::mzspace::DerivImageOutcome::NonMember { obstruction } => {
                report.push("verdict", "non_member");
                report.push("obstruction", multiindex_set(&obstruction));
                Ok((report, 1))
            }
        }
    } else if let (Some(op_text), Some(bound)) = (op, bound) {
        let spec = parse_operator_spec(&resolve_arg(op_text)?, None)?;
        let ctx = make_ctx(cli, config, spec.min_nvars().max(f_expr.min_nvars()))?;
        let operator = spec.to_laurent_operator(ctx.nvars, ctx.ch)?;
        let f = eval_laurent(f_expr, ctx.nvars, ctx.ch)?;
        report.push("operator", kind_str(spec.kind));
        report.push("bound", bound);
        report.push("f", &f);
        match crate::mzspace::image_membership_bounded(&operator, &f, bound)? {
            crate::mzspace::BoundedImageOutcome::Member { preimage } => {
                report.push("verdict", "member");
                report.push("preimage", &preimage);
                Ok((report, 0))
            }
            crate::mzspace::BoundedImageOutcome::NoSolutionWithinBound {
                unconditional, ..
            } => {
                report.push("verdict", "no_solution_within_bound");
                report.push(
                    "strength",
                    if unconditional {
                        "unconditional (graded operator pins the solution support)"
                    } else {
                        "bounded evidence"
                    },
                );
                Ok((report, 1))
            }
        }
    } else {
        Err(Error::InvalidInput(
            "image needs --endo, --deriv-c, or --op with --bound".into(),
        ))
    }
}

fn multiindex_set(indices: &[MultiIndex]) -> String {
    let strings: Vec<String> = indices.iter().map(MultiIndex::to_string).collect();
    format!("{{{}}}", strings.join(","))
}

fn derivation_spec_string<C: Carrier>(coeffs: &[C]) -> String {
    let parts: Vec<String> = coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| format!("D(x{})={c}", i + 1))
        .collect();
    parts.join(", ")
}

fn cmd_grade(spec: &OperatorSpec, weights: &str, ctx: &Ctx) -> Result<(Report, i32)> {
    if spec.kind != OperatorKind::Derivation {
        return Err(Error::InvalidInput(
            "graded decomposition takes a derivation".into(),
        ));
    }
    let weight_vec: Vec<i64> = weights
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| Error::InvalidInput(format!("bad weight `{t}`")))
        })
        .collect::<Result<_>>()?;
    if weight_vec.len() != ctx.nvars {
        return Err(Error::NvarsMismatch(weight_vec.len(), ctx.nvars));
    }
    let op = spec.to_laurent_operator(ctx.nvars, ctx.ch)?;
    let Operator::Derivation(d) = op else {
        unreachable!()
    };
    let pieces: GradedPieces =
        crate::operators::graded_decompose(&d, &MultiIndex::new(weight_vec))?;
    let mut report = Report::new();
    report.push("command", "grade");
    report.push("weights", &pieces.weights);
    report.push("components", pieces.components.len());
    match pieces.min_index {
        Some(n) => report.push("N", n),
        None => report.push("N", "undefined (zero derivation)"),
    }
    for (i, di) in &pieces.components {
        report.push(format!("component.{i}"), derivation_spec_string(di.coeffs()));
    }
    Ok((report, 0))
}

fn cmd_inverse(parts: &[Expr], ctx: &Ctx) -> Result<(Report, i32)> {
    let n = parts.len();
    if ctx.nvars != n {
        return Err(Error::InvalidInput(format!(
            "{n} components given, but the system needs one per variable \
             (nvars = {})",
            ctx.nvars
        )));
    }
    let system: Vec<TruncSeries> = parts
        .iter()
        .map(|e| eval_series(e, n, ctx.ch, ctx.order))
        .collect::<Result<_>>()?;
    let inverse = crate::rings::formal_inverse(&system, ctx.order)?;
    let mut report = Report::new();
    report.push("command", "inverse");
    report.push("order", ctx.order);
    for (i, f) in system.iter().enumerate() {
        report.push(format!("F.{}", i + 1), f);
    }
    for (i, g) in inverse.iter().enumerate() {
        report.push(format!("G.{}", i + 1), g);
    }
    report.push("roundtrip_check", true);
    Ok((report, 0))
}

fn cmd_normalize(spec: &OperatorSpec, ctx: &Ctx) -> Result<(Report, i32)> {
    if spec.kind == OperatorKind::Derivation {
        return Err(Error::InvalidInput(
            "normalization takes an endomorphism of k[[x]]".into(),
        ));
    }
    let op = spec.to_series_operator(ctx.nvars, ctx.ch, ctx.order)?;
    let phi = match op {
        Operator::Endomorphism(phi) => phi,
        Operator::EDerivation(e) => e.phi().clone(),
        _ => unreachable!(),
    };
    let mut report = Report::new();
    report.push("command", "normalize");
    report.push("order", ctx.order);
    match locfin::normalize_endomorphism(&phi, ctx.order, ctx.cap)? {
        NormalizeOutcome::Normalized(norm) => {
            report.push("d", norm.d);
            report.push("nilpotent_index", norm.nilpotent_index);
            for (i, c) in norm.eigenvalues.iter().enumerate() {
                report.push(format!("c.{}", i + 1), c);
            }
            for (i, y) in norm.coordinates.iter().enumerate() {
                report.push(format!("y.{}", i + 1), y);
            }
            for (i, g) in norm.inverse.iter().enumerate() {
                report.push(format!("y_inverse.{}", i + 1), g);
            }
            report.push("coordinates_certified", true);
            Ok((report, 0))
        }
        NormalizeOutcome::NotLocallyFinite { reason } => {
            report.push("verdict", "not_locally_finite");
            report.push("reason", reason);
            Ok((report, 1))
        }
        NormalizeOutcome::UnsupportedOverQ { reason } => {
            report.push("verdict", "unsupported_over_Q");
            report.push("reason", reason);
            Ok((report, 2))
        }
    }
}
