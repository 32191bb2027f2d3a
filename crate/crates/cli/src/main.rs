use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use tailorder::fixtures::{parse_copula, parse_diagonal, parse_tdf};
use tailorder::output::{self, direction_header, num, Table};
use tailorder::{
    check_cone_order, check_diagonal_order, check_loc, check_tdo, check_too, default_directions,
    estimate_tdf, find_cone_epsilon, find_loc_epsilon, repro, validate_copula, validate_diagonal,
    validate_semilinear_diagonal, validate_tdf, verify, ConeSpec, Copula, DirectionalVerdict,
    GridConfig, LimitSchedule, OrderStatus, OrderVerdict, TailDepFunction, ValidityReport,
};

const EXIT_FAILS: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_DIMENSION: u8 = 3;
const EXIT_INDISTINGUISHABLE: u8 = 4;

/// Copula families, tail dependence functions and tail orders.
///
/// Copulas are given as shorthand (`clayton:2`, `marshall-olkin:0.5`,
/// `lev:fig1-parabola`, ...), as inline JSON descriptors, or as paths to
/// JSON descriptor files.
#[derive(Debug, Parser)]
#[command(name = "tailorder", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Debug, Args)]
struct Global {
    /// Grid points per axis for audits and order checks.
    #[arg(long, global = true, value_name = "N")]
    grid: Option<usize>,
    /// Order-check tolerance.
    #[arg(long, global = true, value_name = "T")]
    tau: Option<f64>,
    /// Neighbourhood size for loc and cone checks (default: halving search).
    #[arg(long, global = true, value_name = "E")]
    eps: Option<f64>,
    /// Limit schedule as s0,ratio,steps.
    #[arg(long, global = true, value_name = "S0,RATIO,STEPS")]
    schedule: Option<String>,
    /// Write output here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Output format (each subcommand has its own default).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a copula at one or more points.
    Eval {
        copula: String,
        /// Comma-separated point, repeatable.
        #[arg(long = "at", required = true, value_name = "U1,U2,...")]
        points: Vec<String>,
    },
    /// Estimate the tail dependence function along directions.
    Tdf {
        copula: String,
        /// Comma-separated direction, repeatable.
        #[arg(long, value_name = "W1,W2,...", conflicts_with = "simplex")]
        w: Vec<String>,
        /// Estimate on the bivariate simplex grid (t, 1 − t), t = i/N.
        #[arg(long, value_name = "N")]
        simplex: Option<usize>,
    },
    /// Check an order between two objects.
    Order(OrderArgs),
    /// Run a verification suite: all, expansion, archimedean, ev, diagonal, cone, spearman.
    Verify { suite: String },
    /// Reproduce a counterexample: mo-clayton, fig1-tdfs, glued-joe.
    Repro { name: String },
    /// Audit a copula, tail dependence function or diagonal section.
    Validate {
        /// Copula (default), TDF or diagonal, see the flags.
        object: String,
        /// Treat the argument as a tail dependence function.
        #[arg(long, conflicts_with = "diagonal")]
        tdf: bool,
        /// Treat the argument as a diagonal section.
        #[arg(long)]
        diagonal: bool,
        /// With --diagonal, add the two semilinear ratio checks.
        #[arg(long, requires = "diagonal")]
        semilinear: bool,
    },
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("relation").required(true))]
struct OrderArgs {
    /// Tail dependence order of the two tail dependence functions.
    #[arg(long, group = "relation")]
    tdo: bool,
    /// Local lower orthant order.
    #[arg(long, group = "relation")]
    loc: bool,
    /// Tail orthant order along rays.
    #[arg(long, group = "relation")]
    too: bool,
    /// Order on the cone {min w ≥ c‖w‖₁} near the origin.
    #[arg(long, group = "relation", value_name = "C")]
    cone: Option<f64>,
    /// Order of diagonal sections near 0.
    #[arg(long, group = "relation")]
    diagonal: bool,
    /// Ray directions for --too (default: a simplex fan), repeatable.
    #[arg(long, value_name = "W1,W2,...")]
    w: Vec<String>,
    first: String,
    second: String,
}

/// Failure of the command itself, as opposed to a failing verdict.
fn error_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<tailorder::Error>() {
        Some(tailorder::Error::DimensionMismatch { .. }) => EXIT_DIMENSION,
        _ => EXIT_INPUT,
    }
}

fn status_code(s: OrderStatus) -> u8 {
    match s {
        OrderStatus::Holds | OrderStatus::HoldsStrictly => 0,
        OrderStatus::Fails => EXIT_FAILS,
        OrderStatus::Indistinguishable => EXIT_INDISTINGUISHABLE,
    }
}

fn main() -> ExitCode {
    env_logger::Builder::new().filter_level(log::LevelFilter::Warn).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(error_code(&e))
        }
    }
}

struct Ctx<'a> {
    global: &'a Global,
    grid: GridConfig,
    schedule: LimitSchedule,
}

impl Ctx<'_> {
    fn format(&self, default: Format) -> Format {
        self.global.format.unwrap_or(default)
    }

    fn emit(&self, text: &str) -> Result<()> {
        match &self.global.out {
            Some(p) => output::write_atomic(p, text).with_context(|| format!("writing {}", p.display())),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

fn run(cli: &Cli) -> Result<u8> {
    let g = &cli.global;
    let mut grid = GridConfig::default();
    if let Some(n) = g.grid {
        grid.resolution = n;
    }
    if let Some(t) = g.tau {
        grid.tau = t;
    }
    let grid = grid.validated()?;
    let schedule = match &g.schedule {
        Some(s) => parse_schedule(s)?,
        None => LimitSchedule::default(),
    };
    let ctx = Ctx { global: g, grid, schedule };
    match &cli.command {
        Command::Eval { copula, points } => cmd_eval(&ctx, copula, points),
        Command::Tdf { copula, w, simplex } => cmd_tdf(&ctx, copula, w, *simplex),
        Command::Order(args) => cmd_order(&ctx, args),
        Command::Verify { suite } => cmd_verify(&ctx, suite),
        Command::Repro { name } => cmd_repro(&ctx, name),
        Command::Validate { object, tdf, diagonal, semilinear } => {
            cmd_validate(&ctx, object, *tdf, *diagonal, *semilinear)
        }
    }
}

fn parse_schedule(s: &str) -> Result<LimitSchedule> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [s0, ratio, steps] = parts.as_slice() else {
        bail!("--schedule expects s0,ratio,steps, got `{s}`");
    };
    let s0: f64 = s0.parse().with_context(|| format!("bad s0 `{s0}`"))?;
    let ratio: f64 = ratio.parse().with_context(|| format!("bad ratio `{ratio}`"))?;
    let steps: usize = steps.parse().with_context(|| format!("bad step count `{steps}`"))?;
    Ok(LimitSchedule::new(s0, ratio, steps)?)
}

fn parse_vector(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|x| x.trim().parse::<f64>().with_context(|| format!("`{x}` is not a number in `{s}`")))
        .collect()
}

/// Shorthand, inline JSON, or a path to a JSON descriptor file.
fn load_text(arg: &str) -> Result<String> {
    let path = Path::new(arg);
    if arg.ends_with(".json") || path.is_file() {
        return std::fs::read_to_string(path).with_context(|| format!("reading {arg}"));
    }
    Ok(arg.to_string())
}

fn load_copula(arg: &str) -> Result<Copula> {
    let text = load_text(arg)?;
    parse_copula(&text).with_context(|| format!("copula `{arg}`"))
}

fn cmd_eval(ctx: &Ctx, copula: &str, points: &[String]) -> Result<u8> {
    let c = load_copula(copula)?;
    let mut table = Table::new(direction_header(c.dim()).iter().map(|h| h.replace('w', "u")).chain(["value".into()]));
    let mut json = Vec::new();
    for p in points {
        let u = parse_vector(p)?;
        let v = c.eval(&u)?;
        table.push(u.iter().map(|&x| num(x)).chain([num(v)]).collect());
        json.push(serde_json::json!({ "point": u, "value": v }));
    }
    match ctx.format(Format::Csv) {
        Format::Csv => ctx.emit(&table.to_csv()?)?,
        Format::Json => ctx.emit(&output::to_json(&json)?)?,
    }
    Ok(0)
}

fn cmd_tdf(ctx: &Ctx, copula: &str, w: &[String], simplex: Option<usize>) -> Result<u8> {
    let c = load_copula(copula)?;
    let dirs: Vec<Vec<f64>> = match simplex {
        Some(n) if n >= 1 => {
            if c.dim() != 2 {
                return Err(tailorder::Error::DimensionMismatch { expected: 2, got: c.dim() }.into());
            }
            (0..=n).map(|i| i as f64 / n as f64).map(|t| vec![t, 1.0 - t]).collect()
        }
        Some(_) => bail!("--simplex needs at least one division"),
        None if w.is_empty() => vec![vec![1.0; c.dim()]],
        None => w.iter().map(|s| parse_vector(s)).collect::<Result<_>>()?,
    };
    let mut table = Table::new(direction_header(c.dim()).into_iter().chain(["s", "ratio", "diff", "converged"].map(String::from)));
    let mut json = Vec::new();
    for d in &dirs {
        let est = estimate_tdf(&c, d, &ctx.schedule)?;
        output::append_estimate(&mut table, d, &est);
        json.push(serde_json::json!({
            "direction": d,
            "value": est.value,
            "error_estimate": est.error_estimate,
            "converged": est.converged,
            "trace": est.trace,
        }));
    }
    match ctx.format(Format::Csv) {
        Format::Csv => ctx.emit(&table.to_csv()?)?,
        Format::Json => ctx.emit(&output::to_json(&json)?)?,
    }
    Ok(0)
}

/// A TDF fixture name, or the tail dependence function of a copula: its
/// closed form where known, otherwise the numerical limit.
fn load_tdf(arg: &str, sched: &LimitSchedule) -> Result<TailDepFunction> {
    if let Ok(t) = parse_tdf(arg) {
        return Ok(t);
    }
    let c = load_copula(arg)?;
    Ok(c.analytic_tdf().unwrap_or_else(|| TailDepFunction::estimated(c, *sched)))
}

fn verdict_table(v: &OrderVerdict) -> Table {
    let mut t = Table::new(["status", "margin", "grid", "tolerance", "epsilon", "witness_point", "witness_first", "witness_second"]);
    let w = v.witness.as_ref();
    t.push(vec![
        format!("{:?}", v.status),
        num(v.margin),
        v.grid.to_string(),
        num(v.tolerance),
        v.epsilon.map(num).unwrap_or_default(),
        w.map(|w| w.point.iter().map(|&x| num(x)).collect::<Vec<_>>().join(";")).unwrap_or_default(),
        w.map(|w| num(w.first)).unwrap_or_default(),
        w.map(|w| num(w.second)).unwrap_or_default(),
    ]);
    t
}

fn cmd_order(ctx: &Ctx, a: &OrderArgs) -> Result<u8> {
    let g = &ctx.grid;
    let eps = ctx.global.eps;
    if a.too {
        return cmd_too(ctx, a);
    }
    let verdict = if a.tdo {
        let (l1, l2) = (load_tdf(&a.first, &ctx.schedule)?, load_tdf(&a.second, &ctx.schedule)?);
        check_tdo(&l1, &l2, g)?
    } else if a.diagonal {
        let d = |s: &str| -> Result<_> { Ok(parse_diagonal(&load_text(s)?)?) };
        check_diagonal_order(&d(&a.first)?, &d(&a.second)?, g)?
    } else {
        let (c1, c2) = (load_copula(&a.first)?, load_copula(&a.second)?);
        match (a.cone, eps) {
            (Some(c), Some(e)) => check_cone_order(&c1, &c2, ConeSpec::new(c, c1.dim())?, e, g)?,
            (Some(c), None) => find_cone_epsilon(&c1, &c2, ConeSpec::new(c, c1.dim())?, g)?,
            (None, Some(e)) => check_loc(&c1, &c2, e, g)?,
            (None, None) => find_loc_epsilon(&c1, &c2, g)?,
        }
    };
    match ctx.format(Format::Json) {
        Format::Json => ctx.emit(&output::to_json(&verdict)?)?,
        Format::Csv => ctx.emit(&verdict_table(&verdict).to_csv()?)?,
    }
    Ok(status_code(verdict.status))
}

/// Exit status over several rays: any failure fails, all-indistinguishable
/// is indistinguishable, otherwise the order holds.
fn combined_status(vs: &[DirectionalVerdict]) -> OrderStatus {
    if vs.iter().any(|v| v.verdict.status == OrderStatus::Fails) {
        OrderStatus::Fails
    } else if vs.iter().all(|v| v.verdict.status == OrderStatus::Indistinguishable) {
        OrderStatus::Indistinguishable
    } else {
        OrderStatus::Holds
    }
}

fn cmd_too(ctx: &Ctx, a: &OrderArgs) -> Result<u8> {
    let (c1, c2) = (load_copula(&a.first)?, load_copula(&a.second)?);
    let dirs: Vec<Vec<f64>> = if a.w.is_empty() {
        default_directions(c1.dim())
    } else {
        a.w.iter().map(|s| parse_vector(s)).collect::<Result<_>>()?
    };
    let verdicts = check_too(&c1, &c2, &dirs, &ctx.schedule, ctx.grid.tau)?;
    match ctx.format(Format::Json) {
        Format::Json => ctx.emit(&output::to_json(&verdicts)?)?,
        Format::Csv => {
            let mut t = Table::new(
                direction_header(c1.dim()).into_iter().chain(["s", "c1", "c2", "gap", "status"].map(String::from)),
            );
            let scales = ctx.schedule.points()?;
            for v in &verdicts {
                let w = &v.direction;
                let top = w.iter().copied().fold(0.0, f64::max);
                for &s in scales.iter().filter(|&&s| s * top <= 1.0) {
                    let u: Vec<f64> = w.iter().map(|x| s * x).collect();
                    let (x, y) = (c1.eval(&u)?, c2.eval(&u)?);
                    let mut row: Vec<String> = w.iter().map(|&x| num(x)).collect();
                    row.extend([num(s), num(x), num(y), num(y - x), format!("{:?}", v.verdict.status)]);
                    t.push(row);
                }
            }
            ctx.emit(&t.to_csv()?)?
        }
    }
    Ok(status_code(combined_status(&verdicts)))
}

fn cmd_verify(ctx: &Ctx, suite: &str) -> Result<u8> {
    let rows = verify::run(suite, &ctx.grid)?;
    match ctx.format(Format::Csv) {
        Format::Json => ctx.emit(&output::to_json(&rows)?)?,
        Format::Csv => {
            let mut t = Table::new(["suite", "check", "passed", "detail"]);
            for r in &rows {
                t.push(vec![r.suite.into(), r.check.clone(), r.passed.to_string(), r.detail.clone()]);
            }
            ctx.emit(&t.to_csv()?)?
        }
    }
    Ok(if rows.iter().all(|r| r.passed) { 0 } else { EXIT_FAILS })
}

fn cmd_repro(ctx: &Ctx, name: &str) -> Result<u8> {
    let r = repro::run(name)?;
    match ctx.format(Format::Csv) {
        Format::Csv => {
            ctx.emit(&r.table.to_csv()?)?;
            for c in &r.checks {
                eprintln!("{}: {} ({})", c.check, if c.passed { "pass" } else { "FAIL" }, c.detail);
            }
        }
        Format::Json => ctx.emit(&output::to_json(&serde_json::json!({
            "name": r.name,
            "checks": r.checks,
            "verdicts": r.verdicts,
            "rows": r.table.to_json_rows(),
        }))?)?,
    }
    Ok(if r.passed() { 0 } else { EXIT_FAILS })
}

fn cmd_validate(ctx: &Ctx, object: &str, tdf: bool, diagonal: bool, semilinear: bool) -> Result<u8> {
    let report: ValidityReport = if tdf {
        validate_tdf(&load_tdf(object, &ctx.schedule)?, &ctx.grid)
    } else if diagonal {
        let d = parse_diagonal(&load_text(object)?)?;
        if semilinear {
            validate_semilinear_diagonal(&d)
        } else {
            validate_diagonal(&d)
        }
    } else {
        validate_copula(&load_copula(object)?, &ctx.grid)
    };
    match ctx.format(Format::Json) {
        Format::Json => ctx.emit(&output::to_json(&report)?)?,
        Format::Csv => {
            let mut t = Table::new(["check", "passed", "worst_violation", "witness", "detail"]);
            for c in &report.checks {
                t.push(vec![
                    c.name.clone(),
                    c.passed.to_string(),
                    num(c.worst_violation),
                    c.witness.as_ref().map(|w| w.iter().map(|&x| num(x)).collect::<Vec<_>>().join(";")).unwrap_or_default(),
                    c.detail.clone(),
                ]);
            }
            ctx.emit(&t.to_csv()?)?
        }
    }
    Ok(if report.passed() { 0 } else { EXIT_FAILS })
}
