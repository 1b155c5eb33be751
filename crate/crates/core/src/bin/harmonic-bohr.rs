use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use harmonic_bohr::report::{
    self, compute_curve, compute_table, parse_coeff_list, parse_grid, poly43_constant_lines,
    render_constants, run_verify, CheckGroup, Config, CurveRequest, Format, GridReport, Meta, Row,
    TableRequest, VerifyOptions,
};
use harmonic_bohr::solver::{self, DEFAULT_TOLERANCE};
use harmonic_bohr::{AlphaParam, Error, Pipeline, PhiSpec, RadiusQuery, RadiusResult};

#[derive(Parser)]
#[command(name = "harmonic-bohr", version, about = "Bohr radii for harmonic mappings with Ma-Minda convex analytic part")]
struct Cli {
    /// key = value file with defaults for tolerance, order and out_dir
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Bohr radius for one (phi, alpha)
    Radius(RadiusArgs),
    /// Radii over an alpha (and beta) grid
    Table(TableArgs),
    /// Samples of D1(r) or G(r) for plotting
    Curve(CurveArgs),
    /// Constants of the quadratic preset next to their published values
    Constants(ConstantsArgs),
    /// Run the verification suite
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum PhiChoice {
    Janowski,
    Poly43,
    Custom,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
    Text,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
            FormatArg::Text => Format::Text,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Layout {
    Wide,
    Split,
}

#[derive(Args)]
struct Common {
    #[arg(long, default_value = "hc")]
    pipeline: Pipeline,
    #[arg(long, value_enum, default_value = "janowski")]
    phi: PhiChoice,
    /// Janowski parameter; a:b:step is accepted by table
    #[arg(long, default_value = "0")]
    beta: String,
    /// B_0, B_1, ... as a comma list or a file holding one
    #[arg(long)]
    coeffs: Option<String>,
    /// Treat --coeffs as psi with psi'(0) < 0 and use phi(z) = psi(-z)
    #[arg(long)]
    non_ma_minda: bool,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    order: Option<usize>,
    /// Defaults to text for radius and csv for table
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Omit the timestamp so repeated runs are byte-identical
    #[arg(long)]
    no_meta: bool,
}

#[derive(Args)]
struct RadiusArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value = "0")]
    alpha: f64,
}

#[derive(Args)]
struct TableArgs {
    #[command(flatten)]
    common: Common,
    /// x or a:b:step
    #[arg(long, default_value = "0:0.9:0.1")]
    alpha: String,
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Re-render a table previously written with --format json
    #[arg(long)]
    from_json: Option<PathBuf>,
}

#[derive(Args)]
struct CurveArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value = "0")]
    alpha: String,
    /// Radii as a:b:step inside [0, 0.999]
    #[arg(long = "r", default_value = "0:0.99:0.01")]
    r: String,
    #[arg(long, value_enum, default_value = "wide")]
    layout: Layout,
}

#[derive(Args)]
struct ConstantsArgs {
    #[arg(long, value_enum, default_value = "poly43")]
    phi: PhiChoice,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Restrict to groups: tables, constants, analytic, equivalence, oracle
    #[arg(long, value_delimiter = ',')]
    only: Vec<String>,
    #[arg(long, hide = true)]
    inject_kprime_fault: Option<String>,
}

enum Failure {
    Usage(String),
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter(_) | Error::InvalidPhi(_) | Error::Parse(_) => Self::Usage(e.to_string()),
            _ => Self::Compute(e.to_string()),
        }
    }
}

fn usage(e: Error) -> Failure {
    Failure::Usage(e.to_string())
}

type Outcome = Result<ExitCode, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let run = || -> Outcome {
        let cfg = match &cli.config {
            Some(p) => Config::load(p).map_err(usage)?,
            None => Config::default(),
        };
        match &cli.command {
            Command::Radius(a) => cmd_radius(a, &cfg),
            Command::Table(a) => cmd_table(a, &cfg),
            Command::Curve(a) => cmd_curve(a, &cfg),
            Command::Constants(a) => cmd_constants(a, &cfg),
            Command::Verify(a) => cmd_verify(a),
        }
    };
    match run() {
        Ok(code) => code,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(m)) => {
            eprintln!("computation failed: {m}");
            ExitCode::from(3)
        }
    }
}

fn tolerance(c: &Common, cfg: &Config) -> f64 {
    c.tol.or(cfg.tolerance).unwrap_or(DEFAULT_TOLERANCE)
}

fn order(c: &Common, cfg: &Config) -> usize {
    c.order.or(cfg.order).unwrap_or(harmonic_bohr::series::DEFAULT_ORDER)
}

fn out_path(out: &Option<PathBuf>, cfg: &Config) -> Option<PathBuf> {
    out.as_ref().map(|p| match &cfg.out_dir {
        Some(dir) if p.is_relative() => dir.join(p),
        _ => p.clone(),
    })
}

fn emit(text: &str, out: Option<PathBuf>) -> Result<(), Failure> {
    match out {
        Some(p) => std::fs::write(&p, text).map_err(|e| Failure::Compute(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn phis(c: &Common, allow_beta_grid: bool) -> Result<Vec<PhiSpec>, Failure> {
    if c.pipeline == Pipeline::Mab && !matches!(c.phi, PhiChoice::Janowski) {
        return Err(Failure::Usage("pipeline mab needs --phi janowski".into()));
    }
    match c.phi {
        PhiChoice::Janowski => {
            let betas = parse_grid(&c.beta).map_err(usage)?;
            if betas.len() > 1 && !allow_beta_grid {
                return Err(Failure::Usage("--beta must be a single value here".into()));
            }
            Ok(betas.into_iter().map(PhiSpec::janowski).collect::<Result<_, _>>().map_err(usage)?)
        }
        PhiChoice::Poly43 => Ok(vec![PhiSpec::poly43()]),
        PhiChoice::Custom => {
            let arg = c
                .coeffs
                .as_deref()
                .ok_or_else(|| Failure::Usage("--phi custom needs --coeffs".into()))?;
            let s = parse_coeff_list(arg).map_err(usage)?;
            let phi = if c.non_ma_minda {
                PhiSpec::custom_from_psi(s)
            } else {
                PhiSpec::custom(s)
            };
            Ok(vec![phi.map_err(usage)?])
        }
    }
}

fn alpha(a: f64) -> Result<AlphaParam, Failure> {
    AlphaParam::new(a).map_err(usage)
}

fn cmd_radius(a: &RadiusArgs, cfg: &Config) -> Outcome {
    let c = &a.common;
    let phi = phis(c, false)?.remove(0);
    let query = RadiusQuery::new(phi.clone(), alpha(a.alpha)?, c.pipeline)
        .with_tolerance(tolerance(c, cfg))
        .with_order(order(c, cfg));
    let res = solver::solve(&query)?;
    let text = match c.format.map_or(Format::Text, Format::from) {
        Format::Text => radius_block(&res, &phi),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&res).expect("result serializes");
            s.push('\n');
            s
        }
        Format::Csv => {
            let report = GridReport {
                meta: Meta {
                    pipeline: res.pipeline,
                    phi: phi.to_string(),
                    tolerance: query.tolerance,
                    tool_version: report::TOOL_VERSION.to_string(),
                    timestamp: None,
                },
                rows: vec![Row::from(&res)],
            };
            report.to_csv()
        }
    };
    emit(&text, out_path(&c.out, cfg))?;
    Ok(ExitCode::SUCCESS)
}

fn radius_block(r: &RadiusResult, phi: &PhiSpec) -> String {
    let yes = |b: bool| if b { "yes" } else { "no" };
    let mut s = format!(
        "pipeline      {}\nphi           {}\nalpha         {}\n",
        r.pipeline, phi, r.alpha
    );
    if let Some(b) = r.beta {
        s += &format!("beta          {b}\n");
    }
    s += &format!(
        "r_f           {:.10}\nbohr_radius   {:.10}\ncap applied   {}\nsharp         {}\nresidual      {:.1e}\nbracket       [{:.12}, {:.12}]\nL(1, alpha)   {:.10}\n",
        r.r_f,
        r.bohr_radius,
        yes(r.cap_applied),
        yes(r.sharp),
        r.residual,
        r.bracket.0,
        r.bracket.1,
        r.distance_lower_bound
    );
    if let Some(n) = r.order {
        s += &format!("order         {n}\n");
    }
    for n in &r.notes {
        s += &format!("note          {n}\n");
    }
    s
}

fn cmd_table(a: &TableArgs, cfg: &Config) -> Outcome {
    let c = &a.common;
    let report = match &a.from_json {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            GridReport::from_json(&text).map_err(usage)?
        }
        None => {
            let req = TableRequest {
                tolerance: tolerance(c, cfg),
                order: order(c, cfg),
                jobs: a.jobs,
                with_timestamp: !c.no_meta,
                ..TableRequest::new(c.pipeline, phis(c, true)?, parse_grid(&a.alpha).map_err(usage)?)
            };
            for &al in &req.alphas {
                alpha(al)?;
            }
            compute_table(&req)?
        }
    };
    emit(&report.render(c.format.map_or(Format::Csv, Format::from)), out_path(&c.out, cfg))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_curve(a: &CurveArgs, cfg: &Config) -> Outcome {
    let c = &a.common;
    let alphas = parse_grid(&a.alpha).map_err(usage)?;
    for &al in &alphas {
        alpha(al)?;
    }
    let rs = parse_grid(&a.r).map_err(usage)?;
    if let Some(r) = rs.iter().find(|r| !(0.0..=solver::SCAN_END).contains(*r)) {
        return Err(Failure::Usage(format!("radius {r} outside [0, {}]", solver::SCAN_END)));
    }
    let req = CurveRequest {
        pipeline: c.pipeline,
        phi: phis(c, false)?.remove(0),
        alphas,
        rs,
        order: order(c, cfg),
    };
    let curve = compute_curve(&req)?;
    match a.layout {
        Layout::Wide => emit(&curve.to_csv_wide(), out_path(&c.out, cfg))?,
        Layout::Split => {
            let dir = out_path(&c.out, cfg)
                .or_else(|| cfg.out_dir.clone())
                .ok_or_else(|| Failure::Usage("--layout split needs --out DIR".into()))?;
            std::fs::create_dir_all(&dir).map_err(|e| Failure::Compute(e.to_string()))?;
            for (k, (al, _)) in curve.series.iter().enumerate() {
                emit(&curve.to_csv_single(k), Some(split_file(&dir, *al)))?;
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn split_file(dir: &Path, alpha: f64) -> PathBuf {
    dir.join(format!("alpha_{alpha}.csv"))
}

fn cmd_constants(a: &ConstantsArgs, cfg: &Config) -> Outcome {
    if !matches!(a.phi, PhiChoice::Poly43) {
        return Err(Failure::Usage("published constants exist only for --phi poly43".into()));
    }
    let lines = poly43_constant_lines()?;
    emit(&render_constants(&lines, a.format.into()), out_path(&a.out, cfg))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(a: &VerifyArgs) -> Outcome {
    let only = a
        .only
        .iter()
        .map(|s| s.parse::<CheckGroup>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(usage)?;
    let kprime_fault = match &a.inject_kprime_fault {
        Some(spec) => {
            let (n, d) = spec
                .split_once(':')
                .and_then(|(n, d)| Some((n.parse().ok()?, d.parse().ok()?)))
                .ok_or_else(|| Failure::Usage("expected N:DELTA".into()))?;
            Some((n, d))
        }
        None => None,
    };
    let rep = run_verify(&VerifyOptions { only, kprime_fault });
    print!("{}", rep.render());
    Ok(if rep.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
