//! Grid sweeps and their CSV, JSON and text renderings, plus the curve,
//! constants and verification reports behind the command-line tool.

mod config;
mod curve;
mod verify;

pub use config::Config;
pub use curve::{compute_curve, Curve, CurveRequest};
pub use verify::{run_verify, CheckGroup, CheckLine, Status, VerifyOptions, VerifyReport};

use std::cmp::Ordering;
use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functionals::AlphaParam;
use crate::phi::PhiSpec;
use crate::series::TruncatedSeries;
use crate::solver::{self, Pipeline, RadiusQuery, RadiusResult, RESIDUAL_LIMIT};

pub const CSV_HEADER: &str = "alpha,beta,r_f,bohr_radius,residual,sharp,notes";

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Grid points are rounded to this many decimals so that `0:0.9:0.1`
/// yields `0.3` rather than `0.30000000000000004`.
const GRID_DECIMALS: i32 = 12;

/// Parses `x` or `a:b:step` into an inclusive, increasing list of values.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>> {
    let num = |s: &str| {
        s.trim()
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| Error::Parse(format!("not a number: {s:?}")))
    };
    let parts: Vec<&str> = spec.split(':').collect();
    match parts.as_slice() {
        [x] => Ok(vec![num(x)?]),
        [a, b, step] => {
            let (a, b, step) = (num(a)?, num(b)?, num(step)?);
            if step <= 0.0 || b < a {
                return Err(Error::Parse(format!(
                    "grid {spec:?} needs a <= b and a positive step"
                )));
            }
            let n = ((b - a) / step + 1e-9).floor() as usize;
            let scale = 10f64.powi(GRID_DECIMALS);
            Ok((0..=n)
                .map(|k| ((a + k as f64 * step) * scale).round() / scale)
                .collect())
        }
        _ => Err(Error::Parse(format!("expected x or a:b:step, got {spec:?}"))),
    }
}

/// Reads coefficients `B_0, B_1, …` from a comma or whitespace separated
/// list, or from a file holding such a list when `arg` names one.
pub fn parse_coeff_list(arg: &str) -> Result<TruncatedSeries> {
    let text = if Path::new(arg).is_file() {
        std::fs::read_to_string(arg)?
    } else {
        arg.to_string()
    };
    let coeffs = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .flat_map(|l| l.split(|c: char| c == ',' || c.is_whitespace()))
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<f64>()
                .map_err(|_| Error::Parse(format!("bad coefficient {s:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    TruncatedSeries::new(coeffs)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub pipeline: Pipeline,
    pub phi: String,
    pub tolerance: f64,
    pub tool_version: String,
    pub timestamp: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub alpha: f64,
    pub beta: Option<f64>,
    pub r_f: f64,
    pub bohr_radius: f64,
    pub residual: f64,
    pub sharp: bool,
    pub notes: String,
}

impl From<&RadiusResult> for Row {
    fn from(r: &RadiusResult) -> Self {
        Self {
            alpha: r.alpha,
            beta: r.beta,
            r_f: r.r_f,
            bohr_radius: r.bohr_radius,
            residual: r.residual,
            sharp: r.sharp,
            notes: r.notes.join("; "),
        }
    }
}

fn row_order(a: &Row, b: &Row) -> Ordering {
    let beta = match (a.beta, b.beta) {
        (Some(x), Some(y)) => x.total_cmp(&y),
        (x, y) => x.is_some().cmp(&y.is_some()),
    };
    beta.then(a.alpha.total_cmp(&b.alpha))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridReport {
    pub meta: Meta,
    pub rows: Vec<Row>,
}

impl GridReport {
    /// Rows must be sorted by `(beta, alpha)` and every residual must be
    /// within the solver's limit.
    pub fn validate(&self) -> Result<()> {
        if self.rows.windows(2).any(|w| row_order(&w[0], &w[1]) == Ordering::Greater) {
            return Err(Error::Parse("rows are not sorted by (beta, alpha)".into()));
        }
        if let Some(row) = self.rows.iter().find(|r| r.residual.is_nan() || r.residual > RESIDUAL_LIMIT) {
            return Err(Error::Residual {
                residual: row.residual,
                limit: RESIDUAL_LIMIT,
            });
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let report: Self = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        report.validate()?;
        Ok(report)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// RFC 4180 style, LF line endings, floats in shortest round-trip form.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::WriterBuilder::new()
            .has_headers(false)
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        let csv_err = |e: csv::Error| Error::Io(e.to_string());
        w.write_record(CSV_HEADER.split(',')).map_err(csv_err)?;
        for row in &self.rows {
            w.serialize(row).map_err(csv_err)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("csv output is utf-8")
    }

    /// Fixed-width table rounded to three decimals.
    pub fn to_text(&self) -> String {
        let m = &self.meta;
        let mut s = format!(
            "pipeline {}  phi {}  tol {:e}  harmonic-bohr {}",
            m.pipeline, m.phi, m.tolerance, m.tool_version
        );
        if let Some(ts) = &m.timestamp {
            let _ = write!(s, "  {ts}");
        }
        s.push('\n');
        let _ = writeln!(s, "{:>6} {:>6} {:>7} {:>7} {:>9} {:>5}  notes", "alpha", "beta", "r_f", "bohr", "residual", "sharp");
        for r in &self.rows {
            let beta = r.beta.map_or("-".to_string(), |b| format!("{b:.3}"));
            let _ = writeln!(
                s,
                "{:>6.3} {:>6} {:>7.3} {:>7.3} {:>9.1e} {:>5}  {}",
                r.alpha,
                beta,
                r.r_f,
                r.bohr_radius,
                r.residual,
                if r.sharp { "yes" } else { "no" },
                r.notes
            );
        }
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
            Format::Text => self.to_text(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
    Text,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            "text" => Ok(Self::Text),
            other => Err(Error::Parse(format!("unknown format {other:?}"))),
        }
    }
}

/// One radius per `(φ, α)` cell.
#[derive(Debug, Clone)]
pub struct TableRequest {
    pub pipeline: Pipeline,
    pub phis: Vec<PhiSpec>,
    pub alphas: Vec<f64>,
    pub tolerance: f64,
    pub order: usize,
    /// Worker threads; 0 lets the pool decide.
    pub jobs: usize,
    pub with_timestamp: bool,
}

impl TableRequest {
    pub fn new(pipeline: Pipeline, phis: Vec<PhiSpec>, alphas: Vec<f64>) -> Self {
        Self {
            pipeline,
            phis,
            alphas,
            tolerance: solver::DEFAULT_TOLERANCE,
            order: crate::series::DEFAULT_ORDER,
            jobs: 0,
            with_timestamp: false,
        }
    }

    fn meta(&self) -> Meta {
        let phi = self.phis.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ");
        Meta {
            pipeline: self.pipeline,
            phi,
            tolerance: self.tolerance,
            tool_version: TOOL_VERSION.to_string(),
            timestamp: self.with_timestamp.then(timestamp),
        }
    }
}

fn timestamp() -> String {
    chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true)
}

/// Solves every cell, in parallel up to `jobs` threads. Rows come back
/// sorted by `(beta, alpha)` regardless of completion order; the first
/// failing cell aborts the table.
pub fn compute_table(req: &TableRequest) -> Result<GridReport> {
    let alphas = req
        .alphas
        .iter()
        .map(|&a| AlphaParam::new(a))
        .collect::<Result<Vec<_>>>()?;
    let cells: Vec<(&PhiSpec, AlphaParam)> = req
        .phis
        .iter()
        .flat_map(|p| alphas.iter().map(move |&a| (p, a)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(req.jobs)
        .build()
        .map_err(|e| Error::InvalidParameter(e.to_string()))?;
    let results: Vec<Result<RadiusResult>> = pool.install(|| {
        cells
            .par_iter()
            .map(|&(phi, alpha)| {
                let q = RadiusQuery::new(phi.clone(), alpha, req.pipeline)
                    .with_tolerance(req.tolerance)
                    .with_order(req.order);
                solver::solve(&q)
            })
            .collect()
    });
    let mut rows = Vec::with_capacity(results.len());
    for r in results {
        rows.push(Row::from(&r?));
    }
    rows.sort_by(row_order);
    let report = GridReport { meta: req.meta(), rows };
    report.validate()?;
    Ok(report)
}

/// A computed constant next to its published rounded value.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstantLine {
    pub name: &'static str,
    pub computed: f64,
    pub published: f64,
    pub delta: f64,
    pub tolerance: f64,
}

impl ConstantLine {
    pub fn within_tolerance(&self) -> bool {
        self.delta.abs() <= self.tolerance
    }
}

/// The five constants of the quadratic preset with their published values.
pub fn poly43_constant_lines() -> Result<Vec<ConstantLine>> {
    let c = solver::poly43_constants()?;
    let line = |name, computed: f64, published: f64, tolerance| ConstantLine {
        name,
        computed,
        published,
        delta: computed - published,
        tolerance,
    };
    Ok(vec![
        line("K(1/3)", c.k_third, 0.425549, 1e-5),
        line("K(-1)", c.k_neg1, -0.598691, 1e-5),
        line("int_0^(1/3) t K'(t) dt", c.int_t_kprime_third, 0.0766, 5e-4),
        line("int_0^1 t K'(-t) dt", c.int_t_kprime_neg, 0.249202, 1e-5),
        line("alpha threshold", c.alpha_threshold, 0.53143, 2e-3),
    ])
}

pub fn render_constants(lines: &[ConstantLine], format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(lines).expect("constants serialize");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut s = String::from("name,computed,published,delta\n");
            for l in lines {
                let _ = writeln!(s, "{},{},{},{}", l.name, l.computed, l.published, l.delta);
            }
            s
        }
        Format::Text => {
            let mut s = format!("{:<24} {:>14} {:>10} {:>10}\n", "constant", "computed", "published", "delta");
            for l in lines {
                let _ = writeln!(s, "{:<24} {:>14.10} {:>10} {:>10.2e}", l.name, l.computed, l.published, l.delta);
            }
            s
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parsing() {
        let g = parse_grid("0:0.9:0.1").unwrap();
        assert_eq!(g.len(), 10);
        assert_eq!(g[3], 0.3);
        assert_eq!(g[9], 0.9);
        assert_eq!(parse_grid("0:0:0.1").unwrap(), vec![0.0]);
        assert_eq!(parse_grid("0.25").unwrap(), vec![0.25]);
        assert!(parse_grid("0:1").is_err());
        assert!(parse_grid("1:0:0.1").is_err());
        assert!(parse_grid("0:1:0").is_err());
        assert!(parse_grid("x").is_err());
    }

    #[test]
    fn coeff_list_parsing() {
        let s = parse_coeff_list("1, 1.3333333333333333, 0.6666666666666666").unwrap();
        assert_eq!(s.order(), 2);
        let s = parse_coeff_list("1 2\n3").unwrap();
        assert_eq!(s.coeffs(), &[1.0, 2.0, 3.0]);
        assert!(parse_coeff_list("1, a").is_err());
    }

    fn mab_table(beta: f64) -> GridReport {
        let req = TableRequest::new(
            Pipeline::Mab,
            vec![PhiSpec::janowski(beta).unwrap()],
            parse_grid("0:0.9:0.1").unwrap(),
        );
        compute_table(&req).unwrap()
    }

    #[test]
    fn table_rows_and_csv() {
        let t = mab_table(0.0);
        assert_eq!(t.rows.len(), 10);
        assert!((t.rows[7].r_f - 0.250).abs() < 1e-3);
        let csv = t.to_csv();
        assert!(csv.starts_with("alpha,beta,r_f,bohr_radius,residual,sharp,notes\n"));
        assert!(!csv.contains('\r'));
        assert_eq!(csv.lines().count(), 11);
        assert_eq!(t.meta.timestamp, None);
    }

    #[test]
    fn json_round_trip_renders_identically() {
        let t = mab_table(0.9);
        assert!((t.rows[0].r_f - 0.815).abs() < 1e-3);
        let back = GridReport::from_json(&t.to_json()).unwrap();
        assert_eq!(back, t);
        assert_eq!(back.to_csv(), t.to_csv());
        assert_eq!(back.to_text(), t.to_text());
    }

    #[test]
    fn rows_are_sorted_by_beta_then_alpha() {
        let req = TableRequest {
            jobs: 3,
            ..TableRequest::new(
                Pipeline::Mab,
                vec![PhiSpec::janowski(0.5).unwrap(), PhiSpec::janowski(0.0).unwrap()],
                vec![0.4, 0.0, 0.2],
            )
        };
        let t = compute_table(&req).unwrap();
        let keys: Vec<(f64, f64)> = t.rows.iter().map(|r| (r.beta.unwrap(), r.alpha)).collect();
        assert_eq!(keys, vec![(0.0, 0.0), (0.0, 0.2), (0.0, 0.4), (0.5, 0.0), (0.5, 0.2), (0.5, 0.4)]);
    }

    #[test]
    fn validation_rejects_bad_rows() {
        let mut t = mab_table(0.5);
        t.rows.swap(0, 1);
        assert!(t.validate().is_err());
        let mut t = mab_table(0.5);
        t.rows[2].residual = 1e-6;
        assert!(t.validate().is_err());
    }

    #[test]
    fn constants_match_published_values() {
        let lines = poly43_constant_lines().unwrap();
        assert_eq!(lines.len(), 5);
        for l in &lines {
            assert!(l.within_tolerance(), "{l:?}");
        }
        let csv = render_constants(&lines, Format::Csv);
        assert_eq!(csv.lines().count(), 6);
    }
}
