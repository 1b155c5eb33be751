//! The `verify` suite: published table cells, published constants,
//! analytic roots, series-versus-closed-form agreement and the oracle
//! property checks.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::extremal::ExtremalPair;
use crate::functionals::{coeff_bounds, janowski_l_closed, janowski_r_closed, AlphaParam, Functionals};
use crate::oracle::{brute_majorant_sum, check_subordination_majorant, ode_residual_fd, sample_extremal_harmonic, FD_STEP};
use crate::phi::PhiSpec;
use crate::series::TruncatedSeries;
use crate::solver::{self, bohr_radius_mab, Pipeline, RadiusQuery, DEFAULT_TOLERANCE};

use super::poly43_constant_lines;

pub const TABLE_TOLERANCE: f64 = 1.5e-3;
pub const ODE_TOLERANCE: f64 = 1e-6;
pub const EQUIVALENCE_TOLERANCE: f64 = 1e-8;
pub const MAJORANT_TOLERANCE: f64 = 1e-12;
pub const BOHR_EQUALITY_TOLERANCE: f64 = 1e-6;
pub const COEFF_CHAIN_TOLERANCE: f64 = 1e-5;
const ANALYTIC_TOLERANCE: f64 = 1e-9;

const RANDOM_SERIES: usize = 100;
const RANDOM_SEED: u64 = 0x5eed_b0b7;

/// Published radii for `β = 0, 0.5, 0.9` at `α = 0, 0.1, …, 0.9`.
pub const PUBLISHED_TABLES: [(f64, [f64; 10]); 3] = [
    (0.0, [0.333, 0.321, 0.308, 0.296, 0.284, 0.273, 0.261, 0.250, 0.238, 0.227]),
    (0.5, [0.5, 0.476, 0.452, 0.43, 0.408, 0.387, 0.366, 0.345, 0.321, 0.305]),
    (0.9, [0.815, 0.757, 0.705, 0.656, 0.61, 0.568, 0.527, 0.488, 0.451, 0.415]),
];

/// Printed value that disagrees with the closed-form root; reported but
/// not judged.
const INFORMATIONAL_CELL: (f64, usize) = (0.5, 8);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CheckGroup {
    Tables,
    Constants,
    Analytic,
    Equivalence,
    Oracle,
}

impl CheckGroup {
    pub const ALL: [CheckGroup; 5] = [
        Self::Tables,
        Self::Constants,
        Self::Analytic,
        Self::Equivalence,
        Self::Oracle,
    ];
}

impl fmt::Display for CheckGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Tables => "tables",
            Self::Constants => "constants",
            Self::Analytic => "analytic",
            Self::Equivalence => "equivalence",
            Self::Oracle => "oracle",
        })
    }
}

impl FromStr for CheckGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|g| g.to_string() == s)
            .ok_or_else(|| Error::Parse(format!("unknown check group {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Info,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Pass => "PASS",
            Self::Fail => "FAIL",
            Self::Info => "INFO",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckLine {
    pub group: CheckGroup,
    pub name: String,
    pub measured: f64,
    pub expected: f64,
    /// `|measured − expected|`, or the violation for one-sided checks.
    pub delta: f64,
    pub limit: f64,
    pub status: Status,
    pub detail: Option<String>,
}

impl CheckLine {
    fn compare(group: CheckGroup, name: String, measured: f64, expected: f64, limit: f64) -> Self {
        let delta = (measured - expected).abs();
        Self {
            group,
            name,
            measured,
            expected,
            delta,
            limit,
            status: if delta <= limit { Status::Pass } else { Status::Fail },
            detail: None,
        }
    }

    fn failed(group: CheckGroup, name: String, err: &Error) -> Self {
        Self {
            group,
            name,
            measured: f64::NAN,
            expected: f64::NAN,
            delta: f64::NAN,
            limit: f64::NAN,
            status: Status::Fail,
            detail: Some(err.to_string()),
        }
    }

    fn or_failed(group: CheckGroup, name: String, r: Result<Self>) -> Self {
        r.unwrap_or_else(|e| Self::failed(group, name, &e))
    }
}

impl fmt::Display for CheckLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {:<11} {:<58}", self.status, self.group.to_string(), self.name)?;
        match &self.detail {
            Some(d) if self.measured.is_nan() => write!(f, " error: {d}"),
            _ => {
                write!(
                    f,
                    " measured {:>13.6e} expected {:>13.6e} delta {:.2e} (limit {:.1e})",
                    self.measured, self.expected, self.delta, self.limit
                )?;
                if let Some(d) = &self.detail {
                    write!(f, " {d}")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct VerifyOptions {
    /// Groups to run; empty runs everything.
    pub only: Vec<CheckGroup>,
    /// Adds `delta` to `K'` coefficient `n` before the ODE checks. Lets
    /// tests confirm the suite notices a broken recurrence.
    #[doc(hidden)]
    pub kprime_fault: Option<(usize, f64)>,
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub lines: Vec<CheckLine>,
    pub elapsed: Duration,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckLine> {
        self.lines.iter().filter(|l| l.status == Status::Fail)
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for l in &self.lines {
            s.push_str(&l.to_string());
            s.push('\n');
        }
        let failed = self.failures().count();
        s.push_str(&format!(
            "{} checks, {} failed, {:.2}s: {}\n",
            self.lines.len(),
            failed,
            self.elapsed.as_secs_f64(),
            if failed == 0 { "PASS" } else { "FAIL" }
        ));
        s
    }
}

pub fn run_verify(opts: &VerifyOptions) -> VerifyReport {
    let start = Instant::now();
    let wanted = |g| opts.only.is_empty() || opts.only.contains(&g);
    let mut lines = Vec::new();
    if wanted(CheckGroup::Tables) {
        lines.extend(table_checks());
    }
    if wanted(CheckGroup::Constants) {
        lines.extend(constant_checks());
    }
    if wanted(CheckGroup::Analytic) {
        lines.extend(analytic_checks());
    }
    if wanted(CheckGroup::Equivalence) {
        lines.extend(equivalence_checks());
    }
    if wanted(CheckGroup::Oracle) {
        lines.extend(oracle_checks(opts.kprime_fault));
    }
    VerifyReport {
        lines,
        elapsed: start.elapsed(),
    }
}

fn al(a: f64) -> AlphaParam {
    AlphaParam::new(a).expect("alpha in [0, 1]")
}

fn table_checks() -> Vec<CheckLine> {
    let g = CheckGroup::Tables;
    let mut out = Vec::new();
    for (beta, cells) in PUBLISHED_TABLES {
        for (i, &published) in cells.iter().enumerate() {
            let alpha = i as f64 / 10.0;
            let name = format!("r_f beta={beta} alpha={alpha}");
            let line = bohr_radius_mab(al(alpha), beta, DEFAULT_TOLERANCE).map(|res| {
                let mut l = CheckLine::compare(g, name.clone(), res.r_f, published, TABLE_TOLERANCE);
                if (beta, i) == INFORMATIONAL_CELL {
                    l.status = Status::Info;
                    l.detail = Some("printed value disagrees with the closed-form root".into());
                }
                l
            });
            out.push(CheckLine::or_failed(g, name, line));
        }
    }
    out
}

fn constant_checks() -> Vec<CheckLine> {
    let g = CheckGroup::Constants;
    match poly43_constant_lines() {
        Ok(lines) => lines
            .into_iter()
            .map(|c| CheckLine::compare(g, c.name.to_string(), c.computed, c.published, c.tolerance))
            .collect(),
        Err(e) => vec![CheckLine::failed(g, "poly43 constants".into(), &e)],
    }
}

fn analytic_checks() -> Vec<CheckLine> {
    let g = CheckGroup::Analytic;
    let mut out = Vec::new();
    for (beta, expected) in [(0.0, 1.0 / 3.0), (0.5, 0.5)] {
        let name = format!("mab root alpha=0 beta={beta}");
        let l = bohr_radius_mab(al(0.0), beta, DEFAULT_TOLERANCE)
            .map(|r| CheckLine::compare(g, name.clone(), r.r_f, expected, ANALYTIC_TOLERANCE));
        out.push(CheckLine::or_failed(g, name, l));
    }
    let name = "hc bohr radius janowski(0) alpha=0".to_string();
    let l = PhiSpec::janowski(0.0)
        .and_then(|phi| solver::bohr_radius_hc(&RadiusQuery::new(phi, al(0.0), Pipeline::Hc)))
        .map(|r| CheckLine::compare(g, name.clone(), r.bohr_radius, 1.0 / 3.0, ANALYTIC_TOLERANCE));
    out.push(CheckLine::or_failed(g, name, l));
    out
}

fn equivalence_checks() -> Vec<CheckLine> {
    let g = CheckGroup::Equivalence;
    let mut out = Vec::new();
    for beta in [0.0, 0.5, 0.9] {
        let name = format!("growth series vs closed beta={beta}");
        let l = (|| {
            let phi = PhiSpec::janowski(beta)?;
            let f = Functionals::at_order(&phi, 1024)?;
            let mut worst = 0.0_f64;
            for a in [0.0, 0.5, 1.0] {
                for r in [0.1, 0.3, 0.5, 0.8] {
                    worst = worst.max((f.growth_r(al(a), r)? - janowski_r_closed(al(a), beta, r)?).abs());
                    worst = worst.max((f.growth_l(al(a), r)? - janowski_l_closed(al(a), beta, r)?).abs());
                }
                worst = worst.max((f.growth_l(al(a), 1.0)? - janowski_l_closed(al(a), beta, 1.0)?).abs());
            }
            Ok(CheckLine::compare(g, name.clone(), worst, 0.0, EQUIVALENCE_TOLERANCE))
        })();
        out.push(CheckLine::or_failed(g, name, l));
    }
    let name = "R_Cc = R_C for janowski(0), r <= 0.8".to_string();
    let l = (|| {
        let f = Functionals::at_order(&PhiSpec::janowski(0.0)?, 1024)?;
        let mut worst = 0.0_f64;
        for a in [0.0, 0.5, 1.0] {
            for k in 1..=16 {
                let r = 0.05 * k as f64;
                worst = worst.max((f.conjugate(al(a), r)?.r_cc - f.bohr_majorant_rc(al(a), r)?).abs());
            }
        }
        Ok(CheckLine::compare(g, name.clone(), worst, 0.0, EQUIVALENCE_TOLERANCE))
    })();
    out.push(CheckLine::or_failed(g, name, l));
    out
}

const ODE_POINTS: [f64; 8] = [-0.6, -0.45, -0.3, -0.15, 0.15, 0.3, 0.45, 0.6];

fn presets() -> Vec<PhiSpec> {
    let mut v: Vec<PhiSpec> = [0.0, 0.5, 0.9]
        .iter()
        .map(|&b| PhiSpec::janowski(b).expect("valid beta"))
        .collect();
    v.push(PhiSpec::poly43());
    v
}

fn oracle_checks(fault: Option<(usize, f64)>) -> Vec<CheckLine> {
    let g = CheckGroup::Oracle;
    let mut out = Vec::new();

    for phi in presets() {
        let name = format!("ODE residual (finite differences) {phi}");
        let l = (|| {
            let mut pair = ExtremalPair::build(&phi, 256)?;
            if let Some((n, delta)) = fault {
                pair = pair.with_corrupted_kprime(n, pair.kprime().coeff(n) + delta)?;
            }
            let mut worst = 0.0_f64;
            for t in ODE_POINTS {
                worst = worst.max(ode_residual_fd(&pair, &phi, t, FD_STEP)?);
            }
            Ok(CheckLine::compare(g, name.clone(), worst, 0.0, ODE_TOLERANCE))
        })();
        out.push(CheckLine::or_failed(g, name, l));
    }

    out.push(random_majorant_check());

    for phi in presets() {
        let name = format!("H = zK' shift {phi}");
        let l = ExtremalPair::build(&phi, 256).map(|pair| {
            let h = pair.h();
            let mut worst = h.coeff(0).abs();
            for n in 0..=pair.order() {
                worst = worst.max((h.coeff(n + 1) - pair.kprime().coeff(n)).abs());
            }
            CheckLine::compare(g, name.clone(), worst, 0.0, 0.0)
        });
        out.push(CheckLine::or_failed(g, name, l));
    }

    let grid_phis = vec![PhiSpec::janowski(0.0), PhiSpec::janowski(0.5), Ok(PhiSpec::poly43())];
    for phi in grid_phis {
        for a in [0.0, 0.5, 0.9] {
            let name = match &phi {
                Ok(p) => format!("improved r'_f <= hc r_f {p} alpha={a}"),
                Err(_) => format!("improved r'_f <= hc r_f alpha={a}"),
            };
            let l = phi.clone().and_then(|phi| {
                let hc = solver::solve(&RadiusQuery::new(phi.clone(), al(a), Pipeline::Hc))?;
                let imp = solver::solve(&RadiusQuery::new(phi, al(a), Pipeline::Improved))?;
                let excess = (imp.r_f - hc.r_f).max(0.0);
                let mut l = CheckLine::compare(g, name.clone(), excess, 0.0, 0.0);
                l.detail = Some(format!("r'_f {:.6} r_f {:.6}", imp.r_f, hc.r_f));
                Ok(l)
            });
            out.push(CheckLine::or_failed(g, name, l));
        }
    }

    for a in [0.6, 0.8] {
        let name = format!("Bohr equality M_f(r_f) = L(1,alpha) poly43 alpha={a}");
        let l = (|| {
            let phi = PhiSpec::poly43();
            let res = solver::solve(&RadiusQuery::new(phi.clone(), al(a), Pipeline::Hc))?;
            let sample = sample_extremal_harmonic(&phi, al(a), 256)?;
            let l1 = Functionals::at_order(&phi, 256)?.distance_lower_bound(al(a));
            Ok(CheckLine::compare(g, name.clone(), sample.majorant(res.r_f), l1, BOHR_EQUALITY_TOLERANCE))
        })();
        out.push(CheckLine::or_failed(g, name, l));
    }

    for beta in [0.0, 0.5, 0.9] {
        for a in [0.0, 0.5, 0.9] {
            let name = format!("coefficient bounds sum to L(1) at r_f beta={beta} alpha={a}");
            let l = (|| {
                let res = bohr_radius_mab(al(a), beta, DEFAULT_TOLERANCE)?;
                let r = res.r_f;
                let mut sum = r;
                let mut rn = r;
                for n in 2..=2000 {
                    rn *= r;
                    let c = coeff_bounds(al(a), beta, n)?;
                    sum += (c.a_bound + c.b_bound) * rn;
                }
                let l1 = janowski_l_closed(al(a), beta, 1.0)?;
                Ok(CheckLine::compare(g, name.clone(), sum, l1, COEFF_CHAIN_TOLERANCE))
            })();
            out.push(CheckLine::or_failed(g, name, l));
        }
    }
    out
}

/// On seeded random series: `|s(r)| ≤ M_s(r)`, the literal majorant sum
/// equals the pipeline's `majorant().eval()`, majorant is idempotent, and
/// `s(c·)` is dominated by `s`.
fn random_majorant_check() -> CheckLine {
    let g = CheckGroup::Oracle;
    let name = format!("majorant domination on {RANDOM_SERIES} random series");
    let l = (|| {
        let mut rng = ChaCha8Rng::seed_from_u64(RANDOM_SEED);
        let mut worst = 0.0_f64;
        let mut subordination_failures = 0;
        for _ in 0..RANDOM_SERIES {
            let order = rng.gen_range(0..64);
            let coeffs: Vec<f64> = (0..=order).map(|_| rng.gen_range(-10.0..10.0)).collect();
            let s = TruncatedSeries::new(coeffs)?;
            let r = rng.gen_range(0.0..0.95);
            let m = s.majorant();
            let mr = m.eval(r)?;
            let scale = mr.max(1.0);
            worst = worst.max((s.eval(r)?.abs() - mr).max(0.0) / scale);
            worst = worst.max((brute_majorant_sum(&s, r, order + 1) - mr).abs() / scale);
            if m.majorant() != m {
                worst = f64::INFINITY;
            }
            let c = rng.gen_range(0.0..1.0);
            if !check_subordination_majorant(&s, c, r.min(1.0 / 3.0)) {
                subordination_failures += 1;
            }
        }
        let mut l = CheckLine::compare(g, name.clone(), worst, 0.0, MAJORANT_TOLERANCE);
        if subordination_failures > 0 {
            l.status = Status::Fail;
            l.detail = Some(format!("{subordination_failures} subordination violations"));
        }
        Ok(l)
    })();
    CheckLine::or_failed(g, name, l)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_only_runs_thirty_cells() {
        let rep = run_verify(&VerifyOptions {
            only: vec![CheckGroup::Tables],
            ..Default::default()
        });
        assert_eq!(rep.lines.len(), 30);
        assert!(rep.passed(), "{}", rep.render());
        let info: Vec<_> = rep.lines.iter().filter(|l| l.status == Status::Info).collect();
        assert_eq!(info.len(), 1);
        assert!((info[0].measured - 0.3251).abs() < 1e-4);
    }

    #[test]
    fn injected_fault_fails_ode_check() {
        let rep = run_verify(&VerifyOptions {
            only: vec![CheckGroup::Oracle],
            kprime_fault: Some((3, 1e-3)),
        });
        assert!(!rep.passed());
        assert!(rep.failures().all(|l| l.name.starts_with("ODE residual")));
        assert_eq!(rep.failures().count(), 4);
    }

    #[test]
    fn group_names_round_trip() {
        for g in CheckGroup::ALL {
            assert_eq!(g.to_string().parse::<CheckGroup>().unwrap(), g);
        }
        assert!("plots".parse::<CheckGroup>().is_err());
    }
}
