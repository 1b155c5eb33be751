//! Smallest-root search and the four radius pipelines.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extremal::with_adaptive_order;
use crate::functionals::{d1, janowski_l_closed, AlphaParam, Functionals};
use crate::phi::PhiSpec;
use crate::quadrature::integrate;
use crate::series::DEFAULT_ORDER;

pub const DEFAULT_TOLERANCE: f64 = 1e-10;
/// Largest tolerance a query may request.
pub const MAX_TOLERANCE: f64 = 1e-4;
/// Grid step of the sign-change scan.
pub const SCAN_STEP: f64 = 1e-3;
/// Upper end of the scanned interval.
pub const SCAN_END: f64 = 0.999;
/// Largest `|G(root)|` a result may carry.
pub const RESIDUAL_LIMIT: f64 = 1e-8;
const MAX_BISECTIONS: usize = 60;

/// Root of `G` located by grid scan and bisection.
#[derive(Debug, Clone, PartialEq)]
pub struct RootReport {
    pub root: f64,
    /// `G(lo) < 0 < G(hi)` unless the root was hit exactly.
    pub bracket: (f64, f64),
    pub residual: f64,
    /// Further sign changes seen after the first one.
    pub later_brackets: Vec<(f64, f64)>,
    /// Where the scan stopped (below `hi` if `G` became unevaluable).
    pub scan_end: f64,
    /// Some endpoint of the bracket lies within the stated uncertainty of 0.
    pub uncertain: bool,
}

/// First root of `G` on `[lo, hi]`, which must satisfy `G(lo) < 0`.
///
/// Scans a uniform grid of step [`SCAN_STEP`] for the first sign change
/// and bisects it until the bracket is at most `tol` wide and `|G|` at
/// its midpoint is within [`RESIDUAL_LIMIT`]. The scan then continues to `hi` and
/// records any further sign changes; an evaluation error after the first
/// root simply ends the scan. `uncertainty` is an absolute error on `G`
/// used to flag ambiguous brackets.
pub fn smallest_root<G>(mut g: G, lo: f64, hi: f64, tol: f64, uncertainty: f64) -> Result<RootReport>
where
    G: FnMut(f64) -> Result<f64>,
{
    if lo.is_nan() || hi.is_nan() || lo >= hi {
        return Err(Error::InvalidParameter(format!("empty interval [{lo}, {hi}]")));
    }
    let g_lo = g(lo)?;
    if g_lo.is_nan() || g_lo >= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "G(lo) must be negative, got G({lo}) = {g_lo}"
        )));
    }
    let steps = ((hi - lo) / SCAN_STEP).ceil() as usize;
    let point = |i: usize| if i >= steps { hi } else { lo + i as f64 * SCAN_STEP };

    let mut prev = (lo, g_lo);
    let mut first: Option<(f64, f64, f64, f64)> = None;
    let mut later = Vec::new();
    let mut scan_end = hi;
    for i in 1..=steps {
        let x = point(i);
        let gx = match g(x) {
            Ok(v) => v,
            Err(e) if first.is_none() => return Err(e),
            Err(_) => {
                scan_end = prev.0;
                break;
            }
        };
        let crossed = (prev.1 < 0.0) != (gx < 0.0);
        if crossed {
            match first {
                None => first = Some((prev.0, prev.1, x, gx)),
                Some(_) => later.push((prev.0, x)),
            }
        }
        prev = (x, gx);
    }
    let Some((mut a, mut ga, mut b, mut gb)) = first else {
        return Err(Error::NoRoot { lo, hi, g_lo, g_hi: prev.1 });
    };
    let uncertain = ga.abs() <= uncertainty || gb.abs() <= uncertainty;

    let (root, bracket, residual) = if gb == 0.0 {
        exact_zero(&mut g, b, tol)?
    } else {
        let mut hit = None;
        let mut done = None;
        for _ in 0..MAX_BISECTIONS {
            let m = 0.5 * (a + b);
            let gm = g(m)?;
            if gm == 0.0 {
                hit = Some(m);
                break;
            }
            if b - a <= tol && gm.abs() <= RESIDUAL_LIMIT {
                done = Some((m, (a, b), gm.abs()));
                break;
            }
            if gm < 0.0 {
                a = m;
                ga = gm;
            } else {
                b = m;
                gb = gm;
            }
        }
        match (hit, done) {
            (Some(m), _) => exact_zero(&mut g, m, tol)?,
            (None, Some(d)) => d,
            (None, None) => {
                let m = 0.5 * (a + b);
                let gm = g(m)?;
                debug_assert!(ga < 0.0 && gb > 0.0);
                (m, (a, b), gm.abs())
            }
        }
    };
    if residual > RESIDUAL_LIMIT {
        return Err(Error::Residual { residual, limit: RESIDUAL_LIMIT });
    }
    Ok(RootReport {
        root,
        bracket,
        residual,
        later_brackets: later,
        scan_end,
        uncertain,
    })
}

/// `G(x) = 0` exactly: report a strict bracket of width `tol` around `x`
/// when the signs allow, otherwise the degenerate bracket `(x, x)`.
fn exact_zero<G>(g: &mut G, x: f64, tol: f64) -> Result<(f64, (f64, f64), f64)>
where
    G: FnMut(f64) -> Result<f64>,
{
    let (a, b) = (x - 0.5 * tol, x + 0.5 * tol);
    let bracket = match (g(a), g(b)) {
        (Ok(ga), Ok(gb)) if ga < 0.0 && gb > 0.0 => (a, b),
        _ => (x, x),
    };
    Ok((x, bracket, 0.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Pipeline {
    /// `R_C(r) = L(1, α)`, capped at 1/3.
    Hc,
    /// `R_{C_c}(r) = L(1, α)`, capped at 1/3.
    Hcc,
    /// `R'_f(r) = L(1, α)`, capped at 1/3.
    Improved,
    /// `D_1(r) = 0` for the Janowski class; sharp, no cap.
    Mab,
}

impl fmt::Display for Pipeline {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Hc => "hc",
            Self::Hcc => "hcc",
            Self::Improved => "improved",
            Self::Mab => "mab",
        })
    }
}

impl FromStr for Pipeline {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hc" => Ok(Self::Hc),
            "hcc" => Ok(Self::Hcc),
            "improved" => Ok(Self::Improved),
            "mab" => Ok(Self::Mab),
            other => Err(Error::InvalidParameter(format!("unknown pipeline {other:?}"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RadiusQuery {
    pub phi: PhiSpec,
    pub alpha: AlphaParam,
    pub pipeline: Pipeline,
    /// Explicit `β` for the `mab` pipeline; taken from a Janowski `φ`
    /// when absent.
    pub beta: Option<f64>,
    pub tolerance: f64,
    /// Starting working order for series pipelines.
    pub order: usize,
}

impl RadiusQuery {
    pub fn new(phi: PhiSpec, alpha: AlphaParam, pipeline: Pipeline) -> Self {
        Self {
            phi,
            alpha,
            pipeline,
            beta: None,
            tolerance: DEFAULT_TOLERANCE,
            order: DEFAULT_ORDER,
        }
    }

    /// Query for the `mab` pipeline with a Janowski `φ`.
    pub fn mab(alpha: AlphaParam, beta: f64) -> Result<Self> {
        let mut q = Self::new(PhiSpec::janowski(beta)?, alpha, Pipeline::Mab);
        q.beta = Some(beta);
        Ok(q)
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn with_order(mut self, order: usize) -> Self {
        self.order = order;
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.tolerance > 0.0 && self.tolerance <= MAX_TOLERANCE) {
            return Err(Error::InvalidParameter(format!(
                "tolerance must lie in (0, {MAX_TOLERANCE}], got {}",
                self.tolerance
            )));
        }
        if self.pipeline == Pipeline::Improved {
            self.alpha.require_strict()?;
        }
        Ok(())
    }

    fn mab_beta(&self) -> Result<f64> {
        self.beta.or_else(|| self.phi.beta()).ok_or_else(|| {
            Error::InvalidParameter("pipeline mab needs a Janowski phi or an explicit beta".into())
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadiusResult {
    pub pipeline: Pipeline,
    pub alpha: f64,
    pub beta: Option<f64>,
    pub r_f: f64,
    pub bohr_radius: f64,
    pub cap_applied: bool,
    pub residual: f64,
    pub bracket: (f64, f64),
    pub distance_lower_bound: f64,
    pub sharp: bool,
    /// Working order of the series pipeline (absent for `mab`).
    pub order: Option<usize>,
    pub notes: Vec<String>,
}

const CLASSICAL_CAP: f64 = 1.0 / 3.0;

/// Dispatches on `query.pipeline`.
pub fn solve(query: &RadiusQuery) -> Result<RadiusResult> {
    query.validate()?;
    match query.pipeline {
        Pipeline::Mab => {
            let beta = query.mab_beta()?;
            bohr_radius_mab(query.alpha, beta, query.tolerance)
        }
        p => solve_series_pipeline(query, p),
    }
}

pub fn bohr_radius_hc(query: &RadiusQuery) -> Result<RadiusResult> {
    query.validate()?;
    solve_series_pipeline(query, Pipeline::Hc)
}

pub fn bohr_radius_hcc(query: &RadiusQuery) -> Result<RadiusResult> {
    query.validate()?;
    solve_series_pipeline(query, Pipeline::Hcc)
}

pub fn bohr_radius_improved(query: &RadiusQuery) -> Result<RadiusResult> {
    query.validate()?;
    solve_series_pipeline(query, Pipeline::Improved)
}

/// `G(r)` of a series pipeline: the majorant functional minus `L(1, α)`.
pub fn pipeline_gap(f: &Functionals, pipeline: Pipeline, alpha: AlphaParam, r: f64) -> Result<f64> {
    let lhs = match pipeline {
        Pipeline::Hc => f.bohr_majorant_rc(alpha, r)?,
        Pipeline::Hcc => f.conjugate(alpha, r)?.r_cc,
        Pipeline::Improved => f.improved_rf(alpha, r)?,
        Pipeline::Mab => {
            let beta = f.phi().beta().ok_or_else(|| {
                Error::InvalidParameter("pipeline mab needs a Janowski phi".into())
            })?;
            return d1(alpha, beta, r);
        }
    };
    Ok(lhs - f.distance_lower_bound(alpha))
}

fn solve_series_pipeline(query: &RadiusQuery, pipeline: Pipeline) -> Result<RadiusResult> {
    let alpha = query.alpha;
    let (report, funcs) = with_adaptive_order(query.order, |order| {
        let f = Functionals::at_order(&query.phi, order)?;
        let eps = f.boundary().error * (1.0 + alpha.get());
        let eps = if f.boundary().extrapolated { eps } else { 0.0 };
        let rep = smallest_root(
            |r| pipeline_gap(&f, pipeline, alpha, r),
            0.0,
            SCAN_END,
            query.tolerance,
            eps,
        )?;
        Ok((rep, f))
    })?;

    let mut notes = Vec::new();
    let r_f = report.root;
    let cap_applied = r_f > CLASSICAL_CAP;
    if cap_applied {
        notes.push("capped at 1/3".to_string());
    }
    let boundary = funcs.boundary();
    if boundary.extrapolated {
        notes.push(format!(
            "extrapolated boundary integral (error {:.1e})",
            boundary.error
        ));
    }
    if report.uncertain {
        notes.push("uncertain bracket".to_string());
    }
    for (a, b) in &report.later_brackets {
        notes.push(format!("further sign change in [{a:.3}, {b:.3}]"));
    }
    if query.phi.rotated_from_psi() {
        notes.push("phi obtained from non-Ma-Minda psi by z -> -z".to_string());
    }
    notes.extend(query.phi.warnings().iter().cloned());

    let sharp = pipeline == Pipeline::Hc
        && query.phi.has_nonnegative_coeffs()
        && r_f <= CLASSICAL_CAP + query.tolerance;
    Ok(RadiusResult {
        pipeline,
        alpha: alpha.get(),
        beta: query.phi.beta(),
        r_f,
        bohr_radius: r_f.min(CLASSICAL_CAP),
        cap_applied,
        residual: report.residual,
        bracket: report.bracket,
        distance_lower_bound: funcs.distance_lower_bound(alpha),
        sharp,
        order: Some(funcs.pair().order()),
        notes,
    })
}

/// Sharp radius of `M(α, β)`: smallest root of `D_1(r) = 0`, no cap.
pub fn bohr_radius_mab(alpha: AlphaParam, beta: f64, tol: f64) -> Result<RadiusResult> {
    if !(tol > 0.0 && tol <= MAX_TOLERANCE) {
        return Err(Error::InvalidParameter(format!("tolerance must lie in (0, {MAX_TOLERANCE}]")));
    }
    let report = smallest_root(|r| d1(alpha, beta, r), 0.0, SCAN_END, tol, 0.0)?;
    let mut notes = Vec::new();
    for (a, b) in &report.later_brackets {
        notes.push(format!("further sign change in [{a:.3}, {b:.3}]"));
    }
    Ok(RadiusResult {
        pipeline: Pipeline::Mab,
        alpha: alpha.get(),
        beta: Some(beta),
        r_f: report.root,
        bohr_radius: report.root,
        cap_applied: false,
        residual: report.residual,
        bracket: report.bracket,
        distance_lower_bound: janowski_l_closed(alpha, beta, 1.0)?,
        sharp: true,
        order: None,
        notes,
    })
}

/// Constants behind the quadratic preset `φ = 1 + 4z/3 + 2z²/3`, computed
/// by adaptive quadrature of `K'(t) = exp(4t/3 + t²/3)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Poly43Constants {
    /// `K(1/3)`
    pub k_third: f64,
    /// `K(−1)`
    pub k_neg1: f64,
    /// `∫_0^{1/3} t K'(t) dt`
    pub int_t_kprime_third: f64,
    /// `∫_0^1 t K'(−t) dt`
    pub int_t_kprime_neg: f64,
    /// `|α|` above which the root of `R(r) = L(1, α)` lies below 1/3.
    pub alpha_threshold: f64,
}

pub fn poly43_constants() -> Result<Poly43Constants> {
    let kp = |t: f64| (4.0 * t / 3.0 + t * t / 3.0).exp();
    let third = 1.0 / 3.0;
    let k_third = integrate(kp, 0.0, third)?.value;
    let k_neg1 = -integrate(|t| kp(-t), 0.0, 1.0)?.value;
    let int_t_kprime_third = integrate(|t| t * kp(t), 0.0, third)?.value;
    let int_t_kprime_neg = integrate(|t| t * kp(-t), 0.0, 1.0)?.value;
    // K(1/3) + α∫_0^{1/3} tK' = −K(−1) − α∫_0^1 tK'(−t), linear in α.
    let alpha_threshold = (-k_neg1 - k_third) / (int_t_kprime_third + int_t_kprime_neg);
    Ok(Poly43Constants {
        k_third,
        k_neg1,
        int_t_kprime_third,
        int_t_kprime_neg,
        alpha_threshold,
    })
}

/// The `|α|` at which the quadratic preset's `hc` root reaches 1/3.
pub fn alpha_threshold_poly43() -> Result<f64> {
    Ok(poly43_constants()?.alpha_threshold)
}
