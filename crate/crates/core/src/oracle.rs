//! Brute-force cross-checks that share as little code as possible with the
//! main pipelines.
//!
//! Used by the test suite and by the `verify` command.

use crate::error::{Error, Result};
use crate::extremal::ExtremalPair;
use crate::functionals::AlphaParam;
use crate::phi::PhiSpec;
use crate::series::TruncatedSeries;

/// Default central-difference step for [`ode_residual_fd`].
pub const FD_STEP: f64 = 1e-4;

/// Largest `|t|` at which the finite-difference residual is meaningful.
pub const FD_DOMAIN: f64 = 0.8;

/// `|1 + t K''(t)/K'(t) − φ(t)|` with `K''` from a central difference of the
/// truncated `K'` series.
pub fn ode_residual_fd(pair: &ExtremalPair, phi: &PhiSpec, t: f64, step: f64) -> Result<f64> {
    if t.abs() > FD_DOMAIN {
        return Err(Error::OutsideDomain { arg: t, limit: FD_DOMAIN });
    }
    if !(1e-6..=1e-3).contains(&step) {
        return Err(Error::InvalidParameter(format!(
            "finite-difference step must lie in [1e-6, 1e-3], got {step}"
        )));
    }
    let kp = pair.kprime();
    let k2 = (kp.eval(t + step)? - kp.eval(t - step)?) / (2.0 * step);
    let k1 = kp.eval(t)?;
    Ok((1.0 + t * k2 / k1 - phi.eval(t)?).abs())
}

/// Literal `Σ_{n<terms} |c_n| r^n`, summed from the highest power down.
pub fn brute_majorant_sum(s: &TruncatedSeries, r: f64, terms: usize) -> f64 {
    let terms = terms.min(s.order() + 1);
    (0..terms)
        .rev()
        .map(|n| s.coeff(n).abs() * r.powi(n as i32))
        .sum()
}

/// Checks `M_g(r) ≤ M_f(r)` for the subordinate `g(z) = f(cz)`.
pub fn check_subordination_majorant(f: &TruncatedSeries, c: f64, r: f64) -> bool {
    let terms = f.order() + 1;
    let g = f
        .coeffs()
        .iter()
        .enumerate()
        .map(|(n, a)| a * c.powi(n as i32))
        .collect::<Vec<_>>();
    let g = match TruncatedSeries::new(g) {
        Ok(g) => g,
        Err(_) => return false,
    };
    let mg = brute_majorant_sum(&g, r, terms);
    let mf = brute_majorant_sum(f, r, terms);
    mg <= mf * (1.0 + 4.0 * f64::EPSILON)
}

/// Coefficients of the extremal harmonic map `f = h + ḡ` with `h = K` and
/// `g'(z) = αz K'(z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicSample {
    /// `a_n`, with `a_0 = 0` and `a_1 = 1`.
    pub h_coeffs: TruncatedSeries,
    /// `b_n = α c_{n−2}/n` for `n ≥ 2`, zero below.
    pub g_coeffs: TruncatedSeries,
    pub alpha: AlphaParam,
}

impl HarmonicSample {
    /// `|z| + Σ_{n≥2} (|a_n| + |b_n|) |z|^n` at `|z| = r`.
    pub fn majorant(&self, r: f64) -> f64 {
        let terms = self.h_coeffs.order().max(self.g_coeffs.order()) + 1;
        brute_majorant_sum(&self.h_coeffs, r, terms) + brute_majorant_sum(&self.g_coeffs, r, terms)
    }
}

pub fn sample_extremal_harmonic(phi: &PhiSpec, alpha: AlphaParam, n: usize) -> Result<HarmonicSample> {
    let pair = ExtremalPair::build(phi, n)?;
    let c = pair.kprime();
    let a = alpha.get();
    let g = TruncatedSeries::from_fn(n, |k| if k < 2 { 0.0 } else { a * c.coeff(k - 2) / k as f64 })?;
    Ok(HarmonicSample {
        h_coeffs: pair.k().truncate(n),
        g_coeffs: g,
        alpha,
    })
}
