//! Ma-Minda functions `φ(z) = 1 + Σ B_n z^n`.
//!
//! Two presets carry closed forms: the Janowski-type family
//! `(1 + (1−2β)z)/(1 − z)` and the quadratic `1 + 4z/3 + 2z²/3`. Custom
//! functions are given by their coefficients and can only be partially
//! validated.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::{TruncatedSeries, DEFAULT_ORDER};

/// Tolerance between closed-form and series evaluation checked when a
/// preset is constructed.
const CLOSED_FORM_AGREEMENT: f64 = 1e-10;

const SAMPLE_RADIUS: f64 = 0.95;
const SAMPLE_POINTS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum PhiKind {
    Janowski { beta: f64 },
    Poly43,
    Custom,
}

/// How much of the Ma-Minda definition has actually been checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Validation {
    /// Preset whose properties are known analytically.
    Certified,
    /// Custom coefficients: only `B_0 = 1`, `B_1 > 0` and a sampled
    /// positivity check of `Re φ` were run.
    Partial,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhiSpec {
    kind: PhiKind,
    series: TruncatedSeries,
    validation: Validation,
    warnings: Vec<String>,
    rotated_from_psi: bool,
}

impl PhiSpec {
    /// `φ(z) = (1 + (1−2β)z)/(1 − z)`, so `B_n = 2(1−β)` for `n ≥ 1`.
    pub fn janowski(beta: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&beta) {
            return Err(Error::InvalidParameter(format!(
                "Janowski parameter beta must lie in [0, 1), got {beta}"
            )));
        }
        let series = janowski_series(beta, DEFAULT_ORDER)?;
        let phi = Self {
            kind: PhiKind::Janowski { beta },
            series,
            validation: Validation::Certified,
            warnings: Vec::new(),
            rotated_from_psi: false,
        };
        phi.check_closed_form()?;
        Ok(phi)
    }

    /// `φ(z) = 1 + 4z/3 + 2z²/3`.
    pub fn poly43() -> Self {
        let series = TruncatedSeries::new(vec![1.0, 4.0 / 3.0, 2.0 / 3.0])
            .expect("finite preset coefficients");
        let phi = Self {
            kind: PhiKind::Poly43,
            series,
            validation: Validation::Certified,
            warnings: Vec::new(),
            rotated_from_psi: false,
        };
        phi.check_closed_form().expect("quadratic agrees with itself");
        phi
    }

    /// Custom `φ` from its Taylor coefficients `B_0, B_1, ...`.
    ///
    /// Rejects `B_0 ≠ 1` and `B_1 ≤ 0`. A negative sample of `Re φ` on
    /// `|z| = 0.95` is reported as a warning, not an error.
    pub fn custom(coeffs: TruncatedSeries) -> Result<Self> {
        let b0 = coeffs.coeff(0);
        if (b0 - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidPhi(format!("phi(0) must be 1, got B_0 = {b0}")));
        }
        let b1 = coeffs.coeff(1);
        if b1 <= 0.0 {
            return Err(Error::InvalidPhi(format!("phi'(0) must be positive, got B_1 = {b1}")));
        }
        let mut warnings = Vec::new();
        if let Some(theta) = sampled_nonpositive_real_part(&coeffs) {
            warnings.push(format!(
                "Re phi <= 0 at |z| = {SAMPLE_RADIUS}, arg z = {theta:.4}; not a Ma-Minda function"
            ));
        }
        Ok(Self {
            kind: PhiKind::Custom,
            series: coeffs,
            validation: Validation::Partial,
            warnings,
            rotated_from_psi: false,
        })
    }

    /// Accepts a non-Ma-Minda `ψ` (`ψ'(0) < 0`) and returns the rotated
    /// `φ(z) = ψ(−z)`, which generates the same class.
    pub fn custom_from_psi(psi: TruncatedSeries) -> Result<Self> {
        if psi.coeff(1) >= 0.0 {
            return Err(Error::InvalidPhi(format!(
                "psi'(0) must be negative, got {}",
                psi.coeff(1)
            )));
        }
        let rotated = TruncatedSeries::new(
            psi.coeffs()
                .iter()
                .enumerate()
                .map(|(n, &c)| if n % 2 == 1 { -c } else { c })
                .collect(),
        )?;
        let mut phi = Self::custom(rotated)?;
        phi.rotated_from_psi = true;
        Ok(phi)
    }

    /// `φ ≡ 1`, giving `K(z) = z`. Not a Ma-Minda function; used only as a
    /// degenerate fixture in tests.
    #[doc(hidden)]
    pub fn identity_fixture() -> Self {
        Self {
            kind: PhiKind::Custom,
            series: TruncatedSeries::constant(1.0).expect("finite"),
            validation: Validation::Partial,
            warnings: vec!["identity fixture, not a Ma-Minda function".into()],
            rotated_from_psi: false,
        }
    }

    pub fn kind(&self) -> PhiKind {
        self.kind
    }

    pub fn beta(&self) -> Option<f64> {
        match self.kind {
            PhiKind::Janowski { beta } => Some(beta),
            _ => None,
        }
    }

    pub fn is_preset(&self) -> bool {
        !matches!(self.kind, PhiKind::Custom)
    }

    pub fn validation(&self) -> Validation {
        self.validation
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn rotated_from_psi(&self) -> bool {
        self.rotated_from_psi
    }

    /// The stored coefficient series (Janowski presets at the default
    /// working order).
    pub fn series(&self) -> &TruncatedSeries {
        &self.series
    }

    /// `B_0..B_order`. Presets are extended exactly; custom coefficients
    /// are zero past the given list.
    pub fn coeffs_to(&self, order: usize) -> Result<TruncatedSeries> {
        match self.kind {
            PhiKind::Janowski { beta } => janowski_series(beta, order),
            _ => Ok(self.series.truncate(order)),
        }
    }

    /// True when every `B_n ≥ 0`, in which case `M_φ = φ` and the extremal
    /// series have positive coefficients.
    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.series.is_nonnegative()
    }

    /// Closed-form value for presets.
    pub fn closed_eval(&self, t: f64) -> Option<f64> {
        match self.kind {
            PhiKind::Janowski { beta } => Some((1.0 + (1.0 - 2.0 * beta) * t) / (1.0 - t)),
            PhiKind::Poly43 => Some(1.0 + 4.0 * t / 3.0 + 2.0 * t * t / 3.0),
            PhiKind::Custom => None,
        }
    }

    /// `φ(t)` on the real segment. Presets accept `[−1, 1)` (`[−1, 1]` for
    /// the quadratic); custom series accept `|t|` below their validity
    /// radius.
    pub fn eval(&self, t: f64) -> Result<f64> {
        let in_domain = match self.kind {
            PhiKind::Janowski { .. } => (-1.0..1.0).contains(&t),
            PhiKind::Poly43 => (-1.0..=1.0).contains(&t),
            PhiKind::Custom => return self.series.eval(t),
        };
        if !in_domain {
            return Err(Error::OutsideDomain { arg: t, limit: 1.0 });
        }
        Ok(self.closed_eval(t).expect("presets have closed forms"))
    }

    fn check_closed_form(&self) -> Result<()> {
        for t in [-0.5, -0.1, 0.1, 0.5] {
            let closed = self.closed_eval(t).expect("preset");
            let series = self.series.eval(t)?;
            if (closed - series).abs() > CLOSED_FORM_AGREEMENT {
                return Err(Error::InvalidPhi(format!(
                    "closed form {closed} and series {series} disagree at t = {t}"
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for PhiSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            PhiKind::Janowski { beta } => write!(f, "janowski(beta={beta})"),
            PhiKind::Poly43 => f.write_str("poly43"),
            PhiKind::Custom => {
                let list: Vec<String> = self.series.coeffs().iter().map(|c| c.to_string()).collect();
                write!(f, "custom({})", list.join(","))?;
                if self.rotated_from_psi {
                    f.write_str(" [rotated from psi]")?;
                }
                Ok(())
            }
        }
    }
}

fn janowski_series(beta: f64, order: usize) -> Result<TruncatedSeries> {
    let b = 2.0 * (1.0 - beta);
    TruncatedSeries::from_fn(order, |n| if n == 0 { 1.0 } else { b })
}

/// First sampled argument where `Re φ(0.95 e^{iθ}) ≤ 0`, if any.
fn sampled_nonpositive_real_part(coeffs: &TruncatedSeries) -> Option<f64> {
    (0..SAMPLE_POINTS)
        .map(|k| 2.0 * PI * k as f64 / SAMPLE_POINTS as f64)
        .find(|&theta| {
            let re: f64 = coeffs
                .coeffs()
                .iter()
                .enumerate()
                .map(|(n, &b)| b * SAMPLE_RADIUS.powi(n as i32) * (n as f64 * theta).cos())
                .sum();
            re <= 0.0
        })
}
