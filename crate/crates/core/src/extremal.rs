//! The extremal pair `K`, `H = zK'` solving `1 + zK''/K' = φ`.

use crate::error::{Error, Result};
use crate::phi::{PhiKind, PhiSpec};
use crate::quadrature::{integrate, richardson_to_one, Quadrature};
use crate::series::{solve_kprime_recurrence, TruncatedSeries, DEFAULT_ORDER, MAX_ORDER, TAIL_TOLERANCE};

/// Richardson samples `t_k = 1 − 2^{−k}` used for custom `φ` at `t → 1`.
const EXTRAPOLATION_LEVELS: (u32, u32) = (4, 12);

/// Closed form of `K'` known for the presets.
#[derive(Debug, Clone, Copy, PartialEq)]
enum ClosedKprime {
    /// `(1 − t)^{−(2−2β)}`
    Janowski { beta: f64 },
    /// `exp(4t/3 + t²/3)`
    Poly43,
}

impl ClosedKprime {
    fn eval(self, t: f64) -> f64 {
        match self {
            Self::Janowski { beta } => (1.0 - t).powf(-(2.0 - 2.0 * beta)),
            Self::Poly43 => (4.0 * t / 3.0 + t * t / 3.0).exp(),
        }
    }

    fn domain_ok(self, t: f64) -> bool {
        match self {
            Self::Janowski { .. } => (-1.0..1.0).contains(&t),
            Self::Poly43 => (-1.0..=1.0).contains(&t),
        }
    }
}

/// A value that may have been obtained by extrapolation to the boundary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
    pub extrapolated: bool,
}

/// `K(−1)` and `∫_0^1 t K'(−t) dt`, both reached through integrals of
/// `K'(−t)` so that no series is evaluated on the unit circle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryQuantities {
    /// `K(−1) = −∫_0^1 K'(−t) dt` (negative).
    pub k_neg1: f64,
    /// `∫_0^1 t K'(−t) dt` (positive).
    pub int_t_kprime_neg: f64,
    /// Quadrature plus extrapolation error estimate.
    pub error: f64,
    pub extrapolated: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExtremalPair {
    kprime: TruncatedSeries,
    k: TruncatedSeries,
    h: TruncatedSeries,
    m_k: TruncatedSeries,
    m_kprime: TruncatedSeries,
    /// `log K'(z) = Σ B_n z^n / n`, used for custom `φ` on the negative axis.
    log_kprime: TruncatedSeries,
    closed: Option<ClosedKprime>,
}

impl ExtremalPair {
    /// Builds `K'` by the coefficient recurrence at working order `order`.
    pub fn build(phi: &PhiSpec, order: usize) -> Result<Self> {
        let b = phi.coeffs_to(order)?;
        let kprime = solve_kprime_recurrence(&b, order)?;
        let k = kprime.integrate_from_zero()?;
        let h = kprime.shift_up(1);
        let m_k = k.majorant();
        let m_kprime = kprime.majorant();
        // (φ(z) − 1)/z, then term-wise integration.
        let q = TruncatedSeries::from_fn(order.saturating_sub(1), |n| b.coeff(n + 1))?;
        let log_kprime = q.integrate_from_zero()?;
        let closed = match phi.kind() {
            PhiKind::Janowski { beta } => Some(ClosedKprime::Janowski { beta }),
            PhiKind::Poly43 => Some(ClosedKprime::Poly43),
            PhiKind::Custom => None,
        };
        Ok(Self {
            kprime,
            k,
            h,
            m_k,
            m_kprime,
            log_kprime,
            closed,
        })
    }

    /// Smallest doubling of the default order at which `K'²` passes the
    /// tail test at `r`.
    pub fn for_radius(phi: &PhiSpec, r: f64) -> Result<Self> {
        with_adaptive_order(DEFAULT_ORDER, |order| {
            let pair = Self::build(phi, order)?;
            let sq = pair.kprime.multiply(&pair.kprime)?;
            sq.eval_converged(r, TAIL_TOLERANCE)?;
            Ok(pair)
        })
    }

    pub fn order(&self) -> usize {
        self.kprime.order()
    }

    pub fn kprime(&self) -> &TruncatedSeries {
        &self.kprime
    }

    pub fn k(&self) -> &TruncatedSeries {
        &self.k
    }

    pub fn h(&self) -> &TruncatedSeries {
        &self.h
    }

    pub fn m_k(&self) -> &TruncatedSeries {
        &self.m_k
    }

    pub fn m_kprime(&self) -> &TruncatedSeries {
        &self.m_kprime
    }

    pub fn has_closed_form(&self) -> bool {
        self.closed.is_some()
    }

    /// Closed-form `K'(t)` for presets.
    pub fn closed_kprime(&self, t: f64) -> Option<f64> {
        self.closed.filter(|c| c.domain_ok(t)).map(|c| c.eval(t))
    }

    /// `K'(t)` for `t ∈ (−1, 1)`: closed form when known, otherwise the
    /// series with a tail check.
    pub fn kprime_at(&self, t: f64) -> Result<f64> {
        match self.closed {
            Some(c) if c.domain_ok(t) => Ok(c.eval(t)),
            Some(_) => Err(Error::OutsideDomain { arg: t, limit: 1.0 }),
            None => self.kprime.eval_converged(t, TAIL_TOLERANCE),
        }
    }

    /// `K'(−t)` for `t ∈ [0, 1]`. For custom `φ` this is
    /// `exp(Σ B_n (−t)^n / n)`, extrapolated when `t = 1`.
    pub fn kprime_neg(&self, t: f64) -> Result<Estimate> {
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::OutsideDomain { arg: t, limit: 1.0 });
        }
        if let Some(c) = self.closed {
            return Ok(Estimate {
                value: c.eval(-t),
                error: 0.0,
                extrapolated: false,
            });
        }
        if t < 1.0 {
            return Ok(Estimate {
                value: self.custom_kprime_neg(t)?,
                error: 0.0,
                extrapolated: false,
            });
        }
        let (first, last) = EXTRAPOLATION_LEVELS;
        let e = richardson_to_one(|s| self.custom_kprime_neg(s), first, last)?;
        Ok(Estimate {
            value: e.value,
            error: e.error,
            extrapolated: true,
        })
    }

    fn custom_kprime_neg(&self, t: f64) -> Result<f64> {
        Ok(self.log_kprime.eval(-t)?.exp())
    }

    /// `K(−1)` and `∫_0^1 t K'(−t) dt` by adaptive Simpson (1e-10), with
    /// Richardson extrapolation of the upper limit for custom `φ`.
    pub fn boundary_quantities(&self) -> Result<BoundaryQuantities> {
        // Custom values are only requested for upper < 1, so NaN (which
        // fails the quadrature) cannot come from the domain check.
        let plain = |w: fn(f64) -> f64, upper: f64| -> Result<Quadrature> {
            integrate(
                |t| w(t) * self.kprime_neg_interior(t).unwrap_or(f64::NAN),
                0.0,
                upper,
            )
        };
        let one: fn(f64) -> f64 = |_| 1.0;
        let ident: fn(f64) -> f64 = |t| t;
        if self.closed.is_some() {
            let a = plain(one, 1.0)?;
            let b = plain(ident, 1.0)?;
            return Ok(BoundaryQuantities {
                k_neg1: -a.value,
                int_t_kprime_neg: b.value,
                error: a.error + b.error,
                extrapolated: false,
            });
        }
        let (first, last) = EXTRAPOLATION_LEVELS;
        let mut quad_err = 0.0_f64;
        let mut run = |w: fn(f64) -> f64| {
            richardson_to_one(
                |upper| {
                    let q = plain(w, upper)?;
                    quad_err = quad_err.max(q.error);
                    Ok(q.value)
                },
                first,
                last,
            )
        };
        let a = run(one)?;
        let b = run(ident)?;
        Ok(BoundaryQuantities {
            k_neg1: -a.value,
            int_t_kprime_neg: b.value,
            error: a.error + b.error + 2.0 * quad_err,
            extrapolated: true,
        })
    }

    fn kprime_neg_interior(&self, t: f64) -> Result<f64> {
        match self.closed {
            Some(c) => Ok(c.eval(-t)),
            None => self.custom_kprime_neg(t),
        }
    }

    /// `|1 + t·K''(t)/K'(t) − φ(t)|` with `K''` by term-wise
    /// differentiation of the `K'` series.
    pub fn ode_residual(&self, phi: &PhiSpec, t: f64) -> Result<f64> {
        let kp = self.kprime.eval_converged(t, TAIL_TOLERANCE)?;
        let kpp = self.kprime.derivative()?.eval_converged(t, TAIL_TOLERANCE)?;
        Ok((1.0 + t * kpp / kp - phi.eval(t)?).abs())
    }

    /// Replaces `K'` coefficient `n` (and everything derived from it).
    /// Exists so verification code can prove it catches a corrupted series.
    #[doc(hidden)]
    pub fn with_corrupted_kprime(&self, n: usize, value: f64) -> Result<Self> {
        let mut c = self.kprime.coeffs().to_vec();
        c[n] = value;
        let kprime = TruncatedSeries::new(c)?;
        let k = kprime.integrate_from_zero()?;
        Ok(Self {
            h: kprime.shift_up(1),
            m_k: k.majorant(),
            m_kprime: kprime.majorant(),
            k,
            kprime,
            log_kprime: self.log_kprime.clone(),
            closed: self.closed,
        })
    }
}

/// Runs `attempt` at `start`, `2·start`, … up to [`MAX_ORDER`], retrying
/// only when the failure is a tail-convergence error.
pub fn with_adaptive_order<T>(start: usize, mut attempt: impl FnMut(usize) -> Result<T>) -> Result<T> {
    let mut order = start.clamp(1, MAX_ORDER);
    loop {
        match attempt(order) {
            Err(Error::TailNotConverged { .. }) if order < MAX_ORDER => {
                order = (order * 2).min(MAX_ORDER);
            }
            other => return other,
        }
    }
}
