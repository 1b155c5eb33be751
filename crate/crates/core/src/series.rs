//! Truncated real power series.
//!
//! A [`TruncatedSeries`] holds `c_0..c_N` and optionally a uniform bound on
//! the omitted tail `|Σ_{n>N} c_n t^n|` for `|t| ≤ r_max`. All coefficients
//! are real and bounded by [`OVERFLOW_LIMIT`]; any operation that would
//! leave that range fails with [`Error::Overflow`].

use crate::error::{Error, Result};

/// Largest coefficient magnitude accepted anywhere in the crate.
pub const OVERFLOW_LIMIT: f64 = 1e300;

/// Starting working order for the extremal series.
pub const DEFAULT_ORDER: usize = 256;

/// Working orders double up to this cap.
pub const MAX_ORDER: usize = 4096;

/// Absolute tail-estimate threshold used when deciding whether a
/// truncated series can be trusted at a given radius.
pub const TAIL_TOLERANCE: f64 = 1e-12;

/// Uniform bound on the discarded tail, valid for `|t| ≤ r_max`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailBound {
    pub bound: f64,
    pub r_max: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries {
    coeffs: Vec<f64>,
    tail: Option<TailBound>,
    tail_dropped: bool,
}

fn check_coeffs(coeffs: &[f64]) -> Result<()> {
    if coeffs.is_empty() {
        return Err(Error::EmptySeries);
    }
    for (index, &value) in coeffs.iter().enumerate() {
        if !value.is_finite() || value.abs() > OVERFLOW_LIMIT {
            return Err(Error::Overflow { index, value });
        }
    }
    Ok(())
}

impl TruncatedSeries {
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        check_coeffs(&coeffs)?;
        Ok(Self {
            coeffs,
            tail: None,
            tail_dropped: false,
        })
    }

    /// Builds `c_0..c_order` from a coefficient generator.
    pub fn from_fn(order: usize, f: impl FnMut(usize) -> f64) -> Result<Self> {
        Self::new((0..=order).map(f).collect())
    }

    /// The constant series `c`.
    pub fn constant(c: f64) -> Result<Self> {
        Self::new(vec![c])
    }

    /// Attaches a tail bound valid on `|t| ≤ r_max`.
    pub fn with_tail(mut self, bound: f64, r_max: f64) -> Result<Self> {
        if !(bound >= 0.0 && bound.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "tail bound must be a finite nonnegative number, got {bound}"
            )));
        }
        if !(r_max > 0.0 && r_max <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "tail validity radius must lie in (0, 1], got {r_max}"
            )));
        }
        self.tail = Some(TailBound { bound, r_max });
        self.tail_dropped = false;
        Ok(self)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Coefficient `c_n`, zero past the truncation order.
    pub fn coeff(&self, n: usize) -> f64 {
        self.coeffs.get(n).copied().unwrap_or(0.0)
    }

    pub fn tail(&self) -> Option<TailBound> {
        self.tail
    }

    /// True when an operation had to discard a tail bound it could not
    /// propagate.
    pub fn tail_dropped(&self) -> bool {
        self.tail_dropped
    }

    fn derived(&self, coeffs: Vec<f64>, tail: Option<TailBound>) -> Result<Self> {
        check_coeffs(&coeffs)?;
        Ok(Self {
            coeffs,
            tail,
            tail_dropped: self.tail_dropped,
        })
    }

    fn dropping_tail(mut self, had_tail: bool) -> Self {
        if had_tail {
            self.tail = None;
            self.tail_dropped = true;
        }
        self
    }

    /// Truncates or zero-pads to exactly `order`.
    pub fn truncate(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, 0.0);
        let shrinking = order < self.order();
        let out = Self {
            coeffs,
            tail: if shrinking { None } else { self.tail },
            tail_dropped: self.tail_dropped,
        };
        out.dropping_tail(shrinking && self.tail.is_some())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let n = self.order().max(other.order());
        let coeffs = (0..=n).map(|k| self.coeff(k) + other.coeff(k)).collect();
        let tail = match (self.tail, other.tail) {
            (Some(a), Some(b)) => Some(TailBound {
                bound: a.bound + b.bound,
                r_max: a.r_max.min(b.r_max),
            }),
            _ => None,
        };
        let out = self.derived(coeffs, tail)?;
        Ok(out.dropping_tail(tail.is_none() && (self.tail.is_some() || other.tail.is_some())))
    }

    pub fn scale(&self, k: f64) -> Result<Self> {
        let tail = self.tail.map(|t| TailBound {
            bound: t.bound * k.abs(),
            r_max: t.r_max,
        });
        self.derived(self.coeffs.iter().map(|c| c * k).collect(), tail)
    }

    /// Cauchy product truncated to the smaller of the two orders. Tail
    /// bounds are not propagated; a dropped bound is flagged.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        let n = self.order().min(other.order());
        let mut coeffs = vec![0.0; n + 1];
        for (i, &a) in self.coeffs.iter().take(n + 1).enumerate() {
            if a == 0.0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().take(n + 1 - i).enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        let mut out = self.derived(coeffs, None)?;
        out.tail_dropped |= other.tail_dropped;
        Ok(out.dropping_tail(self.tail.is_some() || other.tail.is_some()))
    }

    /// `r ↦ ∫_0^r t^power a(t) dt`: `c_n` moves to degree `n + power + 1`
    /// divided by `n + power + 1`.
    pub fn integrate_weighted_power(&self, power: usize) -> Result<Self> {
        let shift = power + 1;
        let mut coeffs = vec![0.0; self.coeffs.len() + shift];
        for (n, &c) in self.coeffs.iter().enumerate() {
            coeffs[n + shift] = c / (n + shift) as f64;
        }
        let tail = self.tail.map(|t| TailBound {
            bound: t.bound * t.r_max.powi(shift as i32) / shift as f64,
            r_max: t.r_max,
        });
        self.derived(coeffs, tail)
    }

    /// `r ↦ ∫_0^r a(t) dt`.
    pub fn integrate_from_zero(&self) -> Result<Self> {
        self.integrate_weighted_power(0)
    }

    /// `r ↦ ∫_0^r t·a(t) dt`.
    pub fn integrate_weighted_t(&self) -> Result<Self> {
        self.integrate_weighted_power(1)
    }

    /// Term-wise derivative. The tail bound does not survive.
    pub fn derivative(&self) -> Result<Self> {
        let coeffs = if self.coeffs.len() == 1 {
            vec![0.0]
        } else {
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(n, &c)| n as f64 * c)
                .collect()
        };
        Ok(self.derived(coeffs, None)?.dropping_tail(self.tail.is_some()))
    }

    /// Multiplies by `z^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        let mut coeffs = vec![0.0; k];
        coeffs.extend_from_slice(&self.coeffs);
        Self {
            coeffs,
            tail: self.tail.map(|t| TailBound {
                bound: t.bound * t.r_max.powi(k as i32),
                r_max: t.r_max,
            }),
            tail_dropped: self.tail_dropped,
        }
    }

    /// Majorant series `Σ |c_n| t^n`.
    pub fn majorant(&self) -> Self {
        let already = self.is_nonnegative();
        let out = Self {
            coeffs: self.coeffs.iter().map(|c| c.abs()).collect(),
            tail: if already { self.tail } else { None },
            tail_dropped: self.tail_dropped,
        };
        out.dropping_tail(!already && self.tail.is_some())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0.0)
    }

    /// Radius up to which [`eval`](Self::eval) accepts arguments.
    pub fn validity_radius(&self) -> f64 {
        self.tail.map_or(1.0, |t| t.r_max)
    }

    fn check_domain(&self, r: f64) -> Result<()> {
        let ok = match self.tail {
            Some(t) => r.abs() <= t.r_max,
            None => r.abs() < 1.0,
        };
        if ok && r.is_finite() {
            Ok(())
        } else {
            Err(Error::OutsideDomain {
                arg: r,
                limit: self.validity_radius(),
            })
        }
    }

    /// Horner evaluation of the truncated polynomial. Negative arguments
    /// are accepted; the domain is `|r| < 1`, or `|r| ≤ r_max` when a tail
    /// bound is attached.
    pub fn eval(&self, r: f64) -> Result<f64> {
        self.check_domain(r)?;
        Ok(self.horner(r))
    }

    /// Value together with the attached tail bound (zero when none).
    pub fn eval_with_bound(&self, r: f64) -> Result<(f64, f64)> {
        let v = self.eval(r)?;
        Ok((v, self.tail.map_or(0.0, |t| t.bound)))
    }

    fn horner(&self, r: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * r + c)
    }

    /// Geometric tail heuristic `max|c_{N-3..N}|·|r|^N/(1−|r|)`.
    pub fn tail_estimate(&self, r: f64) -> f64 {
        let a = r.abs();
        if a == 0.0 {
            return 0.0;
        }
        if a >= 1.0 {
            return f64::INFINITY;
        }
        let n = self.order();
        let last = self.coeffs[n.saturating_sub(3)..]
            .iter()
            .fold(0.0_f64, |m, c| m.max(c.abs()));
        last * a.powi(n as i32) / (1.0 - a)
    }

    /// Evaluates and fails with [`Error::TailNotConverged`] when the tail
    /// heuristic exceeds `tolerance`.
    pub fn eval_converged(&self, r: f64, tolerance: f64) -> Result<f64> {
        let v = self.eval(r)?;
        let estimate = self.tail_estimate(r);
        if estimate > tolerance {
            return Err(Error::TailNotConverged {
                order: self.order(),
                r,
                estimate,
                tolerance,
            });
        }
        Ok(v)
    }
}

/// Coefficients of `K'` from `φ` via `(log K')' = (φ(z) − 1)/z`:
/// `c_0 = 1`, `c_n = (1/n)·Σ_{m=1}^{n} B_m c_{n−m}`.
pub fn solve_kprime_recurrence(phi: &TruncatedSeries, order: usize) -> Result<TruncatedSeries> {
    let b0 = phi.coeff(0);
    if (b0 - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidPhi(format!("B_0 must equal 1, got {b0}")));
    }
    let b: Vec<f64> = (0..=order).map(|m| phi.coeff(m)).collect();
    let mut c = vec![0.0; order + 1];
    c[0] = 1.0;
    for n in 1..=order {
        let s: f64 = (1..=n).map(|m| b[m] * c[n - m]).sum();
        let v = s / n as f64;
        if !v.is_finite() || v.abs() > OVERFLOW_LIMIT {
            return Err(Error::Overflow { index: n, value: v });
        }
        c[n] = v;
    }
    TruncatedSeries::new(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(c: &[f64]) -> TruncatedSeries {
        TruncatedSeries::new(c.to_vec()).unwrap()
    }

    fn janowski_b(beta: f64, order: usize) -> TruncatedSeries {
        TruncatedSeries::from_fn(order, |n| if n == 0 { 1.0 } else { 2.0 * (1.0 - beta) }).unwrap()
    }

    #[test]
    fn multiply_examples() {
        let one_plus_z = s(&[1.0, 1.0]);
        assert_eq!(one_plus_z.multiply(&one_plus_z.truncate(2)).unwrap().coeffs(), &[1.0, 2.0]);
        let sq = one_plus_z.truncate(2).multiply(&one_plus_z.truncate(2)).unwrap();
        assert_eq!(sq.coeffs(), &[1.0, 2.0, 1.0]);

        let geo = TruncatedSeries::from_fn(4, |_| 1.0).unwrap();
        assert_eq!(geo.multiply(&geo).unwrap().coeffs(), &[1.0, 2.0, 3.0, 4.0, 5.0]);

        // (1+z)/(1-z)^3 = M_{K'}·M_φ for β = 0 at order 3.
        let kp = solve_kprime_recurrence(&janowski_b(0.0, 3), 3).unwrap();
        let prod = kp.majorant().multiply(&janowski_b(0.0, 3).majorant()).unwrap();
        for (got, want) in prod.coeffs().iter().zip([1.0, 4.0, 9.0, 16.0]) {
            assert!((got - want).abs() < 1e-14);
        }
    }

    #[test]
    fn multiply_drops_tail_with_flag() {
        let a = s(&[1.0, 1.0]).with_tail(0.1, 0.5).unwrap();
        let p = a.multiply(&a).unwrap();
        assert!(p.tail().is_none());
        assert!(p.tail_dropped());
    }

    #[test]
    fn overflow_is_loud() {
        assert!(matches!(
            TruncatedSeries::new(vec![1.0, f64::INFINITY]),
            Err(Error::Overflow { index: 1, .. })
        ));
        let big = s(&[1e200, 1e200]);
        assert!(matches!(big.multiply(&big), Err(Error::Overflow { .. })));
        assert!(matches!(TruncatedSeries::new(vec![]), Err(Error::EmptySeries)));
    }

    #[test]
    fn integrate_examples() {
        assert_eq!(s(&[1.0]).integrate_from_zero().unwrap().coeffs(), &[0.0, 1.0]);
        let kp = TruncatedSeries::from_fn(10, |n| (n + 1) as f64).unwrap();
        let k = kp.integrate_from_zero().unwrap();
        assert_eq!(k.coeff(0), 0.0);
        for n in 1..=11 {
            assert!((k.coeff(n) - 1.0).abs() < 1e-15);
        }
        let poly43_kp = s(&[1.0, 4.0 / 3.0, 11.0 / 9.0]);
        let k = poly43_kp.integrate_from_zero().unwrap();
        assert!((k.coeff(2) - 2.0 / 3.0).abs() < 1e-15);
        assert!((k.coeff(3) - 11.0 / 27.0).abs() < 1e-15);
    }

    #[test]
    fn weighted_integrate_examples() {
        assert_eq!(s(&[1.0]).integrate_weighted_t().unwrap().coeffs(), &[0.0, 0.0, 0.5]);
        let kp = TruncatedSeries::from_fn(6, |n| (n + 1) as f64).unwrap();
        let w = kp.integrate_weighted_t().unwrap();
        for n in 0..=6 {
            assert!((w.coeff(n + 2) - (n + 1) as f64 / (n + 2) as f64).abs() < 1e-15);
        }
        let w = s(&[1.0, 4.0 / 3.0]).integrate_weighted_t().unwrap();
        assert!((w.coeff(2) - 0.5).abs() < 1e-15);
        assert!((w.coeff(3) - 4.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn majorant_examples() {
        assert_eq!(s(&[1.0, -2.0, 3.0]).majorant().coeffs(), &[1.0, 2.0, 3.0]);
        assert_eq!(s(&[1.0, -0.5, 0.25]).majorant().coeffs(), &[1.0, 0.5, 0.25]);
        let m = s(&[1.0, -2.0, 3.0]).majorant();
        assert_eq!(m.majorant(), m);
    }

    #[test]
    fn eval_examples_and_domain() {
        let geo = TruncatedSeries::from_fn(200, |n| if n == 0 { 0.0 } else { 1.0 }).unwrap();
        assert!((geo.eval(1.0 / 3.0).unwrap() - 0.5).abs() < 1e-12);
        assert!(geo.eval(1.0).is_err());
        assert!(geo.eval(-1.2).is_err());
        let bounded = s(&[1.0, 1.0]).with_tail(1e-3, 0.5).unwrap();
        assert!(bounded.eval(0.6).is_err());
        assert_eq!(bounded.eval_with_bound(0.5).unwrap(), (1.5, 1e-3));
    }

    #[test]
    fn eval_converged_rejects_short_series() {
        let geo = TruncatedSeries::from_fn(20, |_| 1.0).unwrap();
        assert!(geo.eval_converged(0.1, TAIL_TOLERANCE).is_ok());
        assert!(matches!(
            geo.eval_converged(0.9, TAIL_TOLERANCE),
            Err(Error::TailNotConverged { order: 20, .. })
        ));
    }

    #[test]
    fn recurrence_examples() {
        let identity = solve_kprime_recurrence(&s(&[1.0]), 8).unwrap();
        assert_eq!(identity.coeffs(), &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);

        let kp = solve_kprime_recurrence(&janowski_b(0.0, 40), 40).unwrap();
        for n in 0..=40 {
            assert!((kp.coeff(n) - (n + 1) as f64).abs() < 1e-10 * (n + 1) as f64);
        }

        // exp(4z/3 + z²/3) = 1 + 4z/3 + (z²/3 + 8z²/9) + ...
        let kp = solve_kprime_recurrence(&s(&[1.0, 4.0 / 3.0, 2.0 / 3.0]), 4).unwrap();
        assert!((kp.coeff(1) - 4.0 / 3.0).abs() < 1e-15);
        assert!((kp.coeff(2) - 11.0 / 9.0).abs() < 1e-15);

        assert!(matches!(
            solve_kprime_recurrence(&s(&[2.0, 1.0]), 4),
            Err(Error::InvalidPhi(_))
        ));
    }

    #[test]
    fn recurrence_matches_binomial_series() {
        // (1-z)^{-(2-2β)}: c_n = Π_{k<n} (a+k)/(k+1) with a = 2-2β.
        for beta in [0.0, 0.25, 0.5, 0.75] {
            let a = 2.0 - 2.0 * beta;
            let kp = solve_kprime_recurrence(&janowski_b(beta, 64), 64).unwrap();
            let mut binom = 1.0;
            for n in 0..=64 {
                if n > 0 {
                    binom *= (a + (n - 1) as f64) / n as f64;
                }
                let rel = (kp.coeff(n) - binom).abs() / binom.abs();
                assert!(rel < 1e-12, "beta {beta} n {n} rel {rel}");
            }
        }
    }

    #[test]
    fn shift_and_derivative() {
        let a = s(&[1.0, 2.0, 3.0]);
        assert_eq!(a.shift_up(1).coeffs(), &[0.0, 1.0, 2.0, 3.0]);
        assert_eq!(a.derivative().unwrap().coeffs(), &[2.0, 6.0]);
        assert_eq!(s(&[5.0]).derivative().unwrap().coeffs(), &[0.0]);
    }
}
