//! Scalar functions of `r` whose values and roots give the growth, area
//! and Bohr-type bounds.
//!
//! [`Functionals`] caches every derived series for one `(φ, N)` so that a
//! root scan can evaluate them repeatedly at Horner cost. The Janowski
//! closed forms, `D_1` and the coefficient bounds are free functions.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extremal::{BoundaryQuantities, ExtremalPair};
use crate::phi::PhiSpec;
use crate::quadrature::integrate;
use crate::series::{TruncatedSeries, TAIL_TOLERANCE};

/// Modulus `|α| ∈ [0, 1]` of the dilation parameter in `g' = α z h'`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AlphaParam(f64);

impl AlphaParam {
    pub fn new(alpha_abs: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&alpha_abs) {
            Ok(Self(alpha_abs))
        } else {
            Err(Error::InvalidParameter(format!(
                "|alpha| must lie in [0, 1], got {alpha_abs}"
            )))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }

    /// Fails for `|α| = 1`, where the improved inequality loses its
    /// positivity argument.
    pub fn require_strict(self) -> Result<Self> {
        if self.0 < 1.0 {
            Ok(self)
        } else {
            Err(Error::InvalidParameter("this bound requires |alpha| < 1".into()))
        }
    }
}

/// Bounds on the area `S_r` of `f(𝔻_r)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AreaBounds {
    pub lower: f64,
    pub upper: f64,
}

/// `T_c(r)`, `T(r)` and `R_{C_c}(r)` for the conjugate-point class.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConjugateTerms {
    pub t_c: f64,
    pub t_int: f64,
    pub r_cc: f64,
}

pub struct Functionals {
    phi: PhiSpec,
    pair: ExtremalPair,
    boundary: BoundaryQuantities,
    int_t_kprime: TruncatedSeries,
    int_t_m_kprime: TruncatedSeries,
    int_t_kprime_sq: TruncatedSeries,
    int_t3_kprime_sq: TruncatedSeries,
    /// `Σ p_n t^n/(n+1)` where `Σ p_n t^n = M_{K'}(t)·M_φ(t)`.
    t_c: TruncatedSeries,
    t_int: TruncatedSeries,
    int_t_t_c: TruncatedSeries,
}

fn eval(s: &TruncatedSeries, r: f64) -> Result<f64> {
    s.eval_converged(r, TAIL_TOLERANCE)
}

impl Functionals {
    pub fn new(phi: &PhiSpec, pair: ExtremalPair) -> Result<Self> {
        let order = pair.order();
        let kprime = pair.kprime();
        let sq = kprime.multiply(kprime)?;
        let m_phi = phi.coeffs_to(order)?.majorant();
        let product = pair.m_kprime().multiply(&m_phi)?;
        let t_c = TruncatedSeries::from_fn(order, |n| product.coeff(n) / (n + 1) as f64)?;
        Ok(Self {
            boundary: pair.boundary_quantities()?,
            int_t_kprime: kprime.integrate_weighted_t()?,
            int_t_m_kprime: pair.m_kprime().integrate_weighted_t()?,
            int_t_kprime_sq: sq.integrate_weighted_power(1)?,
            int_t3_kprime_sq: sq.integrate_weighted_power(3)?,
            t_int: t_c.integrate_from_zero()?,
            int_t_t_c: t_c.integrate_weighted_t()?,
            t_c,
            phi: phi.clone(),
            pair,
        })
    }

    /// Builds the extremal pair at `order` and wraps it.
    pub fn at_order(phi: &PhiSpec, order: usize) -> Result<Self> {
        Self::new(phi, ExtremalPair::build(phi, order)?)
    }

    pub fn phi(&self) -> &PhiSpec {
        &self.phi
    }

    pub fn pair(&self) -> &ExtremalPair {
        &self.pair
    }

    pub fn boundary(&self) -> BoundaryQuantities {
        self.boundary
    }

    /// `L(1, α) = −K(−1) − |α| ∫_0^1 t K'(−t) dt`, the lower bound on the
    /// distance from `f(0)` to the boundary of `f(𝔻)`.
    pub fn distance_lower_bound(&self, alpha: AlphaParam) -> f64 {
        -self.boundary.k_neg1 - alpha.get() * self.boundary.int_t_kprime_neg
    }

    /// `L(r, α) = −K(−r) − |α| ∫_0^r t K'(−t) dt` for `r ∈ [0, 1]`.
    pub fn growth_l(&self, alpha: AlphaParam, r: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&r) {
            return Err(Error::OutsideDomain { arg: r, limit: 1.0 });
        }
        if r == 1.0 {
            return Ok(self.distance_lower_bound(alpha));
        }
        // ∫_0^r t K'(−t) dt is the weighted series evaluated at −r.
        Ok(-eval(self.pair.k(), -r)? - alpha.get() * eval(&self.int_t_kprime, -r)?)
    }

    /// `R(r, α) = K(r) + |α| ∫_0^r t K'(t) dt` for `r ∈ [0, 1)`.
    pub fn growth_r(&self, alpha: AlphaParam, r: f64) -> Result<f64> {
        check_open(r)?;
        Ok(eval(self.pair.k(), r)? + alpha.get() * eval(&self.int_t_kprime, r)?)
    }

    /// `R_C(r) = M_K(r) + |α| ∫_0^r t M_{K'}(t) dt`.
    pub fn bohr_majorant_rc(&self, alpha: AlphaParam, r: f64) -> Result<f64> {
        check_open(r)?;
        Ok(eval(self.pair.m_k(), r)? + alpha.get() * eval(&self.int_t_m_kprime, r)?)
    }

    /// `2π ∫_0^r t(1 − |α|²t²) K'(∓t)² dt`.
    pub fn area_bounds(&self, alpha: AlphaParam, r: f64) -> Result<AreaBounds> {
        if !(r > 0.0 && r < 1.0) {
            return Err(Error::OutsideDomain { arg: r, limit: 1.0 });
        }
        let a2 = alpha.get() * alpha.get();
        let (lower, upper) = if self.pair.has_closed_form() {
            let weight = |t: f64| t * (1.0 - a2 * t * t);
            let pair = &self.pair;
            let lo = integrate(
                |t| weight(t) * pair.closed_kprime(-t).map_or(f64::NAN, |v| v * v),
                0.0,
                r,
            )?;
            let hi = integrate(
                |t| weight(t) * pair.closed_kprime(t).map_or(f64::NAN, |v| v * v),
                0.0,
                r,
            )?;
            (lo.value, hi.value)
        } else {
            (self.area_term(a2, -r)?, self.area_term(a2, r)?)
        };
        Ok(AreaBounds {
            lower: 2.0 * PI * lower,
            upper: 2.0 * PI * upper,
        })
    }

    /// `∫_0^{|x|} t(1 − |α|²t²) K'(sign(x)·t)² dt` from the squared series.
    fn area_term(&self, a2: f64, x: f64) -> Result<f64> {
        Ok(eval(&self.int_t_kprime_sq, x)? - a2 * eval(&self.int_t3_kprime_sq, x)?)
    }

    /// `R'_f(r) = R_C(r) + ∫_0^r t(1 − |α|²t²) K'(t)² dt`, requires `|α| < 1`.
    pub fn improved_rf(&self, alpha: AlphaParam, r: f64) -> Result<f64> {
        alpha.require_strict()?;
        let a2 = alpha.get() * alpha.get();
        Ok(self.bohr_majorant_rc(alpha, r)? + self.area_term(a2, r)?)
    }

    /// `T_c(r) = (1/r) ∫_0^r M_{K'} M_φ`, `T(r) = ∫_0^r T_c` and
    /// `R_{C_c}(r) = T(r) + |α| ∫_0^r t T_c(t) dt`.
    pub fn conjugate(&self, alpha: AlphaParam, r: f64) -> Result<ConjugateTerms> {
        check_open(r)?;
        let t_int = eval(&self.t_int, r)?;
        Ok(ConjugateTerms {
            t_c: eval(&self.t_c, r)?,
            t_int,
            r_cc: t_int + alpha.get() * eval(&self.int_t_t_c, r)?,
        })
    }
}

fn check_open(r: f64) -> Result<()> {
    if (0.0..1.0).contains(&r) {
        Ok(())
    } else {
        Err(Error::OutsideDomain { arg: r, limit: 1.0 })
    }
}

/// Below this distance from `β = 0` or `β = 1/2` the general formula is
/// replaced by its removable-singularity limit.
const BETA_SPECIAL_CASE: f64 = 1e-6;

fn check_beta(beta: f64) -> Result<()> {
    if (0.0..1.0).contains(&beta) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("beta must lie in [0, 1), got {beta}")))
    }
}

/// Closed-form lower growth bound `L(r, α, β)` of the class `M(α, β)`,
/// `r ∈ [0, 1]`.
pub fn janowski_l_closed(alpha: AlphaParam, beta: f64, r: f64) -> Result<f64> {
    check_beta(beta)?;
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::OutsideDomain { arg: r, limit: 1.0 });
    }
    let a = alpha.get();
    let v = if beta.abs() < BETA_SPECIAL_CASE {
        (1.0 + a) * r / (1.0 + r) - a * r.ln_1p()
    } else if (beta - 0.5).abs() < BETA_SPECIAL_CASE {
        -a * r + (1.0 + a) * r.ln_1p()
    } else {
        let tb = 2.0 * beta;
        (-(a + tb) * (1.0 + r) + (1.0 + r).powf(tb) * (a + tb - (tb - 1.0) * a * r))
            / (tb * (tb - 1.0) * (1.0 + r))
    };
    Ok(v)
}

/// Closed-form upper growth bound `R(r, α, β)`, `r ∈ [0, 1)`.
pub fn janowski_r_closed(alpha: AlphaParam, beta: f64, r: f64) -> Result<f64> {
    check_beta(beta)?;
    check_open(r)?;
    let a = alpha.get();
    let v = if beta.abs() < BETA_SPECIAL_CASE {
        (1.0 + a) * r / (1.0 - r) + a * (-r).ln_1p()
    } else if (beta - 0.5).abs() < BETA_SPECIAL_CASE {
        -a * r - (1.0 + a) * (-r).ln_1p()
    } else {
        let tb = 2.0 * beta;
        ((a + tb) * (1.0 - r) - (1.0 - r).powf(tb) * (a + tb + (tb - 1.0) * a * r))
            / (tb * (tb - 1.0) * (1.0 - r))
    };
    Ok(v)
}

/// `D_1(r) = R(r, α, β) − L(1, α, β)`.
pub fn d1(alpha: AlphaParam, beta: f64, r: f64) -> Result<f64> {
    Ok(janowski_r_closed(alpha, beta, r)? - janowski_l_closed(alpha, beta, 1.0)?)
}

/// Sharp bounds on `|a_n|` and `|b_n|` for `M(α, β)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoeffBounds {
    pub n: usize,
    pub a_bound: f64,
    pub b_bound: f64,
}

/// `|a_n| ≤ Π_{j=2}^{n}(j−2β)/n!` and `|b_n| ≤ |α|(n−1)Π_{j=2}^{n−1}(j−2β)/n!`
/// (`|b_2| = |α|/2`), the Taylor coefficients of the extremal
/// `∫ (1−t)^{2β−2} dt + conj(∫ α t (1−t)^{2β−2} dt)`.
pub fn coeff_bounds(alpha: AlphaParam, beta: f64, n: usize) -> Result<CoeffBounds> {
    check_beta(beta)?;
    if n < 2 {
        return Err(Error::InvalidParameter(format!("coefficient index must be >= 2, got {n}")));
    }
    // Π_{j=2}^{m}(j−2β)/m! built as a running ratio to avoid overflow.
    let mut prev = 1.0; // m = 1
    for m in 2..n {
        prev *= (m as f64 - 2.0 * beta) / m as f64;
    }
    let a_bound = prev * (n as f64 - 2.0 * beta) / n as f64;
    // prev = Π_{j=2}^{n−1}(j−2β)/(n−1)!
    let b_bound = alpha.get() * (n - 1) as f64 * prev / n as f64;
    Ok(CoeffBounds { n, a_bound, b_bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::LN_2;

    fn al(a: f64) -> AlphaParam {
        AlphaParam::new(a).unwrap()
    }

    fn funcs(phi: &PhiSpec, r: f64) -> Functionals {
        Functionals::new(phi, ExtremalPair::for_radius(phi, r).unwrap()).unwrap()
    }

    #[test]
    fn alpha_param_domain() {
        assert!(AlphaParam::new(-0.1).is_err());
        assert!(AlphaParam::new(1.1).is_err());
        assert!(al(1.0).require_strict().is_err());
        assert!(al(0.99).require_strict().is_ok());
    }

    #[test]
    fn growth_l_examples() {
        let j0 = funcs(&PhiSpec::janowski(0.0).unwrap(), 0.5);
        assert!((j0.growth_l(al(0.0), 1.0).unwrap() - 0.5).abs() < 1e-10);
        assert!((j0.growth_l(al(1.0), 1.0).unwrap() - (1.0 - LN_2)).abs() < 1e-10);
        assert_eq!(j0.growth_l(al(0.3), 0.0).unwrap(), 0.0);
        let p = funcs(&PhiSpec::poly43(), 0.5);
        assert!((p.growth_l(al(1.0), 1.0).unwrap() - 0.349489).abs() < 2e-6);
        assert!(p.growth_l(al(1.0), 1.01).is_err());
    }

    #[test]
    fn growth_r_examples() {
        let p = funcs(&PhiSpec::poly43(), 0.5);
        assert!((p.growth_r(al(0.0), 1.0 / 3.0).unwrap() - 0.425549).abs() < 1e-6);
        assert!((p.growth_r(al(1.0), 1.0 / 3.0).unwrap() - 0.502149).abs() < 1e-4);
        let j0 = funcs(&PhiSpec::janowski(0.0).unwrap(), 0.5);
        let want = 1.5 + 0.5 * 0.5_f64.ln();
        assert!((j0.growth_r(al(0.5), 0.5).unwrap() - want).abs() < 1e-10);
        assert!((want - 1.153426).abs() < 1e-6);
        assert!(j0.growth_r(al(0.5), 1.0).is_err());
    }

    #[test]
    fn rc_examples() {
        let p = funcs(&PhiSpec::poly43(), 0.8);
        for r in [0.1, 0.3, 0.6] {
            let a = al(0.7);
            assert!((p.bohr_majorant_rc(a, r).unwrap() - p.growth_r(a, r).unwrap()).abs() < 1e-14);
        }
        let j0 = funcs(&PhiSpec::janowski(0.0).unwrap(), 0.5);
        assert!((j0.bohr_majorant_rc(al(0.0), 1.0 / 3.0).unwrap() - 0.5).abs() < 1e-12);

        let mixed = PhiSpec::custom(TruncatedSeries::new(vec![1.0, 1.0, -0.25]).unwrap()).unwrap();
        let m = funcs(&mixed, 0.5);
        assert!(m.bohr_majorant_rc(al(0.0), 0.2).unwrap() >= m.growth_r(al(0.0), 0.2).unwrap());
    }

    #[test]
    fn area_examples() {
        let j0 = funcs(&PhiSpec::janowski(0.0).unwrap(), 0.6);
        let b = j0.area_bounds(al(0.0), 0.5).unwrap();
        // ∫_0^r t(1−t)^{−4} dt = 1/(3(1−r)^3) − 1/(2(1−r)^2) + 1/6.
        let oracle = |r: f64| 1.0 / (3.0 * (1.0 - r).powi(3)) - 1.0 / (2.0 * (1.0 - r).powi(2)) + 1.0 / 6.0;
        assert!((b.upper - 2.0 * PI * oracle(0.5)).abs() < 1e-9);
        assert!(b.lower <= b.upper);

        let id = Functionals::at_order(&PhiSpec::identity_fixture(), 16).unwrap();
        let b = id.area_bounds(al(0.0), 0.4).unwrap();
        assert!((b.lower - PI * 0.16).abs() < 1e-14);
        assert!((b.upper - PI * 0.16).abs() < 1e-14);
        assert!(id.area_bounds(al(0.0), 0.0).is_err());
    }

    #[test]
    fn custom_area_uses_series() {
        let phi = PhiSpec::custom(TruncatedSeries::new(vec![1.0, 4.0 / 3.0, 2.0 / 3.0]).unwrap()).unwrap();
        let custom = funcs(&phi, 0.6);
        let preset = funcs(&PhiSpec::poly43(), 0.6);
        let (a, b) = (
            custom.area_bounds(al(0.4), 0.5).unwrap(),
            preset.area_bounds(al(0.4), 0.5).unwrap(),
        );
        assert!((a.lower - b.lower).abs() < 1e-9 && (a.upper - b.upper).abs() < 1e-9);
    }

    #[test]
    fn improved_examples() {
        let j0 = funcs(&PhiSpec::janowski(0.0).unwrap(), 0.5);
        let oracle = 1.0 / (3.0 * 0.8_f64.powi(3)) - 1.0 / (2.0 * 0.8_f64.powi(2)) + 1.0 / 6.0;
        let rc = j0.bohr_majorant_rc(al(0.0), 0.2).unwrap();
        assert!((j0.improved_rf(al(0.0), 0.2).unwrap() - (rc + oracle)).abs() < 1e-12);
        assert_eq!(j0.improved_rf(al(0.5), 0.0).unwrap(), 0.0);
        assert!(j0.improved_rf(al(0.5), 0.3).unwrap() > j0.bohr_majorant_rc(al(0.5), 0.3).unwrap());
        assert!(j0.improved_rf(al(1.0), 0.3).is_err());
    }

    #[test]
    fn conjugate_examples() {
        let j0 = funcs(&PhiSpec::janowski(0.0).unwrap(), 0.8);
        for r in [0.1, 0.4, 0.7] {
            let c = j0.conjugate(al(0.6), r).unwrap();
            assert!((c.t_c - 1.0 / (1.0 - r).powi(2)).abs() < 1e-9);
            assert!((c.t_int - r / (1.0 - r)).abs() < 1e-9);
            assert!((c.r_cc - j0.bohr_majorant_rc(al(0.6), r).unwrap()).abs() < 1e-9);
        }
        assert!((j0.conjugate(al(0.0), 1e-9).unwrap().t_c - 1.0).abs() < 1e-8);
        let p = funcs(&PhiSpec::poly43(), 0.5);
        for r in [0.05, 0.1, 0.2] {
            assert!(p.conjugate(al(0.0), r).unwrap().r_cc >= p.pair().m_k().eval(r).unwrap());
        }
    }

    #[test]
    fn closed_form_examples() {
        assert!((janowski_l_closed(al(0.0), 0.0, 1.0).unwrap() - 0.5).abs() < 1e-15);
        for r in [0.1, 0.5, 0.9] {
            assert!((janowski_r_closed(al(0.0), 0.5, r).unwrap() + (1.0 - r).ln()).abs() < 1e-15);
        }
        // Recomputed from the general formula; equals ∫_0^1 (1+t)^{-0.2} dt.
        let v = janowski_l_closed(al(0.0), 0.9, 1.0).unwrap();
        assert!((v - 0.926_376_408_240_310).abs() < 1e-12, "{v}");
        let q = integrate(|t: f64| (1.0 + t).powf(-0.2), 0.0, 1.0).unwrap().value;
        assert!((v - q).abs() < 1e-10);
        assert!(janowski_r_closed(al(0.0), 0.5, 1.0).is_err());
        assert!(janowski_l_closed(al(0.0), 1.0, 0.5).is_err());
    }

    #[test]
    fn closed_forms_continuous_across_special_betas() {
        for b0 in [0.0, 0.5] {
            for a in [0.0, 0.5, 1.0] {
                for r in [0.2, 0.7] {
                    // Just past the switch the general formula must stay within the
                    // O(1e-6)·|d/dβ| drift of the exact function.
                    let above = b0 + 1.01e-6;
                    let dl = janowski_l_closed(al(a), above, r).unwrap() - janowski_l_closed(al(a), b0, r).unwrap();
                    let dr = janowski_r_closed(al(a), above, r).unwrap() - janowski_r_closed(al(a), b0, r).unwrap();
                    assert!(dl.abs() < 1e-5 && dr.abs() < 1e-5, "b0 {b0} a {a} r {r} dl {dl} dr {dr}");
                }
            }
        }
    }

    #[test]
    fn d1_examples() {
        assert!(d1(al(0.0), 0.0, 1.0 / 3.0).unwrap().abs() < 1e-15);
        assert!(d1(al(0.0), 0.5, 0.5).unwrap().abs() < 1e-15);
        assert!(d1(al(0.5), 0.0, 0.273).unwrap().abs() < 5e-4);
    }

    #[test]
    fn coeff_bound_examples() {
        for n in 2..30 {
            let c = coeff_bounds(al(0.3), 0.0, n).unwrap();
            assert!((c.a_bound - 1.0).abs() < 1e-14);
            assert!((c.b_bound - 0.3 * (n - 1) as f64 / n as f64).abs() < 1e-14);
            let c = coeff_bounds(al(0.3), 0.5, n).unwrap();
            assert!((c.a_bound - 1.0 / n as f64).abs() < 1e-14);
        }
        assert!((coeff_bounds(al(0.6), 0.4, 2).unwrap().b_bound - 0.3).abs() < 1e-15);
        assert!(coeff_bounds(al(0.6), 0.4, 1).is_err());
    }

    #[test]
    fn coefficient_sum_reproduces_closed_r() {
        for beta in [0.0, 0.25, 0.5, 0.9] {
            for a in [0.0, 0.5, 1.0] {
                for r in [0.2_f64, 0.5, 0.8] {
                    let sum: f64 = r + (2..=200)
                        .map(|n| {
                            let c = coeff_bounds(al(a), beta, n).unwrap();
                            (c.a_bound + c.b_bound) * r.powi(n as i32)
                        })
                        .sum::<f64>();
                    let closed = janowski_r_closed(al(a), beta, r).unwrap();
                    assert!((sum - closed).abs() < 1e-6, "beta {beta} a {a} r {r}");
                }
            }
        }
    }

    #[test]
    fn d1_is_increasing() {
        for beta in [0.0, 0.5, 0.9] {
            for a in [0.0, 0.5, 1.0] {
                let mut prev = f64::NEG_INFINITY;
                for k in 1..1000 {
                    let v = d1(al(a), beta, k as f64 / 1000.0).unwrap();
                    assert!(v > prev);
                    prev = v;
                }
            }
        }
    }
}
