//! Adaptive Simpson quadrature and Richardson extrapolation.

use crate::error::{Error, Result};

pub const DEFAULT_ABS_TOL: f64 = 1e-10;
pub const MAX_DEPTH: u32 = 40;

/// Integral estimate with the accumulated local error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub error: f64,
}

struct Panel {
    a: f64,
    m: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
}

/// Adaptive Simpson on `[a, b]` to absolute tolerance `tol`. Fails when a
/// panel is still unresolved at `max_depth` bisections.
pub fn adaptive_simpson<F>(f: F, a: f64, b: f64, tol: f64, max_depth: u32) -> Result<Quadrature>
where
    F: Fn(f64) -> f64,
{
    if a == b {
        return Ok(Quadrature { value: 0.0, error: 0.0 });
    }
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = (b - a) * (fa + 4.0 * fm + fb) / 6.0;
    let mut worst = 0.0_f64;
    let q = recurse(
        &f,
        Panel { a, m, b, fa, fm, fb, whole },
        tol,
        max_depth,
        &mut worst,
    );
    if worst > 0.0 {
        return Err(Error::Quadrature { a, b, achieved: worst });
    }
    if !q.value.is_finite() {
        return Err(Error::Quadrature { a, b, achieved: f64::INFINITY });
    }
    Ok(q)
}

fn recurse<F: Fn(f64) -> f64>(
    f: &F,
    p: Panel,
    tol: f64,
    depth: u32,
    unresolved: &mut f64,
) -> Quadrature {
    let lm = 0.5 * (p.a + p.m);
    let rm = 0.5 * (p.m + p.b);
    let (flm, frm) = (f(lm), f(rm));
    let left = (p.m - p.a) * (p.fa + 4.0 * flm + p.fm) / 6.0;
    let right = (p.b - p.m) * (p.fm + 4.0 * frm + p.fb) / 6.0;
    let diff = left + right - p.whole;
    let err = diff.abs() / 15.0;
    if err <= tol || depth == 0 {
        if err > tol {
            *unresolved = unresolved.max(err);
        }
        return Quadrature {
            value: left + right + diff / 15.0,
            error: err,
        };
    }
    let l = recurse(
        f,
        Panel { a: p.a, m: lm, b: p.m, fa: p.fa, fm: flm, fb: p.fm, whole: left },
        0.5 * tol,
        depth - 1,
        unresolved,
    );
    let r = recurse(
        f,
        Panel { a: p.m, m: rm, b: p.b, fa: p.fm, fm: frm, fb: p.fb, whole: right },
        0.5 * tol,
        depth - 1,
        unresolved,
    );
    Quadrature {
        value: l.value + r.value,
        error: l.error + r.error,
    }
}

/// [`adaptive_simpson`] with the crate defaults (1e-10, depth 40).
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64) -> Result<Quadrature> {
    adaptive_simpson(f, a, b, DEFAULT_ABS_TOL, MAX_DEPTH)
}

/// Extrapolated limit of `g(t)` as `t → 1⁻`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extrapolated {
    pub value: f64,
    /// Magnitude of the last Richardson step.
    pub error: f64,
}

/// Samples `g` at `t_k = 1 − 2^{−k}` for `k` in `first..=last` and runs a
/// Richardson table assuming an expansion in powers of `h = 2^{−k}`.
pub fn richardson_to_one<F>(mut g: F, first: u32, last: u32) -> Result<Extrapolated>
where
    F: FnMut(f64) -> Result<f64>,
{
    assert!(last > first, "need at least two samples");
    let samples = (first..=last)
        .map(|k| g(1.0 - 0.5_f64.powi(k as i32)))
        .collect::<Result<Vec<_>>>()?;
    // Neville-style table; row j eliminates h^j.
    let mut row = samples;
    let mut error = f64::INFINITY;
    let mut factor = 2.0;
    while row.len() > 1 {
        let next: Vec<f64> = row
            .windows(2)
            .map(|w| w[1] + (w[1] - w[0]) / (factor - 1.0))
            .collect();
        error = (next[next.len() - 1] - row[row.len() - 1]).abs();
        row = next;
        factor *= 2.0;
    }
    Ok(Extrapolated { value: row[0], error })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomials_are_exact() {
        let q = integrate(|x| x * x * x - 2.0 * x + 1.0, 0.0, 2.0).unwrap();
        assert!((q.value - (4.0 - 4.0 + 2.0)).abs() < 1e-13);
    }

    #[test]
    fn smooth_integrals() {
        let q = integrate(|t: f64| t / (1.0 + t).powi(2), 0.0, 1.0).unwrap();
        assert!((q.value - (std::f64::consts::LN_2 - 0.5)).abs() < 1e-10);
        let q = integrate(f64::exp, 0.0, 1.0).unwrap();
        assert!((q.value - (std::f64::consts::E - 1.0)).abs() < 1e-10);
        let q = integrate(f64::sin, 0.0, 0.0).unwrap();
        assert_eq!(q.value, 0.0);
    }

    #[test]
    fn reversed_interval_changes_sign() {
        let q = integrate(f64::exp, 1.0, 0.0).unwrap();
        assert!((q.value + (std::f64::consts::E - 1.0)).abs() < 1e-10);
    }

    #[test]
    fn non_convergence_reports_achieved_error() {
        // sin(1/x) near 0 cannot be resolved with 3 levels.
        let err = adaptive_simpson(|x: f64| (1.0 / x).sin(), 1e-4, 1.0, 1e-12, 3).unwrap_err();
        assert!(matches!(err, Error::Quadrature { achieved, .. } if achieved > 1e-12));
    }

    #[test]
    fn richardson_recovers_limit() {
        // g(t) = ∫_0^t (1+u)^{-2} du → 1/2 as t → 1.
        let g = |t: f64| Ok(1.0 - 1.0 / (1.0 + t));
        let e = richardson_to_one(g, 4, 12).unwrap();
        assert!((e.value - 0.5).abs() < 1e-12, "{e:?}");
        assert!(e.error < 1e-10);
    }
}
