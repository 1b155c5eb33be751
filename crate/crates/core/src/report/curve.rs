use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::extremal::with_adaptive_order;
use crate::functionals::{d1, AlphaParam, Functionals};
use crate::phi::PhiSpec;
use crate::solver::{pipeline_gap, Pipeline, SCAN_END};

/// Samples of `D_1(r)` (for `mab`) or of a pipeline's `G(r)` on a grid of
/// radii, one series per `α`.
#[derive(Debug, Clone)]
pub struct CurveRequest {
    pub pipeline: Pipeline,
    pub phi: PhiSpec,
    pub alphas: Vec<f64>,
    pub rs: Vec<f64>,
    pub order: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    pub rs: Vec<f64>,
    /// `(α, values)` in request order.
    pub series: Vec<(f64, Vec<f64>)>,
}

pub fn compute_curve(req: &CurveRequest) -> Result<Curve> {
    if let Some(&r) = req.rs.iter().find(|r| !(0.0..=SCAN_END).contains(*r)) {
        return Err(Error::OutsideDomain { arg: r, limit: SCAN_END });
    }
    let alphas = req
        .alphas
        .iter()
        .map(|&a| AlphaParam::new(a))
        .collect::<Result<Vec<_>>>()?;
    let series = match req.pipeline {
        Pipeline::Mab => {
            let beta = req.phi.beta().ok_or_else(|| {
                Error::InvalidParameter("pipeline mab needs a Janowski phi".into())
            })?;
            alphas
                .iter()
                .map(|&a| {
                    let v = req.rs.iter().map(|&r| d1(a, beta, r)).collect::<Result<Vec<_>>>()?;
                    Ok((a.get(), v))
                })
                .collect::<Result<Vec<_>>>()?
        }
        p => with_adaptive_order(req.order, |order| {
            let f = Functionals::at_order(&req.phi, order)?;
            alphas
                .iter()
                .map(|&a| {
                    let v = req
                        .rs
                        .iter()
                        .map(|&r| pipeline_gap(&f, p, a, r))
                        .collect::<Result<Vec<_>>>()?;
                    Ok((a.get(), v))
                })
                .collect::<Result<Vec<_>>>()
        })?,
    };
    Ok(Curve { rs: req.rs.clone(), series })
}

impl Curve {
    /// `r,alpha=<a1>,alpha=<a2>,…`
    pub fn to_csv_wide(&self) -> String {
        let mut s = String::from("r");
        for (a, _) in &self.series {
            let _ = write!(s, ",alpha={a}");
        }
        s.push('\n');
        for (i, r) in self.rs.iter().enumerate() {
            let _ = write!(s, "{r}");
            for (_, v) in &self.series {
                let _ = write!(s, ",{}", v[i]);
            }
            s.push('\n');
        }
        s
    }

    /// `r,value` for the `k`-th `α`.
    pub fn to_csv_single(&self, k: usize) -> String {
        let mut s = String::from("r,value\n");
        for (r, v) in self.rs.iter().zip(&self.series[k].1) {
            let _ = writeln!(s, "{r},{v}");
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::parse_grid;

    fn mab(beta: f64, alphas: Vec<f64>, rs: Vec<f64>) -> Curve {
        compute_curve(&CurveRequest {
            pipeline: Pipeline::Mab,
            phi: PhiSpec::janowski(beta).unwrap(),
            alphas,
            rs,
            order: 256,
        })
        .unwrap()
    }

    #[test]
    fn d1_curve_examples() {
        let c = mab(0.0, vec![0.0], vec![0.0, 1.0 / 3.0]);
        assert!(c.series[0].1[1].abs() < 1e-12);
        // D_1(0) = −L(1, 0, 0) = −1/2.
        assert!((c.series[0].1[0] + 0.5).abs() < 1e-12);

        let c = mab(0.5, vec![0.9], vec![0.30, 0.31]);
        let v = &c.series[0].1;
        assert!(v[0] < 0.0 && v[1] > 0.0);
    }

    #[test]
    fn layouts() {
        let c = mab(0.0, vec![0.0, 0.5], parse_grid("0:0.2:0.1").unwrap());
        let wide = c.to_csv_wide();
        assert!(wide.starts_with("r,alpha=0,alpha=0.5\n"));
        assert_eq!(wide.lines().count(), 4);
        let single = c.to_csv_single(1);
        assert!(single.starts_with("r,value\n0,"));
    }

    #[test]
    fn series_pipeline_curve_crosses_zero() {
        let c = compute_curve(&CurveRequest {
            pipeline: Pipeline::Hc,
            phi: PhiSpec::poly43(),
            alphas: vec![0.8],
            rs: vec![0.0, 0.3, 0.6],
            order: 256,
        })
        .unwrap();
        let v = &c.series[0].1;
        assert!(v[0] < 0.0 && v[2] > 0.0);
    }

    #[test]
    fn rejects_radii_outside_scan_range() {
        let err = compute_curve(&CurveRequest {
            pipeline: Pipeline::Mab,
            phi: PhiSpec::janowski(0.0).unwrap(),
            alphas: vec![0.0],
            rs: vec![0.5, 1.0],
            order: 256,
        });
        assert!(matches!(err, Err(Error::OutsideDomain { .. })));
    }
}
