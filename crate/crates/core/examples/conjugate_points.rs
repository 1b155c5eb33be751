//! Functions convex with respect to conjugate points: the `hcc` pipeline
//! next to `hc`.
//!
//! When every coefficient of φ is nonnegative, `K'φ = (zK')'` makes
//! `T_c = K'` and the two functionals coincide. A φ with a negative
//! coefficient separates them.

use harmonic_bohr::solver::solve;
use harmonic_bohr::{AlphaParam, Pipeline, PhiSpec, RadiusQuery, TruncatedSeries};

fn main() -> harmonic_bohr::Result<()> {
    let mixed = PhiSpec::custom(TruncatedSeries::new(vec![1.0, 0.7, -0.2])?)?;
    for phi in [PhiSpec::janowski(0.5)?, PhiSpec::poly43(), mixed] {
        for a in [0.0, 0.5, 1.0] {
            let alpha = AlphaParam::new(a)?;
            let hc = solve(&RadiusQuery::new(phi.clone(), alpha, Pipeline::Hc))?;
            let hcc = solve(&RadiusQuery::new(phi.clone(), alpha, Pipeline::Hcc))?;
            println!("{phi:<20} alpha {a:.1}  hc r_f {:.6}  hcc r_f {:.6}", hc.r_f, hcc.r_f);
        }
    }
    Ok(())
}
