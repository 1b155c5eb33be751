//! The improved Bohr inequality adds the normalised area of f(𝔻_r) to the
//! majorant, which pulls the radius in. Needs |α| < 1.

use harmonic_bohr::solver::solve;
use harmonic_bohr::{AlphaParam, Pipeline, PhiSpec, RadiusQuery};

fn main() -> harmonic_bohr::Result<()> {
    let phi = PhiSpec::poly43();
    for a in [0.0, 0.3, 0.6, 0.9] {
        let alpha = AlphaParam::new(a)?;
        let plain = solve(&RadiusQuery::new(phi.clone(), alpha, Pipeline::Hc))?;
        let improved = solve(&RadiusQuery::new(phi.clone(), alpha, Pipeline::Improved))?;
        println!(
            "alpha {a:.1}: r_f {:.6} -> r'_f {:.6} (bohr radius {:.6})",
            plain.r_f, improved.r_f, improved.bohr_radius
        );
    }
    Ok(())
}
