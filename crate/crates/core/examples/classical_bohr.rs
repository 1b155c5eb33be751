//! Bohr radius of the `hc` pipeline for the Janowski preset at β = 0 and
//! for the quadratic preset, over a range of dilation sizes.
//!
//! For β = 0 the root of `R_C(r) = L(1, α)` sits at or above 1/3 only when
//! α = 0, so the cap never bites afterwards. The quadratic preset crosses
//! below 1/3 once α exceeds the threshold printed by `poly43_constants`.

use harmonic_bohr::solver::bohr_radius_hc;
use harmonic_bohr::{AlphaParam, Pipeline, PhiSpec, RadiusQuery};

fn main() -> harmonic_bohr::Result<()> {
    for phi in [PhiSpec::janowski(0.0)?, PhiSpec::poly43()] {
        println!("{phi}");
        for k in 0..=10 {
            let alpha = AlphaParam::new(k as f64 / 10.0)?;
            let res = bohr_radius_hc(&RadiusQuery::new(phi.clone(), alpha, Pipeline::Hc))?;
            println!(
                "  alpha {:.1}  r_f {:.6}  bohr radius {:.6}  sharp {:5}  {}",
                res.alpha,
                res.r_f,
                res.bohr_radius,
                res.sharp,
                res.notes.join("; ")
            );
        }
    }
    Ok(())
}
