//! A Ma-Minda function given only by its Taylor coefficients. The boundary
//! integrals at t = 1 are then extrapolated, which shows up in the notes.
//!
//! The second query passes ψ(z) = φ(−z), which has ψ'(0) < 0; it is
//! rotated back and gives the same radius.

use harmonic_bohr::solver::solve;
use harmonic_bohr::{AlphaParam, Pipeline, PhiSpec, RadiusQuery, TruncatedSeries};

fn main() -> harmonic_bohr::Result<()> {
    // φ(z) = 1 + z + z²/2: not a preset.
    let phi = PhiSpec::custom(TruncatedSeries::new(vec![1.0, 1.0, 0.5])?)?;
    let alpha = AlphaParam::new(0.7)?;
    let res = solve(&RadiusQuery::new(phi.clone(), alpha, Pipeline::Hc))?;
    println!("{phi}: r_f {:.8}, validation {:?}", res.r_f, phi.validation());
    for n in &res.notes {
        println!("  note: {n}");
    }

    let psi = PhiSpec::custom_from_psi(TruncatedSeries::new(vec![1.0, -1.0, 0.5])?)?;
    let res = solve(&RadiusQuery::new(psi.clone(), alpha, Pipeline::Hc))?;
    println!("{psi}: r_f {:.8}", res.r_f);
    Ok(())
}
