//! Plot-ready samples of D_1(r) = R(r, α, β) − L(1, α, β) for β = 1/2. The
//! zero of each column is the sharp radius.

use harmonic_bohr::report::{compute_curve, parse_grid, CurveRequest};
use harmonic_bohr::{Pipeline, PhiSpec};

fn main() -> harmonic_bohr::Result<()> {
    let curve = compute_curve(&CurveRequest {
        pipeline: Pipeline::Mab,
        phi: PhiSpec::janowski(0.5)?,
        alphas: vec![0.0, 0.3, 0.6, 0.9],
        rs: parse_grid("0:0.6:0.05")?,
        order: 256,
    })?;
    print!("{}", curve.to_csv_wide());
    Ok(())
}
