//! The sharp radii of the class M(α, β) for β = 0, 1/2 and 0.9, computed
//! in parallel and printed the way the command-line `table` prints them.

use harmonic_bohr::report::{compute_table, parse_grid, TableRequest};
use harmonic_bohr::{Pipeline, PhiSpec};

fn main() -> harmonic_bohr::Result<()> {
    let phis = [0.0, 0.5, 0.9]
        .into_iter()
        .map(PhiSpec::janowski)
        .collect::<harmonic_bohr::Result<Vec<_>>>()?;
    let req = TableRequest::new(Pipeline::Mab, phis, parse_grid("0:0.9:0.1")?);
    let report = compute_table(&req)?;
    print!("{}", report.to_text());
    Ok(())
}
