//! Growth bounds `L(r, α) ≤ |f(z)| ≤ R(r, α)` and area bounds for the image
//! of the disk of radius r, for the quadratic preset.

use harmonic_bohr::{AlphaParam, Functionals, PhiSpec};

fn main() -> harmonic_bohr::Result<()> {
    let phi = PhiSpec::poly43();
    let f = Functionals::at_order(&phi, 512)?;
    let alpha = AlphaParam::new(0.5)?;
    println!("L(1, 0.5) = {:.8}", f.distance_lower_bound(alpha));
    println!("{:>5} {:>12} {:>12} {:>12} {:>12}", "r", "L(r)", "R(r)", "area lo", "area hi");
    for k in 1..=9 {
        let r = k as f64 / 10.0;
        let area = f.area_bounds(alpha, r)?;
        println!(
            "{r:>5.1} {:>12.8} {:>12.8} {:>12.8} {:>12.8}",
            f.growth_l(alpha, r)?,
            f.growth_r(alpha, r)?,
            area.lower,
            area.upper
        );
    }
    Ok(())
}
