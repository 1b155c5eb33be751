use harmonic_bohr::report::{poly43_constant_lines, render_constants, Format};
use harmonic_bohr::solver::poly43_constants;

fn main() -> harmonic_bohr::Result<()> {
    print!("{}", render_constants(&poly43_constant_lines()?, Format::Text));

    // Above this |α| the hc root drops below 1/3 and the radius is sharp.
    let c = poly43_constants()?;
    println!("\nthreshold at full precision: {:.10}", c.alpha_threshold);
    Ok(())
}
