//! Sharp coefficient bounds for M(α, β) and the equality behind the sharp
//! radius: at r_f the bounds sum to L(1, α, β).

use harmonic_bohr::functionals::{coeff_bounds, janowski_l_closed};
use harmonic_bohr::solver::bohr_radius_mab;
use harmonic_bohr::AlphaParam;

fn main() -> harmonic_bohr::Result<()> {
    let (alpha, beta) = (AlphaParam::new(0.4)?, 0.25);
    for n in 2..=6 {
        let c = coeff_bounds(alpha, beta, n)?;
        println!("n = {n}: |a_n| <= {:.6}, |b_n| <= {:.6}", c.a_bound, c.b_bound);
    }

    let r = bohr_radius_mab(alpha, beta, 1e-12)?.r_f;
    let mut sum = r;
    for n in 2..=1000 {
        let c = coeff_bounds(alpha, beta, n)?;
        sum += (c.a_bound + c.b_bound) * r.powi(n as i32);
    }
    println!("r_f = {r:.10}");
    println!("sum = {sum:.10}, L(1) = {:.10}", janowski_l_closed(alpha, beta, 1.0)?);
    Ok(())
}
