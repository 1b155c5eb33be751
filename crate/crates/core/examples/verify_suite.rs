use harmonic_bohr::report::{run_verify, VerifyOptions};

fn main() {
    let report = run_verify(&VerifyOptions::default());
    print!("{}", report.render());
    if !report.passed() {
        std::process::exit(1);
    }
}
