// Truncated log-series evaluation, plain and through the slit map.

use num_complex::Complex64;
use zerocert::model::{z_polynomial_2spin, Graph, Pins, SpinParams};
use zerocert::spectra::{barvinok_eval, barvinok_eval_mapped};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let p = SpinParams::hard_core(3);
    let g = Graph::cycle(8)?;
    let poly = z_polynomial_2spin(&p, &g, &Pins::new())?;
    let small = barvinok_eval(&poly, Complex64::new(0.05, 0.0), 20)?;
    println!("λ=0.05, plain, 20 terms: error {:.2e}", small.relative_error_vs_exact);
    let lam = Complex64::new(3.0, 0.0);
    for m in [10, 20, 40] {
        let t = barvinok_eval_mapped(&poly, lam, m, 4.0 / 27.0)?;
        println!("λ=3, slit map, {m} terms: error {:.2e}", t.relative_error_vs_exact);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
