// The log-ratio potential: one recursion step in w-coordinates and the function H.

use num_complex::Complex64;
use zerocert::model::{recursion_2spin, Ratio, SpinParams};
use zerocert::potential::{f_phi, h_func, phi};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let p = SpinParams::new(3.0, 0.8, 4)?;
    let lam = Complex64::new(2.0, 0.5);
    let kids = [Ratio::Finite(Complex64::new(0.7, 0.1)), Ratio::Finite(Complex64::new(1.2, -0.3))];
    let ws: Vec<Complex64> = kids.iter().map(|&r| phi(&p, r)).collect::<Result<_, _>>()?;
    let via_w = f_phi(&p, lam, &ws)?;
    let direct = phi(&p, recursion_2spin(&p, lam, &kids)?)?;
    println!("step in w: {via_w}, φ of the step: {direct}");
    assert!((via_w - direct).norm() < 1e-12);

    let x0 = (-p.beta.ln()).max(0.0);
    for x in [-1.5, -1.2, -0.9] {
        println!("H(λ=20, x={x}) = {:.6}", h_func(&p, 20.0, x0, x)?);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
