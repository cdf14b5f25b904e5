// Exact partition functions and the tree recursion for marginal ratios.

use num_complex::Complex64;
use zerocert::model::{exact_z_2spin, marginal_ratio_2spin, ratio_via_tree, z_polynomial_2spin, Graph, Pins, SpinParams};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let hc = SpinParams::hard_core(3);
    let path = Graph::path(3);
    let z = exact_z_2spin(&hc, &path, &Pins::new(), Complex64::new(1.0, 0.0))?;
    println!("hard-core on P3 at λ=1: {z}");
    assert!((z.re - 5.0).abs() < 1e-12);

    let ising = SpinParams::new(2.0, 2.0, 3)?;
    let star = Graph::star(3);
    let lam = Complex64::new(0.3, 0.4);
    let pins = Pins::new().with(2, 1);
    let direct = marginal_ratio_2spin(&ising, &star, &pins, 0, lam)?;
    let tree = ratio_via_tree(&ising, &star, 0, &pins, lam)?;
    println!("root ratio: brute {direct:?}, recursion {tree:?}");
    assert!(direct.approx_eq(&tree, 1e-12));

    let poly = z_polynomial_2spin(&ising, &star, &Pins::new())?;
    println!("coefficients in λ: {:?}", poly.coeffs);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
