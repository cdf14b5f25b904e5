// Contraction certificate for bounded degree, then a value past the bound.

use zerocert::certifier::{certify_bounded, CertifyOptions};
use zerocert::model::SpinParams;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let p = SpinParams::new(3.0, 0.8, 11)?;
    let opts = CertifyOptions::default();
    let good = certify_bounded(&p, 41.0, &opts)?;
    println!("λ₀=41: {:?}, k={:?}, δ̂={:?}", good.verdict, good.k, good.delta_hat);
    assert!(good.is_pass());

    let bad = certify_bounded(&p, 45.0, &opts)?;
    println!("λ₀=45: {:?}, min H {:?}", bad.verdict, bad.min_h);
    for w in bad.failure_witnesses.iter().take(3) {
        println!("  {} at {:?}", w.check, w.point);
    }
    assert!(!bad.is_pass());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
