// Set-cover certificates below and above the η bound for Δ = 5, μ = 1.

use zerocert::certifier::{certify_setcover, CertifyOptions};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let opts = CertifyOptions::default();
    let below = certify_setcover(5, 1.0, 1.40, &opts)?;
    let above = certify_setcover(5, 1.0, 1.50, &opts)?;
    println!("η₀=1.40: {:?}, k={:?}", below.verdict, below.k);
    println!("η₀=1.50: {:?}, {} witnesses", above.verdict, above.failure_witnesses.len());
    assert!(below.is_pass() && !above.is_pass());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
