// Degree-free certificates on both sides of zero.

use zerocert::certifier::{certify_unbounded, CertifyOptions};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let opts = CertifyOptions::default();
    for (b, g, l) in [(3.0, 0.8, 41.0), (2.0, 0.6, -0.9)] {
        let cert = certify_unbounded(b, g, l, &opts)?;
        println!("β={b} γ={g} λ₀={l}: {:?} ({:?}), δ̂={:?}", cert.verdict, cert.case_id, cert.delta_hat);
        assert!(cert.is_pass());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
