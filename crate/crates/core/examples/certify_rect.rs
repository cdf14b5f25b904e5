// Rectangle certificate near βγ = 1.

use zerocert::certifier::{certify_rect, CertifyOptions};
use zerocert::model::SpinParams;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let p = SpinParams::new(1.0, 0.9, 4)?;
    let cert = certify_rect(&p, 1.0, &CertifyOptions::default())?;
    println!("{}", serde_json::to_string_pretty(&cert)?);
    assert!(cert.is_pass());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
