// Roots of Z(λ) for a seeded random family, measured against the segment [0, λ₀].

use zerocert::model::SpinParams;
use zerocert::spectra::{zero_scan, FamilySpec};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let p = SpinParams::new(3.0, 0.8, 3)?;
    let family: FamilySpec = "random:n=10,deg=3,count=50".parse()?;
    let report = zero_scan(&p, &family, 20.0, 1e-6, 7)?;
    println!(
        "{:?}: nearest root {:?} at distance {:.4} over {} graphs",
        report.verdict, report.nearest_root, report.min_distance, report.instances
    );
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
