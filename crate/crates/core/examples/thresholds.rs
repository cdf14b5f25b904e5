// Closed-form activity bounds for a few parameter choices.

use zerocert::model::SpinParams;
use zerocert::thresholds::{bounded_lambda_bound, setcover_eta_bound, unbounded_lambda_interval, Sign};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for (b, g, d, sign) in [
        (3.0, 0.8, 11, Sign::Positive),
        (3.0, 1.5, 6, Sign::Negative),
        (1.5, 0.4, 6, Sign::Negative),
        (1.2, 0.5, 16, Sign::Positive),
    ] {
        let p = SpinParams::new(b, g, d)?;
        let (case, bound) = bounded_lambda_bound(&p, sign)?;
        println!("β={b} γ={g} Δ={d} {sign:?}: {case:?}, bound {bound:.6}");
    }
    let (case, lo, hi) = unbounded_lambda_interval(3.0, 0.8)?;
    println!("any degree, β=3 γ=0.8: {case:?} on ({lo:.6}, {hi:.6})");
    let eta = setcover_eta_bound(5, 1.0)?;
    println!("set covers Δ=5 μ=1: η < {:.6}", eta.eta);
    assert!((eta.eta - 1.453991).abs() < 1e-5);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
