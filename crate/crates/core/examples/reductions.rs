// Edge covers and bipartite independent sets as weighted set covers.

use num_complex::Complex64;
use zerocert::model::{bis_brute, bis_to_setcover, edge_cover_brute, edge_cover_to_setcover, Graph};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let g = Graph::cycle(5)?;
    let (mu, eta) = (0.5, Complex64::new(1.3, 0.2));
    let red = edge_cover_to_setcover(&g).value(mu, eta)?;
    let brute = edge_cover_brute(&g, mu, eta)?;
    println!("edge covers of C5: reduction {red}, brute force {brute}");
    assert!((red - brute).norm() < 1e-10 * brute.norm());

    let k = Graph::new(5, [(0, 3), (0, 4), (1, 3), (2, 4)])?;
    let left = [true, true, true, false, false];
    let red = bis_to_setcover(&k, &left)?.value(mu, eta)?;
    let brute = bis_brute(&k, &left, mu, eta)?;
    println!("bipartite independent sets: reduction {red}, brute force {brute}");
    assert!((red - brute).norm() < 1e-10 * brute.norm());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
