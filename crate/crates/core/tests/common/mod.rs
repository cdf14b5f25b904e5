#![allow(dead_code)]

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::Rng;
use zerocert::model::{
    is_feasible_2spin, is_feasible_setcover, marginal_ratio_2spin, marginal_ratio_setcover, ratio_via_setcover_tree,
    ratio_via_tree, Graph, Hypergraph, Pins, Ratio, SpinParams,
};

pub fn random_tree<R: Rng>(rng: &mut R, n: usize) -> Graph {
    let edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.random_range(0..v), v)).collect();
    Graph::new(n, edges).unwrap()
}

/// Each new hyperedge holds one existing vertex and 0 to 2 new ones.
pub fn random_hypertree<R: Rng>(rng: &mut R, max_n: usize) -> Hypergraph {
    let mut n = 1;
    let mut edges = Vec::new();
    while n < max_n && rng.random_bool(0.85) {
        let fresh = rng.random_range(0..=2usize).min(max_n - n);
        let mut e = vec![rng.random_range(0..n)];
        e.extend(n..n + fresh);
        n += fresh;
        edges.push(e);
    }
    Hypergraph::new(n, edges).unwrap()
}

pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let edges: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|_| rng.random_bool(p)).collect();
    Graph::new(n, edges).unwrap()
}

/// Random bipartite graph with its side labels.
pub fn random_bipartite<R: Rng>(rng: &mut R, left: usize, right: usize, p: f64) -> (Graph, Vec<bool>) {
    let mut edges = Vec::new();
    for u in 0..left {
        for v in 0..right {
            if rng.random_bool(p) {
                edges.push((u, left + v));
            }
        }
    }
    let mut sides = vec![true; left];
    sides.extend(vec![false; right]);
    (Graph::new(left + right, edges).unwrap(), sides)
}

pub fn rel_err(a: Complex64, b: Complex64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).norm() / a.norm().max(b.norm())
    }
}

fn ratio_err(a: &Ratio, b: &Ratio) -> f64 {
    match (a, b) {
        (Ratio::Infinity, Ratio::Infinity) => 0.0,
        (Ratio::Finite(x), Ratio::Finite(y)) => rel_err(*x, *y),
        _ => f64::INFINITY,
    }
}

/// One random 2-spin tree case: relative gap between recursion and enumeration.
/// `None` when the draw hits a pole of the ratio.
pub fn two_spin_tree_case<R: Rng>(rng: &mut R) -> Option<f64> {
    let n = rng.random_range(1..=9);
    let tree = random_tree(rng, n);
    let beta = rng.random_range(0.0..3.0f64).max(1e-3);
    let gamma = if rng.random_bool(0.1) { 0.0 } else { rng.random_range(0.0..2.0) };
    let lambda = rng.random_range(-0.5..3.0);
    let params = SpinParams::new(beta, gamma, tree.max_degree().max(2)).unwrap();
    let root = rng.random_range(0..n);
    let mut pins = Pins::new();
    for v in (0..n).filter(|&v| v != root) {
        if rng.random_bool(0.2) {
            let trial = pins.clone().with(v, rng.random_range(0..=1));
            if is_feasible_2spin(&params, &tree, &trial) {
                pins = trial;
            }
        }
    }
    let lam = Complex64::new(lambda, 0.0);
    let brute = marginal_ratio_2spin(&params, &tree, &pins, root, lam).ok()?;
    if brute.finite().is_some_and(|z| z.norm() > 1e8) {
        return None;
    }
    let rec = ratio_via_tree(&params, &tree, root, &pins, lam).ok()?;
    Some(ratio_err(&brute, &rec))
}

/// Same for set covers on a random hypertree.
pub fn setcover_tree_case<R: Rng>(rng: &mut R) -> Option<f64> {
    let h = random_hypertree(rng, 9);
    let n = h.vertex_count();
    let mu = if rng.random_bool(0.25) { -1.0 } else { rng.random_range(-1.0..2.0) };
    let eta = Complex64::new(rng.random_range(0.05..3.0), rng.random_range(-0.5..0.5));
    let root = rng.random_range(0..n);
    let mut pins = Pins::new();
    let mut others: Vec<usize> = (0..n).filter(|&v| v != root).collect();
    others.shuffle(rng);
    for v in others {
        if rng.random_bool(0.2) {
            let trial = pins.clone().with(v, rng.random_range(0..=1));
            if is_feasible_setcover(&h, &trial, mu) {
                pins = trial;
            }
        }
    }
    let brute = marginal_ratio_setcover(&h, &pins, root, mu, eta).ok()?;
    if brute.finite().is_some_and(|z| z.norm() > 1e8) {
        return None;
    }
    let rec = ratio_via_setcover_tree(&h, root, &pins, mu, eta).ok()?;
    Some(ratio_err(&brute, &rec))
}

use zerocert::potential::{g_func, h_func, phi, rh_closed_form};

/// Random valid point for the closed forms: (params, λ, x, y) with both
/// real parts 1 + γλe^x cos y and β + λe^x cos y bounded away from zero.
pub fn random_rh_point<R: Rng>(rng: &mut R) -> (SpinParams, f64, f64, f64) {
    loop {
        let beta = rng.random_range(0.05..3.0);
        let gamma = if rng.random_bool(0.1) { 0.0 } else { rng.random_range(0.0..2.0) };
        let delta = rng.random_range(2..=16);
        let lambda = if rng.random_bool(0.3) { rng.random_range(-1.0..0.0) } else { rng.random_range(0.0..50.0) };
        let x = rng.random_range(-4.0..2.0);
        let y = rng.random_range(-1.5..1.5);
        let s = lambda * f64::exp(x) * f64::cos(y);
        if 1.0 + gamma * s > 0.05 && beta + s > 0.05 {
            return (SpinParams::new(beta, gamma, delta).unwrap(), lambda, x, y);
        }
    }
}

/// max(|Δr|, |Δh|) between the closed form and the principal log, scaled by max(1, |φ|).
pub fn rh_error(p: &SpinParams, lambda: f64, x: f64, y: f64) -> f64 {
    let (r, h) = rh_closed_form(p, lambda, x, y).unwrap();
    let direct = phi(p, Ratio::Finite(Complex64::from_polar(lambda.abs(), 0.0) * lambda.signum() * Complex64::new(x, y).exp()))
        .unwrap();
    let scale = direct.norm().max(1.0);
    (r - direct.re).abs().max((h - direct.im.abs()).abs()) / scale
}

/// Extrapolated ∂G/∂k at k = 0 against H, relative to max(1, |H|).
/// `None` when the draw leaves the region where both are defined.
pub fn h_fd_error<R: Rng>(rng: &mut R) -> Option<f64> {
    let (p, lambda, _, _) = random_rh_point(rng);
    let x = rng.random_range(-2.0..0.5) / p.d();
    let x0 = x + rng.random_range(0.0..2.0);
    let x1 = x - 1.0;
    let s = lambda * (p.d() * x).exp();
    if !(1.0 + p.gamma * s > 0.05 && p.beta + s > 0.05) {
        return None;
    }
    let h = h_func(&p, lambda, x0, x).ok()?;
    let eps = 1e-4;
    let d = |e: f64| g_func(&p, lambda, x0, x1, e, x).map(|g| g / e);
    // two Richardson levels on one-sided quotients: O(ε³) remainder
    let (d1, d2, d4) = (d(eps).ok()?, d(0.5 * eps).ok()?, d(0.25 * eps).ok()?);
    let (r1, r2) = (2.0 * d2 - d1, 2.0 * d4 - d2);
    let fd = (4.0 * r2 - r1) / 3.0;
    Some((fd - h).abs() / h.abs().max(1.0))
}

/// Least-squares slope of ln e_m against m over the errors above the rounding floor, as a ratio.
pub fn decay_ratio(errs: &[(usize, f64)]) -> f64 {
    let pts: Vec<(f64, f64)> = errs.iter().filter(|(_, e)| *e > 1e-13).map(|&(m, e)| (m as f64, e.ln())).collect();
    if pts.len() < 2 {
        return 0.0;
    }
    let n = pts.len() as f64;
    let (sx, sy) = pts.iter().fold((0.0, 0.0), |(a, b), p| (a + p.0, b + p.1));
    let (mx, my) = (sx / n, sy / n);
    let (num, den) = pts.iter().fold((0.0, 0.0), |(a, b), p| (a + (p.0 - mx) * (p.1 - my), b + (p.0 - mx).powi(2)));
    (num / den).exp()
}
