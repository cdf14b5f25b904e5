//! Roots of partition polynomials, random zero scans and truncated-log approximation.

use std::str::FromStr;

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{is_feasible_2spin, z_polynomial_2spin, Graph, PartitionPolynomial, Pins, SpinParams};
use crate::thresholds::{bounded_lambda_bound, Sign};

const ABERTH_MAX_ITER: usize = 500;
const ABERTH_RESTARTS: usize = 4;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootSet {
    pub roots: Vec<Complex64>,
    /// max |p(z)| / Σ|c_j||z|^j over the roots.
    pub residual_max: f64,
}

fn scaled_residual(c: &[Complex64], z: Complex64) -> f64 {
    let mut v = Complex64::new(0.0, 0.0);
    let mut s = 0.0;
    for a in c.iter().rev() {
        v = v * z + a;
        s = s * z.norm() + a.norm();
    }
    if s == 0.0 {
        0.0
    } else {
        v.norm() / s
    }
}

fn eval_with_derivative(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// Simultaneous Aberth iteration for a polynomial with non-zero constant term.
fn aberth(c: &[Complex64], rng: &mut ChaCha8Rng) -> Option<Vec<Complex64>> {
    let n = c.len() - 1;
    let lead = c[n].norm();
    // Fujiwara-type bound on the root moduli
    let radius = (0..n).map(|j| (c[j].norm() / lead).powf(1.0 / (n - j) as f64)).fold(0.0f64, f64::max) * 2.0;
    let inner = (c[0].norm() / (c[0].norm() + (1..=n).map(|j| c[j].norm()).fold(0.0, f64::max))).max(1e-300);
    let r0 = (radius * inner).sqrt().clamp(1e-6, radius.max(1e-6));
    for _ in 0..ABERTH_RESTARTS {
        let offset: f64 = rng.random::<f64>() * std::f64::consts::TAU;
        let mut z: Vec<Complex64> = (0..n)
            .map(|i| Complex64::from_polar(r0 * (1.0 + 0.1 * rng.random::<f64>()), offset + std::f64::consts::TAU * i as f64 / n as f64))
            .collect();
        for _ in 0..ABERTH_MAX_ITER {
            let mut moved = 0.0f64;
            for i in 0..n {
                let (p, dp) = eval_with_derivative(c, z[i]);
                if p.norm() == 0.0 {
                    continue;
                }
                let ratio = p / dp;
                let s: Complex64 = (0..n).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
                let step = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
                if step.is_finite() {
                    z[i] -= step;
                    moved = moved.max(step.norm() / z[i].norm().max(1e-300));
                }
            }
            if moved < 1e-15 {
                break;
            }
        }
        if z.iter().all(|r| r.is_finite()) && z.iter().all(|&r| scaled_residual(c, r) < 1e-10) {
            return Some(z);
        }
    }
    None
}

/// All complex roots with multiplicity, roots at the origin included.
pub fn poly_roots(p: &PartitionPolynomial) -> Result<RootSet> {
    let deg = p.degree().filter(|&d| d >= 1).ok_or_else(|| Error::Domain("polynomial must have degree ≥ 1".into()))?;
    let zeros = p.order_at_origin();
    let c: Vec<Complex64> = p.coeffs[zeros..=deg].iter().map(|&x| Complex64::new(x, 0.0)).collect();
    let mut roots = vec![Complex64::new(0.0, 0.0); zeros];
    if c.len() > 1 {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ deg as u64);
        let found = aberth(&c, &mut rng).ok_or_else(|| Error::NoConvergence("Aberth iteration".into()))?;
        roots.extend(found);
    }
    let full: Vec<Complex64> = p.coeffs[..=deg].iter().map(|&x| Complex64::new(x, 0.0)).collect();
    let residual_max = roots.iter().map(|&z| scaled_residual(&full, z)).fold(0.0, f64::max);
    Ok(RootSet { roots, residual_max })
}

/// Distance from z to the real segment between a and b.
pub fn segment_distance(z: Complex64, a: f64, b: f64) -> f64 {
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    Complex64::new(z.re - z.re.clamp(lo, hi), z.im).norm()
}

/// Random bounded-degree graphs with random pins, e.g. `random:n=12,deg=3,count=200`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub n: usize,
    pub max_degree: usize,
    pub count: usize,
    /// Probability that a vertex is pinned.
    pub pin_fraction: f64,
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Domain(format!("family must look like random:n=12,deg=3,count=200; got {s:?}"));
        let rest = s.strip_prefix("random:").ok_or_else(bad)?;
        let mut f = FamilySpec { n: 12, max_degree: 3, count: 200, pin_fraction: 0.2 };
        for kv in rest.split(',').filter(|p| !p.is_empty()) {
            let (k, v) = kv.split_once('=').ok_or_else(bad)?;
            match k.trim() {
                "n" => f.n = v.trim().parse().map_err(|_| bad())?,
                "deg" => f.max_degree = v.trim().parse().map_err(|_| bad())?,
                "count" => f.count = v.trim().parse().map_err(|_| bad())?,
                "pins" => f.pin_fraction = v.trim().parse().map_err(|_| bad())?,
                _ => return Err(bad()),
            }
        }
        if f.n == 0 || f.n > 24 || !(0.0..=1.0).contains(&f.pin_fraction) {
            return Err(bad());
        }
        Ok(f)
    }
}

/// A graph with max degree ≤ `max_degree` on 1..=n vertices; edge density varies per draw.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, max_degree: usize) -> Graph {
    let n = rng.random_range(1..=n);
    let density: f64 = rng.random_range(0.2..1.0);
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    pairs.shuffle(rng);
    let mut deg = vec![0; n];
    let mut edges = Vec::new();
    for (u, v) in pairs {
        if deg[u] < max_degree && deg[v] < max_degree && rng.random_bool(density) {
            deg[u] += 1;
            deg[v] += 1;
            edges.push((u, v));
        }
    }
    Graph::new(n, edges).expect("simple by construction")
}

/// Random pins; a pin that would make the configuration infeasible is skipped.
pub fn random_pins<R: Rng>(rng: &mut R, params: &SpinParams, g: &Graph, fraction: f64) -> Pins {
    let mut pins = Pins::new();
    for v in 0..g.vertex_count() {
        if rng.random_bool(fraction) {
            let trial = pins.clone().with(v, rng.random_range(0..=1u8));
            if is_feasible_2spin(params, g, &trial) {
                pins = trial;
            }
        }
    }
    pins
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScanVerdict {
    Pass,
    Fail,
    /// Beyond the closed-form bound, yet no sampled instance had a nearby root.
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    pub pins: Vec<(usize, u8)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub family: FamilySpec,
    pub seed: u64,
    pub lambda0: f64,
    pub delta: f64,
    pub bound: Option<f64>,
    pub instances: usize,
    pub min_distance: f64,
    pub nearest_root: Option<Complex64>,
    pub worst_instance: Option<Instance>,
    pub max_residual: f64,
    pub verdict: ScanVerdict,
}

/// Root distance of one instance's polynomial to the segment, origin roots removed.
fn instance_distance(params: &SpinParams, g: &Graph, pins: &Pins, lambda0: f64) -> Result<(f64, Option<Complex64>, f64)> {
    let p = z_polynomial_2spin(params, g, pins)?.strip_origin();
    if p.degree().unwrap_or(0) == 0 {
        return Ok((f64::INFINITY, None, 0.0));
    }
    let rs = poly_roots(&p)?;
    let mut best = (f64::INFINITY, None);
    for &z in &rs.roots {
        let d = segment_distance(z, 0.0, lambda0);
        if d < best.0 {
            best = (d, Some(z));
        }
    }
    Ok((best.0, best.1, rs.residual_max))
}

/// Samples the family with a seeded generator and reports the closest root to [0, λ₀].
pub fn zero_scan(params: &SpinParams, family: &FamilySpec, lambda0: f64, delta: f64, seed: u64) -> Result<ScanReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases = Vec::with_capacity(family.count);
    for _ in 0..family.count {
        let g = random_graph(&mut rng, family.n, family.max_degree.min(params.delta));
        let pins = random_pins(&mut rng, params, &g, family.pin_fraction);
        cases.push((g, pins));
    }
    let results: Vec<Result<(f64, Option<Complex64>, f64)>> =
        cases.par_iter().map(|(g, pins)| instance_distance(params, g, pins, lambda0)).collect();
    let mut min_distance = f64::INFINITY;
    let mut nearest_root = None;
    let mut worst_instance = None;
    let mut max_residual = 0.0f64;
    for ((g, pins), r) in cases.iter().zip(results) {
        let (d, z, res) = r?;
        max_residual = max_residual.max(res);
        if d < min_distance {
            min_distance = d;
            nearest_root = z;
            worst_instance = Some(Instance { n: g.vertex_count(), edges: g.edges().to_vec(), pins: pins.iter().collect() });
        }
    }
    let bound = bounded_lambda_bound(params, Sign::of(lambda0)).ok().map(|(_, b)| b);
    let verdict = if min_distance <= delta {
        ScanVerdict::Fail
    } else if bound.is_some_and(|b| lambda0.abs() >= b.abs()) {
        ScanVerdict::Inconclusive
    } else {
        ScanVerdict::Pass
    };
    Ok(ScanReport {
        family: *family,
        seed,
        lambda0,
        delta,
        bound,
        instances: cases.len(),
        min_distance,
        nearest_root,
        worst_instance,
        max_residual,
        verdict,
    })
}

/// Coefficients a_1..a_m of ln(q(z)) for a series q with q(0) = 1.
fn log_series(q: &[Complex64], m: usize) -> Vec<Complex64> {
    let at = |j: usize| q.get(j).copied().unwrap_or_default();
    let mut a = vec![Complex64::new(0.0, 0.0); m + 1];
    for j in 1..=m {
        let mut s = Complex64::new(0.0, 0.0);
        for i in 1..j {
            s += a[i] * at(j - i) * i as f64;
        }
        a[j] = at(j) - s / j as f64;
    }
    a.remove(0);
    a
}

/// First m Taylor coefficients of ln(Z(λ)/Z(0)) at λ = 0.
pub fn log_taylor(p: &PartitionPolynomial, m: usize) -> Result<Vec<Complex64>> {
    let c0 = p.coeffs.first().copied().unwrap_or(0.0);
    if c0 == 0.0 {
        return Err(Error::ZeroConstantTerm);
    }
    let q: Vec<Complex64> = p.coeffs.iter().map(|&c| Complex64::new(c / c0, 0.0)).collect();
    Ok(log_series(&q, m))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaylorApprox {
    pub terms: usize,
    pub log_coeffs: Vec<Complex64>,
    /// Point where the series is summed: λ itself, or its preimage under the map.
    pub z: Complex64,
    pub value: Complex64,
    pub relative_error_vs_exact: f64,
}

fn sum_series(a: &[Complex64], z: Complex64) -> Complex64 {
    a.iter().rev().fold(Complex64::new(0.0, 0.0), |s, &c| (s + c) * z)
}

/// Splits Z = λ^j·Q with Q(0) ≠ 0; the λ^j factor is exact and only Q is expanded.
fn split_origin(p: &PartitionPolynomial) -> Result<(usize, PartitionPolynomial)> {
    let j = p.order_at_origin();
    if j >= p.coeffs.len() {
        return Err(Error::ZeroConstantTerm);
    }
    Ok((j, p.strip_origin()))
}

fn finish(p: &PartitionPolynomial, q: &PartitionPolynomial, j: usize, lambda: Complex64, z: Complex64, a: Vec<Complex64>) -> TaylorApprox {
    let value = sum_series(&a, z).exp() * q.coeffs[0] * lambda.powu(j as u32);
    let exact = p.eval(lambda);
    let relative_error_vs_exact = if value == exact { 0.0 } else { (value - exact).norm() / exact.norm() };
    TaylorApprox { terms: a.len(), log_coeffs: a, z, value, relative_error_vs_exact }
}

/// Z(0)·exp(Σ_{j≤m} a_j λ^j), compared with the exact value.
/// A root of order j at the origin is split off first and multiplied back exactly.
pub fn barvinok_eval(p: &PartitionPolynomial, lambda: Complex64, m: usize) -> Result<TaylorApprox> {
    let (j, q) = split_origin(p)?;
    let a = log_taylor(&q, m)?;
    Ok(finish(p, &q, j, lambda, lambda, a))
}

/// The map z ↦ 4az/(1−z)², taking the unit disk onto the plane slit along (−∞, −a].
pub fn slit_map(a: f64, z: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    z * 4.0 * a / ((one - z) * (one - z))
}

/// Preimage of λ under [`slit_map`] inside the unit disk.
pub fn slit_preimage(a: f64, lambda: Complex64) -> Result<Complex64> {
    if lambda.norm() == 0.0 {
        return Ok(lambda);
    }
    if lambda.im == 0.0 && lambda.re <= -a {
        return Err(Error::Domain(format!("λ = {lambda} lies on the slit (−∞, −{a}]")));
    }
    // λz² − (2λ + 4a)z + λ = 0; the two roots are reciprocal
    let b = lambda * 2.0 + 4.0 * a;
    let disc = (b * b - lambda * lambda * 4.0).sqrt();
    let z1 = (b + disc) / (lambda * 2.0);
    let z2 = (b - disc) / (lambda * 2.0);
    Ok(if z1.norm() < z2.norm() { z1 } else { z2 })
}

/// Truncated log series of Z after composing with [`slit_map`], summed at the preimage of λ.
///
/// Converges whenever Z has no zeros off the slit inside a disk of radius
/// larger than |z(λ)|, so zero freeness near [0, λ] and on (−a, 0] is what matters.
pub fn barvinok_eval_mapped(p: &PartitionPolynomial, lambda: Complex64, m: usize, a: f64) -> Result<TaylorApprox> {
    let (order, q) = split_origin(p)?;
    let c0 = q.coeffs[0];
    let z = slit_preimage(a, lambda)?;
    // series of the map: 4a Σ j z^j
    let phi: Vec<Complex64> = (0..=m).map(|j| Complex64::new(4.0 * a * j as f64, 0.0)).collect();
    let mut acc = vec![Complex64::new(0.0, 0.0); m + 1];
    for &c in q.coeffs.iter().rev() {
        let mut next = vec![Complex64::new(0.0, 0.0); m + 1];
        for (i, &x) in acc.iter().enumerate() {
            if x == Complex64::new(0.0, 0.0) {
                continue;
            }
            for (j, &y) in phi.iter().enumerate().take(m + 1 - i).skip(1) {
                next[i + j] += x * y;
            }
        }
        next[0] += c;
        acc = next;
    }
    let series: Vec<Complex64> = acc.iter().map(|&x| x / c0).collect();
    Ok(finish(p, &q, order, lambda, z, log_series(&series, m)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[f64]) -> PartitionPolynomial {
        PartitionPolynomial::new(c.to_vec())
    }

    #[test]
    fn linear_and_quadratic_roots() {
        let r = poly_roots(&poly(&[1.0, 3.0])).unwrap();
        assert!((r.roots[0] - Complex64::new(-1.0 / 3.0, 0.0)).norm() < 1e-14);
        let r = poly_roots(&poly(&[2.0, 2.0, 0.5])).unwrap();
        for z in r.roots {
            assert!((z - Complex64::new(-2.0, 0.0)).norm() < 1e-6);
        }
        let r = poly_roots(&poly(&[0.0, 0.0, 1.0, 1.0])).unwrap();
        assert_eq!(r.roots.iter().filter(|z| z.norm() == 0.0).count(), 2);
    }

    #[test]
    fn log_series_of_linear_factor() {
        let a = log_taylor(&poly(&[1.0, 3.0]), 4).unwrap();
        let want = [3.0, -4.5, 9.0, -20.25];
        for (x, w) in a.iter().zip(want) {
            assert!((x.re - w).abs() < 1e-12 && x.im == 0.0);
        }
        assert_eq!(log_taylor(&poly(&[0.0, 1.0]), 3), Err(Error::ZeroConstantTerm));
    }

    #[test]
    fn slit_map_round_trip() {
        for l in [0.5, 3.15, 10.0] {
            let lam = Complex64::new(l, 0.3);
            let z = slit_preimage(4.0 / 27.0, lam).unwrap();
            assert!(z.norm() < 1.0);
            assert!((slit_map(4.0 / 27.0, z) - lam).norm() < 1e-12);
        }
        assert!(slit_preimage(0.1, Complex64::new(-0.2, 0.0)).is_err());
    }

    #[test]
    fn family_parsing() {
        let f: FamilySpec = "random:n=10,deg=4,count=7".parse().unwrap();
        assert_eq!((f.n, f.max_degree, f.count), (10, 4, 7));
        assert!("grid:n=3".parse::<FamilySpec>().is_err());
        assert!("random:n=40".parse::<FamilySpec>().is_err());
    }

    #[test]
    fn root_at_origin_is_split_off() {
        // λ(1 + λ): the factor λ is exact, so only ln(1 + λ) is expanded
        let p = poly(&[0.0, 1.0, 1.0]);
        let t = barvinok_eval(&p, Complex64::new(0.2, 0.0), 30).unwrap();
        assert!(t.relative_error_vs_exact < 1e-15);
        assert_eq!(barvinok_eval(&p, Complex64::new(0.0, 0.0), 3).unwrap().relative_error_vs_exact, 0.0);
        assert!(barvinok_eval_mapped(&p, Complex64::new(2.0, 0.0), 40, 1.0).unwrap().relative_error_vs_exact < 1e-8);
        assert!(barvinok_eval(&poly(&[0.0, 0.0]), Complex64::new(1.0, 0.0), 3).is_err());
    }

    #[test]
    fn segment_distance_cases() {
        assert_eq!(segment_distance(Complex64::new(-1.0, 0.0), 0.0, 3.0), 1.0);
        assert_eq!(segment_distance(Complex64::new(1.0, 2.0), 3.0, 0.0), 2.0);
        assert_eq!(segment_distance(Complex64::new(4.0, 0.0), -1.0, 3.0), 1.0);
    }
}
