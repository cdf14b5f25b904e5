//! Weighted set covers: edge factor 1 + μ ∏_{v∈e} (1 − σ(v)) and activity η.
//!
//! The activity is attached to vertices at spin 0, so the marginal ratio is
//! R = Z_{σ(v)=0} / Z_{σ(v)=1} and an unconstrained vertex has R = η.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::enumerate::for_each_extension;
use super::{Hypergraph, PartitionPolynomial, Pins, Ratio, DEFAULT_BUDGET};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SetCoverParams {
    pub mu: f64,
    pub eta: f64,
    pub delta: usize,
}

impl SetCoverParams {
    pub fn new(mu: f64, eta: f64, delta: usize) -> Result<Self> {
        if !(mu >= -1.0) || !mu.is_finite() {
            return Err(Error::Domain(format!("μ must be at least −1, got {mu}")));
        }
        if !(eta >= 0.0) || !eta.is_finite() {
            return Err(Error::Domain(format!("η must be non-negative, got {eta}")));
        }
        if delta < 2 {
            return Err(Error::Domain(format!("Δ must be at least 2, got {delta}")));
        }
        Ok(SetCoverParams { mu, eta, delta })
    }
}

pub fn is_feasible_setcover(h: &Hypergraph, pins: &Pins, mu: f64) -> bool {
    if mu != -1.0 {
        return true;
    }
    !h.edges().iter().any(|e| e.iter().all(|&v| pins.get(v) == Some(0)))
}

fn check(h: &Hypergraph, pins: &Pins, mu: f64) -> Result<()> {
    pins.check_range(h.vertex_count())?;
    if !is_feasible_setcover(h, pins, mu) {
        return Err(Error::Infeasible);
    }
    Ok(())
}

fn edge_product(h: &Hypergraph, mu: f64, mask: u64) -> f64 {
    let mut w = 1.0;
    for e in h.edges() {
        if e.iter().all(|&v| (mask >> v) & 1 == 0) {
            w *= 1.0 + mu;
        }
    }
    w
}

/// Brute-force Z(G, μ, η) = Σ_σ ∏_e φ_e(σ) · η^{#{v: σ(v)=0}}.
pub fn exact_z_setcover(h: &Hypergraph, mu: f64, eta: Complex64, pins: &Pins) -> Result<Complex64> {
    check(h, pins, mu)?;
    let n = h.vertex_count();
    let powers: Vec<Complex64> = std::iter::successors(Some(Complex64::new(1.0, 0.0)), |p| Some(p * eta))
        .take(n + 1)
        .collect();
    let mut total = Complex64::new(0.0, 0.0);
    for_each_extension(n, pins, DEFAULT_BUDGET, |mask| {
        let w = edge_product(h, mu, mask);
        if w != 0.0 {
            total += powers[n - mask.count_ones() as usize] * w;
        }
    })?;
    Ok(total)
}

/// Coefficients of Z in η, indexed by the number of vertices at spin 0.
pub fn z_polynomial_setcover(h: &Hypergraph, mu: f64, pins: &Pins) -> Result<PartitionPolynomial> {
    check(h, pins, mu)?;
    let n = h.vertex_count();
    let mut coeffs = vec![0.0; n + 1];
    for_each_extension(n, pins, DEFAULT_BUDGET, |mask| {
        coeffs[n - mask.count_ones() as usize] += edge_product(h, mu, mask);
    })?;
    Ok(PartitionPolynomial::new(coeffs))
}

/// R = Z_{σ(v)=0} / Z_{σ(v)=1} by enumeration; ∞ when pinned 0, 0 when pinned 1.
pub fn marginal_ratio_setcover(h: &Hypergraph, pins: &Pins, v: usize, mu: f64, eta: Complex64) -> Result<Ratio> {
    check(h, pins, mu)?;
    if v >= h.vertex_count() {
        return Err(Error::InvalidInstance(format!("vertex {v} out of range")));
    }
    match pins.get(v) {
        Some(0) => return Ok(Ratio::Infinity),
        Some(_) => return Ok(Ratio::ZERO),
        None => {}
    }
    let restricted = |s: u8| -> Result<Complex64> {
        let p = pins.clone().with(v, s);
        if !is_feasible_setcover(h, &p, mu) {
            return Ok(Complex64::new(0.0, 0.0));
        }
        exact_z_setcover(h, mu, eta, &p)
    };
    let z0 = restricted(0)?;
    let z1 = restricted(1)?;
    let zero = Complex64::new(0.0, 0.0);
    match (z0 == zero, z1 == zero) {
        (true, true) => Err(Error::UndefinedRatio),
        (_, true) => Ok(Ratio::Infinity),
        _ => Ok(Ratio::Finite(z0 / z1)),
    }
}

/// f(z; μ, η) = η ∏_i (1 + μ ∏_j z_ij / (1 + z_ij)), one inner list per hyperedge.
pub fn recursion_setcover(mu: f64, eta: Complex64, children: &[Vec<Ratio>]) -> Result<Ratio> {
    let mut out = eta;
    for edge in children {
        let mut inner = Complex64::new(1.0, 0.0);
        for z in edge {
            match z {
                Ratio::Infinity => {}
                Ratio::Finite(z) => {
                    let den = z + 1.0;
                    if den == Complex64::new(0.0, 0.0) {
                        return Err(Error::Pole("child ratio equals −1".into()));
                    }
                    inner *= z / den;
                }
            }
        }
        out *= inner * mu + 1.0;
    }
    Ok(Ratio::Finite(out))
}

/// For μ = −1, pins to 1 every free vertex that would empty some hyperedge
/// if set to 0. Pinning to 1 cannot block anything new, so one pass suffices.
pub fn pin_blocked_vertices(h: &Hypergraph, pins: &Pins, mu: f64) -> Pins {
    if mu != -1.0 {
        return pins.clone();
    }
    let mut out = pins.clone();
    for v in pins.free_vertices(h.vertex_count()) {
        let blocked = h
            .incident(v)
            .iter()
            .any(|&e| h.edges()[e].iter().all(|&u| u == v || pins.get(u) == Some(0)));
        if blocked {
            out = out.with(v, 1);
        }
    }
    out
}

/// Marginal ratio at `root` of a hyperforest via [`recursion_setcover`].
///
/// Blocked vertices are pinned first. Hyperedges holding a vertex pinned to 1
/// are dropped from the product, since their factor is identically 1.
pub fn ratio_via_setcover_tree(h: &Hypergraph, root: usize, pins: &Pins, mu: f64, eta: Complex64) -> Result<Ratio> {
    if !h.is_hyperforest() {
        return Err(Error::Cyclic);
    }
    if root >= h.vertex_count() {
        return Err(Error::InvalidInstance(format!("vertex {root} out of range")));
    }
    check(h, pins, mu)?;
    let pins = pin_blocked_vertices(h, pins, mu);
    ratio_below(h, root, usize::MAX, &pins, mu, eta)
}

fn ratio_below(h: &Hypergraph, v: usize, via: usize, pins: &Pins, mu: f64, eta: Complex64) -> Result<Ratio> {
    match pins.get(v) {
        Some(0) => return Ok(Ratio::Infinity),
        Some(_) => return Ok(Ratio::ZERO),
        None => {}
    }
    let mut children = Vec::new();
    for &e in h.incident(v) {
        if e == via {
            continue;
        }
        let others: Vec<usize> = h.edges()[e].iter().copied().filter(|&u| u != v).collect();
        if others.iter().any(|&u| pins.get(u) == Some(1)) {
            continue;
        }
        let mut zs = Vec::with_capacity(others.len());
        for u in others {
            zs.push(ratio_below(h, u, e, pins, mu, eta)?);
        }
        children.push(zs);
    }
    recursion_setcover(mu, eta, &children)
}
