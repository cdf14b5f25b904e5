//! Adapters that express edge covers and bipartite independent sets as set covers.

use num_complex::Complex64;

use super::{exact_z_setcover, Graph, Hypergraph, Pins};
use crate::error::{Error, Result};

/// Set-cover form of a generalised edge cover.
///
/// EC(G; μ, η) = η^{|E|} · μ^{isolated} · Z(hypergraph, μ − 1, 1/η), where
/// `isolated` counts vertices of G without edges (their factor is the constant μ).
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeCoverReduction {
    pub hypergraph: Hypergraph,
    pub edge_count: usize,
    pub isolated: usize,
}

impl EdgeCoverReduction {
    /// Evaluates the right-hand side of the identity.
    pub fn value(&self, mu: f64, eta: Complex64) -> Result<Complex64> {
        let z = exact_z_setcover(&self.hypergraph, mu - 1.0, eta.inv(), &Pins::new())?;
        Ok(z * eta.powu(self.edge_count as u32) * mu.powi(self.isolated as i32))
    }
}

/// One hypergraph vertex per edge of `g`, one hyperedge per non-isolated vertex
/// listing its incident edges.
pub fn edge_cover_to_setcover(g: &Graph) -> EdgeCoverReduction {
    let mut hyperedges = Vec::new();
    let mut isolated = 0;
    for v in 0..g.vertex_count() {
        let inc: Vec<usize> = g
            .edges()
            .iter()
            .enumerate()
            .filter(|(_, &(a, b))| a == v || b == v)
            .map(|(i, _)| i)
            .collect();
        if inc.is_empty() {
            isolated += 1;
        } else {
            hyperedges.push(inc);
        }
    }
    let hypergraph = Hypergraph::new(g.edges().len(), hyperedges).expect("incidence lists are valid");
    EdgeCoverReduction { hypergraph, edge_count: g.edges().len(), isolated }
}

/// Brute-force EC(G; μ, η) = Σ_{F ⊆ E} η^{|F|} ∏_v (1 − (1 − μ)[v uncovered by F]).
pub fn edge_cover_brute(g: &Graph, mu: f64, eta: Complex64) -> Result<Complex64> {
    let m = g.edges().len();
    if m > 24 {
        return Err(Error::Budget { free: m, limit: 24 });
    }
    let mut total = Complex64::new(0.0, 0.0);
    for f in 0u64..(1u64 << m) {
        let mut covered = vec![false; g.vertex_count()];
        for (i, &(a, b)) in g.edges().iter().enumerate() {
            if (f >> i) & 1 == 1 {
                covered[a] = true;
                covered[b] = true;
            }
        }
        let w: f64 = covered.iter().map(|&c| if c { 1.0 } else { mu }).product();
        total += eta.powu(f.count_ones()) * w;
    }
    Ok(total)
}

/// Set-cover form of the bipartite independent set polynomial.
///
/// BIS(G, η, μ) = η^{|L|} · (1 + μ)^{lonely} · Z(hypergraph, μ, 1/η), where `lonely`
/// counts right vertices without neighbours (empty hyperedges are not stored).
#[derive(Debug, Clone, PartialEq)]
pub struct BisReduction {
    pub hypergraph: Hypergraph,
    /// `left[i]` is the graph vertex behind hypergraph vertex `i`.
    pub left: Vec<usize>,
    pub lonely: usize,
}

impl BisReduction {
    pub fn value(&self, mu: f64, eta: Complex64) -> Result<Complex64> {
        let z = exact_z_setcover(&self.hypergraph, mu, eta.inv(), &Pins::new())?;
        Ok(z * eta.powu(self.left.len() as u32) * (1.0 + mu).powi(self.lonely as i32))
    }
}

/// `is_left[v]` declares the side of every vertex; each edge must cross sides.
pub fn bis_to_setcover(g: &Graph, is_left: &[bool]) -> Result<BisReduction> {
    if is_left.len() != g.vertex_count() {
        return Err(Error::InvalidInstance("side labels must cover every vertex".into()));
    }
    if g.edges().iter().any(|&(a, b)| is_left[a] == is_left[b]) {
        return Err(Error::NotBipartite);
    }
    let left: Vec<usize> = (0..g.vertex_count()).filter(|&v| is_left[v]).collect();
    let mut index = vec![usize::MAX; g.vertex_count()];
    for (i, &v) in left.iter().enumerate() {
        index[v] = i;
    }
    let mut hyperedges = Vec::new();
    let mut lonely = 0;
    for v in (0..g.vertex_count()).filter(|&v| !is_left[v]) {
        let mut e: Vec<usize> = g.neighbors(v).iter().map(|&u| index[u]).collect();
        e.sort_unstable();
        if e.is_empty() {
            lonely += 1;
        } else {
            hyperedges.push(e);
        }
    }
    let hypergraph = Hypergraph::new(left.len(), hyperedges)?;
    Ok(BisReduction { hypergraph, left, lonely })
}

/// Brute-force BIS(G, η, μ) = Σ_{I independent} η^{|I ∩ L|} μ^{|I ∩ R|}.
pub fn bis_brute(g: &Graph, is_left: &[bool], mu: f64, eta: Complex64) -> Result<Complex64> {
    let n = g.vertex_count();
    if n > 24 {
        return Err(Error::Budget { free: n, limit: 24 });
    }
    let mut total = Complex64::new(0.0, 0.0);
    for s in 0u64..(1u64 << n) {
        if g.edges().iter().any(|&(a, b)| (s >> a) & 1 == 1 && (s >> b) & 1 == 1) {
            continue;
        }
        let (mut l, mut r) = (0u32, 0i32);
        for v in 0..n {
            if (s >> v) & 1 == 1 {
                if is_left[v] {
                    l += 1;
                } else {
                    r += 1;
                }
            }
        }
        total += eta.powu(l) * mu.powi(r);
    }
    Ok(total)
}

/// Brute-force hypergraph independent sets, HIS(G, η) = Σ_σ η^{#ones} ∏_e (1 − ∏_{v∈e} σ(v)).
pub fn his_brute(h: &Hypergraph, eta: Complex64) -> Result<Complex64> {
    let n = h.vertex_count();
    if n > 24 {
        return Err(Error::Budget { free: n, limit: 24 });
    }
    let mut total = Complex64::new(0.0, 0.0);
    for s in 0u64..(1u64 << n) {
        if h.edges().iter().any(|e| e.iter().all(|&v| (s >> v) & 1 == 1)) {
            continue;
        }
        total += eta.powu(s.count_ones());
    }
    Ok(total)
}
