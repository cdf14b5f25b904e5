//! Two-spin systems with edge matrix [[β, 1], [1, γ]] and activity λ on spin 1.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::enumerate::for_each_extension;
use super::{Graph, PartitionPolynomial, Pins, Ratio, DEFAULT_BUDGET};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpinParams {
    pub beta: f64,
    pub gamma: f64,
    /// Maximum degree Δ.
    pub delta: usize,
}

impl SpinParams {
    pub fn new(beta: f64, gamma: f64, delta: usize) -> Result<Self> {
        if !(beta >= 0.0 && gamma >= 0.0) || !beta.is_finite() || !gamma.is_finite() {
            return Err(Error::Domain(format!("need β, γ ≥ 0, got β={beta}, γ={gamma}")));
        }
        if beta + gamma <= 0.0 {
            return Err(Error::Domain("β + γ must be positive".into()));
        }
        if delta < 2 {
            return Err(Error::Domain(format!("Δ must be at least 2, got {delta}")));
        }
        Ok(SpinParams { beta, gamma, delta })
    }

    /// Hard-core model: β = 1, γ = 0.
    pub fn hard_core(delta: usize) -> Self {
        SpinParams { beta: 1.0, gamma: 0.0, delta }
    }

    /// Branching number d = Δ − 1 of the computation tree.
    pub fn d(&self) -> f64 {
        (self.delta - 1) as f64
    }

    pub fn bg(&self) -> f64 {
        self.beta * self.gamma
    }
}

pub fn is_feasible_2spin(params: &SpinParams, g: &Graph, pins: &Pins) -> bool {
    g.edges().iter().all(|&(u, v)| match (pins.get(u), pins.get(v)) {
        (Some(0), Some(0)) => params.beta != 0.0,
        (Some(1), Some(1)) => params.gamma != 0.0,
        _ => true,
    })
}

fn edge_weight(params: &SpinParams, g: &Graph, mask: u64) -> f64 {
    let mut w = 1.0;
    for &(u, v) in g.edges() {
        match ((mask >> u) & 1, (mask >> v) & 1) {
            (0, 0) => w *= params.beta,
            (1, 1) => w *= params.gamma,
            _ => {}
        }
        if w == 0.0 {
            break;
        }
    }
    w
}

fn check(params: &SpinParams, g: &Graph, pins: &Pins) -> Result<()> {
    pins.check_range(g.vertex_count())?;
    if !is_feasible_2spin(params, g, pins) {
        return Err(Error::Infeasible);
    }
    Ok(())
}

/// Brute-force partition function at a complex activity.
pub fn exact_z_2spin(params: &SpinParams, g: &Graph, pins: &Pins, lambda: Complex64) -> Result<Complex64> {
    exact_z_2spin_with_budget(params, g, pins, lambda, DEFAULT_BUDGET)
}

pub fn exact_z_2spin_with_budget(
    params: &SpinParams,
    g: &Graph,
    pins: &Pins,
    lambda: Complex64,
    budget: usize,
) -> Result<Complex64> {
    check(params, g, pins)?;
    let n = g.vertex_count();
    let powers: Vec<Complex64> = (0..=n).scan(Complex64::new(1.0, 0.0), |p, _| {
        let cur = *p;
        *p *= lambda;
        Some(cur)
    }).collect();
    let mut total = Complex64::new(0.0, 0.0);
    for_each_extension(n, pins, budget, |mask| {
        let w = edge_weight(params, g, mask);
        if w != 0.0 {
            total += powers[mask.count_ones() as usize] * w;
        }
    })?;
    Ok(total)
}

/// Coefficients of Z grouped by the number of vertices at spin 1.
pub fn z_polynomial_2spin(params: &SpinParams, g: &Graph, pins: &Pins) -> Result<PartitionPolynomial> {
    check(params, g, pins)?;
    let n = g.vertex_count();
    let mut coeffs = vec![0.0; n + 1];
    for_each_extension(n, pins, DEFAULT_BUDGET, |mask| {
        coeffs[mask.count_ones() as usize] += edge_weight(params, g, mask);
    })?;
    Ok(PartitionPolynomial::new(coeffs))
}

/// Z restricted to σ(v) = s, or 0 when that restriction is infeasible.
fn restricted(params: &SpinParams, g: &Graph, pins: &Pins, v: usize, s: u8, lambda: Complex64) -> Result<Complex64> {
    let p = pins.clone().with(v, s);
    if !is_feasible_2spin(params, g, &p) {
        return Ok(Complex64::new(0.0, 0.0));
    }
    exact_z_2spin(params, g, &p, lambda)
}

/// R = Z_{σ(v)=1} / Z_{σ(v)=0} by enumeration; 0 or ∞ for pinned vertices.
pub fn marginal_ratio_2spin(params: &SpinParams, g: &Graph, pins: &Pins, v: usize, lambda: Complex64) -> Result<Ratio> {
    check(params, g, pins)?;
    if v >= g.vertex_count() {
        return Err(Error::InvalidInstance(format!("vertex {v} out of range")));
    }
    match pins.get(v) {
        Some(0) => return Ok(Ratio::ZERO),
        Some(_) => return Ok(Ratio::Infinity),
        None => {}
    }
    let z1 = restricted(params, g, pins, v, 1, lambda)?;
    let z0 = restricted(params, g, pins, v, 0, lambda)?;
    match (z1 == Complex64::new(0.0, 0.0), z0 == Complex64::new(0.0, 0.0)) {
        (true, true) => Err(Error::UndefinedRatio),
        (_, true) => Ok(Ratio::Infinity),
        _ => Ok(Ratio::Finite(z1 / z0)),
    }
}

/// One step of the tree recursion, f(z) = λ ∏ (γ z_i + 1) / (z_i + β).
///
/// An infinite child contributes γ. A vanishing denominator with a non-zero
/// numerator sends the result to infinity; 0/0 is reported as a pole.
pub fn recursion_2spin(params: &SpinParams, lambda: Complex64, children: &[Ratio]) -> Result<Ratio> {
    let one = Complex64::new(1.0, 0.0);
    let mut num = lambda;
    let mut den = one;
    let mut num_zero = lambda == Complex64::new(0.0, 0.0);
    let mut den_zero = false;
    for z in children {
        let (a, b) = match z {
            Ratio::Infinity => (Complex64::new(params.gamma, 0.0), one),
            Ratio::Finite(z) => (z * params.gamma + 1.0, z + params.beta),
        };
        if a == Complex64::new(0.0, 0.0) {
            num_zero = true;
        } else {
            num *= a;
        }
        if b == Complex64::new(0.0, 0.0) {
            den_zero = true;
        } else {
            den *= b;
        }
    }
    match (num_zero, den_zero) {
        (true, true) => Err(Error::Pole("0/0 in two-spin recursion".into())),
        (false, true) => Ok(Ratio::Infinity),
        (true, false) => Ok(Ratio::ZERO),
        (false, false) => Ok(Ratio::Finite(num / den)),
    }
}

/// Marginal ratio at `root` of a tree, computed bottom-up with [`recursion_2spin`].
pub fn ratio_via_tree(params: &SpinParams, tree: &Graph, root: usize, pins: &Pins, lambda: Complex64) -> Result<Ratio> {
    if !tree.is_tree() || root >= tree.vertex_count() {
        return Err(Error::NotATree);
    }
    check(params, tree, pins)?;
    // iterative post-order so deep paths do not recurse
    let n = tree.vertex_count();
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut stack = vec![root];
    parent[root] = root;
    while let Some(u) = stack.pop() {
        order.push(u);
        for &w in tree.neighbors(u) {
            if parent[w] == usize::MAX {
                parent[w] = u;
                stack.push(w);
            }
        }
    }
    let mut value = vec![Ratio::ZERO; n];
    for &u in order.iter().rev() {
        value[u] = match pins.get(u) {
            Some(0) => Ratio::ZERO,
            Some(_) => Ratio::Infinity,
            None => {
                let kids: Vec<Ratio> = tree
                    .neighbors(u)
                    .iter()
                    .filter(|&&w| parent[w] == u && w != u)
                    .map(|&w| value[w])
                    .collect();
                recursion_2spin(params, lambda, &kids)?
            }
        };
    }
    Ok(value[root])
}
