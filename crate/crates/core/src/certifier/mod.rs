//! Grid checks of the contraction conditions, reported as versioned certificates.
//!
//! A pass is numerical evidence at the recorded grid resolution, not a proof.

mod bounded;
mod float;
mod rect;
mod setcover;
mod unbounded;

use std::collections::BTreeMap;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::model::SpinParams;
use crate::potential::g_map;
use crate::regions::{Region, RectRegion, TriangleRegion};

pub use bounded::certify_bounded;
pub use rect::certify_rect;
pub use setcover::certify_setcover;
pub use unbounded::certify_unbounded;

pub const SCHEMA: &str = "zerocert/1";

/// Witness lists are cut at this length so certificates stay readable.
const MAX_WITNESSES: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Bounded,
    Rect,
    Unbounded,
    Setcover,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CertifyOptions {
    pub grid_x: usize,
    pub grid_lambda: usize,
    pub grid_theta: usize,
    /// Boundary samples per triangle leg (and per base or wall).
    pub boundary: usize,
    pub margin: f64,
    /// Tried before the halving search when it satisfies the triangle constraint.
    pub k_seed: Option<f64>,
    pub k_steps: usize,
    pub delta_directions: usize,
    pub delta_halvings: usize,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            grid_x: 512,
            grid_lambda: 64,
            grid_theta: 1024,
            boundary: 256,
            margin: 1e-6,
            k_seed: Some(0.01),
            k_steps: 40,
            delta_directions: 8,
            delta_halvings: 30,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Inputs {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub beta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub gamma: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub delta: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lambda0: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub mu: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub eta0: Option<f64>,
}

impl Inputs {
    fn spin(params: &SpinParams, delta: Option<usize>, lambda0: f64) -> Self {
        Inputs {
            beta: Some(params.beta),
            gamma: Some(params.gamma),
            delta,
            lambda0: Some(lambda0),
            ..Default::default()
        }
    }
}

/// The region a certificate speaks about.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RegionRecord {
    Triangle(TriangleRegion),
    Rect(RectRegion),
    /// Degree-free case: the triangle target plus the cut point x̃ of the cone.
    Cone { target: TriangleRegion, x_tilde: f64 },
    /// Set covers: spiral W(k) with the cut-offs used on the θ axis.
    Spiral { k: f64, theta0: f64, eps: f64, m: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grids {
    pub x: usize,
    pub lambda: usize,
    pub theta: usize,
    pub boundary: usize,
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// The smallest slack seen by the check (positive means satisfied).
    #[serde(with = "float")]
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub check: String,
    #[serde(with = "float::map")]
    pub point: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub schema: String,
    pub regime: Regime,
    pub inputs: Inputs,
    pub case_id: Option<String>,
    pub region: Option<RegionRecord>,
    pub k: Option<f64>,
    /// Empirical radius of the complex neighbourhood; not rigorous.
    pub delta_hat: Option<f64>,
    pub grids: Grids,
    #[serde(with = "float::option")]
    pub min_h: Option<f64>,
    #[serde(with = "float::option")]
    pub min_margin: Option<f64>,
    pub checks: Vec<Check>,
    pub verdict: Verdict,
    pub failure_witnesses: Vec<Witness>,
    pub notes: Vec<String>,
}

impl Certificate {
    fn new(regime: Regime, inputs: Inputs, opts: &CertifyOptions) -> Self {
        Certificate {
            schema: SCHEMA.to_string(),
            regime,
            inputs,
            case_id: None,
            region: None,
            k: None,
            delta_hat: None,
            grids: Grids {
                x: opts.grid_x,
                lambda: opts.grid_lambda,
                theta: opts.grid_theta,
                boundary: opts.boundary,
                margin: opts.margin,
            },
            min_h: None,
            min_margin: None,
            checks: Vec::new(),
            verdict: Verdict::Fail,
            failure_witnesses: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn check(&mut self, name: &str, value: f64, passed: bool) -> bool {
        self.checks.push(Check { name: name.to_string(), passed, value });
        passed
    }

    fn witness(&mut self, check: &str, point: &[(&str, f64)]) {
        if self.failure_witnesses.len() < MAX_WITNESSES {
            self.failure_witnesses.push(Witness {
                check: check.to_string(),
                point: point.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            });
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    /// Pass iff every check passed and both minima are positive.
    fn finish(mut self) -> Self {
        let ok = !self.checks.is_empty()
            && self.checks.iter().all(|c| c.passed)
            && self.min_h.is_some_and(|h| h > 0.0)
            && self.min_margin.is_some_and(|m| m > 0.0);
        self.verdict = if ok { Verdict::Pass } else { Verdict::Fail };
        self
    }

    pub fn is_pass(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// Smallest value of a grid scan.
#[derive(Debug, Clone, Copy)]
struct Worst {
    value: f64,
}

/// Evaluates `f` on the product grid, in parallel over `outer`.
/// Errors count as −∞. Returns the minimum and the failing points in grid order.
fn scan_grid<F>(outer: &[f64], inner: &[f64], threshold: f64, f: F) -> (Worst, Vec<(f64, f64, f64)>)
where
    F: Fn(f64, f64) -> Option<f64> + Sync,
{
    let rows: Vec<(Worst, Vec<(f64, f64, f64)>)> = outer
        .par_iter()
        .map(|&a| {
            let mut worst = Worst { value: f64::INFINITY };
            let mut bad = Vec::new();
            for &b in inner {
                let v = f(a, b).filter(|v| !v.is_nan()).unwrap_or(f64::NEG_INFINITY);
                if v < worst.value {
                    worst = Worst { value: v };
                }
                if !(v > threshold) && bad.len() < MAX_WITNESSES {
                    bad.push((a, b, v));
                }
            }
            (worst, bad)
        })
        .collect();
    let mut worst = Worst { value: f64::INFINITY };
    let mut bad = Vec::new();
    for (w, b) in rows {
        if w.value < worst.value {
            worst = w;
        }
        bad.extend(b);
    }
    bad.truncate(MAX_WITNESSES);
    (worst, bad)
}

/// Smallest slack of g(w) = φ(λe^{dw}) in `target` over the samples and activities.
fn image_slack(
    params: &SpinParams,
    d: f64,
    samples: &[Complex64],
    lambdas: &[Complex64],
    target: &(dyn Region + Sync),
) -> (f64, Option<(Complex64, Complex64)>) {
    lambdas
        .par_iter()
        .map(|&lam| {
            let mut worst = (f64::INFINITY, None);
            for &w in samples {
                let s = match g_map(params, lam, d, w) {
                    Ok(z) => target.slack(z),
                    Err(_) => f64::NEG_INFINITY,
                };
                if s < worst.0 {
                    worst = (s, Some((lam, w)));
                }
            }
            worst
        })
        .reduce(|| (f64::INFINITY, None), |a, b| if b.0 < a.0 { b } else { a })
}

/// min |1 + λe^{cw}| over the samples and activities.
fn distance_from_minus_one(c: f64, samples: &[Complex64], lambdas: &[Complex64]) -> f64 {
    lambdas
        .par_iter()
        .map(|&lam| samples.iter().map(|&w| (lam * (w * c).exp() + 1.0).norm()).fold(f64::INFINITY, f64::min))
        .reduce(|| f64::INFINITY, f64::min)
}

/// Interior grid of a triangle (with its trim): `n` columns, `n` rows each.
fn triangle_interior(t: &TriangleRegion, n: usize) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(n * n);
    for x in crate::numeric::linspace(t.lo(), t.hi(), n) {
        let half = t.k * (t.x0 - x);
        for y in crate::numeric::linspace(-half, half, n) {
            out.push(Complex64::new(x, y));
        }
    }
    out
}

/// First radius r₀2^{−j} for which `ok` holds at every perturbation c + re^{iθ}.
fn estimate_delta<F>(centres: &[f64], r0: f64, opts: &CertifyOptions, ok: F) -> Option<f64>
where
    F: Fn(Complex64) -> bool + Sync,
{
    let dirs: Vec<Complex64> = (0..opts.delta_directions)
        .map(|m| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * m as f64 / opts.delta_directions as f64))
        .collect();
    (0..=opts.delta_halvings).map(|j| r0 * 0.5f64.powi(j as i32)).find(|&r| {
        centres
            .par_iter()
            .all(|&c| dirs.iter().all(|&u| ok(Complex64::new(c, 0.0) + u * r)))
    })
}

fn real_lambdas(grid: &[f64]) -> Vec<Complex64> {
    grid.iter().filter(|&&l| l != 0.0).map(|&l| Complex64::new(l, 0.0)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_certificate_fails() {
        let c = Certificate::new(Regime::Bounded, Inputs::default(), &CertifyOptions::default()).finish();
        assert_eq!(c.verdict, Verdict::Fail);
        assert_eq!(c.schema, "zerocert/1");
    }

    #[test]
    fn grid_scan_reports_failures_in_order() {
        let (w, bad) = scan_grid(&[0.0, 1.0], &[0.0, 1.0, 2.0], 0.0, |a, b| Some(b - a - 0.5));
        assert_eq!(w.value, -1.5);
        assert_eq!(bad.len(), 3);
        assert_eq!((bad[0].0, bad[0].1), (0.0, 0.0));
        assert_eq!((bad[1].0, bad[1].1), (1.0, 0.0));
    }

    #[test]
    fn delta_estimate_halves_until_ok() {
        let opts = CertifyOptions::default();
        let r = estimate_delta(&[1.0], 1.0, &opts, |l| (l - 1.0).norm() < 0.3).unwrap();
        assert_eq!(r, 0.25);
    }
}
