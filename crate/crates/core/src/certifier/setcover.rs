use std::f64::consts::PI;

use rayon::prelude::*;

use super::{scan_grid, Certificate, CertifyOptions, Inputs, RegionRecord, Regime};
use crate::error::{Error, Result};
use crate::numeric::linspace;
use crate::regions::{p_k, setcover_boundary_maps, theta0};
use crate::thresholds::{setcover_eta_bound, setcover_mu_bounds};

/// Limit criterion H(x; η) = (1+y)ln(1+y)/y − D|μ|x/(e^x + μ), y = 1/(η(μe^{−x}+1)^D).
pub fn limit_criterion(delta: usize, mu: f64, eta: f64, x: f64) -> f64 {
    let d = delta as f64 - 1.0;
    let y = 1.0 / (eta * (mu * (-x).exp() + 1.0).powf(d));
    let first = if y < 1e-8 { 1.0 + 0.5 * y } else { (1.0 + y) * y.ln_1p() / y };
    first - d * mu.abs() * x / (x.exp() + mu)
}

/// Large-x cut-off M = max(10, 2 ln(D(|μ|+1)) + 5).
pub fn default_cutoff(delta: usize, mu: f64) -> f64 {
    let d = delta as f64 - 1.0;
    10f64.max(2.0 * (d * (mu.abs() + 1.0)).ln() + 5.0)
}

/// Analytic bounds for θ/k ≥ M, written as slacks (positive means satisfied).
fn large_theta_slack(d: f64, mu: f64, k: f64, m: f64) -> f64 {
    if mu == 0.0 {
        return f64::INFINITY;
    }
    let cap = k.atan() / d;
    let t = mu.abs() * (-PI / (2.0 * k)).exp();
    let step3 = if t < 1.0 { cap.tan() - t / (1.0 - t) } else { f64::NEG_INFINITY };
    let mb = if mu > 0.0 {
        cap - (mu * m * (-m).exp() * k).atan()
    } else {
        cap - (m * k / m.exp_m1()).atan()
    };
    step3.min(mb).min(PI / (4.0 * m) - k)
}

/// Set-cover certificate: limit criterion on an (η, x) grid, then the spiral criterion for a searched k.
pub fn certify_setcover(delta: usize, mu: f64, eta0: f64, opts: &CertifyOptions) -> Result<Certificate> {
    if delta < 2 || !(mu >= -1.0) || !mu.is_finite() {
        return Err(Error::CaseMismatch(format!("set covers need Δ ≥ 2 and μ ≥ −1; got Δ={delta}, μ={mu}")));
    }
    if !(eta0 > 0.0 && eta0.is_finite()) {
        return Err(Error::CaseMismatch(format!("η₀ must be positive, got {eta0}")));
    }
    let inputs = Inputs { delta: Some(delta), mu: Some(mu), eta0: Some(eta0), ..Default::default() };
    let mut cert = Certificate::new(Regime::Setcover, inputs, opts);
    let (mu1, mu2) = setcover_mu_bounds(delta);
    if (mu2..=mu1).contains(&mu) {
        cert.case_id = Some("1".into());
    } else {
        let b = setcover_eta_bound(delta, mu)?;
        cert.case_id = Some(if mu > mu1 { "2" } else { "3" }.into());
        cert.note(format!("η bound: {}", b.eta));
        if eta0 >= b.eta {
            cert.note("η₀ lies beyond the closed-form bound");
        }
    }
    let dl = delta as f64;
    let d = dl - 1.0;
    let m = default_cutoff(delta, mu);
    // for μ = −1 the small-θ/k end is cut at ε with η₀(2ε)^D ≤ 1/(e^{2Δ}+1)
    let eps = if mu == -1.0 {
        1e-3f64.min(0.5 * (1.0 / (eta0 * ((2.0 * dl).exp() + 1.0))).powf(1.0 / d))
    } else {
        0.0
    };
    cert.note(format!("ε = {eps}, M = {m}"));

    let etas: Vec<f64> = (1..=opts.grid_lambda).rev().map(|j| eta0 * j as f64 / opts.grid_lambda as f64).collect();
    let x_lo = if mu == -1.0 { eps } else { 0.0 };
    let xs = linspace(x_lo, m, opts.grid_x);
    let (worst, bad) = scan_grid(&etas, &xs, 0.0, |eta, x| Some(limit_criterion(delta, mu, eta, x)));
    cert.min_h = Some(worst.value);
    for (eta, x, v) in bad {
        cert.witness("limit_criterion", &[("eta", eta), ("x", x), ("H", v)]);
    }
    if !cert.check("limit_criterion", worst.value, worst.value > 0.0) {
        return Ok(cert.finish());
    }

    let k_max = 1f64.min(0.25 * PI / (mu + 4.0).ln()).min(PI / (4.0 * m));
    let knee = -((2.0 * dl).exp() + 1.0).ln();
    let mut last = None;
    for j in 0..opts.k_steps {
        let k = k_max * 0.5f64.powi(j as i32);
        let analytic = large_theta_slack(d, mu, k, m);
        let small = if mu == -1.0 { p_k(k, knee) - dl * k.atan() } else { f64::INFINITY };
        let t0 = if mu == 0.0 { PI * (1.0 - 1e-9) } else { theta0(mu, k)? };
        let lo = if mu == -1.0 { eps * k } else { 1e-6 * k };
        let mid = (m * k).min(t0);
        let mut thetas = linspace(lo, mid, opts.grid_theta);
        if mid < t0 {
            thetas.extend(linspace(mid, t0, opts.grid_theta).into_iter().skip(1));
        }
        let (direct, bad) = direct_scan(&etas, &thetas, d, mu, k, opts.margin);
        last = Some((k, t0, analytic, small, direct, bad));
        if analytic > 0.0 && small > 0.0 && direct >= opts.margin {
            break;
        }
    }
    let (k, t0, analytic, small, direct, bad) = last.expect("k_steps ≥ 1");
    cert.check("large_theta_bounds", analytic, analytic > 0.0);
    if mu == -1.0 {
        cert.check("small_theta_bound", small, small > 0.0);
    }
    cert.check("spiral_criterion", direct, direct >= opts.margin);
    cert.min_margin = Some(direct);
    for (eta, theta, v) in bad {
        cert.witness("spiral_criterion", &[("k", k), ("eta", eta), ("theta", theta), ("slack", v)]);
    }
    if cert.checks.iter().all(|c| c.passed) {
        cert.k = Some(k);
        cert.region = Some(RegionRecord::Spiral { k, theta0: t0, eps, m });
    }
    Ok(cert.finish())
}

/// min over (η, θ) of p_k(ln η + D r₂(θ)) − D|h₂(θ)|, with the points below `margin`.
fn direct_scan(etas: &[f64], thetas: &[f64], d: f64, mu: f64, k: f64, margin: f64) -> (f64, Vec<(f64, f64, f64)>) {
    let maps: Vec<Option<(f64, f64)>> = thetas
        .par_iter()
        .map(|&t| setcover_boundary_maps(mu, k, t).ok().map(|b| (b.r2, b.h2)))
        .collect();
    let (worst, bad) = scan_grid(etas, &(0..thetas.len()).map(|i| i as f64).collect::<Vec<_>>(), margin, |eta, i| {
        maps[i as usize].map(|(r2, h2)| p_k(k, eta.ln() + d * r2) - d * h2.abs())
    });
    let bad = bad.into_iter().map(|(eta, i, v)| (eta, thetas[i as usize], v)).collect();
    (worst.value, bad)
}
