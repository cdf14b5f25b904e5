use std::f64::consts::PI;

use num_complex::Complex64;

use super::bounded::{k_candidates, record_h, record_k, Contraction};
use super::{Certificate, CertifyOptions, Inputs, RegionRecord, Regime};
use crate::error::{Error, Result};
use crate::model::SpinParams;
use crate::numeric::linspace;
use crate::thresholds::{unbounded_lambda_interval, UnboundedCase};

/// Constants of the tail estimate for Re w ≤ x̃.
#[derive(Debug, Clone, Copy)]
struct Tail {
    /// |λ| e^{x̃}
    rho: f64,
    /// Bound on |Re φ + ln β| for the tail.
    tau: f64,
    /// Lower bound on |Re φ| for the tail.
    l: f64,
    c: f64,
}

fn tail(beta: f64, gamma: f64, lam_abs: f64, x_tilde: f64) -> Option<Tail> {
    let rho = lam_abs * x_tilde.exp();
    if !(rho < 1.0 / beta) {
        return None;
    }
    let tau = -(1.0 - gamma * rho).ln() - (1.0 - rho / beta).ln();
    let c = (1.0 - beta * gamma).abs() / ((beta - 1.0 / beta) * (1.0 - gamma / beta));
    let l = ((beta + 1.0 / beta) / (1.0 + gamma / beta)).ln().min(beta.ln() - tau);
    (l > 0.0 && tau.is_finite()).then_some(Tail { rho, tau, l, c })
}

/// Tail inequality C|λ|e^{x̃}|x̃| < L on [−π/(2k), x̃].
fn near_tail_ok(t: &Tail, x_tilde: f64) -> bool {
    t.c * t.rho * x_tilde.abs() < t.l
}

/// Tail inequality C|λ|e^{−π/(2k)} < kL beyond −π/(2k).
fn far_tail_ok(t: &Tail, lam_abs: f64, k: f64) -> bool {
    t.c * lam_abs * (-PI / (2.0 * k)).exp() < k * t.l
}

/// Degree-free certificate: a triangle with apex 0 for Re w ∈ [x̃, 0] and analytic tail bounds beyond.
pub fn certify_unbounded(beta: f64, gamma: f64, lambda0: f64, opts: &CertifyOptions) -> Result<Certificate> {
    let (case, lo, hi) = unbounded_lambda_interval(beta, gamma)?;
    if lambda0 == 0.0 || !lambda0.is_finite() {
        return Err(Error::CaseMismatch("λ₀ must be a non-zero real".into()));
    }
    // Δ = 2 gives d = 1, the single-child map λe^{w}
    let params = SpinParams::new(beta, gamma, 2)?;
    let mut cert = Certificate::new(Regime::Unbounded, Inputs::spin(&params, None, lambda0), opts);
    cert.case_id = Some(
        match case {
            UnboundedCase::Ferro => "ferro",
            UnboundedCase::AntiFerro => "antiferro",
        }
        .into(),
    );
    cert.note(format!("closed-form interval: ({lo}, {hi})"));
    if !(lambda0 > lo && lambda0 < hi) {
        cert.note("λ₀ lies outside the closed-form interval");
    }
    let lam_abs = lambda0.abs();

    let (b, g) = (beta, gamma);
    let nb = -b.ln();
    let minus_one = (g < 1.0).then(|| ((1.0 - g) / (b - 1.0)).ln());
    let lambda_tilde = 0.5 * (lam_abs + 1.0);
    // target corners; only the ferromagnetic positive side depends on τ
    let corners = |tau: f64| -> (f64, Option<(f64, f64)>) {
        match (case, lambda0 > 0.0) {
            (UnboundedCase::Ferro, true) => (nb - 2.0 * tau - 2.0 * opts.margin, None),
            (UnboundedCase::Ferro, false) => {
                let upper = ((1.0 + g * lambda0) / (b + lambda0)).ln().min(0.0);
                let x1 = match minus_one {
                    Some(m) => 0.5 * (m + upper),
                    None => upper - 1.0,
                };
                (x1, None)
            }
            (UnboundedCase::AntiFerro, pos) => {
                let x1 = if g > 0.0 { g.ln().min(0.0) } else { (-(b + lambda0).ln() - 1.0).min(0.0) };
                let wall = if pos {
                    0.5 * (nb + minus_one.expect("γ < 1 here"))
                } else {
                    ((1.0 - g * lambda_tilde) / (b - lambda_tilde)).ln()
                };
                (x1, Some((x1, wall.min(0.0))))
            }
        }
    };
    let hi_of = |trim: Option<(f64, f64)>| trim.map_or(0.0, |t: (f64, f64)| t.1.min(0.0));
    // tail images have real part within τ of −ln β and must sit inside the target
    let range = |tau: f64| {
        let (x1, trim) = corners(tau);
        (nb - tau - x1).min(hi_of(trim) - nb - tau)
    };

    let mut x_tilde = -1.0;
    let mut found = None;
    for _ in 0..4000 {
        if let Some(t) = tail(b, g, lam_abs, x_tilde).filter(|t| near_tail_ok(t, x_tilde) && range(t.tau) >= opts.margin) {
            found = Some(t);
            break;
        }
        x_tilde -= 0.05;
    }
    let Some(t) = found else {
        cert.check("tail_inequality", f64::NEG_INFINITY, false);
        cert.witness("tail_inequality", &[("lambda0", lambda0), ("x_tilde", x_tilde)]);
        return Ok(cert.finish());
    };
    cert.check("tail_inequality", t.l - t.c * t.rho * x_tilde.abs(), true);
    cert.check("tail_real_range", range(t.tau), true);
    cert.note(format!("x̃ = {x_tilde}, τ = {}, L = {}", t.tau, t.l));
    if case == UnboundedCase::AntiFerro && lambda0 < 0.0 {
        cert.note(format!("λ̃ = {lambda_tilde}"));
    }
    let (x1, trim) = corners(t.tau);
    let c = Contraction {
        params: &params,
        x0: 0.0,
        domain_x1: x_tilde,
        target_x1: x1,
        trim,
        lam_grid: linspace(0.0, lambda0, opts.grid_lambda),
        x_grid: linspace(x_tilde, 0.0, opts.grid_x),
    };
    let target_hi = hi_of(trim);
    let mut inside = (nb - x1).min(target_hi - nb);
    if g > 0.0 {
        inside = inside.min((g.ln() - x1).min(target_hi - g.ln()));
    }
    cert.check("fixed_points_inside", inside, inside >= -1e-12);
    if let Some(m) = minus_one.filter(|_| b > 1.0) {
        let out = (x1 - m).max(m - target_hi);
        cert.check("minus_one_preimage_outside", out, out > 0.0);
    }
    let sign = (1.0 + g * lambda0).min(b + lambda0).min(1.0 + lambda0);
    cert.check("sign_conditions", sign, sign > 0.0);
    if lambda0 < 0.0 {
        let cap = 1f64.min(b).min(if g > 0.0 { 1.0 / g } else { f64::INFINITY });
        cert.check("negative_axis_avoided", cap - lam_abs, lam_abs < cap);
    }

    if !record_h(&mut cert, &c) {
        cert.note("k search skipped because H is not positive on the grid");
        return Ok(cert.finish());
    }
    let k_max = 1f64.min(PI / (4.0 * x_tilde.abs()));
    let cands = k_candidates(opts.k_seed, 2.0 * k_max, k_max, opts.k_steps);
    let far = |k: f64| far_tail_ok(&t, lam_abs, k);
    let (ok, outcome) = c.search_k(&cands, opts, &far)?;
    let far_at = outcome.as_ref().map(|o| o.k);
    let Some(k) = record_k(&mut cert, ok, outcome, opts.margin) else {
        if let Some(k) = far_at.filter(|&k| !far(k)) {
            cert.check("far_tail", f64::NEG_INFINITY, false);
            cert.witness("far_tail", &[("k", k), ("lambda0", lambda0)]);
        }
        return Ok(cert.finish());
    };
    cert.check("far_tail", k * t.l - t.c * lam_abs * (-PI / (2.0 * k)).exp(), true);
    cert.k = Some(k);
    cert.region = Some(RegionRecord::Cone { target: c.target(k)?, x_tilde });

    let dist = c.minus_one_distance(k, 1.0, opts)?;
    cert.check("avoids_minus_one", dist, dist > opts.margin);

    // complex activities must also keep the tail estimates
    let dh = c.delta_hat(k, opts, &|lam: Complex64| {
        let a = lam.norm();
        tail(b, g, a, x_tilde).is_some_and(|t2| {
            near_tail_ok(&t2, x_tilde)
                && far_tail_ok(&t2, a, k)
                && (nb - t2.tau - x1).min(target_hi - nb - t2.tau) >= opts.margin
        })
    })?;
    cert.delta_hat = dh;
    cert.check("delta_estimate", dh.unwrap_or(0.0), dh.is_some());
    Ok(cert.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tail_constants() {
        let t = tail(3.0, 0.8, 41.0, -8.0).unwrap();
        assert!((t.rho - 41.0 * (-8f64).exp()).abs() < 1e-15);
        assert!(t.tau > 0.0 && t.tau < 0.1);
        assert!(tail(3.0, 0.8, 41.0, -1.0).is_none());
    }

    #[test]
    fn outside_both_branches_is_a_mismatch() {
        let o = CertifyOptions::default();
        assert!(matches!(certify_unbounded(0.5, 0.5, 1.0, &o), Err(Error::CaseMismatch(_))));
    }
}
