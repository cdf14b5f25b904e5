use num_complex::Complex64;

use super::{
    distance_from_minus_one, estimate_delta, image_slack, real_lambdas, scan_grid, triangle_interior, Certificate,
    CertifyOptions, Inputs, RegionRecord, Regime, Worst,
};
use crate::error::{Error, Result};
use crate::model::SpinParams;
use crate::numeric::linspace;
use crate::potential::{g_func, g_map, h_func};
use crate::regions::{triangle_boundary, Region, TriangleRegion};
use crate::thresholds::{bounded_lambda_bound, BoundedCase, Sign};

/// Triangle contraction problem shared by the bounded and degree-free certifiers.
///
/// The domain is U(x₀, domain_x1, k) without trim; images must land in the
/// (possibly trimmed) target U(x₀, target_x1, k).
pub(super) struct Contraction<'a> {
    pub params: &'a SpinParams,
    pub x0: f64,
    pub domain_x1: f64,
    pub target_x1: f64,
    pub trim: Option<(f64, f64)>,
    pub lam_grid: Vec<f64>,
    pub x_grid: Vec<f64>,
}

pub(super) struct KOutcome {
    pub k: f64,
    pub g: Worst,
    pub g_bad: Vec<(f64, f64, f64)>,
    pub slack: f64,
    pub slack_at: Option<(Complex64, Complex64)>,
    pub extra: bool,
}

impl KOutcome {
    fn ok(&self, margin: f64) -> bool {
        self.g.value > 0.0 && self.slack >= margin && self.extra
    }
}

impl Contraction<'_> {
    pub fn domain(&self, k: f64) -> Result<TriangleRegion> {
        TriangleRegion::new(self.x0, self.domain_x1, k)
    }

    pub fn target(&self, k: f64) -> Result<TriangleRegion> {
        let t = TriangleRegion::new(self.x0, self.target_x1, k)?;
        Ok(match self.trim {
            Some((a, b)) => t.with_trim(a, b),
            None => t,
        })
    }

    /// min H over the (λ, x) grid and the failing points.
    pub fn h_scan(&self) -> (Worst, Vec<(f64, f64, f64)>) {
        scan_grid(&self.lam_grid, &self.x_grid, 0.0, |lam, x| h_func(self.params, lam, self.x0, x).ok())
    }

    fn try_k(&self, k: f64, opts: &CertifyOptions, extra: &dyn Fn(f64) -> bool) -> Result<KOutcome> {
        let (g, g_bad) = scan_grid(&self.lam_grid, &self.x_grid, 0.0, |lam, x| {
            g_func(self.params, lam, self.x0, self.domain_x1, k, x).ok()
        });
        let samples: Vec<Complex64> = triangle_boundary(&self.domain(k)?, opts.boundary).points.iter().map(|p| p.1).collect();
        let target = self.target(k)?;
        let (slack, slack_at) =
            image_slack(self.params, self.params.d(), &samples, &real_lambdas(&self.lam_grid), &target);
        Ok(KOutcome { k, g, g_bad, slack, slack_at, extra: extra(k) })
    }

    /// Tries the candidates in order; returns the first passing outcome or the last one tried.
    pub fn search_k(&self, candidates: &[f64], opts: &CertifyOptions, extra: &dyn Fn(f64) -> bool) -> Result<(bool, Option<KOutcome>)> {
        let mut last = None;
        for &k in candidates {
            let o = self.try_k(k, opts, extra)?;
            if o.ok(opts.margin) {
                return Ok((true, Some(o)));
            }
            last = Some(o);
        }
        Ok((false, last))
    }

    /// min |1 + λe^{cw}| over the target boundary and an interior grid.
    pub fn minus_one_distance(&self, k: f64, c: f64, opts: &CertifyOptions) -> Result<f64> {
        let target = self.target(k)?;
        let mut samples: Vec<Complex64> = triangle_boundary(&target, opts.boundary).points.iter().map(|p| p.1).collect();
        samples.retain(|&w| target.slack(w) >= -1e-12);
        samples.extend(triangle_interior(&target, 64));
        Ok(distance_from_minus_one(c, &samples, &real_lambdas(&self.lam_grid)))
    }

    /// Radius of complex perturbations around the non-zero grid activities that keep containment.
    pub fn delta_hat(&self, k: f64, opts: &CertifyOptions, extra: &(dyn Fn(Complex64) -> bool + Sync)) -> Result<Option<f64>> {
        let samples: Vec<Complex64> = triangle_boundary(&self.domain(k)?, opts.boundary).points.iter().map(|p| p.1).collect();
        let target = self.target(k)?;
        let centres: Vec<f64> = self.lam_grid.iter().copied().filter(|&l| l != 0.0).collect();
        let lam0 = self.lam_grid.iter().fold(0f64, |m, l| m.max(l.abs()));
        let d = self.params.d();
        let ok = |lam: Complex64| {
            extra(lam)
                && samples.iter().all(|&w| match g_map(self.params, lam, d, w) {
                    Ok(z) => target.slack(z) >= opts.margin,
                    Err(_) => false,
                })
        };
        Ok(estimate_delta(&centres, 0.25 * lam0, opts, ok))
    }
}

/// Seed first when it obeys the strict limit, then k_max·2^{−j}.
pub(super) fn k_candidates(seed: Option<f64>, limit: f64, k_max: f64, steps: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(steps + 2);
    if let Some(s) = seed.filter(|&s| s > 0.0 && s < limit) {
        out.push(s);
    }
    out.extend((0..steps).map(|j| k_max * 0.5f64.powi(j as i32)));
    out
}

/// Records the grid minimum of H and its failing points; true when H > 0 everywhere.
pub(super) fn record_h(cert: &mut Certificate, c: &Contraction) -> bool {
    let (worst, bad) = c.h_scan();
    cert.min_h = Some(worst.value);
    for (lam, x, v) in bad {
        cert.witness("h_positive", &[("lambda", lam), ("x", x), ("H", v)]);
    }
    cert.check("h_positive", worst.value, worst.value > 0.0)
}

/// Records the k search; returns the passing k.
pub(super) fn record_k(cert: &mut Certificate, found: bool, o: Option<KOutcome>, margin: f64) -> Option<f64> {
    let Some(o) = o else {
        cert.check("k_search", f64::NEG_INFINITY, false);
        return None;
    };
    cert.check("g_positive", o.g.value, o.g.value > 0.0);
    cert.check("image_inside", o.slack, o.slack >= margin);
    cert.min_margin = Some(o.slack);
    if !found {
        cert.note(format!("no k passed; the last candidate tried was {}", o.k));
        for &(lam, x, v) in &o.g_bad {
            cert.witness("g_positive", &[("k", o.k), ("lambda", lam), ("x", x), ("G", v)]);
        }
        if let Some((lam, w)) = o.slack_at.filter(|_| o.slack < margin) {
            cert.witness("image_inside", &[("k", o.k), ("lambda", lam.re), ("w_re", w.re), ("w_im", w.im), ("slack", o.slack)]);
        }
        return None;
    }
    Some(o.k)
}

fn real_interval_slack(x: f64, lo: f64, hi: f64) -> f64 {
    (x - lo).min(hi - x)
}

/// Bounded-degree certificate for the triangle regime.
///
/// Errors only for a regime mismatch; failed numerics produce a fail verdict.
pub fn certify_bounded(params: &SpinParams, lambda0: f64, opts: &CertifyOptions) -> Result<Certificate> {
    if lambda0 == 0.0 || !lambda0.is_finite() {
        return Err(Error::CaseMismatch("λ₀ must be a non-zero real".into()));
    }
    let (case, bound) = match bounded_lambda_bound(params, Sign::of(lambda0)) {
        Ok((BoundedCase::Rect, _)) => {
            return Err(Error::CaseMismatch("parameters fall in the rectangle regime; use certify_rect".into()))
        }
        Ok(cb) => cb,
        Err(e) => return Err(Error::CaseMismatch(e.to_string())),
    };
    let mut cert = Certificate::new(Regime::Bounded, Inputs::spin(params, Some(params.delta), lambda0), opts);
    cert.case_id = Some(format!("{}", case.number().unwrap_or(0)));
    cert.note(format!("closed-form bound for this sign: {bound}"));
    if lambda0.abs() >= bound.abs() {
        cert.note("λ₀ lies beyond the closed-form bound");
    }
    let corners = match crate::regions::triangle_params_for_case(params, lambda0) {
        Ok(c) => c,
        Err(e) => {
            cert.check("corner_selection", f64::NEG_INFINITY, false);
            cert.note(e.to_string());
            return Ok(cert.finish());
        }
    };
    if let Some(lt) = corners.lambda_tilde {
        cert.note(format!("λ̃ = {lt}"));
    }
    let c = Contraction {
        params,
        x0: corners.x0,
        domain_x1: corners.x1,
        target_x1: corners.x1,
        trim: corners.trim,
        lam_grid: linspace(0.0, lambda0, opts.grid_lambda),
        x_grid: linspace(corners.x1, corners.x0, opts.grid_x),
    };
    structural_checks(&mut cert, params, &c, lambda0);
    if !record_h(&mut cert, &c) {
        cert.note("k search skipped because H is not positive on the grid");
        return Ok(cert.finish());
    }

    let (x0, x1) = (corners.x0, corners.x1);
    let limit = TriangleRegion::k_limit(x0, x1, params.delta);
    let k_max = 1f64.min(0.5 * limit);
    let cands = k_candidates(opts.k_seed, limit, k_max, opts.k_steps);
    let (found, outcome) = c.search_k(&cands, opts, &|_| true)?;
    let Some(k) = record_k(&mut cert, found, outcome, opts.margin) else {
        return Ok(cert.finish());
    };
    cert.k = Some(k);
    cert.region = Some(RegionRecord::Triangle(c.target(k)?));

    let dist = c.minus_one_distance(k, params.delta as f64, opts)?;
    cert.check("avoids_minus_one", dist, dist > opts.margin);

    let delta = params.delta as f64;
    let dh = c.delta_hat(k, opts, &|lam: Complex64| {
        // the root sees Δ children, so 1 + λe^{Δw} must stay away from 0 as well
        triangle_boundary(&TriangleRegion { k, ..c.target(k).expect("valid") }, 16)
            .points
            .iter()
            .all(|p| (lam * (p.1 * delta).exp() + 1.0).norm() > opts.margin)
    })?;
    cert.delta_hat = dh;
    cert.check("delta_estimate", dh.unwrap_or(0.0), dh.is_some());
    Ok(cert.finish())
}

/// k-independent conditions: fixed points inside, −1 preimage outside, signs at x₀.
fn structural_checks(cert: &mut Certificate, params: &SpinParams, c: &Contraction, lambda0: f64) {
    let (b, g) = (params.beta, params.gamma);
    let (lo, hi) = match c.trim {
        Some((a, z)) => (a.max(c.target_x1), z.min(c.x0)),
        None => (c.target_x1, c.x0),
    };
    let mut inside = real_interval_slack(-b.ln(), lo, hi);
    if g > 0.0 {
        inside = inside.min(real_interval_slack(g.ln(), lo, hi));
    }
    cert.check("fixed_points_inside", inside, inside >= -1e-12);
    if (b - 1.0) * (1.0 - g) > 0.0 {
        let p = ((1.0 - g) / (b - 1.0)).ln();
        let out = -real_interval_slack(p, lo, hi);
        cert.check("minus_one_preimage_outside", out, out > 0.0);
    }
    let dd = params.d();
    let s = lambda0 * (dd * c.x0).exp();
    let t = lambda0 * ((dd + 1.0) * c.x0).exp();
    let sign = (1.0 + g * s).min(b + s).min(1.0 + t);
    cert.check("sign_conditions", sign, sign > 0.0);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn candidates_respect_the_limit() {
        assert_eq!(k_candidates(Some(0.01), 0.02, 0.01, 2), vec![0.01, 0.01, 0.005]);
        assert_eq!(k_candidates(Some(0.5), 0.02, 0.01, 1), vec![0.01]);
        assert_eq!(k_candidates(None, 1.0, 0.5, 0), Vec::<f64>::new());
    }

    #[test]
    fn rect_regime_is_a_mismatch() {
        let p = SpinParams::new(1.0, 0.9, 4).unwrap();
        assert!(matches!(certify_bounded(&p, 1.0, &CertifyOptions::default()), Err(Error::CaseMismatch(_))));
    }
}
