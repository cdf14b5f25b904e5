use num_complex::Complex64;

use super::{estimate_delta, image_slack, real_lambdas, scan_grid, Certificate, CertifyOptions, Inputs, RegionRecord, Regime};
use crate::error::{Error, Result};
use crate::model::SpinParams;
use crate::numeric::linspace;
use crate::potential::{g_map, hhat_rect, rh_closed_form};
use crate::regions::{rect_boundary, RectRegion, Region};

/// Rectangle certificate for (Δ−2)/Δ < √(βγ) < Δ/(Δ−2), βγ ≠ 1, λ₀ > 0.
pub fn certify_rect(params: &SpinParams, lambda0: f64, opts: &CertifyOptions) -> Result<Certificate> {
    let (b, g) = (params.beta, params.gamma);
    let delta = params.delta as f64;
    let s = params.bg().sqrt();
    let upper = if params.delta == 2 { f64::INFINITY } else { delta / (delta - 2.0) };
    if !(lambda0 > 0.0 && lambda0.is_finite()) {
        return Err(Error::CaseMismatch(format!("rectangles need λ₀ > 0, got {lambda0}")));
    }
    if !(b > 0.0) || params.bg() == 1.0 || !(s > (delta - 2.0) / delta && s < upper) {
        return Err(Error::CaseMismatch(format!(
            "rectangles need (Δ−2)/Δ < √(βγ) < Δ/(Δ−2) and βγ ≠ 1; got √(βγ) = {s}, Δ = {}",
            params.delta
        )));
    }
    let mut cert = Certificate::new(Regime::Rect, Inputs::spin(params, Some(params.delta), lambda0), opts);
    cert.case_id = Some("rect".into());
    let (x0, x1) = if params.bg() > 1.0 {
        (0f64.max(g.ln()), 0f64.min(-b.ln()))
    } else {
        (0f64.max(-b.ln()), 0f64.min(g.ln()))
    };
    let d = params.d();
    let lam_grid = linspace(0.0, lambda0, opts.grid_lambda);
    let x_grid = linspace(x1, x0, opts.grid_x);

    if (b - 1.0) * (1.0 - g) > 0.0 {
        let p = ((1.0 - g) / (b - 1.0)).ln();
        let out = (x1 - p).max(p - x0);
        cert.check("minus_one_preimage_outside", out, out > 0.0);
    }

    let (worst, bad) = scan_grid(&lam_grid, &x_grid, 0.0, |lam, x| hhat_rect(params, lam, x).ok());
    cert.min_h = Some(worst.value);
    for (lam, x, v) in bad {
        cert.witness("hhat_positive", &[("lambda", lam), ("x", x), ("Hhat", v)]);
    }
    let floor = 1.0 - d * (s - 1.0).abs() / (1.0 + s);
    cert.note(format!("closed-form lower bound on Ĥ: {floor}"));
    if !cert.check("hhat_positive", worst.value, worst.value > 0.0) {
        return Ok(cert.finish());
    }

    // d·y₀ stays below π/4 so that cos(d y) > 0 along the rectangle
    let y_max = std::f64::consts::PI / (4.0 * d.max(1.0));
    let lambdas = real_lambdas(&lam_grid);
    let mut chosen = None;
    let mut last = None;
    for j in 0..opts.k_steps {
        let y0 = y_max * 0.5f64.powi(j as i32);
        let (hw, _) = scan_grid(&lam_grid, &x_grid, 0.0, |lam, x| {
            rh_closed_form(params, lam, d * x, d * y0).ok().map(|(_, h)| y0 - h)
        });
        let rect = RectRegion { x0, x1, y0 };
        let samples: Vec<Complex64> = rect_boundary(&rect, opts.boundary).points.iter().map(|p| p.1).collect();
        let (slack, at) = image_slack(params, d, &samples, &lambdas, &rect);
        let pass = hw.value > 0.0 && slack >= opts.margin;
        last = Some((y0, hw.value, slack, at));
        if pass {
            chosen = Some(rect);
            break;
        }
    }
    let (y0, hmin, slack, at) = last.expect("at least one step");
    cert.check("h_below_y0", hmin, hmin > 0.0);
    cert.check("image_inside", slack, slack >= opts.margin);
    cert.min_margin = Some(slack);
    let Some(rect) = chosen else {
        if let Some((lam, w)) = at {
            cert.witness("image_inside", &[("y0", y0), ("lambda", lam.re), ("w_re", w.re), ("w_im", w.im), ("slack", slack)]);
        }
        return Ok(cert.finish());
    };
    cert.k = Some(rect.y0);
    cert.region = Some(RegionRecord::Rect(rect));

    let samples: Vec<Complex64> = rect_boundary(&rect, opts.boundary).points.iter().map(|p| p.1).collect();
    let dist = lambdas
        .iter()
        .flat_map(|&l| samples.iter().map(move |&w| (l * (w * delta).exp() + 1.0).norm()))
        .fold(f64::INFINITY, f64::min);
    cert.check("avoids_minus_one", dist, dist > opts.margin);

    let centres: Vec<f64> = lam_grid.iter().copied().filter(|&l| l != 0.0).collect();
    let dh = estimate_delta(&centres, 0.25 * lambda0, opts, |lam| {
        samples.iter().all(|&w| {
            (lam * (w * delta).exp() + 1.0).norm() > opts.margin
                && g_map(params, lam, d, w).is_ok_and(|z| rect.slack(z) >= opts.margin)
        })
    });
    cert.delta_hat = dh;
    cert.check("delta_estimate", dh.unwrap_or(0.0), dh.is_some());
    Ok(cert.finish())
}
