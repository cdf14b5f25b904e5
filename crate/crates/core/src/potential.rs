//! The potential φ(z) = ln((γz+1)/(z+β)) and the contraction criteria built on it.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{Ratio, SpinParams};

/// Distance from the cut (−∞, 0] of ln below which φ refuses to evaluate.
pub const BRANCH_GUARD: f64 = 1e-9;

fn guarded_ln(w: Complex64, what: &str) -> Result<Complex64> {
    let dist = if w.re <= 0.0 { w.im.abs() } else { w.norm() };
    if !(dist >= BRANCH_GUARD) {
        return Err(Error::BranchCut(format!("{what} (ln argument {w})")));
    }
    Ok(w.ln())
}

/// φ(z) on the principal branch; φ(∞) = ln γ.
pub fn phi(params: &SpinParams, z: Ratio) -> Result<Complex64> {
    match z {
        Ratio::Infinity => {
            if params.gamma > 0.0 {
                Ok(Complex64::new(params.gamma.ln(), 0.0))
            } else {
                Err(Error::BranchCut("φ(∞) with γ = 0".into()))
            }
        }
        Ratio::Finite(z) => {
            let den = z + params.beta;
            if den.norm() < BRANCH_GUARD {
                return Err(Error::BranchCut(format!("z = {z} at the pole −β")));
            }
            guarded_ln((z * params.gamma + 1.0) / den, &format!("z = {z}"))
        }
    }
}

/// φ⁻¹(w) = (βe^w − 1)/(γ − e^w); infinity where the denominator vanishes.
pub fn phi_inv(params: &SpinParams, w: Complex64) -> Ratio {
    let e = w.exp();
    let den = -e + params.gamma;
    if den == Complex64::new(0.0, 0.0) {
        return Ratio::Infinity;
    }
    Ratio::Finite((e * params.beta - 1.0) / den)
}

/// g(w) = φ(λ e^{d w}).
pub fn g_map(params: &SpinParams, lambda: Complex64, d: f64, w: Complex64) -> Result<Complex64> {
    phi(params, Ratio::Finite(lambda * (w * d).exp()))
}

/// f^φ(w₁, …, w_d) = ln((γλe^{Σw}+1)/(λe^{Σw}+β)), the recursion seen through φ.
pub fn f_phi(params: &SpinParams, lambda: Complex64, ws: &[Complex64]) -> Result<Complex64> {
    let sum: Complex64 = ws.iter().sum();
    phi(params, Ratio::Finite(lambda * sum.exp()))
}

/// Real part r and absolute imaginary part h of φ(λ e^{x+iy}) in closed form.
///
/// Needs 1 + γλe^x cos y > 0 and β + λe^x cos y > 0, which keep the
/// argument of the logarithm in the right half-plane.
pub fn rh_closed_form(params: &SpinParams, lambda: f64, x: f64, y: f64) -> Result<(f64, f64)> {
    let (b, g) = (params.beta, params.gamma);
    let s = lambda * x.exp();
    let (c, sn) = (y.cos(), y.sin());
    if !(1.0 + g * s * c > 0.0) || !(b + s * c > 0.0) {
        return Err(Error::Hypothesis(format!("λ={lambda}, x={x}, y={y}")));
    }
    let num = 1.0 + g * g * s * s + 2.0 * g * s * c;
    let den = b * b + s * s + 2.0 * b * s * c;
    let r = 0.5 * (num / den).ln();
    let h = ((b * g - 1.0) * s * sn).abs().atan2(b + g * s * s + (b * g + 1.0) * s * c);
    Ok((r, h))
}

/// G(x, k, λ) = k(x₀ − r) − h with r, h taken at (dx, dk(x₀−x)), d = Δ−1.
///
/// Positive G on [x₁, x₀] means g maps the upper leg of the triangle strictly inside.
pub fn g_func(params: &SpinParams, lambda: f64, x0: f64, x1: f64, k: f64, x: f64) -> Result<f64> {
    if x < x1 - 1e-12 || x > x0 + 1e-12 {
        return Err(Error::Domain(format!("x={x} outside [{x1}, {x0}]")));
    }
    let d = params.d();
    let (r, h) = rh_closed_form(params, lambda, d * x, d * k * (x0 - x))?;
    Ok(k * (x0 - r) - h)
}

/// H(x, λ) = ∂G/∂k at k = 0.
pub fn h_func(params: &SpinParams, lambda: f64, x0: f64, x: f64) -> Result<f64> {
    let (b, g) = (params.beta, params.gamma);
    let d = params.d();
    let s = lambda * (d * x).exp();
    let (p, q) = (g * s + 1.0, b + s);
    if !(p > 0.0 && q > 0.0) {
        return Err(Error::Hypothesis(format!("denominators of H at λ={lambda}, x={x}")));
    }
    Ok(x0 - (p / q).ln() - d * ((b * g - 1.0) * s).abs() * (x0 - x) / (p * q))
}

/// Ĥ(x, λ) = 1 − d|βγ−1|λe^{dx}/((β+λe^{dx})(γλe^{dx}+1)), used by the rectangle regime.
pub fn hhat_rect(params: &SpinParams, lambda: f64, x: f64) -> Result<f64> {
    let (b, g) = (params.beta, params.gamma);
    let s = lambda * (params.d() * x).exp();
    let (p, q) = (g * s + 1.0, b + s);
    if lambda < 0.0 || !(p > 0.0 && q > 0.0) {
        return Err(Error::Hypothesis(format!("Ĥ needs λ ≥ 0, got {lambda}")));
    }
    Ok(1.0 - params.d() * (b * g - 1.0).abs() * s / (p * q))
}
