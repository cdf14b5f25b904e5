//! Contraction regions in the log domain and the set-cover spiral geometry.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::model::SpinParams;
use crate::numeric::bisect;
use crate::thresholds::{bounded_case, check_x, BoundedCase, Sign};

/// Anything with a signed slack: non-negative inside, negative outside.
pub trait Region {
    /// Smallest slack over the defining inequalities (not a Euclidean distance).
    fn slack(&self, z: Complex64) -> f64;

    fn contains(&self, z: Complex64, margin: f64) -> bool {
        self.slack(z) >= margin
    }
}

/// U(x₀, x₁, k) = {Re z ∈ [x₁, x₀], |Im z| ≤ k(x₀ − Re z)}, optionally cut to Re z ∈ [x₂, x₃].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TriangleRegion {
    pub x0: f64,
    pub x1: f64,
    pub k: f64,
    pub trim: Option<(f64, f64)>,
}

impl TriangleRegion {
    pub fn new(x0: f64, x1: f64, k: f64) -> Result<Self> {
        if !(x1 < x0) || !(k > 0.0) {
            return domain(format!("triangle needs x₁ < x₀ and k > 0, got ({x0}, {x1}, {k})"));
        }
        Ok(TriangleRegion { x0, x1, k, trim: None })
    }

    pub fn with_trim(mut self, lo: f64, hi: f64) -> Self {
        self.trim = Some((lo, hi));
        self
    }

    pub fn untrimmed(&self) -> Self {
        TriangleRegion { trim: None, ..*self }
    }

    /// Left end of the real range after trimming.
    pub fn lo(&self) -> f64 {
        self.trim.map_or(self.x1, |t| t.0.max(self.x1))
    }

    /// Right end of the real range after trimming.
    pub fn hi(&self) -> f64 {
        self.trim.map_or(self.x0, |t| t.1.min(self.x0))
    }

    /// Largest k keeping Δ·|Im w| below π/2 on the triangle.
    pub fn k_limit(x0: f64, x1: f64, delta: usize) -> f64 {
        PI / (2.0 * delta as f64 * (x0 - x1))
    }
}

impl Region for TriangleRegion {
    fn slack(&self, z: Complex64) -> f64 {
        (z.re - self.lo()).min(self.hi() - z.re).min(self.k * (self.x0 - z.re) - z.im.abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RectRegion {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
}

impl Region for RectRegion {
    fn slack(&self, z: Complex64) -> f64 {
        (z.re - self.x1).min(self.x0 - z.re).min(self.y0 - z.im.abs())
    }
}

/// Ũ(k) = {Re z ≤ 0, |Im z| ≤ −k Re z}; closed under finite sums.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConeRegion {
    pub k: f64,
}

impl Region for ConeRegion {
    fn slack(&self, z: Complex64) -> f64 {
        (-z.re).min(-self.k * z.re - z.im.abs())
    }
}

/// W(k) = exp(Ũ(k)) ∪ {0} = {|w| ≤ e^{−|arg w|/k}}; closed under products.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpiralRegion {
    pub k: f64,
}

impl Region for SpiralRegion {
    fn slack(&self, w: Complex64) -> f64 {
        (-w.arg().abs() / self.k).exp() - w.norm()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryKind {
    UpperLeg,
    LowerLeg,
    Base,
    Apex,
    TrimWall,
    Side,
}

impl BoundaryKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            BoundaryKind::UpperLeg => "upper_leg",
            BoundaryKind::LowerLeg => "lower_leg",
            BoundaryKind::Base => "base",
            BoundaryKind::Apex => "apex",
            BoundaryKind::TrimWall => "trim_wall",
            BoundaryKind::Side => "side",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionSample {
    pub points: Vec<(BoundaryKind, Complex64)>,
}

impl RegionSample {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// `n` points on each leg and on the base, plus `n` on the trim wall when it
/// cuts the apex off. Spacing is uniform in Re z.
pub fn triangle_boundary(region: &TriangleRegion, n: usize) -> RegionSample {
    let n = n.max(2);
    let (lo, hi, x0, k) = (region.lo(), region.hi(), region.x0, region.k);
    let mut points = Vec::with_capacity(4 * n);
    for i in 0..n {
        let x = lo + (hi - lo) * i as f64 / (n - 1) as f64;
        let x = if i == n - 1 { hi } else { x };
        let y = k * (x0 - x);
        let apex = i == n - 1 && hi == x0;
        points.push((if apex { BoundaryKind::Apex } else { BoundaryKind::UpperLeg }, Complex64::new(x, y)));
        points.push((if apex { BoundaryKind::Apex } else { BoundaryKind::LowerLeg }, Complex64::new(x, -y)));
    }
    let walls: &[(f64, BoundaryKind)] =
        if hi < x0 { &[(lo, BoundaryKind::Base), (hi, BoundaryKind::TrimWall)] } else { &[(lo, BoundaryKind::Base)] };
    for &(x, kind) in walls {
        let y = k * (x0 - x);
        for i in 0..n {
            points.push((kind, Complex64::new(x, -y + 2.0 * y * i as f64 / (n - 1) as f64)));
        }
    }
    RegionSample { points }
}

pub fn rect_boundary(region: &RectRegion, n: usize) -> RegionSample {
    let n = n.max(2);
    let mut points = Vec::with_capacity(4 * n);
    let RectRegion { x0, x1, y0 } = *region;
    for i in 0..n {
        let t = i as f64 / (n - 1) as f64;
        let x = x1 + (x0 - x1) * t;
        let y = -y0 + 2.0 * y0 * t;
        points.push((BoundaryKind::UpperLeg, Complex64::new(x, y0)));
        points.push((BoundaryKind::LowerLeg, Complex64::new(x, -y0)));
        points.push((BoundaryKind::Base, Complex64::new(x1, y)));
        points.push((BoundaryKind::Side, Complex64::new(x0, y)));
    }
    RegionSample { points }
}

/// Triangle corners chosen for a bounded-degree case; k is left to the certifier.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TriangleCorners {
    pub case: BoundedCase,
    pub x0: f64,
    pub x1: f64,
    pub trim: Option<(f64, f64)>,
    /// Free parameter in (|λ₀|, 1) used for the right wall in the negative antiferromagnetic case.
    pub lambda_tilde: Option<f64>,
}

impl TriangleCorners {
    pub fn with_k(&self, k: f64) -> Result<TriangleRegion> {
        let t = TriangleRegion::new(self.x0, self.x1, k)?;
        Ok(match self.trim {
            Some((a, b)) => t.with_trim(a, b),
            None => t,
        })
    }
}

fn mismatch<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::CaseMismatch(msg.into()))
}

/// Corner choice for each bounded case, with open intervals resolved at their midpoints.
pub fn triangle_params_for_case(params: &SpinParams, lambda0: f64) -> Result<TriangleCorners> {
    if lambda0 == 0.0 || !lambda0.is_finite() {
        return mismatch("λ₀ must be a non-zero real");
    }
    let case = match bounded_case(params, Sign::of(lambda0)) {
        Ok(BoundedCase::Rect) => return mismatch("rectangle regime has no triangle"),
        Ok(c) => c,
        Err(e) => return mismatch(e.to_string()),
    };
    let (b, g) = (params.beta, params.gamma);
    let d = params.d();
    let corners = |x0, x1, trim, lambda_tilde| TriangleCorners { case, x0, x1, trim, lambda_tilde };
    match case {
        BoundedCase::FerroPositive => Ok(corners(0f64.max(g.ln()), 0f64.min(-b.ln()), None, None)),
        BoundedCase::FerroNegative => {
            let x0 = 0f64.max(g.ln());
            let s = lambda0 * (d * x0).exp();
            let (num, den) = (1.0 + g * s, b + s);
            if !(num > 0.0 && den > 0.0) {
                return mismatch(format!("λ₀={lambda0} is below the ferromagnetic negative bound"));
            }
            let upper = (num / den).ln().min(0.0);
            let x1 = if g < 1.0 {
                let lower = ((1.0 - g) / (b - 1.0)).ln();
                if !(lower < upper) {
                    return mismatch("empty interval for x₁");
                }
                0.5 * (lower + upper)
            } else {
                upper - 1.0
            };
            Ok(corners(x0, x1, None, None))
        }
        BoundedCase::AntiFerroPositive => {
            // x̄ solves λ₀((γx+1)/(x+β))^d = x; the left side decreases, the right increases
            let fixed = |x: f64| lambda0 * ((g * x + 1.0) / (x + b)).powf(d) - x;
            let xbar = bisect(fixed, 0.0, lambda0 * (1f64 / b).max(g).powf(d) + 1.0, 1e-14)?;
            let x0 = (2.0 * (1.0 - b * g) * xbar / (b - g * xbar * xbar) + ((g * xbar + 1.0) / (xbar + b)).ln())
                .max(0.0);
            let x2 = if g > 0.0 { g.ln() } else { -(b + lambda0 * (d * x0).exp()).ln() - 1.0 };
            let x1 = x2.min(0.0);
            Ok(corners(x0, x1, Some((x2, -b.ln())), None))
        }
        BoundedCase::AntiFerroNegative => {
            let xc = check_x(b, g, d)?;
            let x0 = xc.ln().max(0.0);
            let x2 = if g > 0.0 { g.ln() } else { -b.ln() - 1.0 };
            let x1 = x2.min(0.0);
            let (x3, lt) = if b > 1.0 && b + g > 2.0 {
                let lt = 0.5 * (lambda0.abs() + 1.0);
                (((1.0 - g * lt) / (b - lt)).ln(), Some(lt))
            } else {
                (x0, None)
            };
            Ok(corners(x0, x1, Some((x2, x3)), lt))
        }
        BoundedCase::Rect => unreachable!(),
    }
}

/// Unique root in (π/2, π) of k e^{θ/k} sin θ + e^{θ/k} cos θ + μ = 0.
///
/// The equation is solved after multiplying by e^{−θ/k}, so the residual
/// reported by tests is on that scaled form.
pub fn theta0(mu: f64, k: f64) -> Result<f64> {
    if mu == 0.0 || !(mu >= -1.0) || !(k > 0.0) || k >= PI / (2.0 * (mu + 4.0).ln()) {
        return domain(format!("θ₀ needs μ ≠ 0, μ ≥ −1 and 0 < k < π/(2 ln(μ+4)); got μ={mu}, k={k}"));
    }
    bisect(|t| theta0_residual(mu, k, t), PI / 2.0, PI, 1e-15)
}

pub fn theta0_residual(mu: f64, k: f64, t: f64) -> f64 {
    k * t.sin() + t.cos() + mu * (-t / k).exp()
}

/// (r₁, h₁, r₂, h₂) on the spiral boundary at angle θ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryMaps {
    pub r1: f64,
    pub h1: f64,
    pub r2: f64,
    pub h2: f64,
}

/// r₁ = −½ ln(e^{2θ/k} + 1 − 2e^{θ/k} cos θ), written without overflow.
pub fn r_k1(k: f64, t: f64) -> f64 {
    let e = (-t / k).exp();
    -t / k - 0.5 * (1.0 + e * e - 2.0 * e * t.cos()).ln()
}

/// h₁ = arg(e^{θ/k + iθ} − 1), increasing from 0 to π.
pub fn h_k1(k: f64, t: f64) -> f64 {
    t.sin().atan2(t.cos() - (-t / k).exp())
}

pub fn setcover_boundary_maps(mu: f64, k: f64, t: f64) -> Result<BoundaryMaps> {
    if !(t > 0.0 && t < PI) || !(k > 0.0) {
        return domain(format!("θ must lie in (0, π) and k > 0; got θ={t}, k={k}"));
    }
    let w = Complex64::from_polar((-t / k).exp(), t);
    let z = w * mu + 1.0;
    Ok(BoundaryMaps { r1: r_k1(k, t), h1: h_k1(k, t), r2: z.norm().ln(), h2: z.arg() })
}

/// p_k(x): π left of the knee −ln(1+e^{π/k}), h₁(r₁⁻¹(x)) to its right.
pub fn p_k(k: f64, x: f64) -> f64 {
    let knee = -PI / k - (-PI / k).exp().ln_1p();
    if x <= knee {
        return PI;
    }
    // r₁ decreases from +∞ at 0⁺ to the knee at π
    let mut lo = 1e-300;
    let mut hi = PI;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        if r_k1(k, mid) > x {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    h_k1(k, 0.5 * (lo + hi))
}
