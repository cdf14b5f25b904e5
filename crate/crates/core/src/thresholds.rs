//! Closed-form critical activities for 2-spin systems and set covers.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::model::SpinParams;
use crate::numeric::{bisect, first_root_by_scan, BISECT_TOL};

/// Slack used when comparing against boundary cases such as √(βγ) = (d−1)/(d+1).
const EDGE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn of(x: f64) -> Sign {
        if x < 0.0 {
            Sign::Negative
        } else {
            Sign::Positive
        }
    }
}

/// Which branch of the bounded-degree bound applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundedCase {
    FerroPositive,
    FerroNegative,
    AntiFerroPositive,
    AntiFerroNegative,
    /// √(βγ) inside ((Δ−2)/Δ, Δ/(Δ−2)) with λ > 0; handled by rectangles.
    Rect,
}

impl BoundedCase {
    pub fn number(&self) -> Option<u8> {
        match self {
            BoundedCase::FerroPositive => Some(1),
            BoundedCase::FerroNegative => Some(2),
            BoundedCase::AntiFerroPositive => Some(3),
            BoundedCase::AntiFerroNegative => Some(4),
            BoundedCase::Rect => None,
        }
    }
}

/// d̄ = (1 + √(βγ)) / (1 − √(βγ)).
pub fn bar_d(beta: f64, gamma: f64) -> Result<f64> {
    let bg = beta * gamma;
    if !(0.0..1.0).contains(&bg) {
        return domain(format!("bar_d needs 0 ≤ βγ < 1, got {bg}"));
    }
    let s = bg.sqrt();
    Ok((1.0 + s) / (1.0 - s))
}

fn hat_x_valid(beta: f64, gamma: f64, d: f64) -> Result<()> {
    if !(beta > 0.0) || gamma < 0.0 {
        return domain("x̂ needs β > 0 and γ ≥ 0");
    }
    if d <= 1.0 || (beta * gamma).sqrt() > (d - 1.0) / (d + 1.0) + EDGE_TOL {
        return domain(format!("x̂ needs √(βγ) ≤ (d−1)/(d+1), got β={beta}, γ={gamma}, d={d}"));
    }
    Ok(())
}

/// x̂_d, the smaller root of d(1−βγ)x = (x+β)(γx+1); β/(d−1) when γ = 0.
pub fn hat_x(beta: f64, gamma: f64, d: f64) -> Result<f64> {
    hat_x_valid(beta, gamma, d)?;
    if gamma == 0.0 {
        return Ok(beta / (d - 1.0));
    }
    let bg = beta * gamma;
    let b = -1.0 - bg + d * (1.0 - bg);
    let disc = (b * b - 4.0 * bg).max(0.0);
    // b − √disc loses precision when βγ is tiny; use the conjugate form.
    Ok(2.0 * beta / (b + disc.sqrt()))
}

/// λ_c(d) = x̂_d ((x̂_d + β) / (γ x̂_d + 1))^d.
pub fn lambda_c_at(beta: f64, gamma: f64, d: f64) -> Result<f64> {
    let x = hat_x(beta, gamma, d)?;
    Ok(x * ((x + beta) / (gamma * x + 1.0)).powf(d))
}

/// Root x_c of 2(1−βγ)x/(β−γx²) + ln((γx+1)/(x+β)) = 0 and the matching
/// degree d_c = (x_c+β)(γx_c+1)/((1−βγ)x_c), where λ_c(d) is smallest.
pub fn critical_point(beta: f64, gamma: f64) -> Result<(f64, f64)> {
    if !(beta > 1.0) {
        return domain(format!("d_c exists only for β > 1, got {beta}"));
    }
    let bg = beta * gamma;
    if !(0.0..1.0).contains(&bg) {
        return domain(format!("d_c needs 0 ≤ βγ < 1, got {bg}"));
    }
    let psi = |x: f64| 2.0 * (1.0 - bg) * x / (beta - gamma * x * x) + ((gamma * x + 1.0) / (x + beta)).ln();
    let hi = if gamma > 0.0 {
        (beta / gamma).sqrt() * (1.0 - 1e-12)
    } else {
        let mut h = 1.0;
        while psi(h) <= 0.0 {
            h *= 2.0;
        }
        h
    };
    let xc = bisect(psi, 1e-300, hi, 1e-15)?;
    Ok((xc, (xc + beta) * (gamma * xc + 1.0) / ((1.0 - bg) * xc)))
}

pub fn find_dc(beta: f64, gamma: f64) -> Result<f64> {
    critical_point(beta, gamma).map(|(_, dc)| dc)
}

/// x̌_d, the larger root of βd x² − (1−βγ+d(1+βγ)) x + γd = 0.
pub fn check_x(beta: f64, gamma: f64, d: f64) -> Result<f64> {
    let bg = beta * gamma;
    if !(beta > 0.0) || gamma < 0.0 || bg >= 1.0 || d <= 0.0 {
        return domain(format!("x̌ needs β > 0, γ ≥ 0, βγ < 1, d > 0; got β={beta}, γ={gamma}, d={d}"));
    }
    let b = 1.0 - bg + d * (1.0 + bg);
    Ok((b + (b * b - 4.0 * bg * d * d).sqrt()) / (2.0 * beta * d))
}

/// Picks the branch for the sign of λ₀.
pub fn bounded_case(params: &SpinParams, sign: Sign) -> Result<BoundedCase> {
    let (beta, bg) = (params.beta, params.bg());
    if !(beta > 0.0) {
        return domain("thresholds need β > 0");
    }
    let delta = params.delta as f64;
    match sign {
        Sign::Positive if bg > 1.0 => Ok(BoundedCase::FerroPositive),
        Sign::Negative if bg > 1.0 => Ok(BoundedCase::FerroNegative),
        Sign::Negative if bg < 1.0 => Ok(BoundedCase::AntiFerroNegative),
        Sign::Positive if bg < 1.0 && bg.sqrt() <= (delta - 2.0) / delta + EDGE_TOL => {
            Ok(BoundedCase::AntiFerroPositive)
        }
        Sign::Positive if bg < 1.0 => Ok(BoundedCase::Rect),
        _ => domain("βγ = 1 is not covered by any case"),
    }
}

/// The case and the admissible end of the activity interval for the sign.
///
/// The rectangle case has no finite bound and reports +∞.
pub fn bounded_lambda_bound(params: &SpinParams, sign: Sign) -> Result<(BoundedCase, f64)> {
    let case = bounded_case(params, sign)?;
    let (beta, gamma) = (params.beta, params.gamma);
    let delta = params.delta as f64;
    let d = params.d();
    let bound = match case {
        BoundedCase::FerroPositive => {
            let s = params.bg().sqrt();
            let e = s / (s - 1.0);
            (beta / gamma).powf(e) * gamma.max(1.0).powf(2.0 * e - delta)
        }
        // exponent −Δ, not +Δ: the ferromagnetic negative side shrinks with γ
        BoundedCase::FerroNegative => -gamma.max(1.0).powf(-delta),
        BoundedCase::AntiFerroPositive => match critical_point(beta, gamma) {
            Ok((_, dc)) if delta > dc + 1.0 => lambda_c_at(beta, gamma, dc)?,
            _ => lambda_c_at(beta, gamma, d)?,
        },
        BoundedCase::AntiFerroNegative => {
            if beta > 1.0 && d > (1.0 - params.bg()) / ((beta - 1.0) * (1.0 - gamma)) {
                -(1.0f64).min((beta - 1.0) / (1.0 - gamma))
            } else {
                let x = check_x(beta, gamma, d)?;
                -(beta * x - 1.0) / ((x - gamma) * x.powf(d))
            }
        }
        BoundedCase::Rect => f64::INFINITY,
    };
    Ok((case, bound))
}

/// Branch of the degree-free bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UnboundedCase {
    /// βγ > 1 and γ ≤ 1.
    Ferro,
    /// βγ < 1 and β > 1.
    AntiFerro,
}

/// Open activity interval of the degree-free bound.
pub fn unbounded_lambda_interval(beta: f64, gamma: f64) -> Result<(UnboundedCase, f64, f64)> {
    let bg = beta * gamma;
    if bg > 1.0 && gamma <= 1.0 {
        let s = bg.sqrt();
        Ok((UnboundedCase::Ferro, -1.0, (beta / gamma).powf(s / (s - 1.0))))
    } else if bg < 1.0 && beta > 1.0 {
        let (_, dc) = critical_point(beta, gamma)?;
        let lo = (-1.0f64).max(-(beta - 1.0) / (1.0 - gamma));
        Ok((UnboundedCase::AntiFerro, lo, lambda_c_at(beta, gamma, dc)?))
    } else {
        Err(Error::CaseMismatch(format!(
            "degree-free zero freeness needs βγ > 1 with γ ≤ 1, or βγ < 1 with β > 1; got β={beta}, γ={gamma}"
        )))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdReport {
    pub beta: f64,
    pub gamma: f64,
    pub delta: usize,
    pub sign: Sign,
    pub bar_d: Option<f64>,
    /// Keyed by the down-degree d.
    pub hat_x: BTreeMap<usize, f64>,
    pub lambda_c: BTreeMap<usize, f64>,
    pub x_c: Option<f64>,
    pub d_c: Option<f64>,
    pub check_x: BTreeMap<usize, f64>,
    pub case_id: BoundedCase,
    pub lambda_bound: f64,
    pub notes: Vec<String>,
}

/// Collects every quantity that applies to the parameters.
pub fn threshold_report(params: &SpinParams, sign: Sign) -> Result<ThresholdReport> {
    let (case_id, lambda_bound) = bounded_lambda_bound(params, sign)?;
    let (beta, gamma) = (params.beta, params.gamma);
    let mut hat = BTreeMap::new();
    let mut lc = BTreeMap::new();
    let mut chk = BTreeMap::new();
    for d in 1..params.delta {
        if let Ok(x) = hat_x(beta, gamma, d as f64) {
            hat.insert(d, x);
            lc.insert(d, lambda_c_at(beta, gamma, d as f64)?);
        }
        if let Ok(x) = check_x(beta, gamma, d as f64) {
            chk.insert(d, x);
        }
    }
    let crit = critical_point(beta, gamma).ok();
    let mut notes = Vec::new();
    if case_id == BoundedCase::FerroNegative && gamma > 1.0 {
        notes.push("bound uses −max{1,γ}^(−Δ) on the ferromagnetic negative side".into());
    }
    if case_id == BoundedCase::Rect {
        notes.push("rectangle regime: every λ₀ > 0 is admissible".into());
    }
    Ok(ThresholdReport {
        beta,
        gamma,
        delta: params.delta,
        sign,
        bar_d: bar_d(beta, gamma).ok(),
        hat_x: hat,
        lambda_c: lc,
        x_c: crit.map(|c| c.0),
        d_c: crit.map(|c| c.1),
        check_x: chk,
        case_id,
        lambda_bound,
        notes,
    })
}

/// μ₁ = e^{1+1/(Δ−1)}/(Δ−1) and μ₂ = −e^{1−1/(Δ−1)}/(Δ−1).
pub fn setcover_mu_bounds(delta: usize) -> (f64, f64) {
    let d = delta as f64 - 1.0;
    ((1.0 + 1.0 / d).exp() / d, -(1.0 - 1.0 / d).exp() / d)
}

/// ψ(y) = ln(1+y)/y, extended by ψ(0) = 1.
pub fn psi(y: f64) -> f64 {
    if y == 0.0 {
        1.0
    } else {
        y.ln_1p() / y
    }
}

/// Inverse of the decreasing map ψ on (0, ∞), for t ∈ (0, 1).
pub fn psi_inv(t: f64) -> Result<f64> {
    if !(t > 0.0 && t < 1.0) {
        return domain(format!("ψ⁻¹ needs t in (0, 1), got {t}"));
    }
    // bisect on s = ln y so both tails are reachable
    let s = bisect(|s| psi(s.exp()) - t, -80.0, 250.0, 1e-15)?;
    Ok(s.exp())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EtaRoute {
    Eta1,
    Eta2,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EtaBound {
    pub route: EtaRoute,
    pub eta: f64,
    /// The root of the defining transcendental equation.
    pub x_star: f64,
}

/// η₁ for μ > μ₁, η₂ for μ < μ₂; a domain error in between.
pub fn setcover_eta_bound(delta: usize, mu: f64) -> Result<EtaBound> {
    if delta < 2 || !(mu >= -1.0) {
        return domain(format!("need Δ ≥ 2 and μ ≥ −1, got Δ={delta}, μ={mu}"));
    }
    let (mu1, mu2) = setcover_mu_bounds(delta);
    if mu > mu1 {
        eta1(delta, mu)
    } else if mu < mu2 {
        eta2(delta, mu)
    } else {
        domain(format!("μ={mu} lies in [μ₂, μ₁] = [{mu2}, {mu1}], every η is admissible"))
    }
}

fn eta_from_root(delta: usize, mu: f64, x: f64, t: f64, route: EtaRoute) -> Result<EtaBound> {
    let s = 1.0 + mu * (-x).exp();
    let y = psi_inv(t)?;
    Ok(EtaBound { route, eta: 1.0 / (y * s.powi(delta as i32 - 1)), x_star: x })
}

fn eta1(delta: usize, mu: f64) -> Result<EtaBound> {
    let dl = delta as f64;
    let target = ((dl - 1.0) * mu).ln() / dl;
    let x = first_root_by_scan(|x| mu * x / (mu + x.exp()) - target, 0.0, 200.0, 0.01)?;
    eta_from_root(delta, mu, x, x / (1.0 + mu * (-x).exp()), EtaRoute::Eta1)
}

fn eta2(delta: usize, mu: f64) -> Result<EtaBound> {
    let d = delta as f64 - 1.0;
    let q = |x: f64| 2.0 - x + 2.0 * mu * (-x).exp();
    let den = |x: f64| x - 2.0 - 2.0 * mu * (-x).exp() - d * x * mu * (-x).exp();
    let lhs = |x: f64| (-d * x * mu * (-x).exp() / q(x)).ln() * (1.0 + mu * (-x).exp()) / den(x) - 1.0;
    // q rises up to ln(−2μ) and falls afterwards; its zero past that point ends the domain
    let a = (-2.0 * mu).ln().max(0.0);
    if !(q(a) > 0.0) {
        return domain(format!("no admissible x for μ={mu}"));
    }
    let b = bisect(q, a, 2.0, BISECT_TOL)?;
    let step = 1e-4;
    let mut hi = b - 1e-9;
    let mut fhi = lhs(hi);
    while hi > step {
        let lo = hi - step;
        let flo = lhs(lo);
        let same_den = den(lo).signum() == den(hi).signum();
        if same_den && flo.is_finite() && fhi.is_finite() && flo.signum() != fhi.signum() {
            let x = bisect(lhs, lo, hi, BISECT_TOL)?;
            let t = 2.0 - x / (1.0 + mu * (-x).exp());
            return eta_from_root(delta, mu, x, t, EtaRoute::Eta2);
        }
        hi = lo;
        fhi = flo;
    }
    Err(Error::NoConvergence(format!("η₂ equation has no root for Δ={delta}, μ={mu}")))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SetCoverThresholdReport {
    pub delta: usize,
    pub mu: f64,
    pub mu1: f64,
    pub mu2: f64,
    pub eta1: Option<f64>,
    pub eta2: Option<f64>,
    #[serde(rename = "xStar1")]
    pub x_star1: Option<f64>,
    #[serde(rename = "xStar2")]
    pub x_star2: Option<f64>,
}

pub fn setcover_report(delta: usize, mu: f64) -> Result<SetCoverThresholdReport> {
    let (mu1, mu2) = setcover_mu_bounds(delta);
    let mut r = SetCoverThresholdReport { delta, mu, mu1, mu2, eta1: None, eta2: None, x_star1: None, x_star2: None };
    match setcover_eta_bound(delta, mu) {
        Ok(b) if b.route == EtaRoute::Eta1 => {
            r.eta1 = Some(b.eta);
            r.x_star1 = Some(b.x_star);
        }
        Ok(b) => {
            r.eta2 = Some(b.eta);
            r.x_star2 = Some(b.x_star);
        }
        Err(Error::Domain(_)) if (mu2..=mu1).contains(&mu) => {}
        Err(e) => return Err(e),
    }
    Ok(r)
}
