use proptest::prelude::*;
use zerocert::model::SpinParams;
use zerocert::thresholds::{
    bar_d, bounded_lambda_bound, check_x, find_dc, hat_x, lambda_c_at, psi, psi_inv, setcover_eta_bound,
    setcover_mu_bounds, setcover_report, Sign,
};

/// Limit criterion written from scratch: x̂ e^{x̂}/(e^{x̂} − 1) − D|μ|x/(e^x + μ).
fn limit(delta: usize, mu: f64, eta: f64, x: f64) -> f64 {
    let d = delta as f64 - 1.0;
    let xh = (1.0 / (eta * (mu * (-x).exp() + 1.0).powf(d))).ln_1p();
    xh * xh.exp() / xh.exp_m1() - d * mu.abs() * x / (x.exp() + mu)
}

/// Largest η keeping the criterion positive on a dense grid of (0, 30], by geometric bisection.
fn eta_oracle(delta: usize, mu: f64) -> f64 {
    let xs: Vec<f64> = (1..=200_000).map(|i| i as f64 * 30.0 / 200_000.0).collect();
    let ok = |eta: f64| xs.iter().all(|&x| limit(delta, mu, eta, x) > 0.0);
    let (mut lo, mut hi) = (1e-6, 1e3);
    assert!(!ok(hi));
    for _ in 0..80 {
        let m = (lo * hi).sqrt();
        if ok(m) {
            lo = m;
        } else {
            hi = m;
        }
    }
    lo
}

#[test]
fn eta_bounds_match_the_grid_oracle() {
    // oracle output, frozen
    let frozen = [
        (5, 1.0, 1.453991),
        (4, 2.0, 0.271043),
        (10, 0.5, 0.199839),
        (5, -1.0, 0.941480),
        (3, -1.0, 3.924377),
        (4, -0.8, 4.339190),
        (10, -0.3, 11.363069),
    ];
    for (delta, mu, want) in frozen {
        let lib = setcover_eta_bound(delta, mu).unwrap().eta;
        let oracle = eta_oracle(delta, mu);
        assert!((oracle - want).abs() < 2e-6, "oracle Δ={delta} μ={mu}: {oracle}");
        assert!((lib - oracle).abs() < 1e-5 * oracle, "Δ={delta} μ={mu}: {lib} vs {oracle}");
    }
}

#[test]
fn middle_band_has_no_eta_bound() {
    for delta in 2..8 {
        let (mu1, mu2) = setcover_mu_bounds(delta);
        assert!(mu2 < 0.0 && 0.0 < mu1);
        for mu in [mu2, 0.5 * mu2, 0.0, 0.5 * mu1, mu1] {
            assert!(setcover_eta_bound(delta, mu).is_err());
            let r = setcover_report(delta, mu).unwrap();
            assert!(r.eta1.is_none() && r.eta2.is_none());
        }
    }
}

#[test]
fn hard_core_bounds_are_exact() {
    for delta in 3..=8 {
        let p = SpinParams::hard_core(delta);
        let dl = delta as f64;
        let pos = (dl - 1.0).powf(dl - 1.0) / (dl - 2.0).powf(dl);
        let neg = -(dl - 1.0).powf(dl - 1.0) / dl.powf(dl);
        let (_, b) = bounded_lambda_bound(&p, Sign::Positive).unwrap();
        assert!((b - pos).abs() < 1e-12 * pos, "Δ={delta}: {b} vs {pos}");
        let (_, b) = bounded_lambda_bound(&p, Sign::Negative).unwrap();
        assert!((b - neg).abs() < 1e-12, "Δ={delta}: {b} vs {neg}");
    }
}

#[test]
fn lambda_c_shape_in_d() {
    for &(b, g) in &[(0.5, 0.3), (1.0, 0.2), (0.9, 0.0), (1.2, 0.5), (2.0, 0.1), (1.5, 0.4)] {
        let start = bar_d(b, g).unwrap().ceil().max(2.0) as usize;
        let dc = find_dc(b, g).ok();
        for d in start..50 {
            let (now, next) = (lambda_c_at(b, g, d as f64).unwrap(), lambda_c_at(b, g, d as f64 + 1.0).unwrap());
            match dc {
                _ if b <= 1.0 => assert!(next < now, "β={b} γ={g} d={d}"),
                Some(dc) if (d as f64 + 1.0) <= dc => assert!(next < now, "β={b} γ={g} d={d}"),
                Some(dc) if (d as f64) >= dc => assert!(next > now, "β={b} γ={g} d={d}"),
                _ => {}
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn hat_x_decreasing_and_below_sqrt(b in 0.2f64..3.0, g in 0.01f64..1.0, extra in 0.0f64..40.0) {
        prop_assume!(b * g < 0.95);
        let d0 = bar_d(b, g).unwrap().max(1.0);
        let d = d0 + extra;
        let x = hat_x(b, g, d).unwrap();
        let lhs = d * (1.0 - b * g) * x / ((x + b) * (g * x + 1.0));
        prop_assert!((lhs - 1.0).abs() < 1e-10);
        prop_assert!(x <= (b / g).sqrt() * (1.0 + 1e-10));
        prop_assert!(hat_x(b, g, d + 1.0).unwrap() < x);
    }

    #[test]
    fn check_x_crossings(b in 0.1f64..3.0, g in 0.0f64..0.99, d in 1usize..30) {
        prop_assume!(b * g < 0.99 && (b - 1.0).abs() > 1e-3);
        let d = d as f64;
        let x = check_x(b, g, d).unwrap();
        prop_assert!(x > 1.0 / b);
        let crit1 = (1.0 - b * g) / ((b - 1.0) * (1.0 - g));
        prop_assume!((d - crit1).abs() > 1e-6);
        prop_assert_eq!(x < 1.0, b > 1.0 && d > crit1);
        if b > 1.0 {
            let crit2 = (b - 1.0) * (1.0 - g) / (1.0 - b * g);
            prop_assume!((d - crit2).abs() > 1e-6);
            prop_assert_eq!(x < (1.0 - g) / (b - 1.0), d > crit2);
        }
    }

    #[test]
    fn psi_decreasing_with_inverse(y in 1e-3f64..50.0, t in 1e-3f64..0.999) {
        prop_assert!(psi(y * 1.01) < psi(y));
        prop_assert!((psi(psi_inv(t).unwrap()) - t).abs() < 1e-12);
    }
}
