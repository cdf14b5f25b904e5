use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use zerocert::regions::{
    h_k1, p_k, r_k1, rect_boundary, setcover_boundary_maps, theta0, triangle_boundary, BoundaryKind, ConeRegion,
    RectRegion, Region, SpiralRegion, TriangleRegion,
};

fn thetas(n: usize) -> impl Iterator<Item = f64> {
    (1..n).map(move |i| PI * i as f64 / n as f64)
}

#[test]
fn h_k1_stays_above_arctan_k() {
    for k in [0.01, 0.05, 0.2, 0.5, 1.0] {
        for t in thetas(4000) {
            assert!(h_k1(k, t) > f64::atan(k), "k={k} θ={t}");
        }
    }
}

#[test]
fn h_k2_below_arctan_k_for_minus_one() {
    for k in [0.01, 0.05, 0.2, 0.5, 1.0] {
        for t in thetas(4000) {
            let m = setcover_boundary_maps(-1.0, k, t).unwrap();
            assert!(m.h2.abs() < f64::atan(k), "k={k} θ={t}");
        }
    }
}

/// |h₂| as a function of r₂ along (0, θ₀): slopes between consecutive samples never increase.
/// Samples stop where |μ|e^{−θ/k} drops below 1e−8, past which r₂ no longer moves in double precision.
#[test]
fn h_k2_concave_in_r_k2() {
    for mu in [-1.0, -0.5, 0.5, 2.0] {
        for k in [0.05, 0.2, 0.5] {
            let t0 = theta0(mu, k).unwrap().min(k * (1e8 * f64::abs(mu)).ln());
            let pts: Vec<(f64, f64)> = (1..2000)
                .map(|i| t0 * i as f64 / 2000.0)
                .map(|t| setcover_boundary_maps(mu, k, t).unwrap())
                .map(|m| (m.r2, m.h2.abs()))
                .collect();
            let slopes: Vec<f64> = pts.windows(2).map(|w| (w[1].1 - w[0].1) / (w[1].0 - w[0].0)).collect();
            let monotone_x = pts.windows(2).all(|w| w[1].0 > w[0].0) || pts.windows(2).all(|w| w[1].0 < w[0].0);
            assert!(monotone_x, "μ={mu} k={k}: r₂ is not monotone on (0, θ₀)");
            let dir = (pts[1].0 - pts[0].0).signum();
            for w in slopes.windows(2) {
                // walking right the slope may only fall; walking left it may only rise
                assert!(dir * (w[1] - w[0]) <= 1e-8, "μ={mu} k={k}: {} then {}", w[0], w[1]);
            }
        }
    }
}

#[test]
fn p_k_inverts_the_first_boundary_map() {
    for k in [0.02, 0.1, 0.5, 1.0] {
        for t in thetas(500) {
            assert!((p_k(k, r_k1(k, t)) - h_k1(k, t)).abs() < 1e-10, "k={k} θ={t}");
        }
    }
}

#[test]
fn boundary_samples_lie_on_their_pieces() {
    let u = TriangleRegion::new(0.3, -1.2, 0.07).unwrap().with_trim(-1.0, 0.1);
    for (kind, z) in triangle_boundary(&u, 97).points {
        let on = match kind {
            BoundaryKind::UpperLeg => (z.im - u.k * (u.x0 - z.re)).abs(),
            BoundaryKind::LowerLeg => (z.im + u.k * (u.x0 - z.re)).abs(),
            BoundaryKind::Base => (z.re - u.lo()).abs(),
            BoundaryKind::TrimWall => (z.re - u.hi()).abs(),
            other => panic!("unexpected piece {other:?}"),
        };
        assert!(on <= 1e-14, "{kind:?} {z}");
        assert!(u.slack(z).abs() <= 1e-14);
    }
    let r = RectRegion { x0: 0.5, x1: -0.4, y0: 0.2 };
    for (_, z) in rect_boundary(&r, 50).points {
        assert!(r.slack(z).abs() <= 1e-14);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn sums_of_apex_zero_triangle_points_stay_in_the_cone(
        k in 0.001f64..1.0,
        x1 in -5.0f64..-0.01,
        pts in prop::collection::vec((0.0f64..1.0, -1.0f64..1.0), 1..12),
    ) {
        let u = TriangleRegion::new(0.0, x1, k).unwrap();
        let sum: Complex64 = pts
            .iter()
            .map(|&(a, b)| {
                let x = x1 * a;
                Complex64::new(x, b * k * (0.0 - x))
            })
            .inspect(|&z| assert!(u.slack(z) >= -1e-12))
            .sum();
        let cone = ConeRegion { k };
        prop_assert!(cone.slack(sum) >= -1e-12 * (1.0 + sum.norm()));
    }

    #[test]
    fn spiral_members_multiply_to_members(
        k in 0.01f64..1.0,
        pts in prop::collection::vec((0.0f64..1.0, -1.0f64..1.0), 1..8),
    ) {
        let w = SpiralRegion { k };
        let mut prod = Complex64::new(1.0, 0.0);
        for &(s, a) in &pts {
            // angle in (−π, π), modulus a fraction s of the allowed radius
            let arg = a * PI * 0.999;
            let z = Complex64::from_polar(s * (-arg.abs() / k).exp(), arg);
            prop_assert!(w.slack(z) >= -1e-15);
            prod *= z;
        }
        prop_assert!(w.slack(prod) >= -1e-12);
    }
}
