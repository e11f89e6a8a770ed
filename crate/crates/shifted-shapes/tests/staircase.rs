//! Level curves of random staircase tableaux: the empirical level sets of
//! uniform shifted tableaux with staircase shape follow the curves with
//! compressed free cumulants `R_k -> alpha^(k-1) R_k` of the triangular
//! limit shape (the same family that governs square Young tableaux).
//!
//! The triangle's transition measure is the symmetric Bernoulli measure, and
//! its alpha-compression has the exact quadratic Cauchy transform
//! `alpha (z^2 - 1) G^2 + z (1 - 2 alpha) G + (alpha - 1) = 0`; this is the
//! reference construction. The generic truncated-cumulant construction is
//! compared against it where the cumulant series converges on the needed
//! range (small alpha); Monte Carlo level sets are compared at large alpha.

use num_complex::Complex64;
use shifted_shapes::free_cumulants::{r_from_s, sigma_moments, FreeCumulantSequence};
use shifted_shapes::limit_shapes::{
    free_cumulants_from_cauchy, scaled_level_curves, shape_from_cauchy, CauchyTransform,
    DEFAULT_EPS_SCHEDULE,
};
use shifted_shapes::partition::{Partition, StrictPartition};
use shifted_shapes::profile::ZigzagProfile;
use shifted_shapes::rat_to_f64;
use shifted_shapes::samplers::{monte_carlo_profile, GridSpec, SamplerSpec};

fn compressed_bernoulli(alpha: f64) -> CauchyTransform {
    CauchyTransform::Algebraic {
        coeffs: vec![
            vec![alpha - 1.0],
            vec![0.0, 1.0 - 2.0 * alpha],
            vec![-alpha, 0.0, alpha],
        ],
    }
}

fn triangle_cumulants(order: usize) -> FreeCumulantSequence<f64> {
    let triangle = ZigzagProfile::of_russian(&Partition::new(vec![1]).unwrap());
    let exact = r_from_s(&sigma_moments(&triangle, order));
    FreeCumulantSequence::from_vals(exact.vals().iter().map(rat_to_f64).collect())
}

#[test]
fn compressed_quadratic_has_compressed_cumulants() {
    // the exact quadratic reproduces R_k(alpha) = alpha^(k-1) R_k at the
    // series level, for every alpha
    let base = triangle_cumulants(10);
    for alpha in [0.25, 0.5, 0.75, 1.0] {
        let g = compressed_bernoulli(alpha);
        let r = free_cumulants_from_cauchy(&g, 10).unwrap();
        for k in 2..=10 {
            let want = alpha.powi(k as i32 - 1) * base.r(k);
            assert!(
                (r.r(k) - want).abs() < 1e-9,
                "alpha={alpha}, R_{k}: {} vs {want}",
                r.r(k)
            );
        }
    }
}

#[test]
fn truncated_cumulant_curves_match_the_exact_family_at_small_alpha() {
    // where the compressed cumulant series converges on the whole physical
    // branch (alpha below (8 - sqrt 32)/16 ~ 0.146, where the band-edge value
    // of G stays inside the convergence radius), the generic truncated
    // construction agrees with the exact quadratic
    let r = triangle_cumulants(16);
    let grid = GridSpec::symmetric(1.2, 97);
    let alphas = [0.05, 0.08, 0.1];
    let fam = scaled_level_curves(&r, &alphas, grid, &DEFAULT_EPS_SCHEDULE).unwrap();
    for (i, &alpha) in alphas.iter().enumerate() {
        let exact =
            shape_from_cauchy(&compressed_bernoulli(alpha), grid, &DEFAULT_EPS_SCHEDULE).unwrap();
        let worst = fam.curves[i].sup_distance(&|z| exact.eval(z));
        assert!(
            worst < 5e-3,
            "alpha={alpha}: constructions differ by {worst}"
        );
    }
}

#[test]
fn staircase_level_sets_follow_the_compressed_family() {
    let alphas = [0.25, 0.5, 0.75];
    let grid = GridSpec::symmetric(1.6, 161);

    let k = 40u32;
    let shape = StrictPartition::staircase(k);
    let n = shape.size();
    let scale = 1.0 / (2.0 * n as f64).sqrt();
    for &alpha in &alphas {
        let curve =
            shape_from_cauchy(&compressed_bernoulli(alpha), grid, &DEFAULT_EPS_SCHEDULE).unwrap();
        let out = monte_carlo_profile(
            &SamplerSpec::SytLevel {
                shape: shape.clone(),
                alpha,
            },
            30,
            scale,
            271_828,
            grid,
            Some(&move |z: f64| curve.eval(z)),
        );
        let mean_dev = out.deviations.iter().sum::<f64>() / out.deviations.len() as f64;
        assert!(
            mean_dev < 0.12,
            "alpha = {alpha}: mean sup-deviation {mean_dev}"
        );
    }

    // alpha = 1 is the staircase itself; compare against the exact triangle
    let out = monte_carlo_profile(
        &SamplerSpec::Fixed { shape },
        1,
        scale,
        0,
        grid,
        Some(&|z: f64| {
            if z.abs() < 1.0 {
                2.0 - z.abs()
            } else {
                z.abs()
            }
        }),
    );
    assert!(
        out.deviations[0] < 0.05,
        "staircase profile deviation {}",
        out.deviations[0]
    );

    // the selected quadratic root satisfies its equation along the real axis
    let alpha = 0.25;
    let g = compressed_bernoulli(alpha);
    let mut seed = None;
    for j in 0..100 {
        let z = Complex64::new(20.0 - j as f64 * 0.4, 1e-3);
        let gv = g.eval(z, seed);
        let res = alpha * (z * z - 1.0) * gv * gv + z * (1.0 - 2.0 * alpha) * gv + (alpha - 1.0);
        assert!(res.norm() < 1e-9, "residual {} at {z}", res.norm());
        seed = Some(gv);
    }
}
