//! Interactive browser demo for the limit shapes of random shifted Young
//! diagrams. Exposes three operations to the static page in `www/`:
//!
//! * the Schur--Weyl limit curve as the parameter c varies,
//! * random diagrams sampled from the shifted Plancherel / Schur--Weyl
//!   measures, scaled by 1/sqrt(2n) and drawn against their limit curve,
//! * level curves of the tableau surface, compressed cumulants
//!   `R_k -> alpha^(k-1) R_k`.
//!
//! Every function returns a flat `[z0, t0, z1, t1, ...]` polyline ready for a
//! 2d canvas. The `compute` module carries the logic and runs on any target;
//! the `#[wasm_bindgen]` exports are thin wrappers.

use wasm_bindgen::prelude::*;

pub mod compute {
    use shifted_shapes::free_cumulants::FreeCumulantSequence;
    use shifted_shapes::limit_shapes::{lsvk_value, scaled_level_curves, sw_curve};
    use shifted_shapes::profile::ZigzagProfile;
    use shifted_shapes::samplers::{sample_plancherel, sample_schur_weyl, GridSpec, SeedSpec};

    /// Faster epsilon schedule for interactive use; visually
    /// indistinguishable from the library default.
    const DEMO_EPS: [f64; 3] = [2e-2, 1e-2, 5e-3];

    fn interleave(points: impl Iterator<Item = (f64, f64)>) -> Vec<f64> {
        let mut out = Vec::new();
        for (z, t) in points {
            out.push(z);
            out.push(t);
        }
        out
    }

    pub fn lsvk_curve(points: usize, half_width: f64) -> Vec<f64> {
        let n = points.max(2);
        let step = 2.0 * half_width / (n as f64 - 1.0);
        interleave((0..n).map(|i| {
            let z = -half_width + step * i as f64;
            (z, lsvk_value(z))
        }))
    }

    pub fn schur_weyl_curve(c: f64, points: usize) -> Result<Vec<f64>, String> {
        if !(c > 0.0 && c.is_finite()) {
            return Err("c must be a positive number".into());
        }
        let half = 2.2 + 0.8 * c;
        let grid = GridSpec::symmetric(half, points.clamp(32, 1024));
        let curve = sw_curve(c, grid, &DEMO_EPS).map_err(|e| e.to_string())?;
        Ok(interleave(
            (0..curve.len()).map(|i| (curve.z_at(i), curve.values[i])),
        ))
    }

    pub fn sample_scaled_profile(
        measure: &str,
        n: u32,
        d: u32,
        seed: u64,
        stream: u64,
    ) -> Result<Vec<f64>, String> {
        if n == 0 || n > 2_000_000 {
            return Err("n must be between 1 and 2e6".into());
        }
        let shape = match measure {
            "plancherel" => sample_plancherel(n as u64, SeedSpec::new(seed, stream)),
            "schur-weyl" => {
                if d == 0 {
                    return Err("d must be at least 1".into());
                }
                sample_schur_weyl(n as u64, d, SeedSpec::new(seed, stream))
            }
            other => return Err(format!("unknown measure {other:?}")),
        };
        let scale = 1.0 / (2.0 * n as f64).sqrt();
        let profile = ZigzagProfile::of_shifted(&shape);
        // one polyline vertex per breakpoint keeps the zigzag exact
        let mut pts: Vec<(f64, f64)> = profile
            .breakpoints()
            .iter()
            .map(|z| {
                let zf = shifted_shapes::rat_to_f64(z);
                (zf * scale, scale * profile.eval_f64(zf))
            })
            .collect();
        let z_edge = pts.last().map(|&(z, _)| z).unwrap_or(0.0) + 0.5;
        pts.insert(0, (-z_edge, z_edge));
        pts.push((z_edge, z_edge));
        Ok(interleave(pts.into_iter()))
    }

    pub fn level_curve_family(c: f64, count: usize, points: usize) -> Result<Vec<f64>, String> {
        let count = count.clamp(1, 12);
        let points = points.clamp(32, 512);
        let alphas: Vec<f64> = (1..=count).map(|k| k as f64 / count as f64).collect();
        let r = if c > 0.0 {
            let mut vals = vec![0.0; 11];
            for (i, v) in vals.iter_mut().enumerate() {
                let k = i + 2;
                if k % 2 == 0 {
                    *v = (c / std::f64::consts::SQRT_2).powi(k as i32 - 2);
                }
            }
            FreeCumulantSequence::from_vals(vals)
        } else {
            FreeCumulantSequence::from_vals(vec![1.0])
        };
        let half = 2.2 + 0.8 * c.max(0.0);
        let fam = scaled_level_curves(&r, &alphas, GridSpec::symmetric(half, points), &DEMO_EPS)
            .map_err(|e| e.to_string())?;
        let mut out = Vec::with_capacity(2 * points * count);
        for curve in &fam.curves {
            out.extend(interleave(
                (0..curve.len()).map(|i| (curve.z_at(i), curve.values[i])),
            ));
        }
        Ok(out)
    }
}

/// The Logan--Shepp / Vershik--Kerov curve (the Plancherel limit).
#[wasm_bindgen]
pub fn lsvk_curve(points: usize, half_width: f64) -> Vec<f64> {
    compute::lsvk_curve(points, half_width)
}

/// The Schur--Weyl limit curve for parameter `c`, by Stieltjes inversion of
/// the cubic Cauchy transform.
#[wasm_bindgen]
pub fn schur_weyl_curve(c: f64, points: usize) -> Result<Vec<f64>, JsError> {
    compute::schur_weyl_curve(c, points).map_err(|e| JsError::new(&e))
}

/// A random shifted diagram profile, scaled by `1/sqrt(2n)`.
///
/// `measure` is "plancherel" or "schur-weyl"; `d` is the alphabet size for
/// the latter (ignored otherwise).
#[wasm_bindgen]
pub fn sample_scaled_profile(
    measure: &str,
    n: u32,
    d: u32,
    seed: u64,
    stream: u64,
) -> Result<Vec<f64>, JsError> {
    compute::sample_scaled_profile(measure, n, d, seed, stream).map_err(|e| JsError::new(&e))
}

/// Level curves of the tableau surface: `count` levels `alpha = k / count`,
/// cumulants `R_k(alpha) = alpha^(k-1) R_k` of the Plancherel limit
/// (`c <= 0`) or of the Schur--Weyl limit at parameter `c`. Curves are
/// concatenated; each takes `2 * points` floats.
#[wasm_bindgen]
pub fn level_curve_family(c: f64, count: usize, points: usize) -> Result<Vec<f64>, JsError> {
    compute::level_curve_family(c, count, points).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::compute;

    #[test]
    fn curves_have_the_requested_layout() {
        let lsvk = compute::lsvk_curve(11, 2.5);
        assert_eq!(lsvk.len(), 22);
        assert!((lsvk[11] - 4.0 / std::f64::consts::PI).abs() < 1e-12);

        let sw = compute::schur_weyl_curve(1.0, 64).unwrap();
        assert_eq!(sw.len(), 128);

        let fam = compute::level_curve_family(0.0, 3, 64).unwrap();
        assert_eq!(fam.len(), 3 * 128);
    }

    #[test]
    fn sampling_is_reproducible() {
        let a = compute::sample_scaled_profile("plancherel", 400, 0, 9, 1).unwrap();
        let b = compute::sample_scaled_profile("plancherel", 400, 0, 9, 1).unwrap();
        assert_eq!(a, b);
        assert!(compute::sample_scaled_profile("nonsense", 10, 0, 0, 0).is_err());
        assert!(compute::schur_weyl_curve(-2.0, 64).is_err());
    }
}
