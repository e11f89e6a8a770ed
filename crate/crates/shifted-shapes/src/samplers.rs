//! Random generation: uniform shifted tableaux via the hook walk, shifted
//! Plancherel and Schur--Weyl samplers, and Monte Carlo profile statistics.
//!
//! All randomness flows from a 64-bit master seed; trial t uses an
//! independent ChaCha stream so parallel and serial runs agree exactly.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::partition::StrictPartition;
use crate::profile::{SampledProfile, ZigzagProfile};
use crate::rsk::{CircledLetter, Insertion};
use crate::tableaux::ShiftedStandardTableau;

/// Reproducible seed: master seed plus per-trial stream index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeedSpec {
    pub master: u64,
    pub stream: u64,
}

impl SeedSpec {
    pub fn new(master: u64, stream: u64) -> Self {
        Self { master, stream }
    }

    /// The generator owned by this (seed, stream) pair.
    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.master);
        rng.set_stream(self.stream);
        rng
    }
}

/// Uniform random shifted standard tableau of the given shape, by the shifted
/// complementary hook walk: the walk starts at a uniform cell, jumps to a
/// uniform cell of the shifted hook (arm, leg, and the wrapped row past the
/// diagonal), and the exit corner receives the largest remaining entry.
pub fn hook_walk_syt(xi: &StrictPartition, seed: SeedSpec) -> ShiftedStandardTableau {
    let mut rng = seed.rng();
    hook_walk_syt_rng(xi, &mut rng)
}

pub fn hook_walk_syt_rng(xi: &StrictPartition, rng: &mut impl Rng) -> ShiftedStandardTableau {
    let mut parts: Vec<u32> = xi.parts().to_vec();
    let mut rows: Vec<Vec<u32>> = parts.iter().map(|&p| vec![0; p as usize]).collect();
    let mut remaining = xi.size();
    while remaining > 0 {
        let (x, y) = hook_walk_corner(&parts, rng);
        rows[(y - 1) as usize][(x - y - 1) as usize] = remaining as u32;
        parts[(y - 1) as usize] -= 1;
        if parts[(y - 1) as usize] == 0 {
            parts.pop();
        }
        remaining -= 1;
    }
    ShiftedStandardTableau::new(rows).expect("hook walk fills a standard tableau")
}

/// One walk on the current shape; returns the exit corner.
fn hook_walk_corner(parts: &[u32], rng: &mut impl Rng) -> (u32, u32) {
    let n: u64 = parts.iter().map(|&p| p as u64).sum();
    debug_assert!(n > 0);
    // uniform starting cell
    let mut idx = rng.gen_range(0..n);
    let (mut x, mut y) = {
        let mut cell = (0, 0);
        for (r, &p) in parts.iter().enumerate() {
            if idx < p as u64 {
                let y = (r + 1) as u32;
                cell = (y + 1 + idx as u32, y);
                break;
            }
            idx -= p as u64;
        }
        cell
    };
    loop {
        let l = parts.len() as u32;
        let arm = y + parts[(y - 1) as usize] - x;
        let mut leg = 0u32;
        {
            let mut yy = y + 1;
            while yy <= l && yy < x && yy + parts[(yy - 1) as usize] >= x {
                leg += 1;
                yy += 1;
            }
        }
        let wrap = if x <= l { parts[(x - 1) as usize] } else { 0 };
        let total = (arm + leg + wrap) as u64;
        if total == 0 {
            return (x, y);
        }
        let mut k = rng.gen_range(0..total) as u32;
        if k < arm {
            x += k + 1;
            continue;
        }
        k -= arm;
        if k < leg {
            y += k + 1;
            continue;
        }
        k -= leg;
        // wrapped row: row x, cells x+1 ..= x+parts[x-1]
        let ny = x;
        x = ny + 1 + k;
        y = ny;
    }
}

/// Shape of the shifted Robinson--Schensted pair of a uniformly random
/// circled permutation; distributed by the shifted Plancherel measure.
pub fn sample_plancherel(n: u64, seed: SeedSpec) -> StrictPartition {
    let mut rng = seed.rng();
    sample_plancherel_rng(n, &mut rng)
}

pub fn sample_plancherel_rng(n: u64, rng: &mut impl Rng) -> StrictPartition {
    let mut perm: Vec<u32> = (1..=n as u32).collect();
    perm.shuffle(rng);
    let mut ins = Insertion::new();
    for v in perm {
        let circled = rng.gen_bool(0.5);
        ins.insert(CircledLetter { value: v, circled });
    }
    ins.shape()
}

/// Shape of the shifted RSK pair of a uniform word over the alphabet of size
/// d; distributed by the shifted Schur--Weyl measure.
pub fn sample_schur_weyl(n: u64, d: u32, seed: SeedSpec) -> StrictPartition {
    let mut rng = seed.rng();
    sample_schur_weyl_rng(n, d, &mut rng)
}

pub fn sample_schur_weyl_rng(n: u64, d: u32, rng: &mut impl Rng) -> StrictPartition {
    assert!(d >= 1, "alphabet size must be positive");
    let mut ins = Insertion::new();
    for _ in 0..n {
        let value = rng.gen_range(1..=d);
        let circled = rng.gen_bool(0.5);
        ins.insert(CircledLetter { value, circled });
    }
    ins.shape()
}

/// What to sample per trial.
#[derive(Debug, Clone)]
pub enum SamplerSpec {
    /// Shifted Plancherel measure on `SP_n`.
    Plancherel { n: u64 },
    /// Shifted Schur--Weyl measure with alphabet size d.
    SchurWeyl { n: u64, d: u32 },
    /// Level set of a uniform tableau with prescribed shape at `alpha n`.
    SytLevel { shape: StrictPartition, alpha: f64 },
    /// Degenerate sampler returning a fixed shape.
    Fixed { shape: StrictPartition },
}

impl SamplerSpec {
    pub fn sample(&self, seed: SeedSpec) -> StrictPartition {
        match self {
            SamplerSpec::Plancherel { n } => sample_plancherel(*n, seed),
            SamplerSpec::SchurWeyl { n, d } => sample_schur_weyl(*n, *d, seed),
            SamplerSpec::SytLevel { shape, alpha } => {
                let t = hook_walk_syt(shape, seed);
                let level = ((shape.size() as f64 * alpha).round() as u64).min(shape.size());
                t.level_set(level).expect("level within range")
            }
            SamplerSpec::Fixed { shape } => shape.clone(),
        }
    }
}

/// Monte Carlo profile statistics over independent trials.
#[derive(Debug, Clone)]
pub struct MonteCarloProfile {
    /// Pointwise mean of the scaled profiles.
    pub mean: SampledProfile,
    /// Per-trial sup-deviation from the reference curve (grid maximum);
    /// empty when no reference was supplied.
    pub deviations: Vec<f64>,
    /// Sampled shapes, in trial order.
    pub shapes: Vec<StrictPartition>,
}

/// Grid description for sampled curves.
#[derive(Debug, Clone, Copy)]
pub struct GridSpec {
    pub z_min: f64,
    pub z_max: f64,
    pub points: usize,
}

impl GridSpec {
    pub fn symmetric(half_width: f64, points: usize) -> Self {
        Self {
            z_min: -half_width,
            z_max: half_width,
            points,
        }
    }

    pub fn step(&self) -> f64 {
        (self.z_max - self.z_min) / (self.points.max(2) as f64 - 1.0)
    }
}

/// Run `trials` independent samples, dilate each profile by `scale`, average
/// on the grid and record sup-deviations from the reference, if any.
///
/// Trials run in parallel when the `parallel` feature is active; results are
/// reduced in trial order, so the output does not depend on the worker count.
pub fn monte_carlo_profile(
    spec: &SamplerSpec,
    trials: u64,
    scale: f64,
    master_seed: u64,
    grid: GridSpec,
    reference: Option<&(dyn Fn(f64) -> f64 + Sync)>,
) -> MonteCarloProfile {
    assert!(trials >= 1, "need at least one trial");
    assert!(scale > 0.0, "scale must be positive");
    let run_one = |t: u64| -> (Vec<f64>, f64, StrictPartition) {
        let shape = spec.sample(SeedSpec::new(master_seed, t));
        let profile = ZigzagProfile::of_shifted(&shape);
        let step = grid.step();
        let values: Vec<f64> = (0..grid.points)
            .map(|i| {
                let z = grid.z_min + step * i as f64;
                scale * profile.eval_f64(z / scale)
            })
            .collect();
        let dev = reference
            .map(|f| {
                (0..grid.points)
                    .map(|i| {
                        let z = grid.z_min + step * i as f64;
                        (values[i] - f(z)).abs()
                    })
                    .fold(0.0, f64::max)
            })
            .unwrap_or(f64::NAN);
        (values, dev, shape)
    };
    let per_trial: Vec<(Vec<f64>, f64, StrictPartition)> = run_trials(trials, run_one);

    let mut mean = vec![0.0; grid.points];
    let mut deviations = Vec::with_capacity(trials as usize);
    let mut shapes = Vec::with_capacity(trials as usize);
    for (values, dev, shape) in per_trial {
        for (m, v) in mean.iter_mut().zip(&values) {
            *m += v;
        }
        if reference.is_some() {
            deviations.push(dev);
        }
        shapes.push(shape);
    }
    for m in &mut mean {
        *m /= trials as f64;
    }
    MonteCarloProfile {
        mean: SampledProfile::new(grid.z_min, grid.step(), mean),
        deviations,
        shapes,
    }
}

#[cfg(feature = "parallel")]
fn run_trials<T: Send>(trials: u64, f: impl Fn(u64) -> T + Sync + Send) -> Vec<T> {
    use rayon::prelude::*;
    let pool = crate::samplers::thread_pool();
    pool.install(|| (0..trials).into_par_iter().map(f).collect())
}

#[cfg(not(feature = "parallel"))]
fn run_trials<T: Send>(trials: u64, f: impl Fn(u64) -> T + Sync + Send) -> Vec<T> {
    (0..trials).map(f).collect()
}

/// Worker pool honouring the SHIFTED_SHAPES_THREADS cap.
#[cfg(feature = "parallel")]
pub(crate) fn thread_pool() -> &'static rayon::ThreadPool {
    use std::sync::OnceLock;
    static POOL: OnceLock<rayon::ThreadPool> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Ok(v) = std::env::var("SHIFTED_SHAPES_THREADS") {
            if let Ok(k) = v.parse::<usize>() {
                builder = builder.num_threads(k.max(1));
            }
        }
        builder.build().expect("worker pool")
    })
}
