//! Transition measures, Cauchy transforms, Stieltjes inversion, and the
//! limit-curve families.
//!
//! For a zigzag with minima `x_i` and maxima `y_j` the Cauchy transform of
//! the transition measure is the rational function
//! `G(z) = prod (z - y_j) / prod (z - x_i)`; partial fractions give the
//! transition measure itself. Curves defined through free cumulants get an
//! algebraic Cauchy transform `sum_n R_n G^n - z G + 1 = 0` whose physical
//! root is tracked by continuity from the `1/z` branch at infinity. Shapes
//! come back through the Stieltjes inversion
//! `omega(x) = x - (2/pi) int_x^inf arg G(z + i eps) dz` with Richardson
//! extrapolation in the regularization parameter.

use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::free_cumulants::{cumulants_from_raw_moments, FreeCumulantSequence};
use crate::profile::{SampledProfile, ZigzagProfile};
use crate::samplers::GridSpec;
use crate::{rat_to_f64, Rat};

/// Default regularization schedule for the Stieltjes inversion.
pub const DEFAULT_EPS_SCHEDULE: [f64; 3] = [1e-2, 5e-3, 2.5e-3];

/// Numeric failure modes of the shape pipeline.
#[derive(Debug, Clone)]
pub enum ShapeError {
    /// The tracked root jumped between branches.
    BranchJump {
        z: f64,
        from: (f64, f64),
        to: (f64, f64),
    },
    /// `z G(z)` never approached 1; the input is not a Cauchy transform of a
    /// compactly supported probability measure.
    TailNotReached,
    /// Richardson extrapolation in epsilon did not settle.
    NonConvergent {
        max_residual: f64,
        residuals: Vec<f64>,
    },
    /// Malformed input.
    BadInput(String),
}

impl fmt::Display for ShapeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShapeError::BranchJump { z, from, to } => {
                write!(f, "branch jump near z = {z}: {from:?} -> {to:?}")
            }
            ShapeError::TailNotReached => write!(f, "z G(z) does not settle to 1"),
            ShapeError::NonConvergent { max_residual, .. } => {
                write!(f, "epsilon extrapolation residual {max_residual} too large")
            }
            ShapeError::BadInput(s) => write!(f, "bad input: {s}"),
        }
    }
}

impl std::error::Error for ShapeError {}

/// Atomic transition measure of a zigzag: atoms at the minima.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionMeasure {
    pub atoms: Vec<(Rat, Rat)>,
}

impl TransitionMeasure {
    /// Raw moments `m_0 ..= m_order`, exact.
    pub fn moments(&self, order: usize) -> Vec<Rat> {
        let mut out = Vec::with_capacity(order + 1);
        let mut powers: Vec<Rat> = self.atoms.iter().map(|_| Rat::one()).collect();
        for _ in 0..=order {
            let mk: Rat = self
                .atoms
                .iter()
                .zip(&powers)
                .map(|((_, w), p)| w * p)
                .sum();
            out.push(mk);
            for ((x, _), p) in self.atoms.iter().zip(powers.iter_mut()) {
                *p *= x;
            }
        }
        out
    }
}

/// Signed measure `tau = omega'' / 2`: +1 at minima, -1 at maxima.
#[derive(Debug, Clone, PartialEq)]
pub struct RayleighMeasure {
    pub atoms: Vec<(Rat, i8)>,
}

/// A Cauchy transform in one of the forms the pipeline produces.
#[derive(Debug, Clone)]
pub enum CauchyTransform {
    /// `G = prod (z - zeros) / prod (z - poles)`, exact data.
    Rational { zeros: Vec<Rat>, poles: Vec<Rat> },
    /// A polynomial equation `sum_j c_j(z) G^j = 0` with the root selected by
    /// `G ~ 1/z` at infinity; `coeffs[j][i]` multiplies `z^i G^j`.
    Algebraic { coeffs: Vec<Vec<f64>> },
}

impl CauchyTransform {
    /// Polynomial coefficients in G at a fixed complex z (Algebraic only).
    fn poly_at(&self, z: Complex64) -> Vec<Complex64> {
        match self {
            CauchyTransform::Rational { .. } => unreachable!("rational forms evaluate directly"),
            CauchyTransform::Algebraic { coeffs } => coeffs
                .iter()
                .map(|cs| {
                    let mut acc = Complex64::zero();
                    for &c in cs.iter().rev() {
                        acc = acc * z + c;
                    }
                    acc
                })
                .collect(),
        }
    }

    /// Evaluate, tracking the branch from `seed` (Algebraic) or directly
    /// (Rational).
    pub fn eval(&self, z: Complex64, seed: Option<Complex64>) -> Complex64 {
        match self {
            CauchyTransform::Rational { zeros, poles } => {
                let mut g = Complex64::one();
                for zero in zeros {
                    g *= z - rat_to_f64(zero);
                }
                for pole in poles {
                    g /= z - rat_to_f64(pole);
                }
                g
            }
            CauchyTransform::Algebraic { .. } => {
                let poly = self.poly_at(z);
                let seed = seed.unwrap_or_else(|| z.inv());
                // All roots, restricted to the Herglotz half-plane Im <= 0
                // (boundary values of Cauchy transforms of positive measures),
                // then continuation by proximity to the seed. Truncated
                // cumulant equations carry spurious branches, so plain Newton
                // tracking from the seed is not reliable near band edges.
                let roots = poly_roots_conditioned(&poly);
                let picked = roots
                    .iter()
                    .filter(|r| r.im <= 1e-9)
                    .min_by(|a, b| (*a - seed).norm().total_cmp(&(*b - seed).norm()))
                    .or_else(|| {
                        roots
                            .iter()
                            .min_by(|a, b| (*a - seed).norm().total_cmp(&(*b - seed).norm()))
                    })
                    .copied()
                    .unwrap_or(seed);
                newton_root(&poly, picked).unwrap_or(picked)
            }
        }
    }

    /// Moment series `m_0 ..= m_order` of the underlying measure.
    pub fn moments_f64(&self, order: usize) -> Result<Vec<f64>, ShapeError> {
        match self {
            CauchyTransform::Rational { zeros, poles } => {
                let tm = rational_to_atoms(zeros, poles).map_err(ShapeError::BadInput)?;
                Ok(tm.moments(order).iter().map(rat_to_f64).collect())
            }
            CauchyTransform::Algebraic { .. } => self.series_moments(order),
        }
    }

    /// Solve the defining polynomial for the coefficients of
    /// `G = sum m_k z^(-k-1)` order by order.
    fn series_moments(&self, order: usize) -> Result<Vec<f64>, ShapeError> {
        let coeffs = match self {
            CauchyTransform::Algebraic { coeffs } => coeffs,
            _ => unreachable!(),
        };
        // residual of the defining equation, as a w-series (w = 1/z), for a
        // candidate moment vector; everything is multiplied by w^dmax so the
        // powers stay nonnegative
        let dmax = coeffs
            .iter()
            .map(|cs| cs.len().saturating_sub(1))
            .max()
            .unwrap_or(0);
        // highest residual index consulted is order + dmax; G powers must
        // carry every coefficient feeding it
        let len = order + dmax + 3;
        let residual = |m: &[f64]| -> Vec<f64> {
            // g(w) = sum m_k w^(k+1)
            let mut g = vec![0.0; len];
            for (k, &mk) in m.iter().enumerate() {
                if k + 1 < len {
                    g[k + 1] = mk;
                }
            }
            let mut gpow = vec![0.0; len];
            gpow[0] = 1.0;
            let mut total = vec![0.0; len + dmax];
            for cs in coeffs.iter() {
                for (i, &c) in cs.iter().enumerate() {
                    if c == 0.0 {
                        continue;
                    }
                    // c * z^i * G^j -> shift by dmax - i
                    let shift = dmax - i;
                    for (k, &gc) in gpow.iter().enumerate() {
                        if gc != 0.0 && shift + k < total.len() {
                            total[shift + k] += c * gc;
                        }
                    }
                }
                // gpow *= g
                let mut next = vec![0.0; len];
                for (a, &ga) in gpow.iter().enumerate() {
                    if ga == 0.0 {
                        continue;
                    }
                    for (b, &gb) in g.iter().enumerate() {
                        if a + b < len {
                            next[a + b] += ga * gb;
                        }
                    }
                }
                gpow = next;
            }
            total
        };
        let mut m = vec![0.0; order + 1];
        m[0] = 1.0;
        for k in 1..=order {
            let r0 = residual(&m);
            m[k] = 1.0;
            let r1 = residual(&m);
            // first index where the unknown enters, relative to the scale of
            // the derivative itself
            let d: Vec<f64> = r1.iter().zip(&r0).map(|(a, b)| a - b).collect();
            let dscale = d.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
            if dscale == 0.0 {
                return Err(ShapeError::BadInput(format!(
                    "moment m_{k} not determined by the equation"
                )));
            }
            let t = (0..d.len()).find(|&i| d[i].abs() > 1e-9 * dscale).unwrap();
            m[k] = -r0[t] / d[t];
        }
        Ok(m)
    }
}

fn rational_to_atoms(zeros: &[Rat], poles: &[Rat]) -> Result<TransitionMeasure, String> {
    if poles.len() != zeros.len() + 1 {
        return Err("need one more pole than zeros".into());
    }
    let mut atoms = Vec::with_capacity(poles.len());
    for (i, x) in poles.iter().enumerate() {
        let mut w = Rat::one();
        for y in zeros {
            w *= x - y;
        }
        for (k, x2) in poles.iter().enumerate() {
            if k != i {
                w /= x - x2;
            }
        }
        atoms.push((x.clone(), w));
    }
    Ok(TransitionMeasure { atoms })
}

/// Transition measure, Rayleigh measure, and Cauchy transform of a zigzag.
pub fn transition_measure(
    omega: &ZigzagProfile,
) -> (TransitionMeasure, RayleighMeasure, CauchyTransform) {
    let zeros: Vec<Rat> = omega.maxima().to_vec();
    let poles: Vec<Rat> = omega.minima().to_vec();
    let tm = rational_to_atoms(&zeros, &poles).expect("zigzag interlacing");
    let mut atoms: Vec<(Rat, i8)> = poles.iter().map(|x| (x.clone(), 1i8)).collect();
    atoms.extend(zeros.iter().map(|y| (y.clone(), -1i8)));
    atoms.sort_by(|a, b| a.0.cmp(&b.0));
    (
        tm,
        RayleighMeasure { atoms },
        CauchyTransform::Rational { zeros, poles },
    )
}

/// Free cumulants `R_2 ..= R_order` from a Cauchy transform, via the moment
/// series at infinity. Exact when the transform is rational.
pub fn free_cumulants_from_cauchy(
    g: &CauchyTransform,
    order: usize,
) -> Result<FreeCumulantSequence<f64>, ShapeError> {
    let m = g.moments_f64(order)?;
    let r = cumulants_from_raw_moments(&m, order);
    if r[0].abs() > 1e-9 {
        return Err(ShapeError::BadInput(format!(
            "transition measure not centered: R_1 = {}",
            r[0]
        )));
    }
    Ok(FreeCumulantSequence::from_vals(r[1..].to_vec()))
}

/// Exact free cumulants of a rational Cauchy transform.
pub fn free_cumulants_from_cauchy_exact(
    g: &CauchyTransform,
    order: usize,
) -> Result<FreeCumulantSequence<Rat>, ShapeError> {
    match g {
        CauchyTransform::Rational { zeros, poles } => {
            let tm = rational_to_atoms(zeros, poles).map_err(ShapeError::BadInput)?;
            let m = tm.moments(order);
            let r = cumulants_from_raw_moments(&m, order);
            if !r[0].is_zero() {
                return Err(ShapeError::BadInput(
                    "transition measure not centered".into(),
                ));
            }
            Ok(FreeCumulantSequence::from_vals(r[1..].to_vec()))
        }
        _ => Err(ShapeError::BadInput(
            "exact cumulants need the rational form".into(),
        )),
    }
}

/// The Schur--Weyl Cauchy transform for parameter `c`: the R-transform
/// `R(y) = 2y / (2 - c^2 y^2)` folded into the algebraic equation
/// `c^2 z G^3 + (2 - c^2) G^2 - 2 z G + 2 = 0`.
pub fn cauchy_sw(c: f64) -> CauchyTransform {
    assert!(c > 0.0, "parameter c must be positive");
    let c2 = c * c;
    CauchyTransform::Algebraic {
        coeffs: vec![
            vec![2.0],       // G^0
            vec![0.0, -2.0], // G^1: -2 z
            vec![2.0 - c2],  // G^2
            vec![0.0, c2],   // G^3: c^2 z
        ],
    }
}

/// Algebraic Cauchy transform of the diagram with prescribed free cumulants:
/// `1 - z G + sum_(n>=2) R_n G^n = 0`.
pub fn cauchy_from_cumulants(r: &FreeCumulantSequence<f64>) -> CauchyTransform {
    let order = r.order();
    let mut coeffs: Vec<Vec<f64>> = vec![vec![1.0], vec![0.0, -1.0]];
    for n in 2..=order {
        coeffs.push(vec![r.r(n)]);
    }
    while coeffs.len() > 3 && coeffs.last().map(|c| c.iter().all(|&v| v == 0.0)) == Some(true) {
        coeffs.pop();
    }
    CauchyTransform::Algebraic { coeffs }
}

// ---------------------------------------------------------------------------
// polynomial root machinery
// ---------------------------------------------------------------------------

fn poly_eval(p: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::zero();
    for &c in p.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

fn poly_derivative(p: &[Complex64]) -> Vec<Complex64> {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| c * i as f64)
        .collect()
}

fn newton_root(p: &[Complex64], seed: Complex64) -> Option<Complex64> {
    let dp = poly_derivative(p);
    let mut z = seed;
    let scale = p.iter().fold(0.0f64, |a, c| a.max(c.norm())).max(1e-300);
    for _ in 0..60 {
        let f = poly_eval(p, z);
        let d = poly_eval(&dp, z);
        if d.norm() < 1e-14 * scale {
            return None;
        }
        let step = f / d;
        z -= step;
        if step.norm() < 1e-13 * (1.0 + z.norm()) {
            // reject if we wandered far from the seed (likely another branch)
            if (z - seed).norm() > 0.5 * (1.0 + seed.norm()) {
                return None;
            }
            return Some(z);
        }
    }
    None
}

/// All finite roots, working around ill-conditioned leading coefficients.
///
/// A relatively tiny leading coefficient sends one root far out and ruins the
/// direct iteration; the reversed polynomial has reciprocal roots and a
/// healthy leading term, so the finite roots come back by inversion.
fn poly_roots_conditioned(p: &[Complex64]) -> Vec<Complex64> {
    let maxc = p.iter().fold(0.0f64, |a, c| a.max(c.norm()));
    if maxc == 0.0 || p.len() < 2 {
        return Vec::new();
    }
    let lead = p.last().unwrap().norm();
    let constant = p.first().unwrap().norm();
    if lead < 1e-6 * maxc && constant > 1e-6 * maxc {
        let reversed: Vec<Complex64> = p.iter().rev().copied().collect();
        return poly_roots(&reversed)
            .into_iter()
            .filter(|r| r.norm() > 1e-12)
            .map(|r| r.inv())
            .collect();
    }
    poly_roots(p)
}

/// All roots by the Durand--Kerner iteration.
fn poly_roots(p: &[Complex64]) -> Vec<Complex64> {
    let maxc = p.iter().fold(0.0f64, |a, c| a.max(c.norm()));
    let mut p: Vec<Complex64> = p.to_vec();
    while p.len() > 1 && p.last().unwrap().norm() <= 1e-14 * maxc {
        p.pop();
    }
    let deg = p.len().saturating_sub(1);
    if deg == 0 {
        return Vec::new();
    }
    let lead = *p.last().unwrap();
    let monic: Vec<Complex64> = p.iter().map(|&c| c / lead).collect();
    let radius = 1.0 + monic[..deg].iter().fold(0.0f64, |a, c| a.max(c.norm()));
    let rot = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..deg)
        .map(|k| rot.powu(k as u32 + 1) * radius / rot.norm())
        .collect();
    for _ in 0..300 {
        let mut moved = 0.0f64;
        for i in 0..deg {
            let mut denom = Complex64::one();
            for j in 0..deg {
                if j != i {
                    denom *= roots[i] - roots[j];
                }
            }
            if denom.norm() < 1e-290 {
                continue;
            }
            let step = poly_eval(&monic, roots[i]) / denom;
            roots[i] -= step;
            moved = moved.max(step.norm());
        }
        if moved < 1e-14 * radius {
            break;
        }
    }
    roots
}

// ---------------------------------------------------------------------------
// Stieltjes inversion
// ---------------------------------------------------------------------------

struct ArgTable {
    /// mesh nodes, descending from the tail to the left end
    z: Vec<f64>,
    /// suffix integrals F(z_k) = int_(z_k)^(z_top) arg G(z + i eps) dz
    suffix: Vec<f64>,
}

impl ArgTable {
    fn interpolate(&self, x: f64) -> f64 {
        // self.z is descending
        if x >= self.z[0] {
            return 0.0;
        }
        let n = self.z.len();
        if x <= self.z[n - 1] {
            // extend with the leftmost arg slope approximately -pi
            return self.suffix[n - 1] + (self.z[n - 1] - x) * std::f64::consts::PI;
        }
        let mut lo = 0usize;
        let mut hi = n - 1;
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if self.z[mid] >= x {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let (z0, z1) = (self.z[lo], self.z[hi]);
        let t = (z0 - x) / (z0 - z1);
        self.suffix[lo] * (1.0 - t) + self.suffix[hi] * t
    }
}

/// Walk the real line at height eps, integrating the Cauchy-transform
/// argument from the far tail down to `z_lo`.
fn arg_table(
    g: &CauchyTransform,
    z_lo: f64,
    fine_end: f64,
    z_top: f64,
    eps: f64,
) -> Result<ArgTable, ShapeError> {
    let h = eps / 4.0;
    // geometric tail z_top -> fine_end, then uniform fine_end -> z_lo
    let mut nodes = Vec::new();
    let mut z = z_top;
    while z > fine_end * 1.0001 + 1e-9 {
        nodes.push(z);
        z /= 1.05;
    }
    let count = ((fine_end - z_lo) / h).ceil() as usize;
    let fine_step = (fine_end - z_lo) / count as f64;
    for k in 0..=count {
        nodes.push(fine_end - fine_step * k as f64);
    }
    let ie = Complex64::new(0.0, eps);
    let mut seed = Complex64::new(z_top, eps).inv();
    let mut args = Vec::with_capacity(nodes.len());
    let mut roots = Vec::with_capacity(nodes.len());
    for &zk in &nodes {
        let gk = g.eval(Complex64::new(zk, 0.0) + ie, Some(seed));
        if gk.im > 1e-6 {
            return Err(ShapeError::BranchJump {
                z: zk,
                from: (seed.re, seed.im),
                to: (gk.re, gk.im),
            });
        }
        if (gk - seed).norm() > 0.75 * (1.0 + seed.norm()) && roots.len() > 1 {
            return Err(ShapeError::BranchJump {
                z: zk,
                from: (seed.re, seed.im),
                to: (gk.re, gk.im),
            });
        }
        args.push(clamp_arg(gk));
        roots.push(gk);
        seed = gk;
    }
    // Simpson with midpoint evaluations per interval
    let mut suffix = vec![0.0; nodes.len()];
    for k in 1..nodes.len() {
        let (z0, z1) = (nodes[k - 1], nodes[k]);
        let zm = 0.5 * (z0 + z1);
        let gm = g.eval(Complex64::new(zm, 0.0) + ie, Some(roots[k - 1]));
        let am = clamp_arg(gm);
        let seg = (z0 - z1) / 6.0 * (args[k - 1] + 4.0 * am + args[k]);
        // arg <= 0: the suffix integral accumulates negatively
        suffix[k] = suffix[k - 1] + seg;
    }
    Ok(ArgTable {
        z: nodes,
        suffix: suffix.iter().map(|v| -v).collect(),
    })
}

fn clamp_arg(g: Complex64) -> f64 {
    // Herglotz boundary values keep Im G <= 0; tiny positive parts are noise
    let im = g.im.min(0.0);
    Complex64::new(g.re, im).arg()
}

/// Find where `|z G(z) - 1|` drops below 1e-8 on the positive real axis.
fn tail_start(g: &CauchyTransform, from: f64) -> Result<f64, ShapeError> {
    let mut z = from.max(2.0);
    let mut seed = Complex64::new(1.0 / z, 0.0);
    for _ in 0..200 {
        let gz = g.eval(Complex64::new(z, 1e-12), Some(seed));
        if (gz * z - 1.0).norm() < 1e-8 {
            return Ok(z);
        }
        seed = Complex64::new(1.0 / (z * 1.3), 0.0);
        z *= 1.3;
        if z > 1e7 {
            return Err(ShapeError::TailNotReached);
        }
    }
    Err(ShapeError::TailNotReached)
}

/// Recover the diagram shape from its Cauchy transform by Stieltjes
/// inversion over the given epsilon schedule, Richardson-extrapolated to
/// `eps -> 0` and clamped to `omega >= |z|`.
pub fn shape_from_cauchy(
    g: &CauchyTransform,
    grid: GridSpec,
    eps_schedule: &[f64],
) -> Result<SampledProfile, ShapeError> {
    if eps_schedule.is_empty() {
        return Err(ShapeError::BadInput("empty epsilon schedule".into()));
    }
    let mut fine_end = grid.z_max.abs().max(grid.z_min.abs()).max(3.0) + 1.0;
    // widen until the argument is already negligible at the fine/tail joint
    let eps_max = eps_schedule.iter().cloned().fold(f64::MIN, f64::max);
    for _ in 0..8 {
        let probe = g.eval(Complex64::new(fine_end, eps_max), None);
        if clamp_arg(probe).abs() < 0.05 {
            break;
        }
        fine_end *= 1.5;
    }
    let z_top = tail_start(g, fine_end)?;
    let z_lo = grid.z_min - 0.5;

    let tables: Vec<ArgTable> = eps_schedule
        .iter()
        .map(|&eps| arg_table(g, z_lo, fine_end, z_top, eps))
        .collect::<Result<_, _>>()?;

    let step = grid.step();
    let mut values = Vec::with_capacity(grid.points);
    let mut residuals = Vec::with_capacity(grid.points);
    for i in 0..grid.points {
        let x = grid.z_min + step * i as f64;
        let omegas: Vec<f64> = tables
            .iter()
            .map(|t| x + 2.0 / std::f64::consts::PI * t.interpolate(x))
            .collect();
        let full = neville_at_zero(eps_schedule, &omegas);
        let partial = if omegas.len() > 1 {
            neville_at_zero(&eps_schedule[1..], &omegas[1..])
        } else {
            omegas[0]
        };
        residuals.push((full - partial).abs());
        values.push(full.max(x.abs()));
    }
    let max_residual = residuals.iter().cloned().fold(0.0, f64::max);
    if max_residual > 0.05 {
        return Err(ShapeError::NonConvergent {
            max_residual,
            residuals,
        });
    }
    Ok(SampledProfile::new(grid.z_min, step, values))
}

fn neville_at_zero(xs: &[f64], ys: &[f64]) -> f64 {
    let mut v = ys.to_vec();
    let n = v.len();
    for level in 1..n {
        for i in 0..(n - level) {
            let (x0, x1) = (xs[i], xs[i + level]);
            v[i] = (x1 * v[i] - x0 * v[i + 1]) / (x1 - x0);
        }
    }
    v[0]
}

/// The Logan--Shepp & Vershik--Kerov curve in closed form:
/// `(2/pi)(z asin(z/2) + sqrt(4 - z^2))` inside `[-2, 2]`, `|z|` outside.
pub fn lsvk_value(z: f64) -> f64 {
    if z.abs() >= 2.0 {
        z.abs()
    } else {
        2.0 / std::f64::consts::PI * (z * (z / 2.0).asin() + (4.0 - z * z).sqrt())
    }
}

/// The LSVK curve sampled on a grid.
pub fn lsvk(grid: GridSpec) -> SampledProfile {
    let step = grid.step();
    let values = (0..grid.points)
        .map(|i| lsvk_value(grid.z_min + step * i as f64))
        .collect();
    SampledProfile::new(grid.z_min, step, values)
}

/// A family of level curves indexed by the level alpha.
#[derive(Debug, Clone)]
pub struct LevelCurveFamily {
    pub alphas: Vec<f64>,
    pub curves: Vec<SampledProfile>,
}

impl LevelCurveFamily {
    /// CSV rows `alpha,z,t`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("alpha,z,t\n");
        for (a, c) in self.alphas.iter().zip(&self.curves) {
            for i in 0..c.len() {
                for (k, v) in [*a, c.z_at(i), c.values[i]].into_iter().enumerate() {
                    if k > 0 {
                        out.push(',');
                    }
                    out.push_str(&crate::fmt_float(v));
                }
                out.push('\n');
            }
        }
        out
    }
}

/// Level curves of the tableau surface with limit cumulants `R`:
/// curve alpha has cumulants `R_k(alpha) = alpha^(k-1) R_k`.
pub fn scaled_level_curves(
    r: &FreeCumulantSequence<f64>,
    alphas: &[f64],
    grid: GridSpec,
    eps_schedule: &[f64],
) -> Result<LevelCurveFamily, ShapeError> {
    let mut curves = Vec::with_capacity(alphas.len());
    for &alpha in alphas {
        if !(0.0 < alpha && alpha <= 1.0) {
            return Err(ShapeError::BadInput(format!(
                "alpha {alpha} outside (0, 1]"
            )));
        }
        let scaled: Vec<f64> = (2..=r.order())
            .map(|k| alpha.powi(k as i32 - 1) * r.r(k))
            .collect();
        let g = cauchy_from_cumulants(&FreeCumulantSequence::from_vals(scaled));
        curves.push(shape_from_cauchy(&g, grid, eps_schedule)?);
    }
    Ok(LevelCurveFamily {
        alphas: alphas.to_vec(),
        curves,
    })
}

/// The Schur--Weyl limit curve for parameter `c`.
pub fn sw_curve(
    c: f64,
    grid: GridSpec,
    eps_schedule: &[f64],
) -> Result<SampledProfile, ShapeError> {
    shape_from_cauchy(&cauchy_sw(c), grid, eps_schedule)
}

/// Level curve of the insertion-tableau surface:
/// `omega(z) = sqrt(2 alpha) SW_(1/sqrt alpha)(z / sqrt(2 alpha))`.
pub fn insertion_level_curve(
    alpha: f64,
    grid: GridSpec,
    eps_schedule: &[f64],
) -> Result<SampledProfile, ShapeError> {
    dilated_sw_curve(alpha, 1.0 / alpha.sqrt(), grid, eps_schedule)
}

/// Level curve of the recording-tableau surface:
/// `omega(z) = sqrt(2 alpha) SW_(sqrt alpha)(z / sqrt(2 alpha))`.
pub fn recording_level_curve(
    alpha: f64,
    grid: GridSpec,
    eps_schedule: &[f64],
) -> Result<SampledProfile, ShapeError> {
    dilated_sw_curve(alpha, alpha.sqrt(), grid, eps_schedule)
}

fn dilated_sw_curve(
    alpha: f64,
    c: f64,
    grid: GridSpec,
    eps_schedule: &[f64],
) -> Result<SampledProfile, ShapeError> {
    if alpha <= 0.0 {
        return Err(ShapeError::BadInput(format!(
            "alpha {alpha} must be positive"
        )));
    }
    let factor = (2.0 * alpha).sqrt();
    let inner = GridSpec {
        z_min: grid.z_min / factor,
        z_max: grid.z_max / factor,
        points: grid.points,
    };
    let base = sw_curve(c, inner, eps_schedule)?;
    base.dilate(factor)
        .map_err(|e| ShapeError::BadInput(e.to_string()))
}

/// Threshold level of the surface at French coordinates `(x, y)`:
/// the largest grid alpha whose curve stays weakly below the point, the
/// smallest grid alpha when the point lies below every curve, and an error
/// when it lies above all of them.
pub fn surface_value(family: &LevelCurveFamily, x: f64, y: f64) -> Result<f64, ShapeError> {
    if family.alphas.is_empty() {
        return Err(ShapeError::BadInput("empty family".into()));
    }
    let z = x - y;
    let t = x + y;
    let top = family
        .alphas
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
        .unwrap();
    if t > family.curves[top].eval(z) + 1e-9 {
        return Err(ShapeError::BadInput(format!(
            "point ({x}, {y}) outside the family support"
        )));
    }
    let mut best: Option<f64> = None;
    for (a, c) in family.alphas.iter().zip(&family.curves) {
        if c.eval(z) <= t {
            best = Some(best.map_or(*a, |b: f64| b.max(*a)));
        }
    }
    // a point below every curve reports the smallest available level
    Ok(best.unwrap_or_else(|| family.alphas.iter().cloned().fold(f64::INFINITY, f64::min)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free_cumulants::{r_from_s, sigma_moments};
    use crate::partition::{Partition, StrictPartition};
    use crate::rat;
    use num_traits::Signed;

    fn sp(parts: &[u32]) -> StrictPartition {
        StrictPartition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn transition_measure_of_abs() {
        let (tm, tau, g) = transition_measure(&ZigzagProfile::abs());
        assert_eq!(tm.atoms, vec![(rat(0, 1), rat(1, 1))]);
        assert_eq!(tau.atoms, vec![(rat(0, 1), 1)]);
        let val = g.eval(Complex64::new(2.0, 0.0), None);
        assert!((val - 0.5).norm() < 1e-14);
    }

    #[test]
    fn transition_measure_of_one_box() {
        let p = ZigzagProfile::of_russian(&Partition::new(vec![1]).unwrap());
        let (tm, _, g) = transition_measure(&p);
        assert_eq!(
            tm.atoms,
            vec![(rat(-1, 1), rat(1, 2)), (rat(1, 1), rat(1, 2))]
        );
        // G = z / (z^2 - 1)
        let z = Complex64::new(3.0, 0.5);
        let expect = z / (z * z - 1.0);
        assert!((g.eval(z, None) - expect).norm() < 1e-13);
    }

    #[test]
    fn transition_weights_are_positive_and_sum_to_one() {
        for n in 1..=8u64 {
            for xi in StrictPartition::all(n) {
                let (tm, _, _) = transition_measure(&ZigzagProfile::of_shifted(&xi));
                let total: Rat = tm.atoms.iter().map(|(_, w)| w.clone()).sum();
                assert!(total.is_one(), "mass {total} for {xi}");
                assert!(
                    tm.atoms.iter().all(|(_, w)| w.is_positive()),
                    "negative atom for {xi}"
                );
                let (tm2, _, _) = transition_measure(&ZigzagProfile::of_russian(&xi.double()));
                let total2: Rat = tm2.atoms.iter().map(|(_, w)| w.clone()).sum();
                assert!(total2.is_one());
            }
        }
    }

    #[test]
    fn cumulant_routes_agree_exactly() {
        for n in 1..=7u64 {
            for xi in StrictPartition::all(n) {
                let omega = ZigzagProfile::of_shifted(&xi);
                let (_, _, g) = transition_measure(&omega);
                let via_cauchy = free_cumulants_from_cauchy_exact(&g, 8).unwrap();
                let via_moments = r_from_s(&sigma_moments(&omega, 8));
                assert_eq!(via_cauchy, via_moments, "routes differ at {xi}");
            }
        }
    }

    #[test]
    fn bernoulli_cumulants_via_cauchy() {
        let p = ZigzagProfile::of_russian(&Partition::new(vec![1]).unwrap());
        let (_, _, g) = transition_measure(&p);
        let r = free_cumulants_from_cauchy_exact(&g, 4).unwrap();
        assert_eq!(r.r(2), rat(1, 1));
        assert_eq!(r.r(3), rat(0, 1));
        assert_eq!(r.r(4), rat(-1, 1));
    }

    #[test]
    fn semicircle_series_from_algebraic_form() {
        // R = (1, 0, 0, ...) gives G^2 - z G + 1 = 0: Catalan moments
        let g = cauchy_from_cumulants(&FreeCumulantSequence::from_vals(vec![1.0]));
        let m = g.moments_f64(8).unwrap();
        let catalan = [1.0, 0.0, 1.0, 0.0, 2.0, 0.0, 5.0, 0.0, 14.0];
        for (a, b) in m.iter().zip(catalan) {
            assert!((a - b).abs() < 1e-10, "{a} vs {b}");
        }
        let r = free_cumulants_from_cauchy(&g, 8).unwrap();
        assert!((r.r(2) - 1.0).abs() < 1e-10);
        for k in 3..=8 {
            assert!(r.r(k).abs() < 1e-9, "R_{k} = {}", r.r(k));
        }
    }

    #[test]
    fn sw_cubic_small_c_tends_to_semicircle() {
        let g = cauchy_sw(1e-4);
        let r = free_cumulants_from_cauchy(&g, 6).unwrap();
        assert!((r.r(2) - 1.0).abs() < 1e-6);
        assert!(r.r(4).abs() < 1e-6);
    }

    #[test]
    fn sw_cubic_root_residual() {
        let g = cauchy_sw(1.0);
        let mut seed = None;
        let mut z = 60.0;
        while z > -60.0 {
            let zc = Complex64::new(z, 1e-3);
            let gv = g.eval(zc, seed);
            // residual of z G^3 + G^2 - 2 z G + 2
            let res = zc * gv.powu(3) + gv.powu(2) - 2.0 * zc * gv + 2.0;
            assert!(res.norm() < 1e-9, "residual {} at z={z}", res.norm());
            seed = Some(gv);
            z -= 0.6;
        }
        // asymptotics
        let gv = g.eval(Complex64::new(1e6, 0.0), None);
        assert!((gv * 1e6 - 1.0).norm() < 1e-5);
    }

    #[test]
    fn lsvk_closed_form() {
        assert!((lsvk_value(0.0) - 4.0 / std::f64::consts::PI).abs() < 1e-15);
        assert!((lsvk_value(2.0) - 2.0).abs() < 1e-15);
        assert!((lsvk_value(-2.0) - 2.0).abs() < 1e-15);
        assert!((lsvk_value(3.0) - 3.0).abs() < 1e-15);
        // area identity: integral of (omega - |z|)/2 = 1
        let grid = GridSpec::symmetric(2.0, 20001);
        let p = lsvk(grid);
        let mut area = 0.0;
        for i in 0..p.len() - 1 {
            let a = (p.values[i] - p.z_at(i).abs()) / 2.0;
            let b = (p.values[i + 1] - p.z_at(i + 1).abs()) / 2.0;
            area += 0.5 * (a + b) * p.step;
        }
        assert!((area - 1.0).abs() < 1e-6, "area {area}");
    }

    #[test]
    fn stieltjes_recovers_point_mass() {
        let g = CauchyTransform::Rational {
            zeros: vec![],
            poles: vec![rat(0, 1)],
        };
        let grid = GridSpec::symmetric(2.0, 51);
        let p = shape_from_cauchy(&g, grid, &DEFAULT_EPS_SCHEDULE).unwrap();
        for i in 0..p.len() {
            assert!(
                (p.values[i] - p.z_at(i).abs()).abs() < 2e-3,
                "at {}",
                p.z_at(i)
            );
        }
    }

    #[test]
    fn stieltjes_recovers_semicircle_shape() {
        let g = cauchy_from_cumulants(&FreeCumulantSequence::from_vals(vec![1.0]));
        let grid = GridSpec::symmetric(2.2, 111);
        let p = shape_from_cauchy(&g, grid, &DEFAULT_EPS_SCHEDULE).unwrap();
        let err = p.sup_distance(&lsvk_value);
        assert!(err < 1e-4, "sup error {err}");
        assert!((p.eval(0.0) - 4.0 / std::f64::consts::PI).abs() < 1e-6);
    }

    #[test]
    fn stieltjes_round_trips_a_zigzag() {
        let omega = ZigzagProfile::of_shifted(&sp(&[4, 2, 1]));
        let (_, _, g) = transition_measure(&omega);
        let grid = GridSpec::symmetric(6.0, 121);
        let p = shape_from_cauchy(&g, grid, &DEFAULT_EPS_SCHEDULE).unwrap();
        let err = p.sup_distance(&|z| omega.eval_f64(z));
        assert!(err < 2e-3, "sup error {err}");
    }

    #[test]
    fn profiles_satisfy_floor_and_lipschitz() {
        let p = sw_curve(1.0, GridSpec::symmetric(3.0, 101), &DEFAULT_EPS_SCHEDULE).unwrap();
        assert!(p.floor_excess() == 0.0);
        assert!(p.lipschitz_excess() < 1e-3);
        // symmetric input data gives a symmetric curve
        for i in 0..p.len() {
            let z = p.z_at(i);
            assert!((p.eval(z) - p.eval(-z)).abs() < 2e-3, "asymmetry at {z}");
        }
    }

    #[test]
    fn scaled_level_curves_compress() {
        let r = FreeCumulantSequence::from_vals(vec![1.0]);
        let grid = GridSpec::symmetric(2.5, 81);
        let fam = scaled_level_curves(&r, &[0.25, 1.0], grid, &DEFAULT_EPS_SCHEDULE).unwrap();
        // R_2 = alpha: the curve is the sqrt(alpha)-dilated LSVK
        let quarter = &fam.curves[0];
        for i in (0..quarter.len()).step_by(8) {
            let z = quarter.z_at(i);
            let expect = 0.5 * lsvk_value(z / 0.5);
            assert!((quarter.values[i] - expect).abs() < 1e-3, "at {z}");
        }
        // nesting
        for i in 0..quarter.len() {
            assert!(quarter.values[i] <= fam.curves[1].values[i] + 1e-6);
        }
        assert!(scaled_level_curves(&r, &[1.5], grid, &DEFAULT_EPS_SCHEDULE).is_err());
    }

    #[test]
    fn recording_curve_at_one_is_dilated_sw() {
        let grid = GridSpec::symmetric(3.0, 61);
        let rec = recording_level_curve(1.0, grid, &DEFAULT_EPS_SCHEDULE).unwrap();
        let sw = sw_curve(
            1.0,
            GridSpec {
                z_min: grid.z_min / 2f64.sqrt(),
                z_max: grid.z_max / 2f64.sqrt(),
                points: grid.points,
            },
            &DEFAULT_EPS_SCHEDULE,
        )
        .unwrap();
        for i in (1..rec.len() - 1).step_by(6) {
            let z = rec.z_at(i);
            let expect = 2f64.sqrt() * sw.eval(z / 2f64.sqrt());
            assert!((rec.values[i] - expect).abs() < 1e-9, "at {z}");
        }
    }

    #[test]
    fn surface_value_thresholds() {
        let r = FreeCumulantSequence::from_vals(vec![1.0]);
        let grid = GridSpec::symmetric(2.5, 81);
        let alphas = [0.2, 0.4, 0.6, 0.8, 1.0];
        let fam = scaled_level_curves(&r, &alphas, grid, &DEFAULT_EPS_SCHEDULE).unwrap();
        // a point on the alpha = 0.6 curve reports 0.6 (within the grid)
        let c = &fam.curves[2];
        let z = 0.3;
        let t = c.eval(z);
        let x = (t + z) / 2.0;
        let y = (t - z) / 2.0;
        let a = surface_value(&fam, x, y).unwrap();
        assert!((a - 0.6).abs() < 1e-9, "got {a}");
        // deep inside: below every curve
        assert_eq!(surface_value(&fam, 0.05, 0.04).unwrap(), 0.2);
        // far outside
        assert!(surface_value(&fam, 3.0, 2.9).is_err());
    }
}
