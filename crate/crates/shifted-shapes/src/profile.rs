//! Profiles of (shifted) Young diagrams: exact zigzags and sampled grids.
//!
//! A continual Young diagram is a 1-Lipschitz function equal to |z| far from
//! the origin. Diagram profiles are drawn in rotated coordinates: `z = x - y`,
//! `t = x + y` for ordinary diagrams and `z = x - y - 1/2`, `t = x + y - 1/2`
//! for shifted ones, the latter extended evenly to the whole line.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::partition::{Partition, StrictPartition};
use crate::{rat, rat_to_f64, Rat};

/// Error for operations on profiles with invalid parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileError(pub String);

impl fmt::Display for ProfileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "profile error: {}", self.0)
    }
}

impl std::error::Error for ProfileError {}

/// Drawing convention for [`ZigzagProfile::of_shape`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Convention {
    /// `z = x - y - 1/2`, `t = x + y - 1/2`, even extension to `z < 0`.
    ShiftedRussian,
    /// `z = x - y`, `t = x + y`.
    Russian,
}

/// Exact piecewise-linear profile with slopes ±1.
///
/// Stored as the interlacing local minima `x_0 < x_1 < ... < x_m` and maxima
/// `y_1 < ... < y_m`; the function equals |z| outside `[x_0, x_m]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZigzagProfile {
    minima: Vec<Rat>,
    maxima: Vec<Rat>,
    symmetric: bool,
}

impl ZigzagProfile {
    /// The profile of the empty diagram, `omega(z) = |z|`.
    pub fn abs() -> Self {
        Self {
            minima: vec![Rat::zero()],
            maxima: vec![],
            symmetric: true,
        }
    }

    /// Build from interlacing minima and maxima.
    pub fn new(minima: Vec<Rat>, maxima: Vec<Rat>) -> Result<Self, ProfileError> {
        if minima.len() != maxima.len() + 1 {
            return Err(ProfileError(format!(
                "need m+1 minima for m maxima, got {} and {}",
                minima.len(),
                maxima.len()
            )));
        }
        for i in 0..maxima.len() {
            if !(minima[i] < maxima[i] && maxima[i] < minima[i + 1]) {
                return Err(ProfileError("minima and maxima do not interlace".into()));
            }
        }
        let symmetric = {
            let neg: Vec<Rat> = minima.iter().rev().map(|z| -z.clone()).collect();
            let negmax: Vec<Rat> = maxima.iter().rev().map(|z| -z.clone()).collect();
            neg == minima && negmax == maxima
        };
        Ok(Self {
            minima,
            maxima,
            symmetric,
        })
    }

    /// Profile of a strict partition (shifted Russian convention, even
    /// extension) or of its double-style ordinary drawing.
    pub fn of_shifted(xi: &StrictPartition) -> Self {
        if xi.is_empty() {
            return Self::abs();
        }
        let half = rat(1, 2);
        // Corners for z >= 0, walking from the diagonal outward: for row y
        // (top row first) a maximum at part - 1/2 then a minimum at part + 1/2.
        // Adjacent equal min/max cancel when parts differ by exactly one.
        let mut corners: Vec<(Rat, bool)> = Vec::new(); // (z, is_max)
        for &p in xi.parts().iter().rev() {
            let p = rat(p as i64, 1);
            corners.push((p.clone() - &half, true));
            corners.push((p + &half, false));
        }
        let mut pruned: Vec<(Rat, bool)> = Vec::new();
        for c in corners {
            if let Some(last) = pruned.last() {
                if !last.1 && c.1 && last.0 == c.0 {
                    pruned.pop();
                    continue;
                }
            }
            pruned.push(c);
        }
        let mut minima = vec![Rat::zero()];
        let mut maxima = Vec::new();
        for (z, is_max) in pruned {
            if is_max {
                maxima.push(z);
            } else {
                minima.push(z);
            }
        }
        // even extension
        let mut full_min: Vec<Rat> = minima.iter().skip(1).rev().map(|z| -z.clone()).collect();
        full_min.extend(minima);
        let mut full_max: Vec<Rat> = maxima.iter().rev().map(|z| -z.clone()).collect();
        full_max.extend(maxima);
        Self::new(full_min, full_max).expect("shifted profile corners interlace")
    }

    /// Profile of an ordinary partition in the Russian convention.
    pub fn of_russian(lambda: &Partition) -> Self {
        if lambda.is_empty() {
            return Self::abs();
        }
        let l = lambda.len() as i64;
        let mut corners: Vec<(Rat, bool)> = Vec::new();
        for (i, &p) in lambda.parts().iter().enumerate().rev() {
            let y = (i + 1) as i64;
            corners.push((rat(p as i64 - y, 1), true));
            corners.push((rat(p as i64 - y + 1, 1), false));
        }
        let mut pruned: Vec<(Rat, bool)> = Vec::new();
        for c in corners {
            if let Some(last) = pruned.last() {
                if !last.1 && c.1 && last.0 == c.0 {
                    pruned.pop();
                    continue;
                }
            }
            pruned.push(c);
        }
        let mut minima = vec![rat(-l, 1)];
        let mut maxima = Vec::new();
        for (z, is_max) in pruned {
            if is_max {
                maxima.push(z);
            } else {
                minima.push(z);
            }
        }
        Self::new(minima, maxima).expect("russian profile corners interlace")
    }

    /// Dispatch on the drawing convention.
    pub fn of_shape(shape: &ShapeRef<'_>, convention: Convention) -> Result<Self, ProfileError> {
        match (shape, convention) {
            (ShapeRef::Strict(xi), Convention::ShiftedRussian) => Ok(Self::of_shifted(xi)),
            (ShapeRef::Ordinary(l), Convention::Russian) => Ok(Self::of_russian(l)),
            _ => Err(ProfileError(
                "convention does not match the shape kind".into(),
            )),
        }
    }

    pub fn minima(&self) -> &[Rat] {
        &self.minima
    }

    pub fn maxima(&self) -> &[Rat] {
        &self.maxima
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    /// All breakpoints in increasing order.
    pub fn breakpoints(&self) -> Vec<Rat> {
        let mut out = Vec::with_capacity(self.minima.len() + self.maxima.len());
        for i in 0..self.maxima.len() {
            out.push(self.minima[i].clone());
            out.push(self.maxima[i].clone());
        }
        out.push(self.minima.last().unwrap().clone());
        out
    }

    /// Exact evaluation.
    pub fn eval(&self, z: &Rat) -> Rat {
        let x0 = &self.minima[0];
        let xm = self.minima.last().unwrap();
        if z <= x0 || z >= xm {
            return z.abs();
        }
        // value at a minimum x_i is |x_i|? No: minima lie on omega = |z| only
        // at the extremes. Between breakpoints the slope alternates starting
        // with +1 after x_0. Evaluate by walking from x_0 where omega = |x_0|.
        let bps = self.breakpoints();
        let mut val = x0.abs();
        let mut prev = x0.clone();
        let mut slope = 1i64;
        for bp in bps.iter().skip(1) {
            if z <= bp {
                return val + rat(slope, 1) * (z - &prev);
            }
            val = val + rat(slope, 1) * (&*bp - &prev);
            prev = bp.clone();
            slope = -slope;
        }
        z.abs()
    }

    pub fn eval_f64(&self, z: f64) -> f64 {
        // cheap float path used by samplers; exact path is `eval`
        let bps: Vec<f64> = self.breakpoints().iter().map(rat_to_f64).collect();
        let x0 = bps[0];
        let xm = *bps.last().unwrap();
        if z <= x0 || z >= xm {
            return z.abs();
        }
        let mut val = x0.abs();
        let mut prev = x0;
        let mut slope = 1.0;
        for &bp in &bps[1..] {
            if z <= bp {
                return val + slope * (z - prev);
            }
            val += slope * (bp - prev);
            prev = bp;
            slope = -slope;
        }
        z.abs()
    }

    /// Dilation: `result(z) = r * omega(z / r)`.
    pub fn dilate(&self, r: &Rat) -> Result<Self, ProfileError> {
        if !r.is_positive() {
            return Err(ProfileError(format!(
                "dilation factor must be positive, got {r}"
            )));
        }
        Ok(Self {
            minima: self.minima.iter().map(|z| z * r).collect(),
            maxima: self.maxima.iter().map(|z| z * r).collect(),
            symmetric: self.symmetric,
        })
    }

    /// Exact supremum distance between two zigzags.
    ///
    /// The difference is piecewise linear with kinks only at the union of the
    /// breakpoints, so the maximum is attained there.
    pub fn sup_distance(&self, other: &ZigzagProfile) -> Rat {
        let mut pts = self.breakpoints();
        pts.extend(other.breakpoints());
        pts.sort();
        pts.dedup();
        let mut best = Rat::zero();
        for z in &pts {
            let d = (self.eval(z) - other.eval(z)).abs();
            if d > best {
                best = d;
            }
        }
        best
    }

    /// Sample onto a uniform grid.
    pub fn to_sampled(&self, z_min: f64, z_max: f64, points: usize) -> SampledProfile {
        let step = (z_max - z_min) / (points.max(2) as f64 - 1.0);
        let values = (0..points.max(2))
            .map(|i| self.eval_f64(z_min + step * i as f64))
            .collect();
        SampledProfile {
            z_min,
            step,
            values,
        }
    }

    /// Integral of `sigma = (omega - |z|)/2` against `z^k`, exact.
    ///
    /// Segments are split at 0 so the |z| kink is handled exactly.
    pub fn sigma_power_integral(&self, k: u32) -> Rat {
        let bps = self.breakpoints();
        let mut nodes: Vec<Rat> = bps.clone();
        if !nodes.iter().any(|z| z.is_zero()) {
            nodes.push(Rat::zero());
            nodes.sort();
        }
        let half = rat(1, 2);
        let mut total = Rat::zero();
        for w in nodes.windows(2) {
            let (a, b) = (&w[0], &w[1]);
            // sigma is linear on [a, b]: sigma(z) = s_a + slope (z - a)
            let sa = (self.eval(a) - a.abs()) * &half;
            let sb = (self.eval(b) - b.abs()) * &half;
            if sa.is_zero() && sb.is_zero() {
                continue;
            }
            let slope = (&sb - &sa) / (b - a);
            // integral of z^k (c0 + c1 z) over [a, b]
            let c1 = slope.clone();
            let c0 = sa - &slope * a;
            let p1 = pow_rat(b, k + 1) - pow_rat(a, k + 1);
            let p2 = pow_rat(b, k + 2) - pow_rat(a, k + 2);
            total = total + c0 * p1 / rat(k as i64 + 1, 1) + c1 * p2 / rat(k as i64 + 2, 1);
        }
        total
    }
}

fn pow_rat(z: &Rat, k: u32) -> Rat {
    let mut out = Rat::from_integer(1.into());
    for _ in 0..k {
        out = out * z;
    }
    out
}

/// Either kind of shape, for convention dispatch.
pub enum ShapeRef<'a> {
    Strict(&'a StrictPartition),
    Ordinary(&'a Partition),
}

/// Numeric profile on a uniform grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledProfile {
    pub z_min: f64,
    pub step: f64,
    pub values: Vec<f64>,
}

impl SampledProfile {
    pub fn new(z_min: f64, step: f64, values: Vec<f64>) -> Self {
        Self {
            z_min,
            step,
            values,
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn z_at(&self, i: usize) -> f64 {
        self.z_min + self.step * i as f64
    }

    pub fn z_max(&self) -> f64 {
        self.z_at(self.values.len().saturating_sub(1))
    }

    /// Linear interpolation inside the grid, |z| outside.
    pub fn eval(&self, z: f64) -> f64 {
        if self.values.is_empty() {
            return z.abs();
        }
        if z <= self.z_min || z >= self.z_max() {
            return z.abs();
        }
        let u = (z - self.z_min) / self.step;
        let i = u.floor() as usize;
        let frac = u - i as f64;
        if i + 1 >= self.values.len() {
            return self.values[i];
        }
        self.values[i] * (1.0 - frac) + self.values[i + 1] * frac
    }

    /// Dilation on the same index grid: scales both axes by `r`.
    pub fn dilate(&self, r: f64) -> Result<Self, ProfileError> {
        if r <= 0.0 {
            return Err(ProfileError(format!(
                "dilation factor must be positive, got {r}"
            )));
        }
        Ok(Self {
            z_min: self.z_min * r,
            step: self.step * r,
            values: self.values.iter().map(|v| v * r).collect(),
        })
    }

    /// Grid-max distance against another profile evaluated on this grid.
    pub fn sup_distance(&self, other: &dyn Fn(f64) -> f64) -> f64 {
        (0..self.values.len())
            .map(|i| (self.values[i] - other(self.z_at(i))).abs())
            .fold(0.0, f64::max)
    }

    /// Pointwise mean of profiles sharing one grid.
    pub fn mean(profiles: &[SampledProfile]) -> SampledProfile {
        assert!(!profiles.is_empty(), "mean of no profiles");
        let n = profiles.len() as f64;
        let mut values = vec![0.0; profiles[0].values.len()];
        for p in profiles {
            assert_eq!(p.values.len(), values.len(), "profiles on different grids");
            for (acc, v) in values.iter_mut().zip(&p.values) {
                *acc += v;
            }
        }
        for v in &mut values {
            *v /= n;
        }
        SampledProfile {
            z_min: profiles[0].z_min,
            step: profiles[0].step,
            values,
        }
    }

    /// Largest Lipschitz violation over adjacent nodes (0 for a valid profile).
    pub fn lipschitz_excess(&self) -> f64 {
        self.values
            .windows(2)
            .map(|w| ((w[1] - w[0]).abs() - self.step).max(0.0))
            .fold(0.0, f64::max)
    }

    /// Largest violation of `omega(z) >= |z|` over the nodes.
    pub fn floor_excess(&self) -> f64 {
        (0..self.values.len())
            .map(|i| (self.z_at(i).abs() - self.values[i]).max(0.0))
            .fold(0.0, f64::max)
    }

    /// CSV rows `z,t`, round-trip floats, ascending in z.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("z,t\n");
        for i in 0..self.values.len() {
            out.push_str(&crate::fmt_float(self.z_at(i)));
            out.push(',');
            out.push_str(&crate::fmt_float(self.values[i]));
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(parts: &[u32]) -> StrictPartition {
        StrictPartition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn shifted_profile_of_one_box() {
        let p = ZigzagProfile::of_shifted(&sp(&[1]));
        assert_eq!(p.eval(&rat(0, 1)), rat(2, 1));
        assert_eq!(p.eval(&rat(1, 2)), rat(5, 2));
        assert_eq!(p.eval(&rat(3, 2)), rat(3, 2));
        assert_eq!(p.eval(&rat(2, 1)), rat(2, 1));
        assert!(p.is_symmetric());
        assert_eq!(p.minima(), &[rat(-3, 2), rat(0, 1), rat(3, 2)]);
        assert_eq!(p.maxima(), &[rat(-1, 2), rat(1, 2)]);
    }

    #[test]
    fn russian_profile_of_one_box() {
        let p = ZigzagProfile::of_russian(&Partition::new(vec![1]).unwrap());
        assert_eq!(p.eval(&rat(0, 1)), rat(2, 1));
        assert_eq!(p.eval(&rat(1, 1)), rat(1, 1));
        assert_eq!(p.eval(&rat(-1, 1)), rat(1, 1));
        assert_eq!(p.eval(&rat(5, 1)), rat(5, 1));
    }

    #[test]
    fn empty_profiles_are_abs() {
        let p = ZigzagProfile::of_shifted(&StrictPartition::empty());
        let q = ZigzagProfile::of_russian(&Partition::empty());
        assert_eq!(p, ZigzagProfile::abs());
        assert_eq!(q, ZigzagProfile::abs());
        assert_eq!(p.eval(&rat(-7, 3)), rat(7, 3));
    }

    #[test]
    fn profile_cancels_collinear_corners() {
        // (2,1) has an empty exposed edge on row 1
        let p = ZigzagProfile::of_shifted(&sp(&[2, 1]));
        assert_eq!(p.minima(), &[rat(-5, 2), rat(0, 1), rat(5, 2)]);
        assert_eq!(p.maxima(), &[rat(-1, 2), rat(1, 2)]);
        assert_eq!(p.eval(&rat(0, 1)), rat(4, 1));
    }

    #[test]
    fn dilate_examples() {
        let p = ZigzagProfile::of_shifted(&sp(&[1]));
        let d = p.dilate(&rat(2, 1)).unwrap();
        assert_eq!(d.eval(&rat(0, 1)), rat(4, 1));
        assert_eq!(d.minima().last().unwrap(), &rat(3, 1));
        assert_eq!(p.dilate(&rat(1, 1)).unwrap(), p);
        assert!(p.dilate(&rat(0, 1)).is_err());
        assert!(p.dilate(&rat(-1, 2)).is_err());
        let abs = ZigzagProfile::abs();
        assert_eq!(abs.dilate(&rat(7, 2)).unwrap(), abs);
    }

    #[test]
    fn sup_distance_examples() {
        let p = ZigzagProfile::of_shifted(&sp(&[1]));
        assert_eq!(p.sup_distance(&p), rat(0, 1));
        assert_eq!(p.sup_distance(&ZigzagProfile::abs()), rat(2, 1));
    }

    #[test]
    fn one_lipschitz_at_breakpoints() {
        for n in 0..=8u64 {
            for xi in StrictPartition::all(n) {
                let p = ZigzagProfile::of_shifted(&xi);
                let bps = p.breakpoints();
                for i in 0..bps.len() {
                    for j in (i + 1)..bps.len() {
                        let dz = (&bps[j] - &bps[i]).abs();
                        let dv = (p.eval(&bps[j]) - p.eval(&bps[i])).abs();
                        assert!(dv <= dz, "not 1-Lipschitz for {xi}");
                    }
                }
            }
        }
    }

    #[test]
    fn area_identity() {
        // integral of sigma equals 2 r^2 |xi| (shifted) resp. r^2 |lambda|
        for n in 0..=8u64 {
            for xi in StrictPartition::all(n) {
                for r in [rat(1, 1), rat(1, 2), rat(3, 1)] {
                    let p = ZigzagProfile::of_shifted(&xi).dilate(&r).unwrap();
                    let mass = p.sigma_power_integral(0);
                    assert_eq!(
                        mass,
                        rat(2, 1) * &r * &r * rat(n as i64, 1),
                        "shifted {xi} r={r}"
                    );
                }
                let lam = xi.double();
                let p = ZigzagProfile::of_russian(&lam);
                assert_eq!(
                    p.sigma_power_integral(0),
                    rat(2 * n as i64, 1),
                    "double of {xi}"
                );
            }
        }
    }

    #[test]
    fn sampled_profile_roundtrip() {
        let p = ZigzagProfile::of_shifted(&sp(&[3, 1]));
        let s = p.to_sampled(-5.0, 5.0, 101);
        assert!(s.lipschitz_excess() < 1e-12);
        assert!(s.floor_excess() < 1e-12);
        assert!((s.eval(0.0) - p.eval_f64(0.0)).abs() < 1e-12);
        let d = s.dilate(2.0).unwrap();
        assert!((d.eval(0.0) - 2.0 * s.eval(0.0)).abs() < 1e-9);
        assert!(s.dilate(-1.0).is_err());
    }
}
