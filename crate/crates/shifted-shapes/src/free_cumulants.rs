//! Moment and free-cumulant calculus for profiles.
//!
//! For a profile `omega` the rescaled moments are
//! `S_n = (n-1) * integral z^{n-2} sigma_omega(z) dz` with
//! `sigma = (omega - |z|)/2`. Free cumulants `R_n` are related to the moments
//! by composition sums over ordered tuples `k_1, ..., k_l >= 2` summing to n:
//!
//! `R_n = sum_l (1/l!) (1-n)^{l-1}        sum S_{k_1} ... S_{k_l}`
//! `S_n = sum_l (1/l!) (n-1)(n-2)...(n-l+1) sum R_{k_1} ... R_{k_l}`
//!
//! (ordinary power in the first line, falling power in the second; the pair
//! is validated by the exact round-trip test below).

use num_traits::{One, Zero};

use crate::profile::ZigzagProfile;
use crate::{rat, Rat};

/// Scalar abstraction so the calculus runs both exactly and in floats.
pub trait Scalar:
    Clone
    + Zero
    + One
    + std::ops::Add<Output = Self>
    + std::ops::Sub<Output = Self>
    + std::ops::Mul<Output = Self>
    + std::ops::Div<Output = Self>
    + PartialEq
{
    fn from_i64(v: i64) -> Self;
}

impl Scalar for Rat {
    fn from_i64(v: i64) -> Self {
        rat(v, 1)
    }
}

impl Scalar for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }
}

/// Rescaled moments `S_2 ..= S_N` of a profile.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentSequence<T = Rat> {
    vals: Vec<T>, // vals[i] = S_{i+2}
}

impl<T: Scalar> MomentSequence<T> {
    pub fn from_vals(vals: Vec<T>) -> Self {
        Self { vals }
    }

    /// Highest stored order N.
    pub fn order(&self) -> usize {
        self.vals.len() + 1
    }

    /// `S_n` for `2 <= n <= order`.
    pub fn s(&self, n: usize) -> T {
        assert!(n >= 2 && n <= self.order(), "moment order {n} out of range");
        self.vals[n - 2].clone()
    }

    pub fn vals(&self) -> &[T] {
        &self.vals
    }
}

/// Free cumulants `R_2 ..= R_N`.
#[derive(Debug, Clone, PartialEq)]
pub struct FreeCumulantSequence<T = Rat> {
    vals: Vec<T>, // vals[i] = R_{i+2}
}

impl<T: Scalar> FreeCumulantSequence<T> {
    pub fn from_vals(vals: Vec<T>) -> Self {
        Self { vals }
    }

    pub fn order(&self) -> usize {
        self.vals.len() + 1
    }

    /// `R_n` for `2 <= n <= order`.
    pub fn r(&self, n: usize) -> T {
        assert!(
            n >= 2 && n <= self.order(),
            "cumulant order {n} out of range"
        );
        self.vals[n - 2].clone()
    }

    pub fn vals(&self) -> &[T] {
        &self.vals
    }
}

/// Exact moments of a zigzag profile up to order N.
pub fn sigma_moments(omega: &ZigzagProfile, order: usize) -> MomentSequence<Rat> {
    assert!(order >= 2, "need order >= 2");
    let vals = (2..=order)
        .map(|n| rat(n as i64 - 1, 1) * omega.sigma_power_integral(n as u32 - 2))
        .collect();
    MomentSequence { vals }
}

/// Float moments of a sampled profile by composite Simpson integration.
///
/// The grid error is `O(step^2)` from the piecewise-linear carrier plus the
/// `O(step^4)` quadrature term; callers needing exact values go through
/// [`sigma_moments`] on a zigzag instead.
pub fn sigma_moments_sampled(
    profile: &crate::profile::SampledProfile,
    order: usize,
) -> MomentSequence<f64> {
    assert!(order >= 2, "need order >= 2");
    assert!(profile.len() >= 3, "need at least three grid points");
    let sigma: Vec<f64> = (0..profile.len())
        .map(|i| (profile.values[i] - profile.z_at(i).abs()) / 2.0)
        .collect();
    let h = profile.step;
    let vals = (2..=order)
        .map(|n| {
            let k = (n - 2) as i32;
            let f = |i: usize| profile.z_at(i).powi(k) * sigma[i];
            // composite Simpson, trapezoid fixup on an even tail point
            let mut total = 0.0;
            let mut i = 0;
            while i + 2 < profile.len() {
                total += h / 3.0 * (f(i) + 4.0 * f(i + 1) + f(i + 2));
                i += 2;
            }
            if i + 1 < profile.len() {
                total += h / 2.0 * (f(i) + f(i + 1));
            }
            (n as f64 - 1.0) * total
        })
        .collect();
    MomentSequence { vals }
}

fn factorial_t<T: Scalar>(l: usize) -> T {
    let mut f = T::one();
    for i in 2..=l {
        f = f * T::from_i64(i as i64);
    }
    f
}

/// Ordered compositions of n into parts >= 2, invoked as products of the
/// sequence values.
fn composition_sum<T: Scalar>(vals: &dyn Fn(usize) -> T, n: usize, parts: usize) -> T {
    fn rec<T: Scalar>(vals: &dyn Fn(usize) -> T, left: usize, parts: usize, acc: T) -> T {
        if parts == 0 {
            return if left == 0 { acc } else { T::zero() };
        }
        let mut total = T::zero();
        // remaining parts need at least 2 each
        let hi = left.saturating_sub(2 * (parts - 1));
        for k in 2..=hi {
            total = total + rec(vals, left - k, parts - 1, acc.clone() * vals(k));
        }
        total
    }
    rec(vals, n, parts, T::one())
}

/// Free cumulants from moments.
pub fn r_from_s<T: Scalar>(s: &MomentSequence<T>) -> FreeCumulantSequence<T> {
    let order = s.order();
    let mut out = Vec::with_capacity(order - 1);
    for n in 2..=order {
        let mut rn = T::zero();
        for l in 1..=(n / 2) {
            // ordinary power (1-n)^(l-1)
            let mut coeff = T::one();
            for _ in 1..l {
                coeff = coeff * T::from_i64(1 - n as i64);
            }
            coeff = coeff / factorial_t::<T>(l);
            let sum = composition_sum(&|k| s.s(k), n, l);
            rn = rn + coeff * sum;
        }
        out.push(rn);
    }
    FreeCumulantSequence { vals: out }
}

/// Moments from free cumulants (inverse of [`r_from_s`]).
pub fn s_from_r<T: Scalar>(r: &FreeCumulantSequence<T>) -> MomentSequence<T> {
    let order = r.order();
    let mut out = Vec::with_capacity(order - 1);
    for n in 2..=order {
        let mut sn = T::zero();
        for l in 1..=(n / 2) {
            // falling power (n-1)(n-2)...(n-l+1)
            let mut coeff = T::one();
            for j in 1..l {
                coeff = coeff * T::from_i64(n as i64 - j as i64);
            }
            coeff = coeff / factorial_t::<T>(l);
            let sum = composition_sum(&|k| r.r(k), n, l);
            sn = sn + coeff * sum;
        }
        out.push(sn);
    }
    MomentSequence { vals: out }
}

fn binomial_t<T: Scalar>(n: usize, k: usize) -> T {
    let mut num = T::one();
    let mut den = T::one();
    for i in 0..k {
        num = num * T::from_i64((n - i) as i64);
        den = den * T::from_i64((i + 1) as i64);
    }
    num / den
}

/// Moments of the translated density `sigma(. - delta)`:
/// `S'_n = (n-1) integral (z + delta)^{n-2} sigma(z) dz`, expanded binomially.
pub fn translate_moments<T: Scalar>(s: &MomentSequence<T>, delta: &T) -> MomentSequence<T> {
    let order = s.order();
    let mut out = Vec::with_capacity(order - 1);
    for n in 2..=order {
        let mut acc = T::zero();
        for j in 0..=(n - 2) {
            // integral z^j sigma = S_{j+2} / (j+1)
            let mut dpow = T::one();
            for _ in 0..(n - 2 - j) {
                dpow = dpow * delta.clone();
            }
            let term = binomial_t::<T>(n - 2, j) * dpow * s.s(j + 2) / T::from_i64(j as i64 + 1);
            acc = acc + term;
        }
        out.push(T::from_i64(n as i64 - 1) * acc);
    }
    MomentSequence { vals: out }
}

/// Free cumulants `R_1..R_order` from the raw moments `m_0, m_1, ...` of a
/// probability measure, via `M(z) = 1 + sum_s R_s z^s M(z)^s`.
pub fn cumulants_from_raw_moments<T: Scalar>(moments: &[T], order: usize) -> Vec<T> {
    assert!(moments.len() > order, "need moments m_0..m_order");
    assert!(moments[0] == T::one(), "m_0 must be 1");
    let trunc = order + 1;
    let m: Vec<T> = moments[..trunc].to_vec();
    // powers of M(z) truncated at z^order
    let mut mpow: Vec<Vec<T>> = vec![vec![T::zero(); trunc]];
    mpow[0][0] = T::one();
    for s in 1..=order {
        let prev = &mpow[s - 1];
        let mut next = vec![T::zero(); trunc];
        for i in 0..trunc {
            if prev[i] == T::zero() {
                continue;
            }
            for j in 0..(trunc - i) {
                let add = prev[i].clone() * m[j].clone();
                next[i + j] = next[i + j].clone() + add;
            }
        }
        mpow.push(next);
    }
    let mut r = vec![T::zero(); order + 1]; // r[s] = R_s, r[0] unused
    for n in 1..=order {
        // m_n = sum_{s=1..n} R_s * [z^{n-s}] M^s
        let mut known = T::zero();
        for s in 1..n {
            known = known + r[s].clone() * mpow[s][n - s].clone();
        }
        r[n] = m[n].clone() - known; // [z^0] M^s = 1
    }
    r.remove(0);
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{Partition, StrictPartition};
    use crate::profile::ZigzagProfile;

    fn sp(parts: &[u32]) -> StrictPartition {
        StrictPartition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn moments_of_one_box_shifted() {
        let p = ZigzagProfile::of_shifted(&sp(&[1]));
        let s = sigma_moments(&p, 4);
        assert_eq!(s.s(2), rat(2, 1)); // 2 |xi|
        assert_eq!(s.s(3), rat(0, 1)); // symmetric
        assert_eq!(s.s(4), rat(5, 2));
    }

    #[test]
    fn moments_vanish_for_abs() {
        let s = sigma_moments(&ZigzagProfile::abs(), 8);
        assert!(s.vals().iter().all(|v| v.is_zero()));
    }

    #[test]
    fn r4_example() {
        let s = MomentSequence::from_vals(vec![rat(1, 1), rat(0, 1), rat(5, 2)]);
        let r = r_from_s(&s);
        assert_eq!(r.r(2), rat(1, 1));
        assert_eq!(r.r(3), rat(0, 1));
        assert_eq!(r.r(4), rat(1, 1)); // S4 - (3/2) S2^2
    }

    #[test]
    fn bernoulli_profile_cumulants() {
        // lambda = (1) in the Russian convention: S2 = 1, S4 = 1/2, R4 = -1
        let p = ZigzagProfile::of_russian(&Partition::new(vec![1]).unwrap());
        let s = sigma_moments(&p, 4);
        assert_eq!(s.s(2), rat(1, 1));
        assert_eq!(s.s(4), rat(1, 2));
        let r = r_from_s(&s);
        assert_eq!(r.r(2), rat(1, 1));
        assert_eq!(r.r(4), rat(-1, 1));
    }

    #[test]
    fn round_trip_exact_to_order_12() {
        // pseudo-random rational inputs
        let mut state = 1u64;
        let mut next = move || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((state >> 33) as i64 % 19) - 9
        };
        for _ in 0..25 {
            let vals: Vec<Rat> = (0..11)
                .map(|_| rat(next(), 1 + (next().abs() % 5)))
                .collect();
            let s = MomentSequence::from_vals(vals);
            let back = s_from_r(&r_from_s(&s));
            assert_eq!(back, s);
            let r = FreeCumulantSequence::from_vals(s.vals().to_vec());
            let back_r = r_from_s(&s_from_r(&r));
            assert_eq!(back_r, r);
        }
    }

    #[test]
    fn round_trip_float_path() {
        let vals: Vec<f64> = vec![1.3, -0.2, 0.7, 0.1, -1.1, 0.4, 0.9, -0.3, 0.05, 1.7, -0.6];
        let s = MomentSequence::from_vals(vals.clone());
        let back = s_from_r(&r_from_s(&s));
        for (a, b) in back.vals().iter().zip(&vals) {
            assert!((a - b).abs() <= 1e-9 * (1.0 + b.abs()), "{a} vs {b}");
        }
    }

    #[test]
    fn translate_examples() {
        let s = MomentSequence::from_vals(vec![rat(3, 1), rat(5, 1), rat(7, 1)]);
        let same = translate_moments(&s, &rat(0, 1));
        assert_eq!(same, s);
        let t = translate_moments(&s, &rat(1, 2));
        assert_eq!(t.s(2), rat(3, 1)); // mass invariant
        assert_eq!(t.s(3), rat(5, 1) + rat(2, 1) * rat(1, 2) * rat(3, 1)); // S3 + 2 delta S2
    }

    #[test]
    fn translate_composes() {
        let p = ZigzagProfile::of_shifted(&sp(&[3, 1]));
        let s = sigma_moments(&p, 8);
        let there = translate_moments(&s, &rat(2, 3));
        let back = translate_moments(&there, &rat(-2, 3));
        assert_eq!(back, s);
    }

    #[test]
    fn double_identity() {
        // moments of the double's Russian profile = shifted moments
        // translated by 1/2
        for n in 0..=8u64 {
            for xi in StrictPartition::all(n) {
                let sh = sigma_moments(&ZigzagProfile::of_shifted(&xi), 8);
                let db = sigma_moments(&ZigzagProfile::of_russian(&xi.double()), 8);
                assert_eq!(
                    db,
                    translate_moments(&sh, &rat(1, 2)),
                    "double identity at {xi}"
                );
            }
        }
    }

    #[test]
    fn odd_cumulants_vanish_for_symmetric_profiles() {
        for xi in StrictPartition::all(8) {
            let s = sigma_moments(&ZigzagProfile::of_shifted(&xi), 9);
            let r = r_from_s(&s);
            for n in (3..=9).step_by(2) {
                assert!(r.r(n).is_zero(), "odd cumulant R_{n} nonzero for {xi}");
            }
        }
    }

    #[test]
    fn sampled_moments_track_exact_ones() {
        let p = ZigzagProfile::of_shifted(&sp(&[4, 2, 1]));
        let exact = sigma_moments(&p, 6);
        let sampled = sigma_moments_sampled(&p.to_sampled(-9.0, 9.0, 4001), 6);
        for n in 2..=6 {
            let e = crate::rat_to_f64(&exact.s(n));
            let s = sampled.s(n);
            assert!((e - s).abs() < 2e-4 * (1.0 + e.abs()), "S_{n}: {e} vs {s}");
        }
    }

    #[test]
    fn semicircle_from_raw_moments() {
        // Catalan moments -> R_2 = 1 only
        let m: Vec<Rat> = vec![1, 0, 1, 0, 2, 0, 5, 0, 14]
            .into_iter()
            .map(|v| rat(v, 1))
            .collect();
        let r = cumulants_from_raw_moments(&m, 8);
        assert_eq!(r[1], rat(1, 1)); // R_2
        for (i, v) in r.iter().enumerate() {
            if i != 1 {
                assert!(v.is_zero(), "R_{} = {v}", i + 1);
            }
        }
    }
}
