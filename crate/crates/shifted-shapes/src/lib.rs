//! Shifted Young diagram combinatorics and limit-shape numerics.
//!
//! The crate covers the whole pipeline from exact shifted-partition
//! combinatorics to numeric limit curves:
//!
//! * [`partition`] — strict, ordinary and odd partitions, doubling, staircases;
//! * [`profile`] — exact zigzag profiles in the (shifted) Russian convention
//!   and sampled numeric profiles;
//! * [`tableaux`] — shifted standard and generalized tableaux, counting and
//!   enumeration;
//! * [`rsk`] — shifted Robinson–Schensted–Knuth insertion over the circled
//!   alphabet;
//! * [`samplers`] — hook-walk, Plancherel and Schur–Weyl samplers with
//!   reproducible seeding;
//! * [`qfunctions`] — Schur Q-functions expanded in the power-sum basis;
//! * [`characters`] — spin character ratios, measures on strict partitions,
//!   cumulants and the exact desk-scale identities;
//! * [`free_cumulants`] — moment and free-cumulant calculus of profiles;
//! * [`limit_shapes`] — transition measures, Cauchy transforms, Stieltjes
//!   inversion and the limit-curve families.

pub mod characters;
pub mod free_cumulants;
pub mod limit_shapes;
pub mod partition;
pub mod profile;
pub mod qfunctions;
pub mod rsk;
pub mod samplers;
pub mod tableaux;

pub use partition::{OddPartition, Partition, StrictPartition};
pub use profile::{SampledProfile, ZigzagProfile};
pub use rsk::{CircledLetter, CircledWord, TableauPair};
pub use samplers::SeedSpec;

/// Exact rational scalar used throughout the exact layer.
pub type Rat = num_rational::BigRational;

/// Convenience constructor for small rationals.
pub fn rat(num: i64, den: i64) -> Rat {
    use num_bigint::BigInt;
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Shortest float representation that round-trips, padded to at least nine
/// significant digits. Used by every CSV writer.
pub fn fmt_float(v: f64) -> String {
    let s = format!("{v:e}");
    let digits = s
        .split('e')
        .next()
        .map(|m| m.chars().filter(|c| c.is_ascii_digit()).count())
        .unwrap_or(0);
    if digits >= 9 || !v.is_finite() {
        s
    } else {
        format!("{v:.8e}")
    }
}

/// Convert an exact rational to `f64` (used at the exact/numeric boundary).
pub fn rat_to_f64(r: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or_else(|| {
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}
