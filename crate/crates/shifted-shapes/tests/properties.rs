//! Property tests for the structural invariants: profile geometry, the
//! moment/cumulant round trip, and prefix consistency of the insertion.

use num_traits::Signed;
use proptest::prelude::*;

use shifted_shapes::free_cumulants::{r_from_s, s_from_r, sigma_moments, MomentSequence};
use shifted_shapes::partition::StrictPartition;
use shifted_shapes::profile::ZigzagProfile;
use shifted_shapes::rat;
use shifted_shapes::rsk::{rsk, CircledLetter, CircledWord};

fn arb_strict_partition(max_part: u32, max_len: usize) -> impl Strategy<Value = StrictPartition> {
    proptest::collection::vec(1..=max_part, 0..=max_len).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        v.dedup();
        StrictPartition::new(v).unwrap()
    })
}

proptest! {
    #[test]
    fn profiles_are_lipschitz_with_the_right_area(
        xi in arb_strict_partition(9, 5),
        num in 1i64..6,
        den in 1i64..6,
    ) {
        let r = rat(num, den);
        let p = ZigzagProfile::of_shifted(&xi).dilate(&r).unwrap();
        // area identity: sigma mass is 2 r^2 |xi|
        prop_assert_eq!(
            p.sigma_power_integral(0),
            rat(2, 1) * &r * &r * rat(xi.size() as i64, 1)
        );
        // 1-Lipschitz across breakpoints
        let bps = p.breakpoints();
        for w in bps.windows(2) {
            let dz = (&w[1] - &w[0]).clone();
            let dv = (p.eval(&w[1]) - p.eval(&w[0])).abs();
            prop_assert!(dv <= dz, "not 1-Lipschitz");
        }
        // even extension
        prop_assert!(p.is_symmetric());
    }

    #[test]
    fn moment_cumulant_round_trip(
        nums in proptest::collection::vec(-40i64..40, 1..=10),
        dens in proptest::collection::vec(1i64..8, 1..=10),
    ) {
        let vals: Vec<_> = nums
            .iter()
            .zip(dens.iter().cycle())
            .map(|(&n, &d)| rat(n, d))
            .collect();
        let s = MomentSequence::from_vals(vals);
        prop_assert_eq!(s_from_r(&r_from_s(&s)), s);
    }

    #[test]
    fn double_identity_for_random_shapes(xi in arb_strict_partition(8, 4)) {
        use shifted_shapes::free_cumulants::translate_moments;
        let shifted = sigma_moments(&ZigzagProfile::of_shifted(&xi), 8);
        let doubled = sigma_moments(&ZigzagProfile::of_russian(&xi.double()), 8);
        prop_assert_eq!(doubled, translate_moments(&shifted, &rat(1, 2)));
    }

    #[test]
    fn insertion_prefixes_grow_one_box_at_a_time(
        letters in proptest::collection::vec((1u32..=3, any::<bool>()), 0..=12),
    ) {
        let word = CircledWord(
            letters.iter().map(|&(v, c)| CircledLetter { value: v, circled: c }).collect(),
        );
        let pair = rsk(&word, 3).unwrap();
        pair.p.validate().unwrap();
        pair.q.validate().unwrap();
        let q = pair.q.standard();
        let mut prev = StrictPartition::empty();
        for i in 0..=word.len() {
            let prefix = CircledWord(word.0[..i].to_vec());
            let shape = rsk(&prefix, 3).unwrap().shape();
            prop_assert_eq!(&shape, &q.level_set(i as u64).unwrap());
            if i > 0 {
                prop_assert!(prev.grow().contains(&shape), "not a saturated chain");
            }
            prev = shape;
        }
    }
}
