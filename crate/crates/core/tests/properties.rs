use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use quasimix::group::{enumerate_group, parse_group_spec, GroupSpec, GroupTable};
use quasimix::harmonic::DensityFunction;
use quasimix::mixing::{count_progressions, count_progressions_substituted, ElementSet};
use quasimix::sampling::bernoulli_subset;

fn group(spec: &str) -> GroupTable {
    enumerate_group(&parse_group_spec(spec).unwrap()).unwrap()
}

fn spec_strategy() -> impl Strategy<Value = GroupSpec> {
    prop_oneof![
        (1u32..=10).prop_map(GroupSpec::Alternating),
        (1u32..=10).prop_map(GroupSpec::Symmetric),
        (1u32..=10).prop_map(GroupSpec::Cyclic),
        (2u32..=4, prop::sample::select(vec![2u32, 3, 4, 5, 7, 8, 9, 11, 13, 16]))
            .prop_map(|(d, q)| GroupSpec::SL { d, q }),
        (2u32..=4, prop::sample::select(vec![2u32, 3, 4, 5, 7, 8, 9, 11, 13, 16]))
            .prop_map(|(d, q)| GroupSpec::PSL { d, q }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn spec_display_round_trips(spec in spec_strategy()) {
        let text = spec.to_string();
        prop_assert_eq!(parse_group_spec(&text).unwrap(), spec);
    }

    #[test]
    fn products_associate_and_invert(
        name in prop::sample::select(vec!["A5", "S4", "SL(2,3)", "PSL(2,7)", "SL(2,4)"]),
        x in any::<u32>(), y in any::<u32>(), z in any::<u32>(),
    ) {
        let g = group(name);
        let n = g.order() as u32;
        let (x, y, z) = (x % n, y % n, z % n);
        prop_assert_eq!(g.multiply(g.multiply(x, y), z), g.multiply(x, g.multiply(y, z)));
        prop_assert_eq!(g.multiply(x, g.inv(x)), g.identity());
        prop_assert_eq!(g.multiply(g.identity(), y), y);
    }

    #[test]
    fn projective_elements_are_canonical(x in any::<u32>(), y in any::<u32>()) {
        let g = group("PSL(2,9)");
        let n = g.order() as u32;
        let p = g.multiply(x % n, y % n);
        let mut enc = g.encoding(p).to_vec();
        g.repr().canonicalize(&mut enc);
        prop_assert_eq!(enc.as_slice(), g.encoding(p));
    }

    #[test]
    fn mean_zero_part_has_zero_mean(values in prop::collection::vec(-1.0f64..1.0, 1..200)) {
        let f = DensityFunction::new(values).mean_zero_part();
        prop_assert!(f.mean().abs() < 1e-14);
    }

    #[test]
    fn progression_counts_agree(seed in any::<u64>(), density in 0.0f64..=1.0) {
        let g = group("SL(2,3)");
        let n = g.order();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut set = || ElementSet::new(n, bernoulli_subset(n, density, &mut rng));
        let (a, b, c) = (set(), set(), set());
        let direct = count_progressions(&g, &a, &b, &c);
        let other = count_progressions_substituted(&g, &a, &b, &c);
        prop_assert_eq!(direct.count, other.count);
        prop_assert!(direct.count <= (a.len() * n) as u64);
    }
}
