mod props;

use proptest::prelude::*;
use proptest::test_runner::RngSeed;

fn exercise(check: props::Check, seed: u64) -> Result<(), TestCaseError> {
    match check(seed) {
        Ok(true) => Ok(()),
        Ok(false) => Err(TestCaseError::reject("instance outside the window")),
        Err(e) => Err(TestCaseError::fail(e)),
    }
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 100,
        max_global_rejects: 4096,
        rng_seed: RngSeed::Fixed(0x5eed),
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn bullet_contains_both_sides(seed in any::<u64>()) { exercise(props::split_inclusion, seed)?; }

    #[test]
    fn bullet_of_layers_lies_in_summed_layer(seed in any::<u64>()) { exercise(props::sum_lemma, seed)?; }

    #[test]
    fn union_of_layers_lies_in_max_layer(seed in any::<u64>()) { exercise(props::max_lemma, seed)?; }

    #[test]
    fn resolution_places_module_in_third_layer(seed in any::<u64>()) { exercise(props::resolution_membership, seed)?; }

    #[test]
    fn syzygies_of_layer_members_stay_in_layer(seed in any::<u64>()) { exercise(props::syzygy_of_layer, seed)?; }

    #[test]
    fn bullet_of_witnessed_sets_lies_in_layer(seed in any::<u64>()) { exercise(props::bullet_inequality, seed)?; }

    #[test]
    fn layers_increase(seed in any::<u64>()) { exercise(props::layer_monotonicity, seed)?; }

    #[test]
    fn syzygy_categories_nest(seed in any::<u64>()) { exercise(props::syzygy_nesting, seed)?; }

    #[test]
    fn duality_maps_layers_to_layers(seed in any::<u64>()) { exercise(props::duality_layer_image, seed)?; }

    #[test]
    fn decomposition_recovers_scrambled_sums(seed in any::<u64>()) { exercise(props::krull_schmidt, seed)?; }

    #[test]
    fn ext_class_count_is_field_power(seed in any::<u64>()) { exercise(props::ext_cardinality, seed)?; }

    #[test]
    fn middle_terms_add_dimensions(seed in any::<u64>()) { exercise(props::middle_term_additivity, seed)?; }

    #[test]
    fn external_facts_only_tighten(seed in any::<u64>()) { exercise(props::engine_monotonicity, seed)?; }
}
