use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wreath_core::oracle::{oracle_eval, oracle_eval_dense, OracleConfig};
use wreath_core::samples::{random_character, random_state, SampleGroup, StateShape};
use wreath_core::verify::{self, ElementSampler};
use wreath_core::{Character, Params, PsiState, WreathElement};

fn group_strategy() -> impl Strategy<Value = SampleGroup> {
    prop_oneof![
        Just(SampleGroup::Trivial),
        Just(SampleGroup::Cyclic(2)),
        Just(SampleGroup::Cyclic(3)),
        Just(SampleGroup::S3),
    ]
}

fn shape_strategy() -> impl Strategy<Value = StateShape> {
    (group_strategy(), 0usize..=2, 0usize..=2, prop::option::of(1usize..=2), 0.2f64..0.95).prop_map(
        |(group, plus, minus, reg_dim, trace)| StateShape {
            group,
            plus: if plus + minus == 0 { 1 } else { plus },
            minus,
            reg_dim,
            trace,
        },
    )
}

fn state_from(shape: &StateShape, seed: u64) -> PsiState {
    PsiState::new(random_state(shape, &mut ChaCha8Rng::seed_from_u64(seed))).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn closed_form_matches_oracle(shape in shape_strategy(), seed in any::<u64>()) {
        let state = state_from(&shape, seed);
        let mut sampler = ElementSampler::new(state.group().clone(), 4, seed);
        for _ in 0..6 {
            let g = sampler.element();
            let oracle = oracle_eval(&state, &g, g.max_point().max(1)).unwrap();
            prop_assert!((state.eval(&g) - oracle).norm() <= 1e-9, "{}", g.format(state.group()));
        }
    }

    #[test]
    fn sparse_oracle_matches_dense(shape in shape_strategy(), seed in any::<u64>()) {
        let state = state_from(&shape, seed);
        let mut sampler = ElementSampler::new(state.group().clone(), 3, seed);
        let g = sampler.element();
        let n = g.max_point().max(1);
        let sparse = oracle_eval(&state, &g, n).unwrap();
        let dense = oracle_eval_dense(&state, &g, n, &OracleConfig::default()).unwrap();
        prop_assert!((sparse - dense).norm() <= 1e-12);
    }

    #[test]
    fn states_are_central_multiplicative_and_positive(shape in shape_strategy(), seed in any::<u64>()) {
        let params = Params::State(state_from(&shape, seed));
        let mut sampler = ElementSampler::new(params.group().clone(), 4, seed);
        let mut elements = vec![WreathElement::identity()];
        elements.extend(sampler.elements(7));
        for r in [
            verify::centrality_check(&params, 20, seed, 5),
            verify::multiplicativity_check(&params, 20, seed, 5),
            verify::gram_check(&params, &elements, verify::PSD_TOL, seed),
        ] {
            prop_assert!(r.passed, "{}: {:?}", r.summary(), r.details);
        }
    }

    #[test]
    fn block_unitaries_do_not_change_states(shape in shape_strategy(), seed in any::<u64>()) {
        let state = state_from(&shape, seed);
        let r = verify::uniqueness_check(&state, 20, seed, 5);
        prop_assert!(r.passed, "{:?}", r.details);
    }

    #[test]
    fn characters_are_central_multiplicative_and_positive(
        group in group_strategy(),
        alphas in 0usize..=3,
        betas in 0usize..=2,
        seed in any::<u64>(),
    ) {
        let ch = Character::new(random_character(group, alphas, betas, false, &mut ChaCha8Rng::seed_from_u64(seed))).unwrap();
        let params = Params::Character(ch);
        let mut sampler = ElementSampler::new(params.group().clone(), 4, seed);
        let elements = sampler.elements(8);
        for r in [
            verify::centrality_check(&params, 20, seed, 5),
            verify::multiplicativity_check(&params, 20, seed, 5),
            verify::gram_check(&params, &elements, verify::PSD_TOL, seed),
        ] {
            prop_assert!(r.passed, "{}: {:?}", r.summary(), r.details);
        }
    }

    #[test]
    fn one_dimensional_characters_are_realized_by_states(
        group in group_strategy(),
        alphas in 0usize..=3,
        betas in 0usize..=2,
        seed in any::<u64>(),
    ) {
        let ch = Character::new(random_character(group, alphas, betas, true, &mut ChaCha8Rng::seed_from_u64(seed))).unwrap();
        let r = verify::realization_check(&ch, 30, seed, 5).unwrap();
        prop_assert!(r.passed, "{:?}", r.details);
    }
}
