//! Fixtures shared by the benchmarks.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wreath_core::samples::{diagonal_state, random_state, SampleGroup, StateShape};
use wreath_core::verify::ElementSampler;
use wreath_core::{PsiState, WreathElement};

/// States of growing size: Thoma on the trivial group, then random S3 states.
pub fn states() -> Vec<(&'static str, PsiState)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let shape = |plus, minus, reg_dim| StateShape {
        group: SampleGroup::S3,
        plus,
        minus,
        reg_dim,
        trace: 0.7,
    };
    vec![
        ("thoma3", PsiState::new(diagonal_state(&[0.5, 0.25, -0.125])).unwrap()),
        ("s3_pm2_reg2", PsiState::new(random_state(&shape(1, 1, Some(2)), &mut rng)).unwrap()),
        ("s3_pm3_reg2", PsiState::new(random_state(&shape(2, 1, Some(2)), &mut rng)).unwrap()),
    ]
}

/// Seeded elements with permutation part on exactly `1..=support`.
pub fn elements(state: &PsiState, support: usize, n: usize) -> Vec<WreathElement> {
    let mut sampler = ElementSampler::new(state.group().clone(), support, 1);
    (0..n).map(|_| sampler.element_on(support)).collect()
}
