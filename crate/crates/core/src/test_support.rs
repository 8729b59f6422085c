use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::alo_group::{AloGroup, GroupKind};
use crate::pc_matrix::PcMatrix;
use crate::random::random_matrix;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn example() -> PcMatrix {
    PcMatrix::build(
        GroupKind::Multiplicative,
        vec![
            vec![1.0, 5.0 / 2.0, 3.0, 5.0],
            vec![2.0 / 5.0, 1.0, 2.0, 4.0],
            vec![1.0 / 3.0, 1.0 / 2.0, 1.0, 3.0],
            vec![1.0 / 5.0, 1.0 / 4.0, 1.0 / 3.0, 1.0],
        ],
        None,
    )
    .unwrap()
}

/// Random reciprocal matrix with a random inconsistency level.
pub fn random_reciprocal<R: Rng>(g: GroupKind, n: usize, rng: &mut R) -> PcMatrix {
    let bound = g.from_additive(rng.random_range(0.0..2.0));
    random_matrix(g, n, 2.0, bound, rng).unwrap()
}
