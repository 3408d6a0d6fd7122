#![allow(dead_code)]

use hypero::arrangement::CategoryODatum;
use hypero::fixtures::random_datum;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Validated random data with `n` in `1..=n_max`, driven by a proptest seed.
pub fn datum(n_max: usize) -> impl Strategy<Value = CategoryODatum> {
    any::<u64>().prop_map(move |seed| random_datum(&mut ChaCha8Rng::seed_from_u64(seed), 1, n_max))
}

pub fn small_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-6i64..=6, cols), rows)
}
