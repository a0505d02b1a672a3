//! Fixed inputs shared by the benchmarks.

use lefdist::curvature::{self, MetricGrid};
use lefdist::{IntMatrix, ToralAutomorphism};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const SEED: u64 = 0x1EF5_C4EC;

/// A random doubly periodic metric on an `n × n` grid, the same for every run.
pub fn random_metric(n: usize) -> MetricGrid {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    curvature::random_torus_metric(&mut rng, n).expect("grid is large enough")
}

/// Integer matrix with entries `(i + 2j) mod 7 - 3` plus `n` on the diagonal.
pub fn dense_int_matrix(n: usize) -> IntMatrix {
    let rows = (0..n)
        .map(|i| (0..n).map(|j| ((i + 2 * j) % 7) as i64 - 3 + if i == j { n as i64 } else { 0 }).map(Into::into).collect())
        .collect();
    IntMatrix::from_rows(rows).expect("square")
}

/// Automorphism of `T^3` given by the companion matrix of `x^3 - x - 1`.
pub fn toral_3d() -> ToralAutomorphism {
    let rows = vec![vec![0, 0, 1], vec![1, 0, 1], vec![0, 1, 0]];
    let rows = rows.into_iter().map(|r| r.into_iter().map(Into::into).collect()).collect();
    ToralAutomorphism::new(IntMatrix::from_rows(rows).expect("square")).expect("unimodular")
}
