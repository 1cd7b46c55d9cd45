//! Inputs shared by the benchmarks.

use trackhom::zmod::IntMatrix;

/// A dense `rows x cols` integer matrix with small entries from a fixed
/// linear congruential sequence, so every run factors the same matrix.
pub fn sample_matrix(rows: usize, cols: usize, seed: u64) -> IntMatrix {
    let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    let data: Vec<Vec<i64>> = (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| {
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    ((state >> 33) % 9) as i64 - 4
                })
                .collect()
        })
        .collect();
    IntMatrix::from_rows(&data)
}
