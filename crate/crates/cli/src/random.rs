//! Seeded generator for sparse test functions. Same seed, same function,
//! on every platform: the stream cipher RNG has no float or OS dependence.

use std::sync::Arc;

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use lfbesov::field::FieldParams;
use lfbesov::step::{Side, StepFunction};

use crate::error::CliResult;

/// Draws `num_terms` cells at levels in [-max_level, max_level] with
/// coefficient magnitudes in [1/2, 2] and uniform phase. Colliding cells
/// merge by addition, so the term count is an upper bound.
pub fn random_test_function(
    params: &Arc<FieldParams>,
    seed: u64,
    num_terms: usize,
    max_level: i32,
) -> CliResult<StepFunction> {
    let max_level = max_level.max(0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut terms = Vec::with_capacity(num_terms);
    for _ in 0..num_terms {
        let level = rng.random_range(-max_level..=max_level);
        let grid = params.grid_size(level, max_level)?;
        let index = rng.random_range(0..grid);
        let rep = params.rep_from_index(level, max_level, index)?;
        let magnitude = rng.random_range(0.5..=2.0);
        let phase = rng.random_range(0.0..std::f64::consts::TAU);
        let coef = Complex64::from_polar(magnitude, phase);
        terms.push((rep, level, coef));
    }
    Ok(StepFunction::from_terms(
        params.clone(),
        Side::Spatial,
        max_level,
        max_level,
        &terms,
    )?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_function() {
        let params = FieldParams::new_shared(3, 1).unwrap();
        let a = random_test_function(&params, 42, 6, 2).unwrap();
        let b = random_test_function(&params, 42, 6, 2).unwrap();
        assert_eq!(a.max_abs_diff(&b).unwrap(), 0.0);
        let c = random_test_function(&params, 43, 6, 2).unwrap();
        assert!(a.max_abs_diff(&c).unwrap() > 0.0);
    }

    #[test]
    fn coefficients_stay_in_band() {
        let params = FieldParams::new_shared(2, 1).unwrap();
        let f = random_test_function(&params, 7, 3, 1).unwrap();
        assert!(!f.is_zero());
        // from_terms splits a level -1 cell into q unit cells with the same
        // coefficient, so each stored value is a sum of at most num_terms
        // draws of magnitude <= 2.
        for v in f.values().values() {
            assert!(v.norm() <= 6.0 + 1e-12);
        }
    }
}
