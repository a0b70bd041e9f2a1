use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::alphabet::{Alphabet, EncodedSequence, SymbolId};
use crate::error::{Error, Result};

/// Generates a uniform random sequence and a substitution-only mutant of it.
///
/// Each position is substituted independently with probability
/// `substitution_rate`, always to a different symbol chosen uniformly. The
/// pair is a pure function of the arguments.
///
/// # Panics
///
/// If `substitution_rate` is not within `[0, 1]`.
pub fn generate_mutated(
    seed: u64,
    alphabet: &Arc<Alphabet>,
    length: usize,
    substitution_rate: f64,
) -> Result<(EncodedSequence, EncodedSequence)> {
    assert!(
        (0.0..=1.0).contains(&substitution_rate),
        "substitution rate {substitution_rate} outside [0, 1]"
    );
    if length == 0 {
        return Err(Error::EmptySequence);
    }
    let k = alphabet.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let original: Vec<SymbolId> = (0..length)
        .map(|_| rng.random_range(0..k) as SymbolId)
        .collect();
    let mutant = original
        .iter()
        .map(|&id| {
            if rng.random_bool(substitution_rate) {
                let shift = rng.random_range(1..k);
                ((id as usize + shift) % k) as SymbolId
            } else {
                id
            }
        })
        .collect();
    Ok((
        EncodedSequence::from_ids(Arc::clone(alphabet), original)?,
        EncodedSequence::from_ids(Arc::clone(alphabet), mutant)?,
    ))
}
