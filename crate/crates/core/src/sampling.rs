//! Uniform sampling on the probability simplex.

use rand::Rng;

/// Draws a weight vector uniformly from the `(len - 1)`-simplex.
///
/// Standard exponential spacings: `len` independent `Exp(1)` draws,
/// normalized by their sum. `-ln(1 - u)` with `u` uniform in `[0, 1)` keeps
/// every draw finite and strictly positive.
pub fn simplex_weights<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Vec<f64> {
    assert!(len > 0, "cannot sample an empty weight vector");
    let mut weights: Vec<f64> = (0..len)
        .map(|_| -(1.0 - rng.random::<f64>()).ln())
        .collect();
    let total: f64 = weights.iter().sum();
    for w in &mut weights {
        *w /= total;
    }
    weights
}
