use super::weights::WeightTensor;
use crate::error::{Error, Result};

pub const DEFAULT_MAX_ITERS: usize = 50;

/// `+1` for strictly positive input, `-1` otherwise.
pub fn sign(x: f64) -> i8 {
    if x > 0.0 {
        1
    } else {
        -1
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RetrievalResult {
    pub retrieved_v: Vec<i8>,
    pub iterations: usize,
    pub converged: bool,
    pub accuracy: f64,
}

fn signs(xs: Vec<f64>) -> Vec<i8> {
    xs.into_iter().map(sign).collect()
}

/// Bidirectional recall: `v = sign(u W)`, then alternate `u = sign(W v)`,
/// `v = sign(u W)` until `v` repeats or `max_iters` back-projections ran.
pub fn retrieve(w: &WeightTensor, u_noisy: &[i8], v_original: &[i8], max_iters: usize) -> Result<RetrievalResult> {
    if u_noisy.len() != w.rows() {
        return Err(Error::ShapeMismatch { expected: w.rows(), found: u_noisy.len() });
    }
    if v_original.len() != w.cols() {
        return Err(Error::ShapeMismatch { expected: w.cols(), found: v_original.len() });
    }
    let mut v = signs(w.project_forward(u_noisy));
    let mut iterations = 0;
    let mut converged = false;
    while iterations < max_iters {
        iterations += 1;
        let u = signs(w.project_back(&v));
        let next = signs(w.project_forward(&u));
        if next == v {
            converged = true;
            break;
        }
        v = next;
    }
    let hits = v.iter().zip(v_original).filter(|(a, b)| a == b).count();
    let accuracy = hits as f64 / v.len() as f64;
    Ok(RetrievalResult { retrieved_v: v, iterations, converged, accuracy })
}
