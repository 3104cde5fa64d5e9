use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::pattern::NetworkShape;
use crate::error::{Error, Result};

/// Dense `(L N_u) x (L N_v)` matrix, row-major. Row `k N_u + i` is
/// pre-synaptic neuron `i` on layer `k`; column `l N_v + j` is
/// post-synaptic neuron `j` on layer `l`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightTensor {
    pub shape: NetworkShape,
    data: Vec<f64>,
}

impl WeightTensor {
    pub fn zeros(shape: NetworkShape) -> Self {
        WeightTensor { shape, data: vec![0.0; shape.total_pre() * shape.total_post()] }
    }

    pub fn from_vec(shape: NetworkShape, data: Vec<f64>) -> Result<Self> {
        let expected = shape.total_pre() * shape.total_post();
        if data.len() != expected {
            return Err(Error::ShapeMismatch { expected, found: data.len() });
        }
        if data.iter().any(|w| !w.is_finite()) {
            return Err(Error::InvalidParameter("weights must be finite".into()));
        }
        Ok(WeightTensor { shape, data })
    }

    /// Uniform entries in `[-scale, scale]`.
    pub fn random_uniform(shape: NetworkShape, scale: f64, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = shape.total_pre() * shape.total_post();
        let data = if scale > 0.0 { (0..n).map(|_| rng.random_range(-scale..=scale)).collect() } else { vec![0.0; n] };
        WeightTensor { shape, data }
    }

    pub fn rows(&self) -> usize {
        self.shape.total_pre()
    }

    pub fn cols(&self) -> usize {
        self.shape.total_post()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn at(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.cols() + col]
    }

    /// `W_ij^{kl}`.
    pub fn block_entry(&self, k: usize, i: usize, l: usize, j: usize) -> f64 {
        self.at(k * self.shape.n_u + i, l * self.shape.n_v + j)
    }

    /// `S_j = sum_i W_ij^2` for every post-synaptic column.
    pub fn column_sq_norms(&self) -> Vec<f64> {
        let cols = self.cols();
        let mut s = vec![0.0; cols];
        for row in self.data.chunks_exact(cols) {
            for (acc, w) in s.iter_mut().zip(row) {
                *acc += w * w;
            }
        }
        s
    }

    pub fn frobenius_sq(&self) -> f64 {
        self.data.iter().map(|w| w * w).sum()
    }

    /// `u^T W`, length `cols`.
    pub fn project_forward(&self, u: &[i8]) -> Vec<f64> {
        let cols = self.cols();
        let mut out = vec![0.0; cols];
        for (row, &ui) in self.data.chunks_exact(cols).zip(u) {
            let ui = ui as f64;
            for (o, w) in out.iter_mut().zip(row) {
                *o += ui * w;
            }
        }
        out
    }

    /// `W v`, length `rows`.
    pub fn project_back(&self, v: &[i8]) -> Vec<f64> {
        self.data.chunks_exact(self.cols()).map(|row| row.iter().zip(v).map(|(w, &vj)| w * vj as f64).sum()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_indexing() {
        let s = NetworkShape::new(2, 2, 3).unwrap();
        let data: Vec<f64> = (0..24).map(|i| i as f64).collect();
        let w = WeightTensor::from_vec(s, data).unwrap();
        // row 1*2+1 = 3, col 0*3+2 = 2
        assert_eq!(w.block_entry(1, 1, 0, 2), 3.0 * 6.0 + 2.0);
        assert!(WeightTensor::from_vec(s, vec![0.0; 5]).is_err());
    }

    #[test]
    fn projections_and_norms() {
        let s = NetworkShape::new(1, 2, 2).unwrap();
        let w = WeightTensor::from_vec(s, vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!(w.project_forward(&[1, -1]), vec![-2.0, -2.0]);
        assert_eq!(w.project_back(&[1, -1]), vec![-1.0, -1.0]);
        assert_eq!(w.column_sq_norms(), vec![10.0, 20.0]);
        assert_eq!(w.frobenius_sq(), 30.0);
    }

    #[test]
    fn random_init_within_scale() {
        let s = NetworkShape::new(3, 4, 5).unwrap();
        let w = WeightTensor::random_uniform(s, 0.01, 9);
        assert!(w.as_slice().iter().all(|x| x.abs() <= 0.01));
        assert_eq!(w, WeightTensor::random_uniform(s, 0.01, 9));
    }
}
