use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NetworkShape {
    pub layers: usize,
    pub n_u: usize,
    pub n_v: usize,
}

impl NetworkShape {
    pub fn new(layers: usize, n_u: usize, n_v: usize) -> Result<Self> {
        let s = NetworkShape { layers, n_u, n_v };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if self.layers == 0 || self.n_u == 0 || self.n_v == 0 {
            return Err(Error::InvalidParameter(format!(
                "network shape needs L, N_u, N_v >= 1, got {}x{}x{}",
                self.layers, self.n_u, self.n_v
            )));
        }
        Ok(())
    }

    pub fn total_pre(&self) -> usize {
        self.layers * self.n_u
    }

    pub fn total_post(&self) -> usize {
        self.layers * self.n_v
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum PatternMode {
    /// Independent input and output patterns.
    #[default]
    Hetero,
    /// Output equals input; needs `N_u == N_v`.
    Auto,
}

impl PatternMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            PatternMode::Hetero => "hetero",
            PatternMode::Auto => "auto",
        }
    }
}

impl fmt::Display for PatternMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PatternMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "hetero" => Ok(PatternMode::Hetero),
            "auto" => Ok(PatternMode::Auto),
            other => Err(Error::Config(format!("unknown pattern mode '{other}'"))),
        }
    }
}

/// A stored pair of +/-1 vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pattern {
    pub u: Vec<i8>,
    pub v: Vec<i8>,
}

impl Pattern {
    pub fn new(u: Vec<i8>, v: Vec<i8>) -> Result<Self> {
        if u.iter().chain(&v).any(|&c| c != 1 && c != -1) {
            return Err(Error::InvalidParameter("pattern components must be +1 or -1".into()));
        }
        Ok(Pattern { u, v })
    }

    pub fn check_shape(&self, shape: &NetworkShape) -> Result<()> {
        if self.u.len() != shape.total_pre() {
            return Err(Error::ShapeMismatch { expected: shape.total_pre(), found: self.u.len() });
        }
        if self.v.len() != shape.total_post() {
            return Err(Error::ShapeMismatch { expected: shape.total_post(), found: self.v.len() });
        }
        Ok(())
    }
}

fn random_signs(rng: &mut ChaCha8Rng, n: usize) -> Vec<i8> {
    (0..n).map(|_| if rng.random_bool(0.5) { 1 } else { -1 }).collect()
}

pub fn generate_patterns(shape: &NetworkShape, count: usize, seed: u64) -> Result<Vec<Pattern>> {
    generate_patterns_with_mode(shape, count, seed, PatternMode::Hetero)
}

/// `count` uniform +/-1 patterns from a seeded ChaCha8 stream.
pub fn generate_patterns_with_mode(
    shape: &NetworkShape,
    count: usize,
    seed: u64,
    mode: PatternMode,
) -> Result<Vec<Pattern>> {
    shape.validate()?;
    if count == 0 {
        return Err(Error::InvalidParameter("need at least one pattern".into()));
    }
    if mode == PatternMode::Auto && shape.n_u != shape.n_v {
        return Err(Error::InvalidParameter(format!(
            "auto-associative mode needs N_u == N_v, got {} and {}",
            shape.n_u, shape.n_v
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..count)
        .map(|_| {
            let u = random_signs(&mut rng, shape.total_pre());
            let v = match mode {
                PatternMode::Hetero => random_signs(&mut rng, shape.total_post()),
                PatternMode::Auto => u.clone(),
            };
            Pattern { u, v }
        })
        .collect())
}

/// Flip exactly `round(sigma * len)` components, chosen without replacement.
pub fn corrupt(u: &[i8], sigma: f64, seed: u64) -> Result<Vec<i8>> {
    if !(0.0..=1.0).contains(&sigma) {
        return Err(Error::InvalidParameter(format!("noise level must lie in [0, 1], got {sigma}")));
    }
    let flips = (sigma * u.len() as f64).round() as usize;
    let mut out = u.to_vec();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in sample(&mut rng, u.len(), flips) {
        out[i] = -out[i];
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_patterns() {
        let s = NetworkShape::new(1, 8, 6).unwrap();
        assert_eq!(generate_patterns(&s, 1, 7).unwrap(), generate_patterns(&s, 1, 7).unwrap());
        assert_ne!(generate_patterns(&s, 1, 7).unwrap(), generate_patterns(&s, 1, 8).unwrap());
    }

    #[test]
    fn comparison_shape_lengths() {
        let s = NetworkShape::new(5, 25, 25).unwrap();
        let p = generate_patterns(&s, 10, 0).unwrap();
        assert_eq!(p.len(), 10);
        assert!(p.iter().all(|p| p.u.len() == 125 && p.v.len() == 125));
    }

    #[test]
    fn components_are_balanced() {
        let s = NetworkShape::new(1, 10, 10).unwrap();
        let p = generate_patterns(&s, 10_000, 3).unwrap();
        let n = (p.len() * 20) as f64;
        let sum: i64 = p.iter().flat_map(|p| p.u.iter().chain(&p.v)).map(|&c| c as i64).sum();
        assert!((sum as f64 / n).abs() < 0.05);
    }

    #[test]
    fn auto_mode_copies_input() {
        let s = NetworkShape::new(2, 5, 5).unwrap();
        for p in generate_patterns_with_mode(&s, 4, 1, PatternMode::Auto).unwrap() {
            assert_eq!(p.u, p.v);
        }
        let bad = NetworkShape::new(2, 5, 4).unwrap();
        assert!(generate_patterns_with_mode(&bad, 4, 1, PatternMode::Auto).is_err());
    }

    #[test]
    fn degenerate_requests() {
        assert!(NetworkShape::new(0, 5, 5).is_err());
        let s = NetworkShape::new(1, 5, 5).unwrap();
        assert!(generate_patterns(&s, 0, 1).is_err());
        assert!(Pattern::new(vec![1, 0], vec![1]).is_err());
    }

    #[test]
    fn corruption_flip_counts() {
        let u: Vec<i8> = (0..250).map(|i| if i % 3 == 0 { 1 } else { -1 }).collect();
        assert_eq!(corrupt(&u, 0.0, 4).unwrap(), u);
        let neg: Vec<i8> = u.iter().map(|c| -c).collect();
        assert_eq!(corrupt(&u, 1.0, 4).unwrap(), neg);
        let c = corrupt(&u, 0.3, 4).unwrap();
        assert_eq!(c.iter().zip(&u).filter(|(a, b)| a != b).count(), 75);
        // same flip set twice restores the input
        assert_eq!(corrupt(&c, 0.3, 4).unwrap(), u);
        assert!(corrupt(&u, 1.5, 4).is_err());
        assert!(corrupt(&u, -0.1, 4).is_err());
    }
}
