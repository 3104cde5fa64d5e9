use super::pattern::{NetworkShape, Pattern};
use super::rules::{delta_w, LearningRule};
use super::weights::WeightTensor;
use crate::error::{Error, Result};

/// Half-width of the uniform weight initialization.
pub const INIT_SCALE: f64 = 0.01;
/// Weights are clipped to `[-W_MAX, W_MAX]` after every update.
pub const W_MAX: f64 = 10.0;

/// Sequential pass over `patterns`, `epochs` times: `W += eta dW`, clipped.
pub fn train(
    shape: &NetworkShape,
    rule: &LearningRule,
    patterns: &[Pattern],
    seed: u64,
    epochs: usize,
) -> Result<WeightTensor> {
    shape.validate()?;
    rule.validate()?;
    if epochs == 0 {
        return Err(Error::InvalidParameter("epochs must be >= 1".into()));
    }
    for p in patterns {
        p.check_shape(shape)?;
    }
    let mut w = WeightTensor::random_uniform(*shape, INIT_SCALE, seed);
    for _ in 0..epochs {
        for p in patterns {
            let d = delta_w(rule, &w, p)?;
            for (wi, di) in w.as_mut_slice().iter_mut().zip(d.as_slice()) {
                *wi = (*wi + rule.eta * di).clamp(-W_MAX, W_MAX);
            }
        }
    }
    Ok(w)
}
