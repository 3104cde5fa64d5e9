//! Layered hetero-/auto-associative memory trained with Allee, Hebbian, Oja
//! and STDP rules, with noisy retrieval and accuracy sweeps.

mod pattern;
mod retrieve;
mod rules;
mod sweep;
mod train;
mod weights;

pub use pattern::{corrupt, generate_patterns, generate_patterns_with_mode, NetworkShape, Pattern, PatternMode};
pub use retrieve::{retrieve, sign, RetrievalResult, DEFAULT_MAX_ITERS};
pub use rules::{
    delta_w, delta_w_temporal, spike_offset, stdp_increment, LearningRule, RuleKind, StdpParams, TraceParams,
    NORM_FLOOR,
};
pub use sweep::{noise_sweep, run_cell, AccuracyTable, NoiseSweepSpec};
pub use train::{train, INIT_SCALE, W_MAX};
pub use weights::WeightTensor;
