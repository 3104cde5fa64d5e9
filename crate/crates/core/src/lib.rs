//! Allee-effect synaptic plasticity: a two-variable neuron model with
//! fixed-point, stability and bifurcation analysis, plus an associative
//! memory harness comparing plasticity rules under noise.

pub mod assoc;
pub mod bifurcation;
pub mod cli;
pub mod dynamics;
pub mod equilibria;
pub mod error;
pub mod gain;
pub mod memory;
pub mod model;
pub mod seeding;
pub mod stability;

pub use dynamics::{integrate, jacobian_at, rhs, Trajectory};
pub use equilibria::{allee_stability_predicate, solve_fixed_points, Branch, FixedPointReport};
pub use error::{Error, Result};
pub use gain::GainSpec;
pub use model::{ModelParams, NeuronState, Regulator};
pub use stability::{classify_stability, Jacobian, Stability};
