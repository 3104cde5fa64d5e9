use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Growth regulator `K`. `Unbounded` is the Hebbian limit `K = inf`, where
/// the `x*y/K` decay term vanishes exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Regulator {
    Finite(f64),
    Unbounded,
}

impl Regulator {
    /// `1/K`, exactly zero when unbounded.
    pub fn reciprocal(self) -> f64 {
        match self {
            Regulator::Finite(k) => 1.0 / k,
            Regulator::Unbounded => 0.0,
        }
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            Regulator::Finite(k) => Some(k),
            Regulator::Unbounded => None,
        }
    }

    pub fn validate(self) -> Result<()> {
        match self {
            Regulator::Finite(k) if !(k.is_finite() && k > 0.0) => {
                Err(Error::InvalidParameter(format!("K must be positive and finite (or inf), got {k}")))
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Regulator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Regulator::Finite(k) => write!(f, "{k}"),
            Regulator::Unbounded => f.write_str("inf"),
        }
    }
}

impl FromStr for Regulator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "unbounded" => Ok(Regulator::Unbounded),
            other => other
                .parse::<f64>()
                .map(Regulator::Finite)
                .map_err(|_| Error::InvalidParameter(format!("cannot parse K from {other:?}"))),
        }
    }
}

/// Scalar parameters of the reduced single-neuron model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    /// Allee threshold on the squared weight norm.
    pub a: f64,
    pub k: Regulator,
    /// Effective pre-synaptic drive.
    pub u: f64,
    /// Recurrent post-synaptic weight.
    pub m: f64,
    pub tau_v: f64,
    pub tau_w: f64,
}

impl ModelParams {
    pub fn new(a: f64, k: f64, u: f64, m: f64) -> Self {
        ModelParams { a, k: Regulator::Finite(k), u, m, tau_v: 1.0, tau_w: 1.0 }
    }

    pub fn with_regulator(mut self, k: Regulator) -> Self {
        self.k = k;
        self
    }

    pub fn with_time_scales(mut self, tau_v: f64, tau_w: f64) -> Self {
        self.tau_v = tau_v;
        self.tau_w = tau_w;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if !(self.a.is_finite() && self.a >= 0.0) {
            return bad(format!("A must be finite and >= 0, got {}", self.a));
        }
        self.k.validate()?;
        if !(self.u.is_finite() && self.u >= 0.0) {
            return bad(format!("u must be finite and >= 0, got {}", self.u));
        }
        if !self.m.is_finite() {
            return bad(format!("m must be finite, got {}", self.m));
        }
        if !(self.tau_v.is_finite() && self.tau_v > 0.0) {
            return bad(format!("tau_v must be positive, got {}", self.tau_v));
        }
        if !(self.tau_w.is_finite() && self.tau_w > 0.0) {
            return bad(format!("tau_w must be positive, got {}", self.tau_w));
        }
        Ok(())
    }

    /// The Allee factor `1 - A/y`, exactly 1 when `A = 0`.
    #[inline]
    pub(crate) fn allee_factor(&self, y: f64) -> f64 {
        if self.a == 0.0 {
            1.0
        } else {
            1.0 - self.a / y
        }
    }
}

/// Post-synaptic rate `x` and squared weight norm `y`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct NeuronState {
    pub x: f64,
    pub y: f64,
}

impl NeuronState {
    pub fn new(x: f64, y: f64) -> Self {
        NeuronState { x, y }
    }

    pub fn distance(&self, other: &NeuronState) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub fn norm(&self) -> f64 {
        self.x.hypot(self.y)
    }
}
