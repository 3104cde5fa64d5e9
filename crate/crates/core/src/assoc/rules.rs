use std::fmt;
use std::str::FromStr;

use super::pattern::Pattern;
use super::weights::WeightTensor;
use crate::error::{Error, Result};
use crate::model::Regulator;

/// Floor on the column norm in the Allee divisor.
pub const NORM_FLOOR: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RuleKind {
    Hebbian,
    Oja,
    Allee,
    StdpPair,
    StdpWeight,
    StdpAddMul,
    StdpPower,
    StdpContinuous,
    AlleeTemporal,
}

impl RuleKind {
    pub const ALL: [RuleKind; 9] = [
        RuleKind::Hebbian,
        RuleKind::Oja,
        RuleKind::Allee,
        RuleKind::StdpPair,
        RuleKind::StdpWeight,
        RuleKind::StdpAddMul,
        RuleKind::StdpPower,
        RuleKind::StdpContinuous,
        RuleKind::AlleeTemporal,
    ];

    pub const STDP: [RuleKind; 5] =
        [RuleKind::StdpPair, RuleKind::StdpWeight, RuleKind::StdpAddMul, RuleKind::StdpPower, RuleKind::StdpContinuous];

    pub fn as_str(&self) -> &'static str {
        match self {
            RuleKind::Hebbian => "hebbian",
            RuleKind::Oja => "oja",
            RuleKind::Allee => "allee",
            RuleKind::StdpPair => "stdp_pair",
            RuleKind::StdpWeight => "stdp_weight",
            RuleKind::StdpAddMul => "stdp_addmul",
            RuleKind::StdpPower => "stdp_power",
            RuleKind::StdpContinuous => "stdp_continuous",
            RuleKind::AlleeTemporal => "allee_temporal",
        }
    }

    pub fn is_stdp(&self) -> bool {
        RuleKind::STDP.contains(self)
    }
}

impl fmt::Display for RuleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RuleKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        RuleKind::ALL.into_iter().find(|k| k.as_str() == s).ok_or_else(|| Error::Config(format!("unknown rule '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StdpParams {
    pub b_plus: f64,
    pub b_minus: f64,
    pub tau_plus: f64,
    pub tau_minus: f64,
    pub gamma: f64,
    /// Amplitude of the continuous-time kernel.
    pub b: f64,
}

impl Default for StdpParams {
    fn default() -> Self {
        StdpParams { b_plus: 0.01, b_minus: 0.012, tau_plus: 20.0, tau_minus: 20.0, gamma: 0.7, b: 0.01 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceParams {
    pub kappa: f64,
    pub lambda: f64,
    pub tau1: f64,
    pub tau2: f64,
}

impl Default for TraceParams {
    fn default() -> Self {
        TraceParams { kappa: 0.1, lambda: 0.05, tau1: 0.6, tau2: 0.6 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LearningRule {
    pub kind: RuleKind,
    pub a: f64,
    pub k: Regulator,
    pub eta: f64,
    pub stdp: StdpParams,
    /// Spike-time difference magnitude; `(dt)_ij = delta_t u_i v_j`.
    pub delta_t: f64,
    pub trace: TraceParams,
}

impl LearningRule {
    fn base(kind: RuleKind, a: f64, k: Regulator, eta: f64) -> Self {
        LearningRule { kind, a, k, eta, stdp: StdpParams::default(), delta_t: 0.1, trace: TraceParams::default() }
    }

    pub fn hebbian(eta: f64) -> Self {
        Self::base(RuleKind::Hebbian, 0.0, Regulator::Unbounded, eta)
    }

    pub fn oja(k: f64, eta: f64) -> Self {
        Self::base(RuleKind::Oja, 0.0, Regulator::Finite(k), eta)
    }

    pub fn allee(a: f64, k: f64, eta: f64) -> Self {
        Self::base(RuleKind::Allee, a, Regulator::Finite(k), eta)
    }

    pub fn stdp(kind: RuleKind, stdp: StdpParams, delta_t: f64, eta: f64) -> Self {
        LearningRule { stdp, delta_t, ..Self::base(kind, 0.0, Regulator::Unbounded, eta) }
    }

    pub fn allee_temporal(a: f64, k: f64, eta: f64, trace: TraceParams, delta_t: f64) -> Self {
        LearningRule { trace, delta_t, ..Self::base(RuleKind::AlleeTemporal, a, Regulator::Finite(k), eta) }
    }

    /// Parameter constraints of each rule family.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if !(self.eta >= 0.0 && self.eta.is_finite()) {
            return bad(format!("eta must be finite and >= 0, got {}", self.eta));
        }
        self.k.validate()?;
        match self.kind {
            RuleKind::Hebbian if self.a != 0.0 || self.k != Regulator::Unbounded => {
                return bad("hebbian rule needs A = 0 and K unbounded".into())
            }
            RuleKind::Oja if self.a != 0.0 || self.k.finite().is_none() => {
                return bad("oja rule needs A = 0 and finite K".into())
            }
            RuleKind::Allee | RuleKind::AlleeTemporal if !(self.a > 0.0) || self.k.finite().is_none() => {
                return bad(format!("{} rule needs A > 0 and finite K", self.kind))
            }
            _ => {}
        }
        if self.kind.is_stdp() {
            let s = &self.stdp;
            if !(s.tau_plus > 0.0 && s.tau_minus > 0.0) {
                return bad("STDP time constants must be > 0".into());
            }
            if !(s.b_plus >= 0.0 && s.b_minus >= 0.0 && s.b >= 0.0) {
                return bad("STDP amplitudes must be >= 0".into());
            }
            if !(s.gamma > 0.0 && s.gamma <= 1.0) {
                return bad(format!("gamma must lie in (0, 1], got {}", s.gamma));
            }
        }
        if self.kind == RuleKind::AlleeTemporal {
            let t = &self.trace;
            if !(t.tau1 > 0.0 && t.tau2 > 0.0) {
                return bad("trace time constants must be > 0".into());
            }
            if !(t.kappa >= 0.0 && t.lambda >= 0.0) {
                return bad("trace amplitudes must be >= 0".into());
            }
        }
        if !self.delta_t.is_finite() {
            return bad("delta_t must be finite".into());
        }
        Ok(())
    }
}

/// `(dt)_ij = delta_t u_i v_j`: correlated pairs fire post after pre.
pub fn spike_offset(delta_t: f64, ui: i8, vj: i8) -> f64 {
    delta_t * (ui as f64) * (vj as f64)
}

/// One entry of the STDP table. `w` is the current weight, clamped to
/// `[0, 1]` for the weight-dependent factors.
pub fn stdp_increment(kind: RuleKind, p: &StdpParams, dt: f64, w: f64) -> f64 {
    let w = w.clamp(0.0, 1.0);
    let potentiate = |scale: f64| p.b_plus * scale * (-dt / p.tau_plus).exp();
    let depress = |scale: f64| -p.b_minus * scale * (dt / p.tau_minus).exp();
    match kind {
        RuleKind::StdpContinuous => p.b * dt / (p.tau_plus * p.tau_plus) * (-dt.abs() / p.tau_plus).exp(),
        _ if dt == 0.0 => 0.0,
        RuleKind::StdpPair if dt > 0.0 => potentiate(1.0),
        RuleKind::StdpPair => depress(1.0),
        RuleKind::StdpWeight | RuleKind::StdpAddMul if dt > 0.0 => potentiate(1.0 - w),
        RuleKind::StdpWeight | RuleKind::StdpAddMul => depress(w),
        RuleKind::StdpPower if dt > 0.0 => potentiate((1.0 - w).powf(p.gamma)),
        RuleKind::StdpPower => depress(w.powf(p.gamma)),
        _ => 0.0,
    }
}

fn check(w: &WeightTensor, pattern: &Pattern) -> Result<()> {
    pattern.check_shape(&w.shape)
}

/// Increment for one pattern. Returns a tensor shaped like `w`.
///
/// The Allee family is `v_j (u_i - W_ij v_j / K)(1 - A / S_j)` with `S_j`
/// the squared norm of post-neuron `j`'s incoming weights; Hebbian and Oja
/// are its `A = 0` and `K = inf` limits.
pub fn delta_w(rule: &LearningRule, w: &WeightTensor, pattern: &Pattern) -> Result<WeightTensor> {
    check(w, pattern)?;
    if rule.kind == RuleKind::AlleeTemporal {
        return delta_w_temporal(rule, w, pattern);
    }
    let cols = w.cols();
    let mut out = WeightTensor::zeros(w.shape);
    let dst = out.as_mut_slice();
    match rule.kind {
        RuleKind::Hebbian => {
            for (i, &ui) in pattern.u.iter().enumerate() {
                for (j, &vj) in pattern.v.iter().enumerate() {
                    dst[i * cols + j] = vj as f64 * ui as f64;
                }
            }
        }
        RuleKind::Oja | RuleKind::Allee => allee_family(rule, w, pattern, dst),
        kind => {
            let src = w.as_slice();
            for (i, &ui) in pattern.u.iter().enumerate() {
                for (j, &vj) in pattern.v.iter().enumerate() {
                    let dt = spike_offset(rule.delta_t, ui, vj);
                    dst[i * cols + j] = stdp_increment(kind, &rule.stdp, dt, src[i * cols + j]);
                }
            }
        }
    }
    Ok(out)
}

fn allee_family(rule: &LearningRule, w: &WeightTensor, pattern: &Pattern, dst: &mut [f64]) {
    let cols = w.cols();
    let inv_k = rule.k.reciprocal();
    let factor: Vec<f64> = if rule.a == 0.0 {
        vec![1.0; cols]
    } else {
        w.column_sq_norms().into_iter().map(|s| 1.0 - rule.a / s.max(NORM_FLOOR)).collect()
    };
    let src = w.as_slice();
    for (i, &ui) in pattern.u.iter().enumerate() {
        for (j, &vj) in pattern.v.iter().enumerate() {
            let vj = vj as f64;
            let idx = i * cols + j;
            dst[idx] = vj * (ui as f64 - inv_k * src[idx] * vj) * factor[j];
        }
    }
}

/// Allee increment plus eligibility-trace terms: `kappa e^{-dt/tau1}` where
/// `dt > 0` and `lambda e^{-dt/tau2}` where `dt < 0`.
pub fn delta_w_temporal(rule: &LearningRule, w: &WeightTensor, pattern: &Pattern) -> Result<WeightTensor> {
    if rule.kind != RuleKind::AlleeTemporal {
        return Err(Error::WrongRuleKind(rule.kind.as_str()));
    }
    check(w, pattern)?;
    let cols = w.cols();
    let mut out = WeightTensor::zeros(w.shape);
    let dst = out.as_mut_slice();
    allee_family(rule, w, pattern, dst);
    let t = &rule.trace;
    if t.kappa == 0.0 && t.lambda == 0.0 {
        return Ok(out);
    }
    for (i, &ui) in pattern.u.iter().enumerate() {
        for (j, &vj) in pattern.v.iter().enumerate() {
            let dt = spike_offset(rule.delta_t, ui, vj);
            if dt > 0.0 {
                dst[i * cols + j] += t.kappa * (-dt / t.tau1).exp();
            } else if dt < 0.0 {
                dst[i * cols + j] += t.lambda * (-dt / t.tau2).exp();
            }
        }
    }
    Ok(out)
}
