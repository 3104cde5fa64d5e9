//! Pattern overlap, overlap experiments and one-parameter sensitivity sweeps.

use rayon::prelude::*;

use crate::bifurcation::SweepParameter;
use crate::dynamics::{integrate, Trajectory};
use crate::equilibria::{solve_fixed_points, Branch, FixedPointReport};
use crate::error::{Error, Result};
use crate::gain::GainSpec;
use crate::model::{ModelParams, NeuronState};

/// `clamp(1 - |s - target| / |target|, 0, 1)`.
pub fn overlap(state: &NeuronState, target: &NeuronState) -> Result<f64> {
    let norm = target.norm();
    if norm == 0.0 {
        return Err(Error::InvalidParameter("overlap target is the origin".into()));
    }
    Ok((1.0 - state.distance(target) / norm).clamp(0.0, 1.0))
}

#[derive(Debug, Clone, PartialEq)]
pub struct OverlapSeries {
    pub initial: NeuronState,
    pub target: FixedPointReport,
    pub times: Vec<f64>,
    pub overlap: Vec<f64>,
    pub extinct_at: Option<f64>,
}

impl OverlapSeries {
    pub fn final_overlap(&self) -> f64 {
        *self.overlap.last().expect("series holds the initial state")
    }
}

/// The stable interaction point if there is one, else the stable threshold
/// point.
pub fn overlap_target(params: &ModelParams, gain: &GainSpec) -> Result<FixedPointReport> {
    let points = solve_fixed_points(params, gain)?;
    let stable = |b: Branch| points.iter().find(|r| r.branch == b && r.stability.is_stable()).cloned();
    stable(Branch::Interaction).or_else(|| stable(Branch::Allee)).ok_or(Error::NoStableTarget)
}

/// Integrate every initial state and score it against the stable target.
/// Once `y` reaches the extinction floor the stored weight is gone and the
/// overlap is 0 from then on.
pub fn overlap_experiment(
    params: &ModelParams,
    gain: &GainSpec,
    initials: &[NeuronState],
    t_end: f64,
    dt: f64,
) -> Result<Vec<OverlapSeries>> {
    let target = overlap_target(params, gain)?;
    initials
        .par_iter()
        .map(|s0| {
            let traj = integrate(params, gain, *s0, t_end, dt)?;
            let overlap = traj
                .times
                .iter()
                .zip(&traj.states)
                .map(|(&t, s)| if traj.is_extinct_at(t) { Ok(0.0) } else { overlap(s, &target.point) })
                .collect::<Result<Vec<_>>>()?;
            Ok(OverlapSeries {
                initial: *s0,
                target: target.clone(),
                times: traj.times,
                overlap,
                extinct_at: traj.extinct_at,
            })
        })
        .collect()
}

pub const SENSITIVITY_LO: f64 = 0.1;
pub const SENSITIVITY_HI: f64 = 4.6;
pub const SENSITIVITY_N: usize = 10;
pub const SENSITIVITY_S0: NeuronState = NeuronState { x: 0.5, y: 0.5 };

/// Companion values held fixed while one parameter varies.
pub fn sensitivity_companions(vary: SweepParameter) -> ModelParams {
    let (a, k, u, m) = match vary {
        SweepParameter::A => (0.0, 1.0, 0.5, 1.0),
        SweepParameter::K => (0.4, 0.0, 0.5, 1.0),
        SweepParameter::M => (0.4, 1.0, 0.5, 0.0),
        SweepParameter::U => (0.4, 1.0, 0.0, 1.0),
    };
    ModelParams::new(a, k, u, m)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SensitivityResult {
    pub vary: SweepParameter,
    pub values: Vec<f64>,
    /// Parameters at each value, companions included.
    pub params: Vec<ModelParams>,
    pub trajectories: Vec<Trajectory>,
}

impl SensitivityResult {
    pub fn extinct_count(&self) -> usize {
        self.trajectories.iter().filter(|t| t.extinct_at.is_some()).count()
    }
}

/// `n` equidistant values on `[lo, hi]`; a single value when `n == 1`.
pub fn equidistant(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SensitivitySpec {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
    pub s0: NeuronState,
    pub t_end: f64,
    pub dt: f64,
}

impl Default for SensitivitySpec {
    fn default() -> Self {
        SensitivitySpec {
            lo: SENSITIVITY_LO,
            hi: SENSITIVITY_HI,
            n: SENSITIVITY_N,
            s0: SENSITIVITY_S0,
            t_end: 20.0,
            dt: crate::dynamics::DEFAULT_DT,
        }
    }
}

/// Vary one parameter over equidistant values with the others at their
/// companion values. `base` supplies the gain time scales only.
pub fn sensitivity_sweep(
    base: &ModelParams,
    gain: &GainSpec,
    vary: SweepParameter,
    spec: &SensitivitySpec,
) -> Result<SensitivityResult> {
    if spec.n == 0 {
        return Err(Error::InvalidParameter("sensitivity sweep needs n >= 1".into()));
    }
    if spec.n > 1 && !(spec.hi > spec.lo) {
        return Err(Error::InvalidParameter(format!("need lo < hi, got [{}, {}]", spec.lo, spec.hi)));
    }
    let companions = sensitivity_companions(vary).with_time_scales(base.tau_v, base.tau_w);
    let values = equidistant(spec.lo, spec.hi, spec.n);
    let params: Vec<ModelParams> = values.iter().map(|&v| vary.apply(&companions, v)).collect();
    for p in &params {
        p.validate()?;
    }
    let trajectories =
        params.par_iter().map(|p| integrate(p, gain, spec.s0, spec.t_end, spec.dt)).collect::<Result<Vec<_>>>()?;
    Ok(SensitivityResult { vary, values, params, trajectories })
}

/// Single-parameter variant kept for callers that name the parameter.
pub fn sensitivity_sweep_named(
    base: &ModelParams,
    gain: &GainSpec,
    vary: &str,
    spec: &SensitivitySpec,
) -> Result<SensitivityResult> {
    sensitivity_sweep(base, gain, vary.parse()?, spec)
}
