//! Hopf verdicts, trace/determinant region scans and parameter sweeps.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::dynamics::jacobian_at;
use crate::equilibria::{
    allee_branch_roots, interaction_branch_roots, interaction_level, solve_fixed_points, Branch, FixedPointReport,
};
use crate::error::{Error, Result};
use crate::gain::GainSpec;
use crate::model::{ModelParams, NeuronState, Regulator};

/// `|tr|` below this at a fixed point with `det > 0` counts as a purely
/// imaginary eigenvalue pair.
pub const HOPF_TRACE_TOL: f64 = 1e-6;
/// Perturbation of `m` used by the trace crossing check.
pub const CROSSING_DELTA: f64 = 1e-3;
/// Width at which sweep event bisection stops.
pub const SWEEP_TOL: f64 = 1e-6;

pub fn trace_at(params: &ModelParams, gain: &GainSpec, s: &NeuronState) -> Result<f64> {
    Ok(jacobian_at(params, gain, s)?.trace())
}

pub fn det_at(params: &ModelParams, gain: &GainSpec, s: &NeuronState) -> Result<f64> {
    Ok(jacobian_at(params, gain, s)?.det())
}

/// `-lambda p^2 + beta lambda p + 2 beta`, whose sign decides `det` on the
/// interaction curve once `tr = 0` is imposed.
pub fn hopf_quadratic(lambda: f64, beta: f64, p: f64) -> f64 {
    -lambda * p * p + beta * lambda * p + 2.0 * beta
}

fn discriminant(lambda: f64, beta: f64) -> f64 {
    beta * beta / 4.0 + 2.0 * beta / lambda
}

/// Larger root `beta/2 + sqrt(beta^2/4 + 2 beta/lambda)`, if real.
pub fn hopf_p2(lambda: f64, beta: f64) -> Option<f64> {
    let d = discriminant(lambda, beta);
    (d.is_finite() && d >= 0.0).then(|| beta / 2.0 + d.sqrt())
}

/// Smaller root `beta/2 - sqrt(beta^2/4 + 2 beta/lambda)`, if real.
pub fn hopf_p1(lambda: f64, beta: f64) -> Option<f64> {
    let d = discriminant(lambda, beta);
    (d.is_finite() && d >= 0.0).then(|| beta / 2.0 - d.sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HopfCase {
    /// `y* = A`: `det = -(df/dx)^2 < 0` whenever `tr = 0`.
    ThresholdLevel,
    /// `y* < A`, window `tau_A < x* < sqrt(p2)`.
    BelowThreshold {
        window_empty: bool,
    },
    /// `y* > A`, tail `x* > sqrt(p2)`.
    AboveThreshold,
    DiscriminantNegative,
    /// `A = 0`: no Allee factor, no Hopf bifurcation.
    NoThreshold,
}

impl HopfCase {
    pub fn label(&self) -> &'static str {
        match self {
            HopfCase::ThresholdLevel => "threshold_level",
            HopfCase::BelowThreshold { .. } => "below_threshold_window",
            HopfCase::AboveThreshold => "above_threshold_tail",
            HopfCase::DiscriminantNegative => "discriminant_negative",
            HopfCase::NoThreshold => "no_threshold",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HopfVerdict {
    pub branch: Branch,
    pub point: NeuronState,
    /// `1 - A/y*`
    pub lambda: f64,
    /// `(uK)^2 / (2m)`
    pub beta: f64,
    pub p2: Option<f64>,
    /// Closed-form prediction.
    pub hopf: bool,
    pub case: HopfCase,
    pub trace: f64,
    pub det: f64,
    /// Eigenvalue tier: a purely imaginary pair at the point, or a sign
    /// change of `tr` under `m -> m +/- CROSSING_DELTA` with `det > 0`.
    pub eigen_confirmed: bool,
    /// Set when the closed form and the eigenvalue tier disagree.
    pub diagnostic: Option<String>,
}

fn nearest_interaction_point(params: &ModelParams, gain: &GainSpec, x_near: f64) -> Option<NeuronState> {
    interaction_branch_roots(params, gain)
        .into_iter()
        .min_by(|a, b| (a - x_near).abs().total_cmp(&(b - x_near).abs()))
        .map(|x| NeuronState::new(x, interaction_level(params, x)))
}

/// Trace sign change at the tracked interaction point when `m` moves by
/// `+/- delta`, with positive determinant at the unperturbed point.
pub fn trace_crosses_under_m(params: &ModelParams, gain: &GainSpec, point: &NeuronState, delta: f64) -> bool {
    let Ok(det) = det_at(params, gain, point) else {
        return false;
    };
    if det <= 0.0 {
        return false;
    }
    let trace_for = |m: f64| {
        let p = ModelParams { m, ..*params };
        nearest_interaction_point(&p, gain, point.x).and_then(|s| trace_at(&p, gain, &s).ok())
    };
    match (trace_for(params.m - delta), trace_for(params.m + delta)) {
        (Some(lo), Some(hi)) => (lo < 0.0) != (hi < 0.0),
        _ => false,
    }
}

fn eigen_tier(params: &ModelParams, gain: &GainSpec, point: &NeuronState) -> (f64, f64, bool) {
    let j = match jacobian_at(params, gain, point) {
        Ok(j) => j,
        Err(_) => return (f64::NAN, f64::NAN, false),
    };
    let (tr, det) = (j.trace(), j.det());
    let imaginary_pair = tr.abs() < HOPF_TRACE_TOL && det > 0.0;
    let confirmed = imaginary_pair || trace_crosses_under_m(params, gain, point, CROSSING_DELTA);
    (tr, det, confirmed)
}

/// One verdict per fixed point. Threshold-branch points never admit a Hopf
/// bifurcation; interaction-branch points use the closed-form window and
/// are cross-checked against the Jacobian.
pub fn hopf_verdict(params: &ModelParams, gain: &GainSpec) -> Result<Vec<HopfVerdict>> {
    params.validate()?;
    let k = params.k.finite().unwrap_or(f64::INFINITY);
    let beta = (params.u * k).powi(2) / (2.0 * params.m);
    let mut out = Vec::new();

    for x in allee_branch_roots(params, gain) {
        let point = NeuronState::new(x, params.a);
        let (trace, det, eigen_confirmed) = eigen_tier(params, gain, &point);
        out.push(HopfVerdict {
            branch: Branch::Allee,
            point,
            lambda: 0.0,
            beta,
            p2: None,
            hopf: false,
            case: HopfCase::ThresholdLevel,
            trace,
            det,
            eigen_confirmed,
            diagnostic: eigen_confirmed.then(|| "eigenvalue tier reports a crossing on the threshold branch".into()),
        });
    }

    let roots = interaction_branch_roots(params, gain);
    if roots.is_empty() {
        return Err(Error::NoFixedPoint("interaction"));
    }
    for x in roots {
        let y = interaction_level(params, x);
        let point = NeuronState::new(x, y);
        let lambda = params.allee_factor(y);
        let p2 = hopf_p2(lambda, beta);
        let (hopf, case) = if params.a == 0.0 {
            (false, HopfCase::NoThreshold)
        } else if lambda == 0.0 {
            (false, HopfCase::ThresholdLevel)
        } else {
            match p2 {
                None => (false, HopfCase::DiscriminantNegative),
                Some(p2) if y < params.a => {
                    let tau_a = params.u * k / params.a.sqrt();
                    let hi = p2.sqrt();
                    (tau_a < x && x < hi, HopfCase::BelowThreshold { window_empty: tau_a >= hi })
                }
                Some(p2) => (x > p2.sqrt(), HopfCase::AboveThreshold),
            }
        };
        let (trace, det, eigen_confirmed) = eigen_tier(params, gain, &point);
        let diagnostic = match (hopf, eigen_confirmed, case) {
            (true, false, _) => {
                Some(format!("closed form predicts Hopf but tr = {trace:.3e}, det = {det:.3e} show no crossing"))
            }
            (false, true, _) => {
                Some(format!("eigenvalue crossing found (tr = {trace:.3e}) where closed form is false"))
            }
            (_, _, HopfCase::BelowThreshold { window_empty: true }) => {
                Some("window tau_A < x* < sqrt(p2) is empty".into())
            }
            _ => None,
        };
        out.push(HopfVerdict {
            branch: Branch::Interaction,
            point,
            lambda,
            beta,
            p2,
            hopf,
            case,
            trace,
            det,
            eigen_confirmed,
            diagnostic,
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Cell {
    pub ix: usize,
    pub iy: usize,
}

/// Signs of `tr` and `det` on a lattice over the phase plane.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionScan {
    pub x_range: (f64, f64),
    pub y_range: (f64, f64),
    pub nx: usize,
    pub ny: usize,
    /// Node signs, index `ix * ny + iy`.
    pub tr_sign: Vec<i8>,
    pub det_sign: Vec<i8>,
    /// Cells with `det > 0` at all corners and a sign change of `tr`.
    pub hopf_cells: Vec<Cell>,
    /// Cells where both `tr` and `det` change sign (Takens-Bogdanov candidates).
    pub tb_cells: Vec<Cell>,
}

impl RegionScan {
    pub fn node(&self, ix: usize, iy: usize) -> (f64, f64) {
        let lerp = |(lo, hi): (f64, f64), i: usize, n: usize| lo + (hi - lo) * i as f64 / (n - 1) as f64;
        (lerp(self.x_range, ix, self.nx), lerp(self.y_range, iy, self.ny))
    }

    pub fn cell_center(&self, c: Cell) -> (f64, f64) {
        let (x0, y0) = self.node(c.ix, c.iy);
        let (x1, y1) = self.node(c.ix + 1, c.iy + 1);
        (0.5 * (x0 + x1), 0.5 * (y0 + y1))
    }

    pub fn hopf_centroid(&self) -> Option<(f64, f64)> {
        centroid(self, &self.hopf_cells)
    }

    pub fn hopf_bounds(&self) -> Option<((f64, f64), (f64, f64))> {
        let centers: Vec<_> = self.hopf_cells.iter().map(|&c| self.cell_center(c)).collect();
        if centers.is_empty() {
            return None;
        }
        let fold =
            |f: fn(f64, f64) -> f64, init: f64, pick: fn(&(f64, f64)) -> f64| centers.iter().map(pick).fold(init, f);
        Some((
            (fold(f64::min, f64::INFINITY, |c| c.0), fold(f64::max, f64::NEG_INFINITY, |c| c.0)),
            (fold(f64::min, f64::INFINITY, |c| c.1), fold(f64::max, f64::NEG_INFINITY, |c| c.1)),
        ))
    }
}

fn centroid(scan: &RegionScan, cells: &[Cell]) -> Option<(f64, f64)> {
    if cells.is_empty() {
        return None;
    }
    let (sx, sy) = cells.iter().map(|&c| scan.cell_center(c)).fold((0.0, 0.0), |a, c| (a.0 + c.0, a.1 + c.1));
    let n = cells.len() as f64;
    Some((sx / n, sy / n))
}

fn sign(v: f64) -> i8 {
    if v > 0.0 {
        1
    } else if v < 0.0 {
        -1
    } else {
        0
    }
}

fn changes_sign(corners: [i8; 4]) -> bool {
    corners.contains(&0) || (corners.contains(&1) && corners.contains(&-1))
}

pub const DEFAULT_RESOLUTION: usize = 400;

/// Evaluate sign patterns of `tr(x, y)` and `det(x, y)` on an `nx x ny`
/// lattice (bounds inclusive) and mark Hopf and Takens-Bogdanov cells.
pub fn scan_region(
    params: &ModelParams,
    gain: &GainSpec,
    x_range: (f64, f64),
    y_range: (f64, f64),
    resolution: (usize, usize),
) -> Result<RegionScan> {
    params.validate()?;
    let (nx, ny) = resolution;
    if nx < 2 || ny < 2 {
        return Err(Error::InvalidParameter(format!("resolution must be >= 2 per axis, got {nx}x{ny}")));
    }
    if !(x_range.1 > x_range.0) || !(y_range.1 > y_range.0) {
        return Err(Error::InvalidParameter("scan ranges must have positive length".into()));
    }
    if !(y_range.0 > 0.0) {
        return Err(Error::InvalidParameter(format!("y range must start above 0, got {}", y_range.0)));
    }
    let mut scan = RegionScan {
        x_range,
        y_range,
        nx,
        ny,
        tr_sign: Vec::new(),
        det_sign: Vec::new(),
        hopf_cells: Vec::new(),
        tb_cells: Vec::new(),
    };
    let rows: Vec<Vec<(i8, i8)>> = (0..nx)
        .into_par_iter()
        .map(|ix| {
            (0..ny)
                .map(|iy| {
                    let (x, y) = scan.node(ix, iy);
                    let j = jacobian_at(params, gain, &NeuronState::new(x, y)).expect("lattice lies in y > 0");
                    (sign(j.trace()), sign(j.det()))
                })
                .collect()
        })
        .collect();
    for row in rows {
        for (t, d) in row {
            scan.tr_sign.push(t);
            scan.det_sign.push(d);
        }
    }
    let at = |v: &Vec<i8>, ix: usize, iy: usize| v[ix * ny + iy];
    for ix in 0..nx - 1 {
        for iy in 0..ny - 1 {
            let corners = |v: &Vec<i8>| [at(v, ix, iy), at(v, ix + 1, iy), at(v, ix, iy + 1), at(v, ix + 1, iy + 1)];
            let tr = corners(&scan.tr_sign);
            let det = corners(&scan.det_sign);
            if !changes_sign(tr) {
                continue;
            }
            if det.iter().all(|&d| d > 0) {
                scan.hopf_cells.push(Cell { ix, iy });
            } else if changes_sign(det) {
                scan.tb_cells.push(Cell { ix, iy });
            }
        }
    }
    Ok(scan)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SweepParameter {
    A,
    K,
    U,
    M,
}

impl SweepParameter {
    pub fn name(&self) -> &'static str {
        match self {
            SweepParameter::A => "A",
            SweepParameter::K => "K",
            SweepParameter::U => "u",
            SweepParameter::M => "m",
        }
    }

    pub fn apply(&self, params: &ModelParams, value: f64) -> ModelParams {
        let mut p = *params;
        match self {
            SweepParameter::A => p.a = value,
            SweepParameter::K => p.k = Regulator::Finite(value),
            SweepParameter::U => p.u = value,
            SweepParameter::M => p.m = value,
        }
        p
    }

    pub fn value(&self, params: &ModelParams) -> f64 {
        match self {
            SweepParameter::A => params.a,
            SweepParameter::K => params.k.finite().unwrap_or(f64::INFINITY),
            SweepParameter::U => params.u,
            SweepParameter::M => params.m,
        }
    }
}

impl fmt::Display for SweepParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SweepParameter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(SweepParameter::A),
            "K" | "k" => Ok(SweepParameter::K),
            "u" | "U" => Ok(SweepParameter::U),
            "m" | "M" => Ok(SweepParameter::M),
            other => Err(Error::UnknownParameter(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EventKind {
    /// Two fixed points collide: a fold on one branch, or the interaction
    /// point passing through the threshold level `y = A`.
    SaddleNode,
    /// Threshold and interaction branches exchange stability.
    Transcritical,
    /// The closed-form Hopf verdict flips.
    Hopf,
}

impl EventKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            EventKind::SaddleNode => "saddle_node",
            EventKind::Transcritical => "transcritical",
            EventKind::Hopf => "hopf",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepEvent {
    pub parameter: SweepParameter,
    pub value: f64,
    pub kind: EventKind,
    pub before: Vec<FixedPointReport>,
    pub after: Vec<FixedPointReport>,
}

#[derive(Debug, Clone, PartialEq)]
struct Signature {
    allee_roots: usize,
    interaction_roots: usize,
    above_threshold: usize,
    allee_stable: Option<bool>,
    interaction_stable: bool,
    hopf: bool,
}

fn signature(params: &ModelParams, gain: &GainSpec) -> Result<(Signature, Vec<FixedPointReport>)> {
    let allee = allee_branch_roots(params, gain);
    let inter = interaction_branch_roots(params, gain);
    let reports = solve_fixed_points(params, gain)?;
    let above =
        if params.a > 0.0 { inter.iter().filter(|&&x| interaction_level(params, x) > params.a).count() } else { 0 };
    let allee_stable = reports.iter().find(|r| r.branch == Branch::Allee).map(|r| r.stability.is_stable());
    let interaction_stable = reports.iter().any(|r| r.branch == Branch::Interaction && r.stability.is_stable());
    let hopf = hopf_verdict(params, gain).map(|v| v.iter().any(|h| h.hopf)).unwrap_or(false);
    Ok((
        Signature {
            allee_roots: allee.len(),
            interaction_roots: inter.len(),
            above_threshold: above,
            allee_stable,
            interaction_stable,
            hopf,
        },
        reports,
    ))
}

fn refine<K: PartialEq>(mut lo: f64, mut hi: f64, key: impl Fn(f64) -> K) -> f64 {
    let k_lo = key(lo);
    while (hi - lo).abs() > SWEEP_TOL {
        let mid = 0.5 * (lo + hi);
        if key(mid) == k_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Solve for fixed points at each value of `vary` and report bifurcation
/// events between consecutive values, each refined by bisection.
pub fn parameter_sweep(
    params: &ModelParams,
    gain: &GainSpec,
    vary: SweepParameter,
    values: &[f64],
) -> Result<Vec<SweepEvent>> {
    let ascending = values.windows(2).all(|w| w[0] <= w[1]);
    let descending = values.windows(2).all(|w| w[0] >= w[1]);
    if !(ascending || descending) {
        return Err(Error::InvalidParameter("sweep values must be sorted".into()));
    }
    let at = |v: f64| vary.apply(params, v);
    for &v in values {
        at(v).validate()?;
    }
    let sigs: Vec<(Signature, Vec<FixedPointReport>)> =
        values.par_iter().map(|&v| signature(&at(v), gain)).collect::<Result<_>>()?;

    let sig_at = |v: f64| signature(&at(v), gain).map(|s| s.0).ok();
    let mut events = Vec::new();
    for (i, pair) in sigs.windows(2).enumerate() {
        let (s0, r0) = &pair[0];
        let (s1, r1) = &pair[1];
        let (v0, v1) = (values[i], values[i + 1]);
        let mut push = |kind: EventKind, value: f64| {
            events.push(SweepEvent { parameter: vary, value, kind, before: r0.clone(), after: r1.clone() });
        };

        let counts = |s: &Option<Signature>| s.as_ref().map(|s| (s.allee_roots, s.interaction_roots));
        if (s0.allee_roots, s0.interaction_roots) != (s1.allee_roots, s1.interaction_roots) {
            push(EventKind::SaddleNode, refine(v0, v1, |v| counts(&sig_at(v))));
        } else if s0.above_threshold != s1.above_threshold {
            push(EventKind::SaddleNode, refine(v0, v1, |v| sig_at(v).map(|s| s.above_threshold)));
        }

        if let (Some(a0), Some(a1)) = (s0.allee_stable, s1.allee_stable) {
            let swapped = a0 != a1 && s0.interaction_stable != s1.interaction_stable && a0 == s1.interaction_stable;
            if swapped {
                push(EventKind::Transcritical, refine(v0, v1, |v| sig_at(v).and_then(|s| s.allee_stable)));
            }
        }

        if s0.hopf != s1.hopf {
            push(EventKind::Hopf, refine(v0, v1, |v| sig_at(v).map(|s| s.hopf)));
        }
    }
    Ok(events)
}
