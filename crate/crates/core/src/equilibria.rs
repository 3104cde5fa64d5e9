//! Fixed points as intersections of the `dx/dt = 0` isocline with the two
//! pieces of the `dy/dt = 0` isocline: the threshold level `y = A` and the
//! interaction curve `y = (uK/x)^2`.

use std::fmt;

use num_complex::Complex64;

use crate::dynamics::{jacobian_at, rhs};
use crate::error::{Error, Result};
use crate::gain::GainSpec;
use crate::model::{ModelParams, NeuronState};
use crate::stability::{classify_stability, Jacobian, Stability};

/// Uniform subintervals scanned for sign changes.
pub const SCAN_INTERVALS: usize = 1000;
/// Bisection stops once the bracket is narrower than this.
pub const ROOT_TOL: f64 = 1e-12;
/// Left end of the interaction-branch search interval.
pub const INTERACTION_X_MIN: f64 = 1e-6;
/// Fixed points closer than this are merged and flagged as a collision.
pub const COLLISION_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    /// `y* = A`
    Allee,
    /// `y* = (uK/x*)^2`
    Interaction,
}

impl Branch {
    pub fn as_str(&self) -> &'static str {
        match self {
            Branch::Allee => "allee",
            Branch::Interaction => "interaction",
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FixedPointReport {
    pub point: NeuronState,
    pub branch: Branch,
    pub jacobian: Jacobian,
    pub eigenvalues: [Complex64; 2],
    pub stability: Stability,
    /// Two roots merged here (saddle-node candidate).
    pub collision: bool,
}

impl FixedPointReport {
    pub fn residual(&self, params: &ModelParams, gain: &GainSpec) -> f64 {
        rhs(params, gain, &self.point).map(|(f, g)| f.hypot(g)).unwrap_or(f64::INFINITY)
    }
}

/// All roots of `h` on `[lo, hi]` located by a uniform sign scan followed by
/// bisection. Roots closer than the scan width to each other can be missed.
pub fn scan_roots<F: Fn(f64) -> f64>(h: F, lo: f64, hi: f64, intervals: usize, tol: f64) -> Vec<f64> {
    let width = (hi - lo) / intervals as f64;
    let node = |i: usize| {
        if i == intervals {
            hi
        } else {
            lo + width * i as f64
        }
    };
    let mut roots = Vec::new();
    let mut prev_x = node(0);
    let mut prev_h = h(prev_x);
    if prev_h == 0.0 {
        roots.push(prev_x);
    }
    for i in 1..=intervals {
        let x = node(i);
        let hx = h(x);
        if hx == 0.0 {
            roots.push(x);
        } else if prev_h != 0.0 && (prev_h < 0.0) != (hx < 0.0) {
            let (mut a, mut b, mut ha) = (prev_x, x, prev_h);
            while b - a > tol {
                let mid = 0.5 * (a + b);
                let hm = h(mid);
                if hm == 0.0 {
                    a = mid;
                    b = mid;
                    break;
                }
                if (hm < 0.0) == (ha < 0.0) {
                    a = mid;
                    ha = hm;
                } else {
                    b = mid;
                }
            }
            roots.push(0.5 * (a + b));
        }
        prev_x = x;
        prev_h = hx;
    }
    roots
}

/// Roots of `x = G(u sqrt(A) + m x)` in `(0, 1]`. The endpoint appears when
/// `G` rounds to 1 at large drive.
pub fn allee_branch_roots(params: &ModelParams, gain: &GainSpec) -> Vec<f64> {
    if params.a <= 0.0 {
        return Vec::new();
    }
    let drive = params.u * params.a.sqrt();
    let h = |x: f64| x - gain.eval(drive + params.m * x);
    scan_roots(h, 0.0, 1.0, SCAN_INTERVALS, ROOT_TOL).into_iter().filter(|&x| x > 0.0 && x <= 1.0).collect()
}

/// Roots of `x = G(u^2 K / x + m x)` in `(x_min, 1)`. Empty when `K` is
/// unbounded or `u = 0`, where the interaction curve does not exist.
pub fn interaction_branch_roots(params: &ModelParams, gain: &GainSpec) -> Vec<f64> {
    let Some(k) = params.k.finite() else {
        return Vec::new();
    };
    if params.u <= 0.0 {
        return Vec::new();
    }
    let c = params.u * params.u * k;
    let h = |x: f64| x - gain.eval(c / x + params.m * x);
    scan_roots(h, INTERACTION_X_MIN, 1.0, SCAN_INTERVALS, ROOT_TOL)
        .into_iter()
        .filter(|&x| x > INTERACTION_X_MIN && x <= 1.0)
        .collect()
}

pub fn interaction_level(params: &ModelParams, x: f64) -> f64 {
    let k = params.k.finite().unwrap_or(f64::INFINITY);
    let r = params.u * k / x;
    r * r
}

pub fn report_at(
    params: &ModelParams,
    gain: &GainSpec,
    point: NeuronState,
    branch: Branch,
) -> Result<FixedPointReport> {
    let jacobian = jacobian_at(params, gain, &point)?;
    let (eigenvalues, stability) = classify_stability(&jacobian);
    Ok(FixedPointReport { point, branch, jacobian, eigenvalues, stability, collision: false })
}

/// Every interior fixed point, threshold branch first, each branch ordered
/// by `x`. The origin is never a fixed point since `G > 0`.
pub fn solve_fixed_points(params: &ModelParams, gain: &GainSpec) -> Result<Vec<FixedPointReport>> {
    params.validate()?;
    let mut reports: Vec<FixedPointReport> = Vec::new();
    let candidates =
        allee_branch_roots(params, gain).into_iter().map(|x| (NeuronState::new(x, params.a), Branch::Allee)).chain(
            interaction_branch_roots(params, gain)
                .into_iter()
                .map(|x| (NeuronState::new(x, interaction_level(params, x)), Branch::Interaction)),
        );
    for (point, branch) in candidates {
        if !(point.y.is_finite() && point.y > 0.0) {
            continue;
        }
        if let Some(existing) = reports.iter_mut().find(|r| r.point.distance(&point) < COLLISION_TOL) {
            existing.collision = true;
            continue;
        }
        reports.push(report_at(params, gain, point, branch)?);
    }
    Ok(reports)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StabilityCase {
    /// `m < 4`: the rate eigenvalue is always negative.
    WeakRecurrence,
    /// `m > 4`: stable only when `x_A` avoids `(v1, v2)`.
    StrongRecurrence { v1: f64, v2: f64 },
    /// `m = 4` exactly.
    Boundary,
}

impl StabilityCase {
    pub fn label(&self) -> &'static str {
        match self {
            StabilityCase::WeakRecurrence => "m_below_4",
            StabilityCase::StrongRecurrence { .. } => "m_above_4",
            StabilityCase::Boundary => "boundary",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdStability {
    pub x_a: f64,
    /// `uK / sqrt(A)`
    pub tau_a: f64,
    pub stable_allee_point: bool,
    pub case: StabilityCase,
}

/// Closed-form stability of each threshold-branch point `(x_A, A)` for the
/// sigmoid gain: stable iff `x_A > uK/sqrt(A)` and `m G'(v_A) < 1`, the
/// latter written through the sigmoid-output thresholds
/// `v1,2 = (1 -/+ sqrt(1 - 4/m)) / 2` when `m > 4`.
pub fn allee_stability_predicate(params: &ModelParams) -> Result<Vec<ThresholdStability>> {
    params.validate()?;
    if params.a == 0.0 {
        return Err(Error::InvalidParameter("threshold stability predicate needs A > 0".into()));
    }
    let k = params.k.finite().unwrap_or(f64::INFINITY);
    let tau_a = params.u * k / params.a.sqrt();
    let m = params.m;
    let case = if m < 4.0 {
        StabilityCase::WeakRecurrence
    } else if m > 4.0 {
        let r = (1.0 - 4.0 / m).sqrt();
        StabilityCase::StrongRecurrence { v1: 0.5 * (1.0 - r), v2: 0.5 * (1.0 + r) }
    } else {
        StabilityCase::Boundary
    };
    Ok(allee_branch_roots(params, &GainSpec::Sigmoid)
        .into_iter()
        .map(|x_a| {
            let below_one = x_a < 1.0;
            let rate_ok = match case {
                StabilityCase::WeakRecurrence => true,
                StabilityCase::StrongRecurrence { v1, v2 } => (x_a > 0.0 && x_a < v1) || (x_a > v2 && below_one),
                StabilityCase::Boundary => x_a != 0.5,
            };
            ThresholdStability { x_a, tau_a, stable_allee_point: x_a > tau_a && below_one && rate_ok, case }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn by_branch(r: &[FixedPointReport], b: Branch) -> Vec<&FixedPointReport> {
        r.iter().filter(|p| p.branch == b).collect()
    }

    #[test]
    fn threshold_point_stable_interaction_saddle() {
        let p = ModelParams::new(1.7, 0.4, 2.5, 0.01);
        let r = solve_fixed_points(&p, &GainSpec::Sigmoid).unwrap();
        let allee = by_branch(&r, Branch::Allee);
        let inter = by_branch(&r, Branch::Interaction);
        assert_eq!((allee.len(), inter.len()), (1, 1));
        assert!(allee[0].stability.is_stable());
        assert_eq!(inter[0].stability, Stability::Saddle);
        let pred = allee_stability_predicate(&p).unwrap();
        assert!(pred[0].stable_allee_point);
        assert_eq!(pred[0].case, StabilityCase::WeakRecurrence);
    }

    #[test]
    fn threshold_point_unstable_interaction_stable() {
        let p = ModelParams::new(0.4, 0.7, 2.0, 2.0);
        let r = solve_fixed_points(&p, &GainSpec::Sigmoid).unwrap();
        let allee = by_branch(&r, Branch::Allee);
        let inter = by_branch(&r, Branch::Interaction);
        assert!(!allee[0].stability.is_stable());
        assert!(allee[0].eigenvalues.iter().any(|l| l.re > 0.0));
        assert!(inter[0].stability.is_stable());
        assert!(!allee_stability_predicate(&p).unwrap()[0].stable_allee_point);
    }

    #[test]
    fn oja_case_has_single_stable_point() {
        let p = ModelParams::new(0.0, 0.7, 2.0, 2.0);
        let r = solve_fixed_points(&p, &GainSpec::Sigmoid).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].branch, Branch::Interaction);
        assert!(r[0].stability.is_stable());
        assert!(allee_stability_predicate(&p).is_err());
    }

    #[test]
    fn reports_are_fixed_points() {
        for p in [
            ModelParams::new(1.7, 0.4, 2.5, 0.01),
            ModelParams::new(0.4, 0.4, 1.5, 2.0),
            ModelParams::new(0.4, 2.0, 1.0, 0.5),
            ModelParams::new(1.0, 2.0, 2.0, 5.0),
            ModelParams::new(0.3, 1.0, 0.2, 9.0),
        ] {
            for r in solve_fixed_points(&p, &GainSpec::Sigmoid).unwrap() {
                assert!(r.residual(&p, &GainSpec::Sigmoid) <= 1e-9, "{p:?} {r:?}");
                assert!(r.point.x > 0.0 && r.point.y > 0.0);
            }
        }
    }

    #[test]
    fn threshold_jacobian_is_triangular() {
        let p = ModelParams::new(0.4, 2.0, 1.0, 0.5);
        let r = solve_fixed_points(&p, &GainSpec::Sigmoid).unwrap();
        let a = by_branch(&r, Branch::Allee)[0];
        let j = &a.jacobian;
        assert_eq!(j.m[1][0], 0.0);
        assert!((j.det() - j.m[0][0] * j.m[1][1]).abs() < 1e-15);
    }

    #[test]
    fn strong_recurrence_prediction_matches_eigenvalues() {
        for (a, k, u) in [(0.4, 1.0, 1.0), (2.0, 0.3, 0.5), (0.1, 4.0, 3.0)] {
            let p = ModelParams::new(a, k, u, 10.0);
            let pred = allee_stability_predicate(&p).unwrap();
            assert!(matches!(pred[0].case, StabilityCase::StrongRecurrence { .. }));
            let r = solve_fixed_points(&p, &GainSpec::Sigmoid).unwrap();
            let allee = by_branch(&r, Branch::Allee);
            assert_eq!(pred[0].stable_allee_point, allee[0].stability.is_stable());
        }
    }

    #[test]
    fn boundary_case_at_m_equal_four() {
        let p = ModelParams::new(0.4, 2.0, 1.0, 4.0);
        let pred = allee_stability_predicate(&p).unwrap();
        assert_eq!(pred[0].case, StabilityCase::Boundary);
        assert_eq!(pred[0].case.label(), "boundary");
    }

    #[test]
    fn sigmoid_thresholds_solve_rate_condition() {
        for m in [4.5, 6.0, 10.0, 40.0] {
            let p = ModelParams::new(0.4, 1.0, 1.0, m);
            let pred = allee_stability_predicate(&p).unwrap();
            let StabilityCase::StrongRecurrence { v1, v2 } = pred[0].case else {
                panic!("expected m > 4 case");
            };
            for v in [v1, v2] {
                assert!((v * (1.0 - v) - 1.0 / m).abs() < 1e-14);
            }
            assert!(0.0 < v1 && v1 < v2 && v2 < 1.0);
        }
    }

    #[test]
    fn scan_roots_finds_simple_roots() {
        let roots = scan_roots(|x| (x - 0.25) * (x - 0.5) * (x - 0.75), 0.0, 1.0, 1000, 1e-12);
        assert_eq!(roots.len(), 3);
        for (r, e) in roots.iter().zip([0.25, 0.5, 0.75]) {
            assert!((r - e).abs() < 1e-12);
        }
        assert!(scan_roots(|x| x * x + 1.0, -1.0, 1.0, 100, 1e-12).is_empty());
    }

    #[test]
    fn branches_collide_when_interaction_level_hits_threshold() {
        // choose A exactly at the interaction level so both roots coincide
        let base = ModelParams::new(0.4, 0.4, 1.5, 2.0);
        let x = interaction_branch_roots(&base, &GainSpec::Sigmoid)[0];
        let a = interaction_level(&base, x);
        let p = ModelParams { a, ..base };
        let r = solve_fixed_points(&p, &GainSpec::Sigmoid).unwrap();
        assert_eq!(r.len(), 1);
        assert!(r[0].collision);
    }
}
