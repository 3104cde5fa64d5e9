//! Right-hand side, Jacobian and fixed-step integration of the reduced model
//!
//! ```text
//! tau_v dx/dt = -x + G(u sqrt(y) + m x)
//! tau_w dy/dt = x (u sqrt(y) - x y / K) (1 - A / y)
//! ```

use crate::error::{Error, Result};
use crate::gain::GainSpec;
use crate::model::{ModelParams, NeuronState};
use crate::stability::Jacobian;

/// Floor for `y`; reaching it marks the trajectory extinct.
pub const EXTINCTION_FLOOR: f64 = 1e-8;

/// Default integration step.
pub const DEFAULT_DT: f64 = 0.01;

fn check_state(s: &NeuronState) -> Result<()> {
    if !(s.y > 0.0) {
        return Err(Error::Domain { what: "y", value: s.y });
    }
    if !s.x.is_finite() || !s.y.is_finite() {
        return Err(Error::InvalidParameter(format!("non-finite state ({}, {})", s.x, s.y)));
    }
    Ok(())
}

#[inline]
fn dx_dt(p: &ModelParams, gain: &GainSpec, x: f64, y: f64) -> f64 {
    (-x + gain.eval(p.u * y.sqrt() + p.m * x)) / p.tau_v
}

#[inline]
fn dy_dt(p: &ModelParams, x: f64, y: f64) -> f64 {
    let growth = p.u * y.sqrt() - x * y * p.k.reciprocal();
    x * growth * p.allee_factor(y) / p.tau_w
}

/// `(dx/dt, dy/dt)`. Requires `y > 0`.
pub fn rhs(params: &ModelParams, gain: &GainSpec, s: &NeuronState) -> Result<(f64, f64)> {
    check_state(s)?;
    Ok((dx_dt(params, gain, s.x, s.y), dy_dt(params, s.x, s.y)))
}

/// Analytic Jacobian of [`rhs`]; rows are scaled by `1/tau_v` and `1/tau_w`.
pub fn jacobian_at(params: &ModelParams, gain: &GainSpec, s: &NeuronState) -> Result<Jacobian> {
    check_state(s)?;
    let p = params;
    let NeuronState { x, y } = *s;
    let sy = y.sqrt();
    let inv_k = p.k.reciprocal();
    let dg = gain.derivative(p.u * sy + p.m * x);
    let factor = p.allee_factor(y);

    let fx = -1.0 + p.m * dg;
    let fy = p.u / (2.0 * sy) * dg;
    let gx = (p.u * sy - 2.0 * x * y * inv_k) * factor;
    let mut gy = x * (p.u / (2.0 * sy) - x * inv_k) * factor;
    if p.a != 0.0 {
        gy += x * (p.u * sy - x * y * inv_k) * (p.a / (y * y));
    }
    Ok(Jacobian::new([[fx / p.tau_v, fy / p.tau_v], [gx / p.tau_w, gy / p.tau_w]]))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<NeuronState>,
    /// Time of the step at which `y` reached [`EXTINCTION_FLOOR`].
    pub extinct_at: Option<f64>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn last(&self) -> &NeuronState {
        self.states.last().expect("trajectory always holds the initial state")
    }

    pub fn is_extinct_at(&self, t: f64) -> bool {
        self.extinct_at.is_some_and(|te| t >= te)
    }
}

fn rk4_x_only(p: &ModelParams, gain: &GainSpec, x: f64, y: f64, dt: f64) -> f64 {
    let k1 = dx_dt(p, gain, x, y);
    let k2 = dx_dt(p, gain, x + 0.5 * dt * k1, y);
    let k3 = dx_dt(p, gain, x + 0.5 * dt * k2, y);
    let k4 = dx_dt(p, gain, x + dt * k3, y);
    x + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
}

/// One classical RK4 step of the full system. `None` when a stage would
/// evaluate the vector field at or below the extinction floor.
fn rk4_full(p: &ModelParams, gain: &GainSpec, s: NeuronState, dt: f64) -> Option<NeuronState> {
    let f = |x: f64, y: f64| -> Option<(f64, f64)> {
        if y > EXTINCTION_FLOOR {
            Some((dx_dt(p, gain, x, y), dy_dt(p, x, y)))
        } else {
            None
        }
    };
    let (a1, b1) = f(s.x, s.y)?;
    let (a2, b2) = f(s.x + 0.5 * dt * a1, s.y + 0.5 * dt * b1)?;
    let (a3, b3) = f(s.x + 0.5 * dt * a2, s.y + 0.5 * dt * b2)?;
    let (a4, b4) = f(s.x + dt * a3, s.y + dt * b3)?;
    Some(NeuronState {
        x: s.x + dt / 6.0 * (a1 + 2.0 * a2 + 2.0 * a3 + a4),
        y: s.y + dt / 6.0 * (b1 + 2.0 * b2 + 2.0 * b3 + b4),
    })
}

/// Fixed-step RK4 from `s0` over `[0, t_end]`.
///
/// The step count is `ceil(t_end / dt)`, so the last time stamp is the first
/// multiple of `dt` not below `t_end`. Once `y` reaches the extinction floor it
/// is held there and only `x` keeps evolving.
pub fn integrate(params: &ModelParams, gain: &GainSpec, s0: NeuronState, t_end: f64, dt: f64) -> Result<Trajectory> {
    params.validate()?;
    if !(dt.is_finite() && dt > 0.0) {
        return Err(Error::InvalidParameter(format!("dt must be positive, got {dt}")));
    }
    if !(t_end.is_finite() && t_end >= 0.0) {
        return Err(Error::InvalidParameter(format!("t_end must be >= 0, got {t_end}")));
    }
    check_state(&s0)?;

    let steps = ((t_end / dt) - 1e-9).ceil().max(0.0) as usize;
    let mut times = Vec::with_capacity(steps + 1);
    let mut states = Vec::with_capacity(steps + 1);
    times.push(0.0);
    states.push(s0);

    let mut s = s0;
    let mut extinct_at = None;
    if s.y <= EXTINCTION_FLOOR {
        s.y = EXTINCTION_FLOOR;
        extinct_at = Some(0.0);
    }
    for k in 1..=steps {
        let t = k as f64 * dt;
        let next = match extinct_at {
            Some(_) => None,
            None => rk4_full(params, gain, s, dt).filter(|n| n.y > EXTINCTION_FLOOR),
        };
        s = match next {
            Some(n) => n,
            None => {
                if extinct_at.is_none() {
                    extinct_at = Some(t);
                }
                NeuronState { x: rk4_x_only(params, gain, s.x, EXTINCTION_FLOOR, dt), y: EXTINCTION_FLOOR }
            }
        };
        if !s.x.is_finite() || !s.y.is_finite() {
            return Err(Error::StepFailure { t });
        }
        times.push(t);
        states.push(s);
    }
    Ok(Trajectory { times, states, extinct_at })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Regulator;

    fn central_jacobian(p: &ModelParams, g: &GainSpec, s: &NeuronState) -> [[f64; 2]; 2] {
        let h = 1e-6;
        let at = |x: f64, y: f64| rhs(p, g, &NeuronState::new(x, y)).unwrap();
        let (fxp, gxp) = at(s.x + h, s.y);
        let (fxm, gxm) = at(s.x - h, s.y);
        let (fyp, gyp) = at(s.x, s.y + h);
        let (fym, gym) = at(s.x, s.y - h);
        [[(fxp - fxm) / (2.0 * h), (fyp - fym) / (2.0 * h)], [(gxp - gxm) / (2.0 * h), (gyp - gym) / (2.0 * h)]]
    }

    #[test]
    fn rhs_hand_evaluated_oja_case() {
        let p = ModelParams::new(0.0, 2.0, 1.0, 0.5);
        let (dx, dy) = rhs(&p, &GainSpec::Sigmoid, &NeuronState::new(0.5, 1.0)).unwrap();
        assert!((dy - 0.375).abs() < 1e-15);
        let g125 = 1.0 / (1.0 + (-1.25f64).exp());
        assert!((dx - (g125 - 0.5)).abs() < 1e-15);
    }

    #[test]
    fn rhs_vanishes_in_y_on_the_threshold() {
        let p = ModelParams::new(0.4, 2.0, 1.0, 0.5);
        for x in [0.0, 0.1, 0.7, 3.0] {
            let (_, dy) = rhs(&p, &GainSpec::Sigmoid, &NeuronState::new(x, 0.4)).unwrap();
            assert_eq!(dy, 0.0);
            let j = jacobian_at(&p, &GainSpec::Sigmoid, &NeuronState::new(x, 0.4)).unwrap();
            assert_eq!(j.m[1][0], 0.0);
        }
    }

    #[test]
    fn rhs_rejects_nonpositive_y() {
        let p = ModelParams::new(0.4, 2.0, 1.0, 0.5);
        assert!(matches!(rhs(&p, &GainSpec::Sigmoid, &NeuronState::new(0.5, 0.0)), Err(Error::Domain { .. })));
        assert!(jacobian_at(&p, &GainSpec::Sigmoid, &NeuronState::new(0.5, -1.0)).is_err());
    }

    #[test]
    fn unbounded_regulator_drops_decay_term() {
        let p = ModelParams::new(0.0, 1.0, 1.5, 0.3).with_regulator(Regulator::Unbounded);
        let s = NeuronState::new(0.4, 2.0);
        let (_, dy) = rhs(&p, &GainSpec::Sigmoid, &s).unwrap();
        assert!((dy - 0.4 * 1.5 * 2.0f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn jacobian_matches_finite_differences_at_reference_point() {
        let p = ModelParams::new(0.4, 2.0, 1.0, 0.5);
        let s = NeuronState::new(0.3, 0.9);
        let j = jacobian_at(&p, &GainSpec::Sigmoid, &s).unwrap();
        let fd = central_jacobian(&p, &GainSpec::Sigmoid, &s);
        for r in 0..2 {
            for c in 0..2 {
                assert!((j.m[r][c] - fd[r][c]).abs() < 1e-6);
            }
        }
    }

    #[test]
    fn jacobian_respects_time_scales() {
        let base = ModelParams::new(0.4, 2.0, 1.0, 0.5);
        let scaled = base.with_time_scales(2.0, 4.0);
        let s = NeuronState::new(0.3, 0.9);
        let j = jacobian_at(&base, &GainSpec::Sigmoid, &s).unwrap();
        let js = jacobian_at(&scaled, &GainSpec::Sigmoid, &s).unwrap();
        let fd = central_jacobian(&scaled, &GainSpec::Sigmoid, &s);
        assert_eq!(js.m[0][1], j.m[0][1] / 2.0);
        assert_eq!(js.m[1][1], j.m[1][1] / 4.0);
        for r in 0..2 {
            for c in 0..2 {
                assert!((js.m[r][c] - fd[r][c]).abs() < 1e-6);
            }
        }
    }

    #[test]
    fn zero_length_integration_returns_initial_state() {
        let p = ModelParams::new(0.4, 2.0, 1.0, 0.5);
        let s0 = NeuronState::new(0.6, 0.8);
        let tr = integrate(&p, &GainSpec::Sigmoid, s0, 0.0, 0.01).unwrap();
        assert_eq!(tr.times, vec![0.0]);
        assert_eq!(tr.states, vec![s0]);
        assert_eq!(tr.extinct_at, None);
    }

    #[test]
    fn integration_validates_inputs() {
        let p = ModelParams::new(0.4, 2.0, 1.0, 0.5);
        let g = GainSpec::Sigmoid;
        assert!(integrate(&p, &g, NeuronState::new(0.5, 0.0), 1.0, 0.01).is_err());
        assert!(integrate(&p, &g, NeuronState::new(0.5, 1.0), 1.0, 0.0).is_err());
        assert!(integrate(&p, &g, NeuronState::new(0.5, 1.0), -1.0, 0.01).is_err());
    }

    #[test]
    fn below_threshold_goes_extinct_and_freezes_y() {
        let p = ModelParams::new(0.4, 2.0, 1.0, 0.5);
        let tr = integrate(&p, &GainSpec::Sigmoid, NeuronState::new(0.1, 0.2), 20.0, 0.01).unwrap();
        let te = tr.extinct_at.expect("y0 < A must go extinct");
        assert!(te < 20.0);
        for (t, s) in tr.times.iter().zip(&tr.states) {
            assert!(s.y >= EXTINCTION_FLOOR);
            if *t >= te {
                assert_eq!(s.y, EXTINCTION_FLOOR);
            }
        }
        assert_eq!(tr.times.len(), 2001);
        assert!(tr.times.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn integration_is_deterministic() {
        let p = ModelParams::new(0.4, 2.0, 1.0, 0.5);
        let a = integrate(&p, &GainSpec::Sigmoid, NeuronState::new(0.6, 0.8), 5.0, 0.01).unwrap();
        let b = integrate(&p, &GainSpec::Sigmoid, NeuronState::new(0.6, 0.8), 5.0, 0.01).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn forgetting_regime_decays_exponentially() {
        // z = m x + u sqrt(y) stays below -10 for t in [0, 3]
        let p = ModelParams::new(0.0, 1.0, 0.0, -500.0).with_regulator(Regulator::Unbounded);
        let x0 = 0.5;
        let tr = integrate(&p, &GainSpec::Sigmoid, NeuronState::new(x0, 1.0), 3.0, 0.01).unwrap();
        for (t, s) in tr.times.iter().zip(&tr.states) {
            assert!(p.m * s.x <= -10.0);
            let expect = x0 * (-t).exp();
            assert!(((s.x - expect) / expect).abs() < 0.02, "t = {t}");
        }
    }

    #[test]
    fn retention_regime_relaxes_to_one() {
        // z >= 20 throughout; target is the solution of x' = 1 - x
        let p = ModelParams::new(0.0, 1.0, 20.0, 0.0).with_regulator(Regulator::Unbounded);
        let x0 = 0.2;
        let tr = integrate(&p, &GainSpec::Sigmoid, NeuronState::new(x0, 1.0), 3.0, 0.01).unwrap();
        for (t, s) in tr.times.iter().zip(&tr.states) {
            assert!(p.u * s.y.sqrt() >= 10.0);
            let expect = 1.0 + (x0 - 1.0) * (-t).exp();
            assert!(((s.x - expect) / expect).abs() < 0.02, "t = {t}");
        }
    }

    proptest::proptest! {
        #[test]
        fn oja_reduction_is_exact(x in 0.01f64..1.0, y in 0.01f64..5.0, u in 0.0f64..3.0, m in -3.0f64..6.0, k in 0.1f64..5.0) {
            let p = ModelParams::new(0.0, k, u, m);
            let g = GainSpec::Sigmoid;
            let (dx, dy) = rhs(&p, &g, &NeuronState::new(x, y)).unwrap();
            let oja_dy = x * (u * y.sqrt() - x * y / k);
            let oja_dx = -x + g.eval(u * y.sqrt() + m * x);
            proptest::prop_assert!((dy - oja_dy).abs() <= 1e-14 * oja_dy.abs().max(1.0));
            proptest::prop_assert!((dx - oja_dx).abs() <= 1e-14);
            let j = jacobian_at(&p, &g, &NeuronState::new(x, y)).unwrap();
            let oja_gy = x * (u / (2.0 * y.sqrt()) - x / k);
            let oja_gx = u * y.sqrt() - 2.0 * x * y / k;
            proptest::prop_assert!((j.m[1][1] - oja_gy).abs() <= 1e-14 * oja_gy.abs().max(1.0));
            proptest::prop_assert!((j.m[1][0] - oja_gx).abs() <= 1e-14 * oja_gx.abs().max(1.0));
        }

        #[test]
        fn jacobian_matches_finite_differences(
            x in 0.05f64..1.0, y in 0.2f64..4.0,
            a in 0.0f64..3.0, k in 0.2f64..4.0, u in 0.0f64..3.0, m in -2.0f64..6.0,
        ) {
            let p = ModelParams::new(a, k, u, m);
            let s = NeuronState::new(x, y);
            let j = jacobian_at(&p, &GainSpec::Sigmoid, &s).unwrap();
            let fd = central_jacobian(&p, &GainSpec::Sigmoid, &s);
            for r in 0..2 {
                for c in 0..2 {
                    proptest::prop_assert!((j.m[r][c] - fd[r][c]).abs() < 1e-6);
                }
            }
        }
    }
}
