use allee_core::bifurcation::{scan_region, RegionScan};
use allee_core::dynamics::{integrate, jacobian_at, rhs, Trajectory};
use allee_core::equilibria::{solve_fixed_points, Branch, FixedPointReport};
use allee_core::stability::Stability;
use allee_core::{GainSpec, ModelParams, NeuronState, Regulator};

use crate::out_ptr;
use crate::status::{fail, from_core, guard, AlleeStatus};

/// Model parameters and gain function.
pub struct AlleeModel {
    params: ModelParams,
    gain: GainSpec,
}

pub struct AlleeTrajectory(Trajectory);

pub struct AlleeFixedPoints(Vec<FixedPointReport>);

pub struct AlleeScan(RegionScan);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlleeBranch {
    Allee = 0,
    Interaction = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlleeStability {
    StableNode = 0,
    UnstableNode = 1,
    Saddle = 2,
    StableFocus = 3,
    UnstableFocus = 4,
    CenterCandidate = 5,
    Nonhyperbolic = 6,
}

impl From<Stability> for AlleeStability {
    fn from(s: Stability) -> Self {
        match s {
            Stability::StableNode => AlleeStability::StableNode,
            Stability::UnstableNode => AlleeStability::UnstableNode,
            Stability::Saddle => AlleeStability::Saddle,
            Stability::StableFocus => AlleeStability::StableFocus,
            Stability::UnstableFocus => AlleeStability::UnstableFocus,
            Stability::CenterCandidate => AlleeStability::CenterCandidate,
            Stability::Nonhyperbolic => AlleeStability::Nonhyperbolic,
        }
    }
}

/// Plain-data copy of one fixed point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlleeFixedPoint {
    pub x: f64,
    pub y: f64,
    pub branch: AlleeBranch,
    pub eig1_re: f64,
    pub eig1_im: f64,
    pub eig2_re: f64,
    pub eig2_im: f64,
    pub stability: AlleeStability,
    pub collision: bool,
}

fn model_ref<'a>(m: *const AlleeModel) -> Result<&'a AlleeModel, AlleeStatus> {
    out_ptr!(m);
    Ok(unsafe { &*m })
}

/// `k = INFINITY` selects the unbounded regulator. Time scales default to 1
/// and the gain to the logistic sigmoid.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn allee_model_new(a: f64, k: f64, u: f64, m: f64, out: *mut *mut AlleeModel) -> AlleeStatus {
    guard(|| {
        out_ptr!(out);
        let reg = if k == f64::INFINITY { Regulator::Unbounded } else { Regulator::Finite(k) };
        let params = ModelParams::new(a, 1.0, u, m).with_regulator(reg);
        params.validate().map_err(from_core)?;
        *out = Box::into_raw(Box::new(AlleeModel { params, gain: GainSpec::Sigmoid }));
        Ok(())
    })
}

/// # Safety
/// `model` must come from `allee_model_new`.
#[no_mangle]
pub unsafe extern "C" fn allee_model_set_time_scales(model: *mut AlleeModel, tau_v: f64, tau_w: f64) -> AlleeStatus {
    guard(|| {
        out_ptr!(model);
        let m = &mut *model;
        let p = m.params.with_time_scales(tau_v, tau_w);
        p.validate().map_err(from_core)?;
        m.params = p;
        Ok(())
    })
}

/// Switch to the Soboleva gain `(e^{az} - e^{-bz}) / (e^{cz} + e^{-dz})`.
///
/// # Safety
/// `model` must come from `allee_model_new`.
#[no_mangle]
pub unsafe extern "C" fn allee_model_set_soboleva(
    model: *mut AlleeModel,
    a: f64,
    b: f64,
    c: f64,
    d: f64,
) -> AlleeStatus {
    guard(|| {
        out_ptr!(model);
        if ![a, b, c, d].iter().all(|v| v.is_finite()) {
            return Err(fail(AlleeStatus::InvalidParameter, "Soboleva parameters must be finite"));
        }
        (*model).gain = GainSpec::Soboleva { a, b, c, d };
        Ok(())
    })
}

/// # Safety
/// `model` must come from `allee_model_new` or be NULL.
#[no_mangle]
pub unsafe extern "C" fn allee_model_free(model: *mut AlleeModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Right-hand side at `(x, y)`; `y` must be positive.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn allee_rhs(
    model: *const AlleeModel,
    x: f64,
    y: f64,
    dx: *mut f64,
    dy: *mut f64,
) -> AlleeStatus {
    guard(|| {
        let m = model_ref(model)?;
        out_ptr!(dx);
        out_ptr!(dy);
        let (f, g) = rhs(&m.params, &m.gain, &NeuronState::new(x, y)).map_err(from_core)?;
        *dx = f;
        *dy = g;
        Ok(())
    })
}

/// Jacobian at `(x, y)` in row-major order: `[df/dx, df/dy, dg/dx, dg/dy]`.
///
/// # Safety
/// `out` must point to 4 writable doubles.
#[no_mangle]
pub unsafe extern "C" fn allee_jacobian(model: *const AlleeModel, x: f64, y: f64, out: *mut f64) -> AlleeStatus {
    guard(|| {
        let m = model_ref(model)?;
        out_ptr!(out);
        let j = jacobian_at(&m.params, &m.gain, &NeuronState::new(x, y)).map_err(from_core)?;
        let dst = std::slice::from_raw_parts_mut(out, 4);
        dst.copy_from_slice(&[j.m[0][0], j.m[0][1], j.m[1][0], j.m[1][1]]);
        Ok(())
    })
}

/// Fixed-step RK4 from `(x0, y0)` to `t_end`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn allee_integrate(
    model: *const AlleeModel,
    x0: f64,
    y0: f64,
    t_end: f64,
    dt: f64,
    out: *mut *mut AlleeTrajectory,
) -> AlleeStatus {
    guard(|| {
        let m = model_ref(model)?;
        out_ptr!(out);
        let t = integrate(&m.params, &m.gain, NeuronState::new(x0, y0), t_end, dt).map_err(from_core)?;
        *out = Box::into_raw(Box::new(AlleeTrajectory(t)));
        Ok(())
    })
}

/// Number of samples, 0 for NULL.
///
/// # Safety
/// `traj` must come from `allee_integrate` or be NULL.
#[no_mangle]
pub unsafe extern "C" fn allee_trajectory_len(traj: *const AlleeTrajectory) -> usize {
    traj.as_ref().map_or(0, |t| t.0.len())
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn allee_trajectory_get(
    traj: *const AlleeTrajectory,
    index: usize,
    t: *mut f64,
    x: *mut f64,
    y: *mut f64,
) -> AlleeStatus {
    guard(|| {
        out_ptr!(traj);
        out_ptr!(t);
        out_ptr!(x);
        out_ptr!(y);
        let tr = &(*traj).0;
        if index >= tr.len() {
            return Err(fail(AlleeStatus::OutOfRange, format!("index {index} >= length {}", tr.len())));
        }
        *t = tr.times[index];
        *x = tr.states[index].x;
        *y = tr.states[index].y;
        Ok(())
    })
}

/// Writes the extinction time and returns true, or returns false if `y`
/// never reached the floor.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn allee_trajectory_extinct_at(traj: *const AlleeTrajectory, t: *mut f64) -> bool {
    match (traj.as_ref(), t.is_null()) {
        (Some(tr), false) => match tr.0.extinct_at {
            Some(te) => {
                *t = te;
                true
            }
            None => false,
        },
        _ => false,
    }
}

/// # Safety
/// `traj` must come from `allee_integrate` or be NULL.
#[no_mangle]
pub unsafe extern "C" fn allee_trajectory_free(traj: *mut AlleeTrajectory) {
    if !traj.is_null() {
        drop(Box::from_raw(traj));
    }
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn allee_fixed_points(model: *const AlleeModel, out: *mut *mut AlleeFixedPoints) -> AlleeStatus {
    guard(|| {
        let m = model_ref(model)?;
        out_ptr!(out);
        let r = solve_fixed_points(&m.params, &m.gain).map_err(from_core)?;
        *out = Box::into_raw(Box::new(AlleeFixedPoints(r)));
        Ok(())
    })
}

/// # Safety
/// `fps` must come from `allee_fixed_points` or be NULL.
#[no_mangle]
pub unsafe extern "C" fn allee_fixed_points_len(fps: *const AlleeFixedPoints) -> usize {
    fps.as_ref().map_or(0, |f| f.0.len())
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn allee_fixed_points_get(
    fps: *const AlleeFixedPoints,
    index: usize,
    out: *mut AlleeFixedPoint,
) -> AlleeStatus {
    guard(|| {
        out_ptr!(fps);
        out_ptr!(out);
        let list = &(*fps).0;
        let r = list
            .get(index)
            .ok_or_else(|| fail(AlleeStatus::OutOfRange, format!("index {index} >= length {}", list.len())))?;
        let [e1, e2] = r.eigenvalues;
        *out = AlleeFixedPoint {
            x: r.point.x,
            y: r.point.y,
            branch: match r.branch {
                Branch::Allee => AlleeBranch::Allee,
                Branch::Interaction => AlleeBranch::Interaction,
            },
            eig1_re: e1.re,
            eig1_im: e1.im,
            eig2_re: e2.re,
            eig2_im: e2.im,
            stability: r.stability.into(),
            collision: r.collision,
        };
        Ok(())
    })
}

/// # Safety
/// `fps` must come from `allee_fixed_points` or be NULL.
#[no_mangle]
pub unsafe extern "C" fn allee_fixed_points_free(fps: *mut AlleeFixedPoints) {
    if !fps.is_null() {
        drop(Box::from_raw(fps));
    }
}

/// Sign scan of trace and determinant over `[x_min, x_max] x [y_min, y_max]`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn allee_scan_region(
    model: *const AlleeModel,
    x_min: f64,
    x_max: f64,
    y_min: f64,
    y_max: f64,
    nx: usize,
    ny: usize,
    out: *mut *mut AlleeScan,
) -> AlleeStatus {
    guard(|| {
        let m = model_ref(model)?;
        out_ptr!(out);
        let s = scan_region(&m.params, &m.gain, (x_min, x_max), (y_min, y_max), (nx, ny)).map_err(from_core)?;
        *out = Box::into_raw(Box::new(AlleeScan(s)));
        Ok(())
    })
}

/// # Safety
/// `scan` must come from `allee_scan_region` or be NULL.
#[no_mangle]
pub unsafe extern "C" fn allee_scan_hopf_count(scan: *const AlleeScan) -> usize {
    scan.as_ref().map_or(0, |s| s.0.hopf_cells.len())
}

/// # Safety
/// `scan` must come from `allee_scan_region` or be NULL.
#[no_mangle]
pub unsafe extern "C" fn allee_scan_tb_count(scan: *const AlleeScan) -> usize {
    scan.as_ref().map_or(0, |s| s.0.tb_cells.len())
}

/// Mean cell centre of the Hopf cells; `OUT_OF_RANGE` when there are none.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn allee_scan_hopf_centroid(scan: *const AlleeScan, x: *mut f64, y: *mut f64) -> AlleeStatus {
    guard(|| {
        out_ptr!(scan);
        out_ptr!(x);
        out_ptr!(y);
        let (cx, cy) = (*scan).0.hopf_centroid().ok_or_else(|| fail(AlleeStatus::OutOfRange, "no Hopf cells"))?;
        *x = cx;
        *y = cy;
        Ok(())
    })
}

/// # Safety
/// `scan` must come from `allee_scan_region` or be NULL.
#[no_mangle]
pub unsafe extern "C" fn allee_scan_free(scan: *mut AlleeScan) {
    if !scan.is_null() {
        drop(Box::from_raw(scan));
    }
}
