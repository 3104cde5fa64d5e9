use allee_core::assoc::{
    generate_patterns_with_mode, retrieve, train, LearningRule, NetworkShape, Pattern, PatternMode, RuleKind,
    StdpParams, TraceParams, WeightTensor,
};
use allee_core::Regulator;

use crate::out_ptr;
use crate::status::{fail, from_core, guard, AlleeStatus};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlleeRuleKind {
    Hebbian = 0,
    Oja = 1,
    Allee = 2,
    StdpPair = 3,
    StdpWeight = 4,
    StdpAddmul = 5,
    StdpPower = 6,
    StdpContinuous = 7,
    AlleeTemporal = 8,
}

impl From<AlleeRuleKind> for RuleKind {
    fn from(k: AlleeRuleKind) -> Self {
        match k {
            AlleeRuleKind::Hebbian => RuleKind::Hebbian,
            AlleeRuleKind::Oja => RuleKind::Oja,
            AlleeRuleKind::Allee => RuleKind::Allee,
            AlleeRuleKind::StdpPair => RuleKind::StdpPair,
            AlleeRuleKind::StdpWeight => RuleKind::StdpWeight,
            AlleeRuleKind::StdpAddmul => RuleKind::StdpAddMul,
            AlleeRuleKind::StdpPower => RuleKind::StdpPower,
            AlleeRuleKind::StdpContinuous => RuleKind::StdpContinuous,
            AlleeRuleKind::AlleeTemporal => RuleKind::AlleeTemporal,
        }
    }
}

/// Learning rule settings. `k = INFINITY` means unbounded.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlleeRuleParams {
    pub kind: AlleeRuleKind,
    pub a: f64,
    pub k: f64,
    pub eta: f64,
    pub b_plus: f64,
    pub b_minus: f64,
    pub tau_plus: f64,
    pub tau_minus: f64,
    pub gamma: f64,
    pub b: f64,
    pub delta_t: f64,
    pub kappa: f64,
    pub lambda: f64,
    pub tau1: f64,
    pub tau2: f64,
}

/// Network and run settings for `allee_network_train`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlleeNetworkConfig {
    pub layers: usize,
    pub n_u: usize,
    pub n_v: usize,
    pub patterns: usize,
    pub pattern_seed: u64,
    pub init_seed: u64,
    pub epochs: usize,
    /// Output pattern equals the input pattern.
    pub auto_associative: bool,
}

/// Trained weights together with the stored patterns.
pub struct AlleeNetwork {
    weights: WeightTensor,
    patterns: Vec<Pattern>,
}

/// Defaults for `kind`: eta 0.01, A 1, K 5, the STDP and trace constants of
/// the comparison runs. A and K are reset to 0 and INFINITY where the rule
/// family requires it.
#[no_mangle]
pub extern "C" fn allee_rule_params_default(kind: AlleeRuleKind) -> AlleeRuleParams {
    let s = StdpParams::default();
    let t = TraceParams::default();
    let (a, k) = match kind {
        AlleeRuleKind::Allee | AlleeRuleKind::AlleeTemporal => (1.0, 5.0),
        AlleeRuleKind::Oja => (0.0, 5.0),
        _ => (0.0, f64::INFINITY),
    };
    AlleeRuleParams {
        kind,
        a,
        k,
        eta: 0.01,
        b_plus: s.b_plus,
        b_minus: s.b_minus,
        tau_plus: s.tau_plus,
        tau_minus: s.tau_minus,
        gamma: s.gamma,
        b: s.b,
        delta_t: 0.1,
        kappa: t.kappa,
        lambda: t.lambda,
        tau1: t.tau1,
        tau2: t.tau2,
    }
}

fn to_rule(p: &AlleeRuleParams) -> LearningRule {
    LearningRule {
        kind: p.kind.into(),
        a: p.a,
        k: if p.k == f64::INFINITY { Regulator::Unbounded } else { Regulator::Finite(p.k) },
        eta: p.eta,
        stdp: StdpParams {
            b_plus: p.b_plus,
            b_minus: p.b_minus,
            tau_plus: p.tau_plus,
            tau_minus: p.tau_minus,
            gamma: p.gamma,
            b: p.b,
        },
        delta_t: p.delta_t,
        trace: TraceParams { kappa: p.kappa, lambda: p.lambda, tau1: p.tau1, tau2: p.tau2 },
    }
}

/// Draw patterns and train one network.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn allee_network_train(
    config: *const AlleeNetworkConfig,
    rule: *const AlleeRuleParams,
    out: *mut *mut AlleeNetwork,
) -> AlleeStatus {
    guard(|| {
        out_ptr!(config);
        out_ptr!(rule);
        out_ptr!(out);
        let c = &*config;
        let shape = NetworkShape::new(c.layers, c.n_u, c.n_v).map_err(from_core)?;
        let mode = if c.auto_associative { PatternMode::Auto } else { PatternMode::Hetero };
        let patterns = generate_patterns_with_mode(&shape, c.patterns, c.pattern_seed, mode).map_err(from_core)?;
        let weights = train(&shape, &to_rule(&*rule), &patterns, c.init_seed, c.epochs).map_err(from_core)?;
        *out = Box::into_raw(Box::new(AlleeNetwork { weights, patterns }));
        Ok(())
    })
}

/// Rows (`L N_u`) and columns (`L N_v`) of the weight matrix.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn allee_network_dims(
    net: *const AlleeNetwork,
    rows: *mut usize,
    cols: *mut usize,
) -> AlleeStatus {
    guard(|| {
        out_ptr!(net);
        out_ptr!(rows);
        out_ptr!(cols);
        *rows = (*net).weights.rows();
        *cols = (*net).weights.cols();
        Ok(())
    })
}

/// Row-major weights, valid until the network is freed.
///
/// # Safety
/// `net` must come from `allee_network_train` or be NULL.
#[no_mangle]
pub unsafe extern "C" fn allee_network_weights(net: *const AlleeNetwork) -> *const f64 {
    net.as_ref().map_or(std::ptr::null(), |n| n.weights.as_slice().as_ptr())
}

/// # Safety
/// `net` must come from `allee_network_train` or be NULL.
#[no_mangle]
pub unsafe extern "C" fn allee_network_pattern_count(net: *const AlleeNetwork) -> usize {
    net.as_ref().map_or(0, |n| n.patterns.len())
}

/// Copy stored pattern `index` into `u` (`rows` entries) and `v` (`cols`).
///
/// # Safety
/// `u` and `v` must have room for `rows` and `cols` bytes.
#[no_mangle]
pub unsafe extern "C" fn allee_network_pattern(
    net: *const AlleeNetwork,
    index: usize,
    u: *mut i8,
    v: *mut i8,
) -> AlleeStatus {
    guard(|| {
        out_ptr!(net);
        out_ptr!(u);
        out_ptr!(v);
        let n = &*net;
        let p = n
            .patterns
            .get(index)
            .ok_or_else(|| fail(AlleeStatus::OutOfRange, format!("pattern {index} >= {}", n.patterns.len())))?;
        std::slice::from_raw_parts_mut(u, p.u.len()).copy_from_slice(&p.u);
        std::slice::from_raw_parts_mut(v, p.v.len()).copy_from_slice(&p.v);
        Ok(())
    })
}

/// Recall from cue `u` (length `u_len`) and score against `v_expected`.
/// Writes the recalled pattern to `v_out` (length `v_len`).
///
/// # Safety
/// Buffer lengths must match the pointers.
#[no_mangle]
pub unsafe extern "C" fn allee_network_retrieve(
    net: *const AlleeNetwork,
    u: *const i8,
    u_len: usize,
    v_expected: *const i8,
    v_len: usize,
    max_iters: usize,
    v_out: *mut i8,
    accuracy: *mut f64,
    converged: *mut bool,
) -> AlleeStatus {
    guard(|| {
        out_ptr!(net);
        out_ptr!(u);
        out_ptr!(v_expected);
        out_ptr!(v_out);
        out_ptr!(accuracy);
        out_ptr!(converged);
        let cue = std::slice::from_raw_parts(u, u_len);
        let expected = std::slice::from_raw_parts(v_expected, v_len);
        if cue.iter().chain(expected).any(|&c| c != 1 && c != -1) {
            return Err(fail(AlleeStatus::InvalidParameter, "pattern entries must be +1 or -1"));
        }
        let r = retrieve(&(*net).weights, cue, expected, max_iters).map_err(from_core)?;
        std::slice::from_raw_parts_mut(v_out, v_len).copy_from_slice(&r.retrieved_v);
        *accuracy = r.accuracy;
        *converged = r.converged;
        Ok(())
    })
}

/// # Safety
/// `net` must come from `allee_network_train` or be NULL.
#[no_mangle]
pub unsafe extern "C" fn allee_network_free(net: *mut AlleeNetwork) {
    if !net.is_null() {
        drop(Box::from_raw(net));
    }
}
