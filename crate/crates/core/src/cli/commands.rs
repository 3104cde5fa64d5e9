use std::fmt::Display;

use super::config::{CommandKind, Config};
use super::svg::{line_plot, sign_map, Series};
use crate::assoc::{
    noise_sweep, run_cell, LearningRule, NetworkShape, NoiseSweepSpec, PatternMode, RuleKind, StdpParams, TraceParams,
};
use crate::bifurcation::{hopf_verdict, parameter_sweep, scan_region, SweepParameter};
use crate::dynamics::integrate;
use crate::equilibria::{allee_stability_predicate, solve_fixed_points, Branch};
use crate::error::{Error, Result};
use crate::gain::GainSpec;
use crate::memory::{equidistant, overlap_experiment, sensitivity_sweep, SensitivitySpec};
use crate::model::{ModelParams, NeuronState, Regulator};

/// Rectangular CSV table.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    fn new(header: &[&'static str]) -> Self {
        Table { header: header.to_vec(), rows: Vec::new() }
    }

    fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for r in &self.rows {
            out.push_str(&r.join(","));
            out.push('\n');
        }
        out
    }
}

/// One output file: `<name>.csv`, `<name>.meta` and optionally `<name>.svg`.
pub struct Artifact {
    pub name: &'static str,
    pub table: Table,
    pub plot: Option<String>,
}

fn s<T: Display>(v: T) -> String {
    v.to_string()
}

fn opt(v: Option<f64>) -> String {
    v.map(s).unwrap_or_else(|| "na".into())
}

fn flag(b: bool) -> String {
    if b { "1" } else { "0" }.into()
}

fn gain(cfg: &Config) -> Result<GainSpec> {
    match cfg.raw("gain") {
        "sigmoid" => Ok(GainSpec::Sigmoid),
        "soboleva" => Ok(GainSpec::Soboleva {
            a: cfg.f64("gain_a")?,
            b: cfg.f64("gain_b")?,
            c: cfg.f64("gain_c")?,
            d: cfg.f64("gain_d")?,
        }),
        other => Err(Error::Config(format!("gain: expected sigmoid or soboleva, got '{other}'"))),
    }
}

fn model(cfg: &Config) -> Result<(ModelParams, GainSpec)> {
    let k: Regulator = cfg.raw("K").parse()?;
    let p = ModelParams::new(cfg.f64("A")?, 1.0, cfg.f64("u")?, cfg.f64("m")?)
        .with_regulator(k)
        .with_time_scales(cfg.f64("tau_v")?, cfg.f64("tau_w")?);
    p.validate()?;
    Ok((p, gain(cfg)?))
}

fn state(cfg: &Config) -> Result<NeuronState> {
    Ok(NeuronState::new(cfg.f64("x0")?, cfg.f64("y0")?))
}

pub fn run(cfg: &Config) -> Result<Vec<Artifact>> {
    match cfg.command {
        CommandKind::Simulate => simulate(cfg),
        CommandKind::FixedPoints => fixed_points(cfg),
        CommandKind::HopfScan => hopf_scan(cfg),
        CommandKind::Sweep => sweep(cfg),
        CommandKind::Overlap => overlap(cfg),
        CommandKind::Sensitivity => sensitivity(cfg),
        CommandKind::Retrieve => retrieve(cfg),
        CommandKind::NoiseSweep => noise(cfg),
    }
}

fn simulate(cfg: &Config) -> Result<Vec<Artifact>> {
    let (p, g) = model(cfg)?;
    let traj = integrate(&p, &g, state(cfg)?, cfg.f64("t_end")?, cfg.f64("dt")?)?;
    let mut t = Table::new(&["t", "x", "y", "extinct"]);
    for (time, st) in traj.times.iter().zip(&traj.states) {
        t.push(vec![s(time), s(st.x), s(st.y), flag(traj.is_extinct_at(*time))]);
    }
    let series = |label: &str, f: fn(&NeuronState) -> f64| Series {
        label: label.into(),
        points: traj.times.iter().zip(&traj.states).map(|(&t, st)| (t, f(st))).collect(),
    };
    let plot = line_plot("trajectory", "t", "state", &[series("x", |s| s.x), series("y", |s| s.y)]);
    Ok(vec![Artifact { name: "simulate", table: t, plot: Some(plot) }])
}

fn fixed_points(cfg: &Config) -> Result<Vec<Artifact>> {
    let (p, g) = model(cfg)?;
    let reports = solve_fixed_points(&p, &g)?;
    let predicate = if p.a > 0.0 { allee_stability_predicate(&p)? } else { Vec::new() };
    let mut t =
        Table::new(&["branch", "x", "y", "eig1_re", "eig1_im", "eig2_re", "eig2_im", "stability", "stability_case"]);
    for r in &reports {
        let case = match r.branch {
            Branch::Allee => predicate
                .iter()
                .min_by(|a, b| (a.x_a - r.point.x).abs().total_cmp(&(b.x_a - r.point.x).abs()))
                .map(|c| c.case.label())
                .unwrap_or("na"),
            Branch::Interaction => "na",
        };
        let [e1, e2] = r.eigenvalues;
        t.push(vec![
            s(r.branch),
            s(r.point.x),
            s(r.point.y),
            s(e1.re),
            s(e1.im),
            s(e2.re),
            s(e2.im),
            s(r.stability),
            case.into(),
        ]);
    }
    Ok(vec![Artifact { name: "fixed_points", table: t, plot: None }])
}

fn hopf_scan(cfg: &Config) -> Result<Vec<Artifact>> {
    let (p, g) = model(cfg)?;
    let scan = scan_region(
        &p,
        &g,
        (cfg.f64("x_min")?, cfg.f64("x_max")?),
        (cfg.f64("y_min")?, cfg.f64("y_max")?),
        (cfg.usize("nx")?, cfg.usize("ny")?),
    )?;
    let mut cells = Table::new(&["kind", "ix", "iy", "x", "y"]);
    for (kind, list) in [("hopf", &scan.hopf_cells), ("takens_bogdanov", &scan.tb_cells)] {
        for c in list.iter() {
            let (x, y) = scan.cell_center(*c);
            cells.push(vec![kind.into(), s(c.ix), s(c.iy), s(x), s(y)]);
        }
    }
    match scan.hopf_centroid() {
        Some((x, y)) => println!("hopf cells: {}, centroid ({x:.4}, {y:.4})", scan.hopf_cells.len()),
        None => println!("hopf cells: 0"),
    }
    println!("takens-bogdanov candidate cells: {}", scan.tb_cells.len());

    let mut verdicts =
        Table::new(&["branch", "x", "y", "lambda", "beta", "p2", "hopf", "case", "trace", "det", "eigen_confirmed"]);
    match hopf_verdict(&p, &g) {
        Ok(list) => {
            for v in list {
                if let Some(d) = &v.diagnostic {
                    eprintln!("note: {} point at x = {:.6}: {d}", v.branch, v.point.x);
                }
                verdicts.push(vec![
                    s(v.branch),
                    s(v.point.x),
                    s(v.point.y),
                    s(v.lambda),
                    s(v.beta),
                    opt(v.p2),
                    flag(v.hopf),
                    v.case.label().into(),
                    s(v.trace),
                    s(v.det),
                    flag(v.eigen_confirmed),
                ]);
            }
        }
        Err(Error::NoFixedPoint(b)) => eprintln!("note: no fixed point on the {b} branch, no verdict"),
        Err(e) => return Err(e),
    }
    let plot = sign_map(&scan, "sign of det (green/orange > 0) and tr; hopf cells red");
    Ok(vec![
        Artifact { name: "hopf_scan", table: cells, plot: Some(plot) },
        Artifact { name: "hopf_verdict", table: verdicts, plot: None },
    ])
}

fn sweep(cfg: &Config) -> Result<Vec<Artifact>> {
    let (p, g) = model(cfg)?;
    let vary: SweepParameter = cfg.raw("vary").parse()?;
    let values = equidistant(cfg.f64("from")?, cfg.f64("to")?, cfg.usize("n")?);
    let events = parameter_sweep(&p, &g, vary, &values)?;
    let mut t = Table::new(&["parameter", "value", "kind", "points_before", "points_after"]);
    for e in events {
        t.push(vec![s(e.parameter), s(e.value), e.kind.as_str().into(), s(e.before.len()), s(e.after.len())]);
    }
    Ok(vec![Artifact { name: "sweep", table: t, plot: None }])
}

fn overlap(cfg: &Config) -> Result<Vec<Artifact>> {
    let (p, g) = model(cfg)?;
    // alpha is echoed in the metadata only; the model has no such parameter
    cfg.f64("alpha")?;
    let initials: Vec<NeuronState> = cfg.points("initials")?.into_iter().map(|(x, y)| NeuronState::new(x, y)).collect();
    if initials.is_empty() {
        return Err(Error::Config("initials: need at least one x:y pair".into()));
    }
    let series = overlap_experiment(&p, &g, &initials, cfg.f64("t_end")?, cfg.f64("dt")?)?;
    let target = series[0].target.point;
    println!("target ({:.6}, {:.6})", target.x, target.y);
    let mut t = Table::new(&["x0", "y0", "t", "overlap"]);
    let mut plot = Vec::new();
    for sr in &series {
        println!("({}, {}) -> overlap {:.4}", sr.initial.x, sr.initial.y, sr.final_overlap());
        for (time, o) in sr.times.iter().zip(&sr.overlap) {
            t.push(vec![s(sr.initial.x), s(sr.initial.y), s(time), s(o)]);
        }
        plot.push(Series {
            label: format!("({}, {})", sr.initial.x, sr.initial.y),
            points: sr.times.iter().copied().zip(sr.overlap.iter().copied()).collect(),
        });
    }
    Ok(vec![Artifact { name: "overlap", table: t, plot: Some(line_plot("overlap", "t", "overlap", &plot)) }])
}

fn sensitivity(cfg: &Config) -> Result<Vec<Artifact>> {
    let vary: SweepParameter = cfg.raw("vary").parse()?;
    let base = ModelParams::new(0.0, 1.0, 0.0, 0.0).with_time_scales(cfg.f64("tau_v")?, cfg.f64("tau_w")?);
    let spec = SensitivitySpec {
        lo: cfg.f64("lo")?,
        hi: cfg.f64("hi")?,
        n: cfg.usize("n")?,
        s0: state(cfg)?,
        t_end: cfg.f64("t_end")?,
        dt: cfg.f64("dt")?,
    };
    let r = sensitivity_sweep(&base, &gain(cfg)?, vary, &spec)?;
    let mut t = Table::new(&["parameter", "value", "t", "x", "y", "extinct"]);
    let mut plot = Vec::new();
    for (v, traj) in r.values.iter().zip(&r.trajectories) {
        for (time, st) in traj.times.iter().zip(&traj.states) {
            t.push(vec![s(vary), s(v), s(time), s(st.x), s(st.y), flag(traj.is_extinct_at(*time))]);
        }
        plot.push(Series {
            label: format!("{vary} = {v:.2}"),
            points: traj.times.iter().copied().zip(traj.states.iter().map(|s| s.x)).collect(),
        });
    }
    println!("extinct trajectories: {} of {}", r.extinct_count(), r.values.len());
    Ok(vec![Artifact { name: "sensitivity", table: t, plot: Some(line_plot("x(t) sensitivity", "t", "x", &plot)) }])
}

fn shape(cfg: &Config) -> Result<NetworkShape> {
    NetworkShape::new(cfg.usize("L")?, cfg.usize("n_u")?, cfg.usize("n_v")?)
}

fn rule(cfg: &Config, name: &str) -> Result<LearningRule> {
    let kind: RuleKind = name.parse()?;
    let eta = cfg.f64("eta")?;
    let k = cfg.f64("K")?;
    let a = cfg.f64("A")?;
    let delta_t = cfg.f64("delta_t")?;
    let stdp = StdpParams {
        b_plus: cfg.f64("B_plus")?,
        b_minus: cfg.f64("B_minus")?,
        tau_plus: cfg.f64("tau_plus")?,
        tau_minus: cfg.f64("tau_minus")?,
        gamma: cfg.f64("gamma")?,
        b: cfg.f64("B")?,
    };
    let trace = TraceParams {
        kappa: cfg.f64("kappa")?,
        lambda: cfg.f64("lambda")?,
        tau1: cfg.f64("tau1")?,
        tau2: cfg.f64("tau2")?,
    };
    let r = match kind {
        RuleKind::Hebbian => LearningRule::hebbian(eta),
        RuleKind::Oja => LearningRule::oja(k, eta),
        RuleKind::Allee => LearningRule::allee(a, k, eta),
        RuleKind::AlleeTemporal => LearningRule::allee_temporal(a, k, eta, trace, delta_t),
        stdp_kind => LearningRule::stdp(stdp_kind, stdp, delta_t, eta),
    };
    r.validate()?;
    Ok(r)
}

fn sweep_spec(cfg: &Config, rules: Vec<LearningRule>, sigmas: Vec<f64>) -> Result<NoiseSweepSpec> {
    let mut spec = NoiseSweepSpec::new(shape(cfg)?, rules, cfg.usize("patterns")?, sigmas, cfg.seeds("seeds")?);
    spec.epochs = cfg.usize("epochs")?;
    spec.mode = cfg.raw("mode").parse::<PatternMode>()?;
    spec.max_iters = cfg.usize("max_iters")?;
    spec.validate()?;
    Ok(spec)
}

fn retrieve(cfg: &Config) -> Result<Vec<Artifact>> {
    let spec = sweep_spec(cfg, vec![rule(cfg, cfg.raw("rule"))?], vec![cfg.f64("sigma")?])?;
    let mut t = Table::new(&["seed", "pattern", "accuracy", "iterations", "converged"]);
    let mut total = 0.0;
    let mut count = 0usize;
    let mut first = Vec::new();
    for &seed in &spec.seeds {
        let results = run_cell(&spec, 0, seed)?;
        for (mu, r) in results[0].iter().enumerate() {
            total += r.accuracy;
            count += 1;
            t.push(vec![s(seed), s(mu), s(r.accuracy), s(r.iterations), flag(r.converged)]);
            if seed == spec.seeds[0] {
                first.push((mu as f64, r.accuracy));
            }
        }
    }
    println!("mean accuracy {:.4} over {count} retrievals", total / count as f64);
    let plot = line_plot(
        "retrieval accuracy per pattern (first seed)",
        "pattern",
        "accuracy",
        &[Series { label: cfg.raw("rule").into(), points: first }],
    );
    Ok(vec![Artifact { name: "retrieve", table: t, plot: Some(plot) }])
}

fn noise(cfg: &Config) -> Result<Vec<Artifact>> {
    let rules = cfg.str_list("rules").iter().map(|n| rule(cfg, n)).collect::<Result<Vec<_>>>()?;
    let spec = sweep_spec(cfg, rules, cfg.f64_list("sigmas")?)?;
    let table = noise_sweep(&spec)?;
    let mut t = Table::new(&["rule", "sigma", "mean", "sd"]);
    let mut plot = Vec::new();
    for (r, rule) in table.rules.iter().enumerate() {
        for (k, sigma) in table.sigmas.iter().enumerate() {
            t.push(vec![s(rule.kind), s(sigma), s(table.mean[r][k]), s(table.sd[r][k])]);
        }
        plot.push(Series {
            label: rule.kind.to_string(),
            points: table.sigmas.iter().copied().zip(table.mean[r].iter().copied()).collect(),
        });
    }
    Ok(vec![Artifact {
        name: "noise_sweep",
        table: t,
        plot: Some(line_plot("mean accuracy vs noise", "sigma", "accuracy", &plot)),
    }])
}
