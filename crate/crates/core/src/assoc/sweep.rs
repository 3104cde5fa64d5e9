use rayon::prelude::*;

use super::pattern::{corrupt, generate_patterns_with_mode, NetworkShape, PatternMode};
use super::retrieve::{retrieve, RetrievalResult, DEFAULT_MAX_ITERS};
use super::rules::LearningRule;
use super::train::train;
use crate::error::{Error, Result};
use crate::seeding::{derive_seed, stream};

#[derive(Debug, Clone, PartialEq)]
pub struct NoiseSweepSpec {
    pub shape: NetworkShape,
    pub rules: Vec<LearningRule>,
    pub patterns: usize,
    pub sigmas: Vec<f64>,
    pub seeds: Vec<u64>,
    pub epochs: usize,
    pub mode: PatternMode,
    pub max_iters: usize,
}

impl NoiseSweepSpec {
    pub fn new(
        shape: NetworkShape,
        rules: Vec<LearningRule>,
        patterns: usize,
        sigmas: Vec<f64>,
        seeds: Vec<u64>,
    ) -> Self {
        NoiseSweepSpec {
            shape,
            rules,
            patterns,
            sigmas,
            seeds,
            epochs: 1,
            mode: PatternMode::Hetero,
            max_iters: DEFAULT_MAX_ITERS,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.shape.validate()?;
        if self.rules.is_empty() {
            return Err(Error::InvalidParameter("noise sweep needs at least one rule".into()));
        }
        if self.sigmas.is_empty() {
            return Err(Error::InvalidParameter("noise sweep needs at least one sigma".into()));
        }
        if self.seeds.is_empty() {
            return Err(Error::InvalidParameter("noise sweep needs at least one seed".into()));
        }
        if self.patterns == 0 {
            return Err(Error::InvalidParameter("noise sweep needs at least one pattern".into()));
        }
        if let Some(s) = self.sigmas.iter().find(|s| !(0.0..=1.0).contains(*s)) {
            return Err(Error::InvalidParameter(format!("noise level must lie in [0, 1], got {s}")));
        }
        for r in &self.rules {
            r.validate()?;
        }
        Ok(())
    }
}

/// Accuracy per rule and noise level.
#[derive(Debug, Clone, PartialEq)]
pub struct AccuracyTable {
    pub rules: Vec<LearningRule>,
    pub sigmas: Vec<f64>,
    pub seeds: Vec<u64>,
    /// `[rule][sigma]`, pooled over seeds and patterns.
    pub mean: Vec<Vec<f64>>,
    pub sd: Vec<Vec<f64>>,
    /// `[rule][sigma][seed]`, mean over patterns.
    pub per_seed: Vec<Vec<Vec<f64>>>,
}

impl AccuracyTable {
    /// Mean over all noise levels for one rule row.
    pub fn row_mean(&self, rule: usize) -> f64 {
        self.mean[rule].iter().sum::<f64>() / self.sigmas.len() as f64
    }
}

/// Retrieval results `[sigma][pattern]` for one rule and one seed.
pub fn run_cell(spec: &NoiseSweepSpec, rule: usize, seed: u64) -> Result<Vec<Vec<RetrievalResult>>> {
    let pats =
        generate_patterns_with_mode(&spec.shape, spec.patterns, derive_seed(seed, &[stream::PATTERNS]), spec.mode)?;
    let w = train(&spec.shape, &spec.rules[rule], &pats, derive_seed(seed, &[stream::INIT]), spec.epochs)?;
    spec.sigmas
        .iter()
        .enumerate()
        .map(|(k, &sigma)| {
            pats.iter()
                .enumerate()
                .map(|(mu, p)| {
                    let cue = corrupt(&p.u, sigma, derive_seed(seed, &[stream::CORRUPT, k as u64, mu as u64]))?;
                    retrieve(&w, &cue, &p.v, spec.max_iters)
                })
                .collect()
        })
        .collect()
}

/// For each seed: draw patterns, train every rule from the same
/// initialization, corrupt each input at each sigma (the flip set depends on
/// seed, sigma and pattern only, so rules see identical cues) and retrieve.
pub fn noise_sweep(spec: &NoiseSweepSpec) -> Result<AccuracyTable> {
    spec.validate()?;
    let cells: Vec<(usize, usize)> =
        (0..spec.rules.len()).flat_map(|r| (0..spec.seeds.len()).map(move |s| (r, s))).collect();
    // [cell][sigma][pattern]
    let scores: Vec<Vec<Vec<f64>>> = cells
        .par_iter()
        .map(|&(ri, si)| {
            let results = run_cell(spec, ri, spec.seeds[si])?;
            Ok(results.into_iter().map(|row| row.into_iter().map(|r| r.accuracy).collect()).collect())
        })
        .collect::<Result<_>>()?;

    let (nr, ns, nk) = (spec.rules.len(), spec.seeds.len(), spec.sigmas.len());
    let mut mean = vec![vec![0.0; nk]; nr];
    let mut sd = vec![vec![0.0; nk]; nr];
    let mut per_seed = vec![vec![vec![0.0; ns]; nk]; nr];
    for r in 0..nr {
        for k in 0..nk {
            let pooled: Vec<f64> = (0..ns).flat_map(|s| scores[r * ns + s][k].iter().copied()).collect();
            let n = pooled.len() as f64;
            let m = pooled.iter().sum::<f64>() / n;
            let var =
                if pooled.len() > 1 { pooled.iter().map(|a| (a - m).powi(2)).sum::<f64>() / (n - 1.0) } else { 0.0 };
            mean[r][k] = m;
            sd[r][k] = var.sqrt();
            for s in 0..ns {
                let v = &scores[r * ns + s][k];
                per_seed[r][k][s] = v.iter().sum::<f64>() / v.len() as f64;
            }
        }
    }
    Ok(AccuracyTable {
        rules: spec.rules.clone(),
        sigmas: spec.sigmas.clone(),
        seeds: spec.seeds.clone(),
        mean,
        sd,
        per_seed,
    })
}
