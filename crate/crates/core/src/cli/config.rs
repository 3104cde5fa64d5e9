//! Flat `key = value` configuration with per-command defaults.

use std::collections::BTreeMap;
use std::path::Path;

use crate::error::{Error, Result};

const MODEL_KEYS: &[(&str, &str)] = &[
    ("gain", "sigmoid"),
    ("gain_a", "1"),
    ("gain_b", "1"),
    ("gain_c", "1"),
    ("gain_d", "1"),
    ("tau_v", "1"),
    ("tau_w", "1"),
];

const STDP_KEYS: &[(&str, &str)] = &[
    ("B_plus", "0.01"),
    ("B_minus", "0.012"),
    ("tau_plus", "20"),
    ("tau_minus", "20"),
    ("gamma", "0.7"),
    ("B", "0.01"),
    ("delta_t", "0.1"),
    ("kappa", "0.1"),
    ("lambda", "0.05"),
    ("tau1", "0.6"),
    ("tau2", "0.6"),
];

const SIGMA_GRID: &str = "0,0.05,0.1,0.15,0.2,0.25,0.3,0.35,0.4,0.45,0.5";
const DEFAULT_INITIALS: &str = "0.1:0.2;0.3:0.5;0.6:0.8;0.9:1.2;1.5:1.8;0.1:4;2:0.1";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Simulate,
    FixedPoints,
    HopfScan,
    Sweep,
    Overlap,
    Sensitivity,
    Retrieve,
    NoiseSweep,
}

impl CommandKind {
    pub fn name(&self) -> &'static str {
        match self {
            CommandKind::Simulate => "simulate",
            CommandKind::FixedPoints => "fixed-points",
            CommandKind::HopfScan => "hopf-scan",
            CommandKind::Sweep => "sweep",
            CommandKind::Overlap => "overlap",
            CommandKind::Sensitivity => "sensitivity",
            CommandKind::Retrieve => "retrieve",
            CommandKind::NoiseSweep => "noise-sweep",
        }
    }

    fn defaults(&self) -> Vec<(&'static str, &'static str)> {
        let mut d: Vec<(&str, &str)> = match self {
            CommandKind::Simulate => vec![
                ("A", "0.4"),
                ("K", "2"),
                ("u", "1"),
                ("m", "0.5"),
                ("x0", "0.6"),
                ("y0", "0.8"),
                ("t_end", "20"),
                ("dt", "0.01"),
            ],
            CommandKind::FixedPoints => vec![("A", "1.7"), ("K", "0.4"), ("u", "2.5"), ("m", "0.01")],
            CommandKind::HopfScan => vec![
                ("A", "1"),
                ("K", "2"),
                ("u", "2"),
                ("m", "5"),
                ("x_min", "0.01"),
                ("x_max", "1"),
                ("y_min", "0.01"),
                ("y_max", "3"),
                ("nx", "400"),
                ("ny", "400"),
            ],
            CommandKind::Sweep => vec![
                ("A", "0.4"),
                ("K", "0.4"),
                ("u", "1.5"),
                ("m", "2"),
                ("vary", "u"),
                ("from", "1.6"),
                ("to", "1.4"),
                ("n", "21"),
            ],
            CommandKind::Overlap => vec![
                ("A", "0.4"),
                ("K", "2"),
                ("u", "1"),
                ("m", "0.5"),
                ("alpha", "1"),
                ("initials", DEFAULT_INITIALS),
                ("t_end", "20"),
                ("dt", "0.01"),
            ],
            CommandKind::Sensitivity => vec![
                ("vary", "A"),
                ("lo", "0.1"),
                ("hi", "4.6"),
                ("n", "10"),
                ("x0", "0.5"),
                ("y0", "0.5"),
                ("t_end", "20"),
                ("dt", "0.01"),
            ],
            CommandKind::Retrieve => vec![
                ("L", "5"),
                ("n_u", "50"),
                ("n_v", "50"),
                ("patterns", "150"),
                ("rule", "allee"),
                ("A", "2"),
                ("K", "1"),
                ("eta", "0.01"),
                ("sigma", "0.3"),
                ("seeds", "0..20"),
                ("epochs", "1"),
                ("mode", "hetero"),
                ("max_iters", "50"),
            ],
            CommandKind::NoiseSweep => vec![
                ("L", "5"),
                ("n_u", "25"),
                ("n_v", "25"),
                ("patterns", "10"),
                ("rules", "hebbian,oja,allee,stdp_pair,stdp_weight,stdp_addmul,stdp_power,stdp_continuous"),
                ("A", "1"),
                ("K", "5"),
                ("eta", "0.01"),
                ("sigmas", SIGMA_GRID),
                ("seeds", "0..20"),
                ("epochs", "1"),
                ("mode", "hetero"),
                ("max_iters", "50"),
            ],
        };
        match self {
            CommandKind::Retrieve | CommandKind::NoiseSweep => d.extend_from_slice(STDP_KEYS),
            _ => d.extend_from_slice(MODEL_KEYS),
        }
        d
    }
}

/// Resolved configuration: every key of the command, defaults filled in.
#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub command: CommandKind,
    values: BTreeMap<String, String>,
}

fn split_pair(line: &str) -> Option<(&str, &str)> {
    let (k, v) = line.split_once('=')?;
    Some((k.trim(), v.trim()))
}

/// `key = value` lines; `#` starts a comment.
pub fn parse_pairs(text: &str) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = split_pair(line).ok_or_else(|| Error::Config(format!("line {}: expected key = value", n + 1)))?;
        if k.is_empty() {
            return Err(Error::Config(format!("line {}: empty key", n + 1)));
        }
        out.push((k.to_string(), v.to_string()));
    }
    Ok(out)
}

impl Config {
    pub fn defaults(command: CommandKind) -> Self {
        let values = command.defaults().into_iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
        Config { command, values }
    }

    /// Defaults, then the file, then `--set` overrides.
    pub fn load(command: CommandKind, path: Option<&Path>, sets: &[String]) -> Result<Self> {
        let mut cfg = Config::defaults(command);
        if let Some(p) = path {
            let text =
                std::fs::read_to_string(p).map_err(|e| Error::Config(format!("cannot read {}: {e}", p.display())))?;
            for (k, v) in parse_pairs(&text)? {
                cfg.set(&k, &v)?;
            }
        }
        for s in sets {
            let (k, v) = split_pair(s).ok_or_else(|| Error::Config(format!("--set expects key=value, got '{s}'")))?;
            cfg.set(k, v)?;
        }
        Ok(cfg)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        if key == "command" {
            if value != self.command.name() {
                return Err(Error::Config(format!(
                    "config is for '{value}' but the command is '{}'",
                    self.command.name()
                )));
            }
            return Ok(());
        }
        match self.values.get_mut(key) {
            Some(slot) => {
                *slot = value.to_string();
                Ok(())
            }
            None => Err(Error::Config(format!("unknown key '{key}' for {}", self.command.name()))),
        }
    }

    pub fn raw(&self, key: &str) -> &str {
        self.values.get(key).map(String::as_str).unwrap_or_else(|| panic!("key '{key}' missing from schema"))
    }

    pub fn f64(&self, key: &str) -> Result<f64> {
        let raw = self.raw(key);
        raw.parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| Error::Config(format!("{key}: expected a finite number, got '{raw}'")))
    }

    pub fn usize(&self, key: &str) -> Result<usize> {
        let raw = self.raw(key);
        raw.parse().map_err(|_| Error::Config(format!("{key}: expected a non-negative integer, got '{raw}'")))
    }

    pub fn f64_list(&self, key: &str) -> Result<Vec<f64>> {
        let raw = self.raw(key);
        if raw.is_empty() {
            return Ok(Vec::new());
        }
        raw.split(',')
            .map(|s| {
                s.trim()
                    .parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| Error::Config(format!("{key}: bad number '{}'", s.trim())))
            })
            .collect()
    }

    pub fn str_list(&self, key: &str) -> Vec<String> {
        self.raw(key).split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
    }

    /// `a..b` (half-open) or a comma list.
    pub fn seeds(&self, key: &str) -> Result<Vec<u64>> {
        let raw = self.raw(key);
        let bad = || Error::Config(format!("{key}: expected 'a..b' or a comma list, got '{raw}'"));
        if let Some((a, b)) = raw.split_once("..") {
            let a: u64 = a.trim().parse().map_err(|_| bad())?;
            let b: u64 = b.trim().parse().map_err(|_| bad())?;
            return Ok((a..b).collect());
        }
        if raw.is_empty() {
            return Ok(Vec::new());
        }
        raw.split(',').map(|s| s.trim().parse().map_err(|_| bad())).collect()
    }

    /// `x:y` pairs separated by `;`.
    pub fn points(&self, key: &str) -> Result<Vec<(f64, f64)>> {
        let raw = self.raw(key);
        raw.split(';')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|p| {
                let (x, y) =
                    p.split_once(':').ok_or_else(|| Error::Config(format!("{key}: expected x:y, got '{p}'")))?;
                let num = |s: &str| {
                    s.trim().parse::<f64>().map_err(|_| Error::Config(format!("{key}: bad number '{}'", s.trim())))
                };
                Ok((num(x)?, num(y)?))
            })
            .collect()
    }

    /// Sorted `key = value` lines preceded by the header comments.
    pub fn render_meta(&self, header: &[(&str, String)]) -> String {
        let mut out = String::new();
        for (k, v) in header {
            out.push_str(&format!("# {k} = {v}\n"));
        }
        out.push_str(&format!("command = {}\n", self.command.name()));
        for (k, v) in &self.values {
            out.push_str(&format!("{k} = {v}\n"));
        }
        out
    }
}
