//! Flat `key = value` experiment files.
//!
//! ```text
//! # comments and blank lines are ignored
//! n = 512
//! p = 128
//! q = 128
//! theta = 1          # optional, default 1
//! beta = 2           # optional, default 2
//! replicates = 4000
//! interval = (1.2, 1.7)
//! t_grid = 0.3, 0.6, 1.0
//! n_ladder = 128, 256, 512, 1024
//! ```
//!
//! `mode` and `seed` may also appear; the command-line flags win.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::ensembles::{Beta, EnsembleParams};
use crate::spectra::Interval;
use crate::stats::{ExperimentConfig, Mode};

const KEYS: &[&str] = &[
    "mode", "seed", "n", "p", "q", "theta", "beta", "replicates", "interval", "t_grid", "n_ladder",
];

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConfigError {
    #[error("config line {line}: expected `key = value`")]
    Syntax { line: usize },
    #[error("config key `{key}`: {msg}")]
    Key { key: String, msg: String },
}

fn key_err(key: &str, msg: impl Into<String>) -> ConfigError {
    ConfigError::Key {
        key: key.to_string(),
        msg: msg.into(),
    }
}

/// Raw key-value pairs, keys validated against the schema.
pub fn parse_pairs(text: &str) -> Result<BTreeMap<String, String>, ConfigError> {
    let mut out = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or(ConfigError::Syntax { line: i + 1 })?;
        let (k, v) = (k.trim(), v.trim());
        if !KEYS.contains(&k) {
            return Err(key_err(k, "unknown key"));
        }
        if out.insert(k.to_string(), v.to_string()).is_some() {
            return Err(key_err(k, "given twice"));
        }
    }
    Ok(out)
}

fn get<T: std::str::FromStr>(
    pairs: &BTreeMap<String, String>,
    key: &str,
    what: &str,
) -> Result<Option<T>, ConfigError> {
    pairs
        .get(key)
        .map(|v| v.parse::<T>().map_err(|_| key_err(key, format!("expected {what}, got {v:?}"))))
        .transpose()
}

fn require<T: std::str::FromStr>(
    pairs: &BTreeMap<String, String>,
    key: &str,
    what: &str,
) -> Result<T, ConfigError> {
    get(pairs, key, what)?.ok_or_else(|| key_err(key, "missing"))
}

fn list<T: std::str::FromStr>(
    pairs: &BTreeMap<String, String>,
    key: &str,
    what: &str,
) -> Result<Vec<T>, ConfigError> {
    let Some(v) = pairs.get(key) else {
        return Ok(Vec::new());
    };
    v.split(',')
        .map(|s| s.trim())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<T>().map_err(|_| key_err(key, format!("expected a list of {what}, bad entry {s:?}"))))
        .collect()
}

/// Parses `(lo, hi)`, `[lo, hi]` and the half-open mixtures.
pub fn parse_interval(s: &str) -> Option<Interval> {
    let s = s.trim();
    let closed_lo = match s.chars().next()? {
        '[' => true,
        '(' => false,
        _ => return None,
    };
    let closed_hi = match s.chars().last()? {
        ']' => true,
        ')' => false,
        _ => return None,
    };
    let (lo, hi) = s[1..s.len() - 1].split_once(',')?;
    Interval::new(lo.trim().parse().ok()?, hi.trim().parse().ok()?, closed_lo, closed_hi).ok()
}

/// Resolves a config file; `mode` and `seed` override the file's values.
pub fn parse_config(text: &str, mode: Option<Mode>, seed: Option<u64>) -> Result<ExperimentConfig, ConfigError> {
    let pairs = parse_pairs(text)?;
    let mode = match mode {
        Some(m) => m,
        None => require::<String>(&pairs, "mode", "a mode name")?
            .parse()
            .map_err(|_| key_err("mode", "unknown mode"))?,
    };
    let master_seed = match seed {
        Some(s) => s,
        None => get(&pairs, "seed", "an unsigned 64-bit integer")?.unwrap_or(0),
    };
    let n: usize = require(&pairs, "n", "a positive integer")?;
    let p: usize = require(&pairs, "p", "a positive integer")?;
    let q: usize = require(&pairs, "q", "a positive integer")?;
    let theta: f64 = get(&pairs, "theta", "a nonzero number")?.unwrap_or(1.0);
    let beta_idx: u8 = get(&pairs, "beta", "1 or 2")?.unwrap_or(2);
    let beta = Beta::try_from(beta_idx).map_err(|e| key_err("beta", e.to_string()))?;
    let params = EnsembleParams::new(n, p, q, theta, beta).map_err(|e| key_err("n", e.to_string()))?;
    let replicates: usize = require(&pairs, "replicates", "a positive integer")?;
    if replicates == 0 {
        return Err(key_err("replicates", "must be positive"));
    }
    let interval = match pairs.get("interval") {
        Some(v) => Some(parse_interval(v).ok_or_else(|| {
            key_err("interval", format!("expected `(lo, hi)` or `[lo, hi]` with lo <= hi, got {v:?}"))
        })?),
        None => None,
    };
    let t_grid: Vec<f64> = list(&pairs, "t_grid", "numbers")?;
    let n_ladder: Vec<usize> = list(&pairs, "n_ladder", "positive integers")?;
    match mode {
        Mode::Counting | Mode::VarianceGrowth if interval.is_none() => {
            return Err(key_err("interval", format!("required for mode {mode}")));
        }
        Mode::HardEdge if t_grid.is_empty() => {
            return Err(key_err("t_grid", "required for mode hard_edge"));
        }
        Mode::VarianceGrowth if n_ladder.len() < 4 => {
            return Err(key_err("n_ladder", "needs at least 4 values"));
        }
        _ => {}
    }
    if t_grid.iter().any(|t| !(*t >= 0.0) || !t.is_finite()) {
        return Err(key_err("t_grid", "entries must be finite and nonnegative"));
    }
    Ok(ExperimentConfig {
        mode,
        params,
        interval,
        replicates,
        master_seed,
        t_grid,
        n_ladder,
    })
}

/// Writes a config back in the file format; floats use the shortest
/// round-trip representation.
pub fn format_config(cfg: &ExperimentConfig) -> String {
    let p = &cfg.params;
    let mut s = format!(
        "mode = {}\nseed = {}\nn = {}\np = {}\nq = {}\ntheta = {:?}\nbeta = {}\nreplicates = {}\n",
        cfg.mode,
        cfg.master_seed,
        p.n(),
        p.p_rank(),
        p.q_rank(),
        p.theta(),
        p.beta(),
        cfg.replicates
    );
    if let Some(iv) = cfg.interval {
        let l = if iv.closed_lo { '[' } else { '(' };
        let r = if iv.closed_hi { ']' } else { ')' };
        s.push_str(&format!("interval = {l}{:?}, {:?}{r}\n", iv.lo, iv.hi));
    }
    if !cfg.t_grid.is_empty() {
        let v: Vec<String> = cfg.t_grid.iter().map(|t| format!("{t:?}")).collect();
        s.push_str(&format!("t_grid = {}\n", v.join(", ")));
    }
    if !cfg.n_ladder.is_empty() {
        let v: Vec<String> = cfg.n_ladder.iter().map(|n| n.to_string()).collect();
        s.push_str(&format!("n_ladder = {}\n", v.join(", ")));
    }
    s
}
