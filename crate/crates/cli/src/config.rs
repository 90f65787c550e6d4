//! Experiment configuration: per-experiment defaults, the flat key = value
//! config-file format, flag overrides, and the metadata header every output
//! file embeds.
//!
//! Precedence is flags > file > defaults. The metadata header records the
//! full resolved configuration as `# key = value` lines, so any output file
//! doubles as a config file that reproduces itself.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use contactq::{OcpConfig, Scheme};

use crate::CliError;

/// Which experiment driver to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExperimentKind {
    /// One scheme, one forward run, per-step metrics.
    Simulate,
    /// Contact LGVI vs Heun RK2 vs a fine reference on a short horizon.
    Compare,
    /// Long-horizon strong-damping stability table.
    LongHorizon,
    /// PMP shooting for both schemes from the same initial pulse.
    Optimize,
    /// Final-state error versus step size for both schemes.
    Convergence,
}

impl ExperimentKind {
    pub fn name(&self) -> &'static str {
        match self {
            ExperimentKind::Simulate => "simulate",
            ExperimentKind::Compare => "compare",
            ExperimentKind::LongHorizon => "longhorizon",
            ExperimentKind::Optimize => "optimize",
            ExperimentKind::Convergence => "convergence",
        }
    }
}

impl FromStr for ExperimentKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "simulate" => Ok(ExperimentKind::Simulate),
            "compare" => Ok(ExperimentKind::Compare),
            "longhorizon" => Ok(ExperimentKind::LongHorizon),
            "optimize" => Ok(ExperimentKind::Optimize),
            "convergence" => Ok(ExperimentKind::Convergence),
            other => Err(format!(
                "unknown experiment '{other}' (expected simulate|compare|longhorizon|optimize|convergence)"
            )),
        }
    }
}

/// Fully resolved configuration of one experiment run.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    pub ocp: OcpConfig,
    /// Scheme for `simulate`; the comparison experiments always run their
    /// fixed scheme set.
    pub scheme: Scheme,
    /// Pulse amplitude A in u(t) = A sin(πt/T).
    pub amplitude: f64,
    /// Substep factor of the fine reference trajectory.
    pub refine: u32,
    /// Step-size ladder for `convergence`.
    pub dt_list: Vec<f64>,
    pub out_dir: PathBuf,
}

impl ExperimentConfig {
    /// The experiment's documented default parameters.
    pub fn defaults(kind: ExperimentKind) -> Self {
        let mut ocp = OcpConfig::default();
        let mut refine = 20;
        match kind {
            ExperimentKind::Simulate | ExperimentKind::Compare => {
                ocp.t_final = 10.0;
                ocp.gamma = 1.0;
            }
            ExperimentKind::LongHorizon => {
                ocp.t_final = 100.0;
                ocp.gamma = 10.0;
            }
            ExperimentKind::Optimize => {
                // OcpConfig::default is already the optimize setup.
            }
            ExperimentKind::Convergence => {
                ocp.t_final = 1.0;
                ocp.dt = 0.02;
                ocp.gamma = 1.0;
                refine = 100;
            }
        }
        ExperimentConfig {
            kind,
            ocp,
            scheme: Scheme::ContactLgvi,
            amplitude: 4.0,
            refine,
            dt_list: vec![0.02, 0.01, 0.005],
            out_dir: PathBuf::from("out"),
        }
    }

    /// Apply one `key = value` assignment.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        let bad = |what: &str| {
            Err(CliError::Config(format!(
                "invalid value '{value}' for {key}: expected {what}"
            )))
        };
        match key {
            // The subcommand wins over a config-file experiment key, so a
            // mismatch is only rejected when it names an unknown kind.
            "experiment" => {
                value.parse::<ExperimentKind>().map_err(CliError::Config)?;
            }
            "scheme" => match value.parse::<Scheme>() {
                Ok(s) => self.scheme = s,
                Err(e) => return Err(CliError::Config(e)),
            },
            "T" => match value.parse::<f64>() {
                Ok(v) => self.ocp.t_final = v,
                Err(_) => return bad("a number"),
            },
            "dt" => match value.parse::<f64>() {
                Ok(v) => {
                    self.ocp.dt = v;
                    // A single explicit dt also collapses the convergence
                    // ladder to that one value.
                    self.dt_list = vec![v];
                }
                Err(_) => return bad("a number"),
            },
            "gamma" => match value.parse::<f64>() {
                Ok(v) => self.ocp.gamma = v,
                Err(_) => return bad("a number"),
            },
            "alpha" => match value.parse::<f64>() {
                Ok(v) => self.ocp.alpha = v,
                Err(_) => return bad("a number"),
            },
            "umax" => match value.parse::<f64>() {
                Ok(v) => self.ocp.u_max = v,
                Err(_) => return bad("a number"),
            },
            "beta" => match value.parse::<f64>() {
                Ok(v) => self.ocp.beta = v,
                Err(_) => return bad("a number"),
            },
            "amplitude" => match value.parse::<f64>() {
                Ok(v) => self.amplitude = v,
                Err(_) => return bad("a number"),
            },
            "refine" => match value.parse::<u32>() {
                Ok(v) if v >= 1 => self.refine = v,
                _ => return bad("a positive integer"),
            },
            "grid_points" => match value.parse::<usize>() {
                Ok(v) => self.ocp.grid_points = v,
                Err(_) => return bad("an integer"),
            },
            "refine_iters" => match value.parse::<usize>() {
                Ok(v) => self.ocp.refine_iters = v,
                Err(_) => return bad("an integer"),
            },
            "max_iters" => match value.parse::<usize>() {
                Ok(v) => self.ocp.max_iters = v,
                Err(_) => return bad("an integer"),
            },
            "dj_tol" => match value.parse::<f64>() {
                Ok(v) => self.ocp.dj_tol = v,
                Err(_) => return bad("a number"),
            },
            "dt_list" => {
                let mut list = Vec::new();
                for part in value.split(',') {
                    match part.trim().parse::<f64>() {
                        Ok(v) => list.push(v),
                        Err(_) => return bad("a comma-separated list of numbers"),
                    }
                }
                if list.is_empty() {
                    return bad("a non-empty list");
                }
                self.dt_list = list;
            }
            "out" => self.out_dir = PathBuf::from(value),
            other => {
                return Err(CliError::Config(format!(
                    "unknown configuration key '{other}'"
                )));
            }
        }
        Ok(())
    }

    /// Validate the resolved configuration.
    pub fn validate(&self) -> Result<(), CliError> {
        self.ocp
            .validate()
            .map_err(|e| CliError::Config(e.to_string()))?;
        if !(self.amplitude.is_finite()) {
            return Err(CliError::Config("amplitude must be finite".into()));
        }
        if self.amplitude.abs() > self.ocp.u_max {
            return Err(CliError::Config(format!(
                "pulse amplitude {} exceeds the control bound {}",
                self.amplitude, self.ocp.u_max
            )));
        }
        if self.kind == ExperimentKind::Convergence {
            for &dt in &self.dt_list {
                let trial = OcpConfig {
                    dt,
                    ..self.ocp.clone()
                };
                trial
                    .validate()
                    .map_err(|e| CliError::Config(format!("dt_list entry {dt}: {e}")))?;
            }
        }
        Ok(())
    }

    /// The `# key = value` metadata block embedded at the top of every
    /// output file. Parsing these lines back reproduces this configuration
    /// exactly (floats print in round-trip precision).
    pub fn metadata_header(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# experiment = \"{}\"", self.kind.name());
        let _ = writeln!(s, "# scheme = \"{}\"", self.scheme);
        let _ = writeln!(s, "# T = {}", self.ocp.t_final);
        let _ = writeln!(s, "# dt = {}", self.ocp.dt);
        let _ = writeln!(s, "# gamma = {}", self.ocp.gamma);
        let _ = writeln!(s, "# alpha = {}", self.ocp.alpha);
        let _ = writeln!(s, "# umax = {}", self.ocp.u_max);
        let _ = writeln!(s, "# beta = {}", self.ocp.beta);
        let _ = writeln!(s, "# amplitude = {}", self.amplitude);
        let _ = writeln!(s, "# refine = {}", self.refine);
        let _ = writeln!(s, "# grid_points = {}", self.ocp.grid_points);
        let _ = writeln!(s, "# refine_iters = {}", self.ocp.refine_iters);
        let _ = writeln!(s, "# max_iters = {}", self.ocp.max_iters);
        let _ = writeln!(s, "# dj_tol = {}", self.ocp.dj_tol);
        let dts: Vec<String> = self.dt_list.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(s, "# dt_list = \"{}\"", dts.join(","));
        let _ = writeln!(s, "# out = \"{}\"", self.out_dir.display());
        s
    }
}

fn strip_quotes(v: &str) -> &str {
    let v = v.trim();
    if v.len() >= 2 && v.starts_with('"') && v.ends_with('"') {
        &v[1..v.len() - 1]
    } else {
        v
    }
}

/// Parse a flat `key = value` config file (strings quoted) into assignments
/// applied on top of `cfg`.
///
/// Lines starting with `#` are comments, except that a comment of the form
/// `# key = value` with a known key is applied too — this is exactly the
/// metadata header format, so an emitted CSV header block can be fed back
/// directly.
pub fn apply_config_text(cfg: &mut ExperimentConfig, text: &str) -> Result<(), CliError> {
    for (lineno, raw) in text.lines().enumerate() {
        let mut line = raw.trim();
        let is_comment = line.starts_with('#');
        if is_comment {
            line = line.trim_start_matches('#').trim();
        }
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            if is_comment {
                continue; // plain prose comment
            }
            return Err(CliError::Config(format!(
                "line {}: expected 'key = value', got '{raw}'",
                lineno + 1
            )));
        };
        let key = key.trim();
        let value = strip_quotes(value);
        if is_comment && !KNOWN_KEYS.contains(&key) {
            continue; // comment that merely looks like an assignment
        }
        cfg.set(key, value)?;
    }
    Ok(())
}

const KNOWN_KEYS: [&str; 16] = [
    "experiment",
    "scheme",
    "T",
    "dt",
    "gamma",
    "alpha",
    "umax",
    "beta",
    "amplitude",
    "refine",
    "grid_points",
    "refine_iters",
    "max_iters",
    "dj_tol",
    "dt_list",
    "out",
];
