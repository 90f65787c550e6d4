//! Command-line parsing. Precedence: flags > --config file > experiment
//! defaults.

use crate::config::{apply_config_text, ExperimentConfig, ExperimentKind};
use crate::CliError;

pub const USAGE: &str = "\
contactq — simulation and optimal control of a damped, driven qubit

USAGE:
    contactq <EXPERIMENT> [FLAGS]

EXPERIMENTS:
    simulate      one scheme, one forward run, per-step metrics
    compare       LGVI vs RK2 vs fine reference on a short horizon
    longhorizon   long-horizon strong-damping stability table
    optimize      PMP shooting for both schemes from the same pulse
    convergence   final-state error vs step size for both schemes

FLAGS (all optional; precedence: flags > --config file > defaults):
    --T <num>          horizon length
    --dt <num>         step size (T/dt must be an integer)
    --gamma <num>      amplitude-damping rate
    --alpha <num>      running-cost weight
    --umax <num>       control box bound
    --beta <num>       shooting relaxation factor in (0, 1]
    --scheme <name>    lgvi | rk2 | rkmk2 (simulate only)
    --refine <int>     reference substep factor
    --out <dir>        output directory (default: out)
    --config <file>    flat key = value config file; `# key = value`
                       metadata lines from an emitted CSV work as-is
    --help             show this message

Each experiment writes CSV files whose leading `# key = value` block records
the fully resolved configuration; rerunning from that block reproduces the
files byte for byte.
";

/// Parse `contactq <experiment> [flags]` into a validated configuration.
/// A `--help` request surfaces as `CliError::Config(USAGE)`.
pub fn parse_args(args: &[String]) -> Result<ExperimentConfig, CliError> {
    if args.is_empty() || args[0] == "--help" || args[0] == "-h" {
        return Err(CliError::Config(USAGE.to_string()));
    }
    let kind: ExperimentKind = args[0].parse().map_err(CliError::Config)?;

    // First pass: collect flag pairs, pulling out --config.
    let mut config_path: Option<String> = None;
    let mut overrides: Vec<(&str, String)> = Vec::new();
    let mut it = args[1..].iter();
    while let Some(flag) = it.next() {
        let key = match flag.as_str() {
            "--T" => "T",
            "--dt" => "dt",
            "--gamma" => "gamma",
            "--alpha" => "alpha",
            "--umax" => "umax",
            "--beta" => "beta",
            "--scheme" => "scheme",
            "--refine" => "refine",
            "--out" => "out",
            "--config" => "config",
            "--help" | "-h" => return Err(CliError::Config(USAGE.to_string())),
            other => {
                return Err(CliError::Config(format!(
                    "unknown flag '{other}' (see --help)"
                )))
            }
        };
        let Some(value) = it.next() else {
            return Err(CliError::Config(format!("flag {flag} expects a value")));
        };
        if key == "config" {
            config_path = Some(value.clone());
        } else {
            overrides.push((key, value.clone()));
        }
    }

    // Defaults, then file, then flags.
    let mut cfg = ExperimentConfig::defaults(kind);
    if let Some(path) = config_path {
        let text =
            std::fs::read_to_string(&path).map_err(|e| CliError::Io(path.clone().into(), e))?;
        apply_config_text(&mut cfg, &text)?;
        // The subcommand, not the file, decides what runs.
        cfg.kind = kind;
    }
    for (key, value) in &overrides {
        cfg.set(key, value)?;
    }
    cfg.validate()?;
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use contactq::Scheme;

    fn argv(parts: &[&str]) -> Vec<String> {
        parts.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn subcommand_selects_defaults() {
        let cfg = parse_args(&argv(&["longhorizon"])).unwrap();
        assert_eq!(cfg.kind, ExperimentKind::LongHorizon);
        assert_eq!(cfg.ocp.gamma, 10.0);
    }

    #[test]
    fn flags_override_defaults() {
        let cfg = parse_args(&argv(&["compare", "--gamma", "10", "--out", "/tmp/x"])).unwrap();
        assert_eq!(cfg.ocp.gamma, 10.0);
        assert_eq!(cfg.out_dir, std::path::PathBuf::from("/tmp/x"));
        // Echoed into the metadata header.
        assert!(cfg.metadata_header().contains("# gamma = 10\n"));
    }

    #[test]
    fn scheme_flag_parses() {
        let cfg = parse_args(&argv(&["simulate", "--scheme", "rkmk2"])).unwrap();
        assert_eq!(cfg.scheme, Scheme::Rkmk2);
    }

    #[test]
    fn unknown_flag_is_rejected() {
        assert!(parse_args(&argv(&["compare", "--speed", "11"])).is_err());
    }

    #[test]
    fn invalid_values_are_rejected() {
        assert!(parse_args(&argv(&["compare", "--dt", "0.013"])).is_err());
        assert!(parse_args(&argv(&["compare", "--beta", "1.5"])).is_err());
        assert!(parse_args(&argv(&["warp"])).is_err());
    }
}
