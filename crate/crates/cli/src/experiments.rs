//! Experiment drivers. Each writes one CSV per series into the output
//! directory, prefixed with the resolved-config metadata block, and returns
//! the list of files written.
//!
//! All runs start from ρ0 = |1⟩⟨1| and target ρ_target = |0⟩⟨0|. Numeric
//! fields print in round-trip precision, so reruns from the same resolved
//! configuration are byte-identical.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use contactq::{
    accumulate_cost, backward_sweep, global_error, propagate, reference_trajectory, shoot,
    step_series, summarize, ControlSchedule, CostAccumulator, CostateSeq, Herm2, RunSummary,
    Scheme, ShootResult, StepMetrics, Trajectory,
};

use crate::config::{ExperimentConfig, ExperimentKind};
use crate::CliError;

fn initial_state() -> Herm2 {
    Herm2::ket1()
}

fn target_state() -> Herm2 {
    Herm2::ket0()
}

/// Format a float with full round-trip precision (Display is the shortest
/// representation that parses back to the same bits).
fn num(v: f64) -> String {
    v.to_string()
}

struct CsvFile {
    path: PathBuf,
    body: String,
}

impl CsvFile {
    fn new(cfg: &ExperimentConfig, name: &str, columns: &str) -> CsvFile {
        let mut body = cfg.metadata_header();
        body.push_str(columns);
        body.push('\n');
        CsvFile {
            path: cfg.out_dir.join(name),
            body,
        }
    }

    fn row(&mut self, fields: &[String]) {
        self.body.push_str(&fields.join(","));
        self.body.push('\n');
    }

    fn write(self) -> Result<PathBuf, CliError> {
        if let Some(parent) = self.path.parent() {
            fs::create_dir_all(parent).map_err(|e| CliError::Io(self.path.clone(), e))?;
        }
        let mut f = fs::File::create(&self.path).map_err(|e| CliError::Io(self.path.clone(), e))?;
        f.write_all(self.body.as_bytes())
            .map_err(|e| CliError::Io(self.path.clone(), e))?;
        Ok(self.path)
    }
}

/// A trajectory with its costates, accumulated cost and per-step metrics.
struct AnalyzedRun {
    traj: Trajectory,
    rows: Vec<StepMetrics>,
    summary: RunSummary,
}

fn analyze(
    traj: Trajectory,
    costates: &CostateSeq,
    z: &CostAccumulator,
    reference: Option<&Trajectory>,
) -> Result<AnalyzedRun, CliError> {
    let rows = step_series(&traj, costates, z, reference).map_err(CliError::Core)?;
    let summary = summarize(&traj, costates, z, reference).map_err(CliError::Core)?;
    Ok(AnalyzedRun {
        traj,
        rows,
        summary,
    })
}

fn run_scheme(
    scheme: Scheme,
    cfg: &ExperimentConfig,
    controls: &ControlSchedule,
    reference: Option<&Trajectory>,
) -> Result<AnalyzedRun, CliError> {
    let traj = propagate(scheme, initial_state(), controls, cfg.ocp.dt, cfg.ocp.gamma);
    let costates = backward_sweep(&traj, scheme, target_state(), cfg.ocp.dt, cfg.ocp.gamma)
        .map_err(CliError::Core)?;
    let z = accumulate_cost(controls, cfg.ocp.alpha, cfg.ocp.dt);
    analyze(traj, &costates, &z, reference)
}

fn push_step_rows(file: &mut CsvFile, run: &AnalyzedRun, with_glob: bool) {
    for row in &run.rows {
        let b = run.traj.states[row.k].bloch();
        let mut fields = vec![
            row.k.to_string(),
            num(run.traj.t(row.k)),
            run.traj.scheme.name().to_string(),
            num(b[0]),
            num(b[1]),
            num(b[2]),
            num(row.trace_drift),
            num(row.pos_drift),
            num(row.theta),
        ];
        if with_glob {
            fields.push(num(row.glob_err.unwrap_or(f64::NAN)));
        }
        file.row(&fields);
    }
}

fn push_summary_row(file: &mut CsvFile, s: &RunSummary, with_glob: bool) {
    let mut fields = vec![
        s.scheme.name().to_string(),
        num(s.max_trace_drift),
        num(s.max_pos_drift),
        num(s.max_abs_theta),
    ];
    if with_glob {
        fields.push(num(s.max_glob_err.unwrap_or(f64::NAN)));
    }
    fields.push(s.diverged.map(|d| d.to_string()).unwrap_or_default());
    file.row(&fields);
}

const STEP_COLUMNS: &str = "k,t,scheme,bloch_x,bloch_y,bloch_z,trace_drift,pos_drift,theta";
const SUMMARY_COLUMNS: &str = "scheme,max_trace_drift,max_pos_drift,max_abs_theta";

/// Single-scheme forward run with per-step metrics.
///
/// The RKMK(2) scheme has no adjoint recursion, so its θ column is NaN.
pub fn run_simulate(cfg: &ExperimentConfig) -> Result<Vec<PathBuf>, CliError> {
    let n = cfg.ocp.steps();
    let controls = ControlSchedule::sine_pulse(cfg.amplitude, cfg.ocp.t_final, n);
    let z = accumulate_cost(&controls, cfg.ocp.alpha, cfg.ocp.dt);
    let traj = propagate(
        cfg.scheme,
        initial_state(),
        &controls,
        cfg.ocp.dt,
        cfg.ocp.gamma,
    );
    let costates = match cfg.scheme {
        Scheme::Rkmk2 => CostateSeq {
            p: vec![Herm2::nan(); n + 1],
            truncated_at: None,
        },
        s => backward_sweep(&traj, s, target_state(), cfg.ocp.dt, cfg.ocp.gamma)
            .map_err(CliError::Core)?,
    };
    let mut run = analyze(traj, &costates, &z, None)?;
    if cfg.scheme == Scheme::Rkmk2 {
        // No costates, so the contact defect is undefined rather than
        // infinite.
        run.summary.max_abs_theta = f64::NAN;
    }

    let mut steps = CsvFile::new(cfg, "simulate_steps.csv", STEP_COLUMNS);
    push_step_rows(&mut steps, &run, false);
    let mut summary = CsvFile::new(
        cfg,
        "simulate_summary.csv",
        &format!("{SUMMARY_COLUMNS},diverged_index"),
    );
    push_summary_row(&mut summary, &run.summary, false);

    Ok(vec![steps.write()?, summary.write()?])
}

/// Short-horizon comparison: contact LGVI and Heun RK2 against a refined
/// LGVI reference, with per-step drift and global-error series.
pub fn run_compare(cfg: &ExperimentConfig) -> Result<Vec<PathBuf>, CliError> {
    let n = cfg.ocp.steps();
    let controls = ControlSchedule::sine_pulse(cfg.amplitude, cfg.ocp.t_final, n);
    let reference = reference_trajectory(
        initial_state(),
        &controls,
        cfg.ocp.dt,
        cfg.ocp.gamma,
        cfg.refine,
    );

    let mut steps = CsvFile::new(
        cfg,
        "compare_steps.csv",
        &format!("{STEP_COLUMNS},glob_err"),
    );
    let mut summary = CsvFile::new(
        cfg,
        "compare_summary.csv",
        &format!("{SUMMARY_COLUMNS},max_glob_err,diverged_index"),
    );
    for scheme in [Scheme::ContactLgvi, Scheme::Rk2Heun] {
        let run = run_scheme(scheme, cfg, &controls, Some(&reference))?;
        push_step_rows(&mut steps, &run, true);
        push_summary_row(&mut summary, &run.summary, true);
    }

    Ok(vec![steps.write()?, summary.write()?])
}

/// Long-horizon stability: the two-row maxima table plus per-step series.
pub fn run_longhorizon(cfg: &ExperimentConfig) -> Result<Vec<PathBuf>, CliError> {
    let n = cfg.ocp.steps();
    let controls = ControlSchedule::sine_pulse(cfg.amplitude, cfg.ocp.t_final, n);

    let mut steps = CsvFile::new(cfg, "longhorizon_steps.csv", STEP_COLUMNS);
    let mut summary = CsvFile::new(
        cfg,
        "longhorizon_summary.csv",
        &format!("{SUMMARY_COLUMNS},diverged_index"),
    );
    for scheme in [Scheme::ContactLgvi, Scheme::Rk2Heun] {
        let run = run_scheme(scheme, cfg, &controls, None)?;
        push_step_rows(&mut steps, &run, false);
        push_summary_row(&mut summary, &run.summary, false);
    }

    Ok(vec![steps.write()?, summary.write()?])
}

/// PMP shooting for both schemes from the identical initial pulse: cost
/// history per iteration, final pulses, and drift along the final
/// trajectories.
pub fn run_optimize(cfg: &ExperimentConfig) -> Result<Vec<PathBuf>, CliError> {
    let n = cfg.ocp.steps();
    let u0 = ControlSchedule::sine_pulse(cfg.amplitude, cfg.ocp.t_final, n);

    let mut results: Vec<(Scheme, ShootResult)> = Vec::new();
    for scheme in [Scheme::ContactLgvi, Scheme::Rk2Heun] {
        let res = shoot(&cfg.ocp, scheme, initial_state(), target_state(), &u0)
            .map_err(CliError::Core)?;
        results.push((scheme, res));
    }

    let mut history = CsvFile::new(cfg, "optimize_cost_history.csv", "iteration,scheme,J");
    for (scheme, res) in &results {
        for (i, j) in res.cost_history.iter().enumerate() {
            history.row(&[i.to_string(), scheme.name().to_string(), num(*j)]);
        }
    }

    let mut pulses = CsvFile::new(cfg, "optimize_pulses.csv", "k,t,u_lgvi,u_rk2");
    for k in 0..n {
        pulses.row(&[
            k.to_string(),
            num(k as f64 * cfg.ocp.dt),
            num(results[0].1.controls.values[k]),
            num(results[1].1.controls.values[k]),
        ]);
    }

    let mut drift = CsvFile::new(
        cfg,
        "optimize_drift.csv",
        "k,t,scheme,trace_drift,pos_drift,theta",
    );
    for (scheme, res) in &results {
        let rows =
            step_series(&res.trajectory, &res.costates, &res.cost, None).map_err(CliError::Core)?;
        for row in &rows {
            drift.row(&[
                row.k.to_string(),
                num(res.trajectory.t(row.k)),
                scheme.name().to_string(),
                num(row.trace_drift),
                num(row.pos_drift),
                num(row.theta),
            ]);
        }
    }

    Ok(vec![history.write()?, pulses.write()?, drift.write()?])
}

/// Final-state error against a refined reference for every step size in the
/// ladder, with the observed order log2(err_prev/err) between consecutive
/// rows of the same scheme.
pub fn run_convergence(cfg: &ExperimentConfig) -> Result<Vec<PathBuf>, CliError> {
    let mut file = CsvFile::new(cfg, "convergence.csv", "dt,scheme,err,observed_order");
    for scheme in [Scheme::ContactLgvi, Scheme::Rk2Heun] {
        let mut prev_err: Option<(f64, f64)> = None;
        for &dt in &cfg.dt_list {
            let n = (cfg.ocp.t_final / dt).round() as usize;
            let controls = ControlSchedule::sine_pulse(cfg.amplitude, cfg.ocp.t_final, n);
            let traj = propagate(scheme, initial_state(), &controls, dt, cfg.ocp.gamma);
            let reference =
                reference_trajectory(initial_state(), &controls, dt, cfg.ocp.gamma, cfg.refine);
            let errs = global_error(&traj, &reference).map_err(CliError::Core)?;
            let err = *errs.last().expect("non-empty trajectory");
            let order = prev_err
                .map(|(pdt, perr)| num((perr / err).log2() / (pdt / dt).log2()))
                .unwrap_or_default();
            file.row(&[num(dt), scheme.name().to_string(), num(err), order]);
            prev_err = Some((dt, err));
        }
    }
    Ok(vec![file.write()?])
}

/// Dispatch on the experiment kind.
pub fn run(cfg: &ExperimentConfig) -> Result<Vec<PathBuf>, CliError> {
    cfg.validate()?;
    match cfg.kind {
        ExperimentKind::Simulate => run_simulate(cfg),
        ExperimentKind::Compare => run_compare(cfg),
        ExperimentKind::LongHorizon => run_longhorizon(cfg),
        ExperimentKind::Optimize => run_optimize(cfg),
        ExperimentKind::Convergence => run_convergence(cfg),
    }
}
