//! Geometric diagnostics of a discrete trajectory: trace drift, positivity
//! drift, contact-form defect, and the Frobenius error against a fine
//! reference, plus run-level maxima.

use crate::adjoint::{CostAccumulator, CostateSeq};
use crate::error::{Error, Result};
use crate::integrators::{Scheme, Trajectory};
use crate::qmat::{eig_min, hs_inner, Herm2};

/// Positivity-drift maxima below this report as an exact zero in summaries;
/// per-step values stay raw.
pub const POS_DRIFT_CLAMP: f64 = 1e-14;

/// Per-step diagnostics, one row per grid node.
#[derive(Debug, Clone, Copy)]
pub struct StepMetrics {
    pub k: usize,
    pub trace_drift: f64,
    pub pos_drift: f64,
    /// Signed contact defect θ_k; NaN at the final node, where no step
    /// starts.
    pub theta: f64,
    /// Frobenius distance to the reference state, when a reference exists.
    pub glob_err: Option<f64>,
}

/// Maxima over one run, divergence reported separately.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunSummary {
    pub scheme: Scheme,
    pub max_trace_drift: f64,
    /// Clamped to zero below [`POS_DRIFT_CLAMP`].
    pub max_pos_drift: f64,
    pub max_abs_theta: f64,
    pub max_glob_err: Option<f64>,
    pub diverged: Option<usize>,
}

/// δ_tr = |tr(ρ) − 1|.
pub fn trace_drift(rho: Herm2) -> f64 {
    (rho.trace() - 1.0).abs()
}

/// δ_pos = −min(0, λ_min(ρ)); zero exactly when ρ is positive semidefinite.
/// Non-finite states report NaN rather than a spurious zero.
pub fn positivity_drift(rho: Herm2) -> f64 {
    let lambda = eig_min(rho);
    if lambda.is_nan() {
        f64::NAN
    } else if lambda < 0.0 {
        -lambda
    } else {
        0.0
    }
}

/// Contact-form defect of one step,
/// θ = (z_{k+1} − z_k) − ⟨P_{k+1}, ρ_{k+1} − ρ_k⟩.
pub fn contact_defect(rho_k: Herm2, rho_next: Herm2, p_next: Herm2, z_k: f64, z_next: f64) -> f64 {
    (z_next - z_k) - hs_inner(p_next, rho_next - rho_k)
}

/// Frobenius distance per node between a trajectory and a reference on the
/// same grid.
pub fn global_error(traj: &Trajectory, reference: &Trajectory) -> Result<Vec<f64>> {
    if traj.states.len() != reference.states.len() {
        return Err(Error::GridMismatch(format!(
            "{} vs {} nodes",
            traj.states.len(),
            reference.states.len()
        )));
    }
    if (traj.dt - reference.dt).abs() > 1e-12 * traj.dt.max(1.0) {
        return Err(Error::GridMismatch(format!(
            "dt {} vs {}",
            traj.dt, reference.dt
        )));
    }
    Ok(traj
        .states
        .iter()
        .zip(reference.states.iter())
        .map(|(a, b)| (*a - *b).frobenius_norm())
        .collect())
}

/// Non-finite metric values become +∞ so they dominate maxima without
/// poisoning them as NaN.
fn as_max_contribution(x: f64) -> f64 {
    if x.is_finite() {
        x
    } else {
        f64::INFINITY
    }
}

/// Per-node metrics of one run. `costates` and `z` must come from the same
/// grid; θ at node k pairs P_{k+1} with the step k → k+1.
pub fn step_series(
    traj: &Trajectory,
    costates: &CostateSeq,
    z: &CostAccumulator,
    reference: Option<&Trajectory>,
) -> Result<Vec<StepMetrics>> {
    let n = traj.steps();
    if costates.p.len() != n + 1 || z.z.len() != n + 1 {
        return Err(Error::GridMismatch(format!(
            "trajectory has {} nodes, costates {}, cost {}",
            n + 1,
            costates.p.len(),
            z.z.len()
        )));
    }
    let glob = match reference {
        Some(r) => Some(global_error(traj, r)?),
        None => None,
    };
    let mut rows = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let theta = if k < n {
            contact_defect(
                traj.states[k],
                traj.states[k + 1],
                costates.at(k + 1),
                z.z[k],
                z.z[k + 1],
            )
        } else {
            f64::NAN
        };
        rows.push(StepMetrics {
            k,
            trace_drift: trace_drift(traj.states[k]),
            pos_drift: positivity_drift(traj.states[k]),
            theta,
            glob_err: glob.as_ref().map(|g| g[k]),
        });
    }
    Ok(rows)
}

/// Run-level maxima. Non-finite entries (past a divergence) contribute +∞;
/// the positivity maximum is clamped to zero below [`POS_DRIFT_CLAMP`].
pub fn summarize(
    traj: &Trajectory,
    costates: &CostateSeq,
    z: &CostAccumulator,
    reference: Option<&Trajectory>,
) -> Result<RunSummary> {
    let rows = step_series(traj, costates, z, reference)?;
    let n = traj.steps();
    let mut max_trace: f64 = 0.0;
    let mut max_pos: f64 = 0.0;
    let mut max_theta: f64 = 0.0;
    let mut max_glob: Option<f64> = reference.map(|_| 0.0);
    for row in &rows {
        max_trace = max_trace.max(as_max_contribution(row.trace_drift));
        max_pos = max_pos.max(as_max_contribution(row.pos_drift));
        if row.k < n {
            max_theta = max_theta.max(as_max_contribution(row.theta.abs()));
        }
        if let (Some(acc), Some(g)) = (max_glob.as_mut(), row.glob_err) {
            *acc = acc.max(as_max_contribution(g));
        }
    }
    if max_pos < POS_DRIFT_CLAMP {
        max_pos = 0.0;
    }
    Ok(RunSummary {
        scheme: traj.scheme,
        max_trace_drift: max_trace,
        max_pos_drift: max_pos,
        max_abs_theta: max_theta,
        max_glob_err: max_glob,
        diverged: traj.diverged,
    })
}
