//! Discrete PMP shooting solver for the damped, driven qubit.
//!
//! One iteration: propagate the state forward under the current schedule,
//! sweep the costate backward from P_N = −ρ_target, maximize the discrete
//! Hamiltonian pointwise over the control box, and relax the whole schedule
//! toward the maximizers. Everything is deterministic: the same
//! configuration and initial guess reproduce the same result bit for bit.

use crate::adjoint::{accumulate_cost, backward_sweep, CostAccumulator, CostateSeq};
use crate::error::{Error, Result};
use crate::integrators::{lgvi_step, rk2_step, rkmk2_step};
use crate::integrators::{propagate, ControlSchedule, Scheme, Trajectory};
use crate::qmat::{hs_inner, hs_inner_mat, Herm2};

/// Problem and solver parameters for one optimal-control run.
#[derive(Debug, Clone, PartialEq)]
pub struct OcpConfig {
    /// Horizon length.
    pub t_final: f64,
    /// Step size; t_final/dt must be an integer number of steps.
    pub dt: f64,
    /// Amplitude-damping rate.
    pub gamma: f64,
    /// Running-cost weight α in α u² Δt.
    pub alpha: f64,
    /// Control box bound, u ∈ [−u_max, u_max].
    pub u_max: f64,
    /// Relaxation factor β ∈ (0, 1] for the control update.
    pub beta: f64,
    /// Maximum shooting iterations.
    pub max_iters: usize,
    /// Stop once |J_prev − J| drops below this.
    pub dj_tol: f64,
    /// Grid points for the Hamiltonian line search (odd, so u = 0 is on
    /// the grid).
    pub grid_points: usize,
    /// Golden-section refinements after the grid pass.
    pub refine_iters: usize,
}

impl Default for OcpConfig {
    fn default() -> Self {
        OcpConfig {
            t_final: 3.0,
            dt: 0.01,
            gamma: 1.0,
            alpha: 0.05,
            u_max: 6.0,
            beta: 0.5,
            max_iters: 50,
            dj_tol: 1e-8,
            grid_points: 241,
            refine_iters: 40,
        }
    }
}

impl OcpConfig {
    /// Number of steps N = t_final/dt; part of [`OcpConfig::validate`].
    pub fn steps(&self) -> usize {
        (self.t_final / self.dt).round() as usize
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidConfig(msg));
        if !self.t_final.is_finite() || self.t_final < 0.0 {
            return fail(format!(
                "t_final must be non-negative, got {}",
                self.t_final
            ));
        }
        if !self.dt.is_finite() || self.dt <= 0.0 {
            return fail(format!("dt must be positive, got {}", self.dt));
        }
        // t_final = 0 is the degenerate zero-step configuration.
        let n = self.t_final / self.dt;
        if (n - n.round()).abs() > 1e-9 * n.max(1.0) {
            return fail(format!(
                "t_final/dt must be a whole number of steps, got {n}"
            ));
        }
        if !self.gamma.is_finite() || self.gamma < 0.0 {
            return fail(format!("gamma must be non-negative, got {}", self.gamma));
        }
        if !self.alpha.is_finite() || self.alpha < 0.0 {
            return fail(format!("alpha must be non-negative, got {}", self.alpha));
        }
        if !self.u_max.is_finite() || self.u_max <= 0.0 {
            return fail(format!("u_max must be positive, got {}", self.u_max));
        }
        if !self.beta.is_finite() || self.beta <= 0.0 || self.beta > 1.0 {
            return fail(format!("beta must lie in (0, 1], got {}", self.beta));
        }
        if self.max_iters == 0 {
            return fail("max_iters must be at least 1".to_string());
        }
        if !self.dj_tol.is_finite() || self.dj_tol < 0.0 {
            return fail(format!("dj_tol must be non-negative, got {}", self.dj_tol));
        }
        if self.grid_points < 3 || self.grid_points.is_multiple_of(2) {
            return fail(format!(
                "grid_points must be odd and at least 3, got {}",
                self.grid_points
            ));
        }
        Ok(())
    }
}

/// Why the shooting loop stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    /// |J_prev − J| fell below `dj_tol`.
    CostTolerance,
    /// Iteration budget exhausted.
    MaxIters,
    /// The forward trajectory diverged at this iteration.
    Diverged { iteration: usize },
}

/// Output of one shooting run.
#[derive(Debug, Clone)]
pub struct ShootResult {
    pub controls: ControlSchedule,
    /// J after each forward pass; entry 0 is the initial guess.
    pub cost_history: Vec<f64>,
    pub trajectory: Trajectory,
    pub costates: CostateSeq,
    pub cost: CostAccumulator,
    pub converged: bool,
    pub reason: StopReason,
}

impl ShootResult {
    pub fn final_cost(&self) -> f64 {
        *self.cost_history.last().expect("history is never empty")
    }
}

/// Terminal cost Φ(ρ) = 1 − tr(ρ ρ_target); zero iff ρ equals a pure target.
pub fn terminal_cost(rho: Herm2, rho_target: Herm2) -> f64 {
    1.0 - hs_inner(rho, rho_target)
}

/// Bolza cost J = Σ α u_k² Δt + Φ(ρ_N) of a propagated trajectory.
pub fn total_cost(
    controls: &ControlSchedule,
    traj: &Trajectory,
    cfg: &OcpConfig,
    rho_target: Herm2,
) -> f64 {
    let running = accumulate_cost(controls, cfg.alpha, cfg.dt).total();
    running
        + terminal_cost(
            *traj.states.last().expect("trajectory has states"),
            rho_target,
        )
}

/// Discrete Hamiltonian in the displacement convention,
/// H̃(ρ, P, u) = ⟨P, F(ρ, u) − ρ⟩ − α u² Δt,
/// with F the chosen scheme's one-step map.
pub fn discrete_hamiltonian(
    rho: Herm2,
    p_next: Herm2,
    u: f64,
    scheme: Scheme,
    cfg: &OcpConfig,
) -> f64 {
    let penalty = cfg.alpha * u * u * cfg.dt;
    match scheme {
        Scheme::ContactLgvi => {
            hs_inner(p_next, lgvi_step(rho, u, cfg.dt, cfg.gamma) - rho) - penalty
        }
        Scheme::Rk2Heun => hs_inner(p_next, rk2_step(rho, u, cfg.dt, cfg.gamma) - rho) - penalty,
        Scheme::Rkmk2 => {
            let m = rkmk2_step(rho, u, cfg.dt, cfg.gamma) - rho.to_mat();
            hs_inner_mat(&p_next.to_mat(), &m) - penalty
        }
    }
}

/// `(value, u)` ordering for the maximizer: larger value wins; exact value
/// ties prefer smaller |u|, then the negative candidate.
fn better(candidate: (f64, f64), incumbent: (f64, f64)) -> bool {
    let (fv, fu) = candidate;
    let (gv, gu) = incumbent;
    if fv != gv {
        return fv > gv;
    }
    if fu.abs() != gu.abs() {
        return fu.abs() < gu.abs();
    }
    fu < gu
}

/// Pointwise maximization of the discrete Hamiltonian over the control box:
/// an equispaced grid pass over [−u_max, u_max] followed by golden-section
/// refinement of the bracketing subinterval. Deterministic; ties break
/// toward smaller |u|, then toward negative u.
pub fn maximize_control(rho: Herm2, p_next: Herm2, scheme: Scheme, cfg: &OcpConfig) -> f64 {
    let objective = |u: f64| discrete_hamiltonian(rho, p_next, u, scheme, cfg);

    let m = cfg.grid_points;
    let spacing = 2.0 * cfg.u_max / (m - 1) as f64;
    let grid_u = |i: usize| -cfg.u_max + i as f64 * spacing;

    let mut best = (objective(grid_u(0)), grid_u(0));
    let mut best_idx = 0usize;
    for i in 1..m {
        let u = grid_u(i);
        let cand = (objective(u), u);
        if better(cand, best) {
            best = cand;
            best_idx = i;
        }
    }

    // Golden-section refinement on the bracketing subinterval.
    let mut lo = grid_u(best_idx.saturating_sub(1)).max(-cfg.u_max);
    let mut hi = grid_u((best_idx + 1).min(m - 1)).min(cfg.u_max);
    const INV_PHI: f64 = 0.618_033_988_749_895; // (√5 − 1)/2
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = objective(x1);
    let mut f2 = objective(x2);
    for _ in 0..cfg.refine_iters {
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = objective(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = objective(x2);
        }
    }
    for cand in [(f1, x1), (f2, x2)] {
        if better(cand, best) {
            best = cand;
        }
    }
    best.1.clamp(-cfg.u_max, cfg.u_max)
}

/// Run the shooting loop for one scheme from the initial guess `u0`.
///
/// Per iteration: (i) forward propagate, (ii) backward sweep with
/// P_N = −ρ_target, (iii) maximize the Hamiltonian at every k against
/// (ρ_k, P_{k+1}), (iv) relax u_k ← (1−β) u_k + β u*_k for all k at once,
/// (v) re-propagate and evaluate J. Stops on the cost tolerance, the
/// iteration cap, or a diverged forward pass (possible for the Heun scheme).
pub fn shoot(
    cfg: &OcpConfig,
    scheme: Scheme,
    rho0: Herm2,
    rho_target: Herm2,
    u0: &ControlSchedule,
) -> Result<ShootResult> {
    cfg.validate()?;
    let n = cfg.steps();
    if u0.len() != n {
        return Err(Error::InvalidConfig(format!(
            "initial control has {} steps, expected {n}",
            u0.len()
        )));
    }
    if u0.values.iter().any(|u| u.abs() > cfg.u_max) {
        return Err(Error::InvalidConfig(
            "initial control exceeds the box bound".to_string(),
        ));
    }

    let mut controls = u0.clone();
    let mut traj = propagate(scheme, rho0, &controls, cfg.dt, cfg.gamma);
    let mut history = vec![total_cost(&controls, &traj, cfg, rho_target)];

    let finish = |controls: ControlSchedule,
                  traj: Trajectory,
                  history: Vec<f64>,
                  converged: bool,
                  reason: StopReason|
     -> Result<ShootResult> {
        let costates = backward_sweep(&traj, scheme, rho_target, cfg.dt, cfg.gamma)?;
        let cost = accumulate_cost(&controls, cfg.alpha, cfg.dt);
        Ok(ShootResult {
            controls,
            cost_history: history,
            trajectory: traj,
            costates,
            cost,
            converged,
            reason,
        })
    };

    if traj.diverged.is_some() {
        return finish(
            controls,
            traj,
            history,
            false,
            StopReason::Diverged { iteration: 0 },
        );
    }

    for iter in 1..=cfg.max_iters {
        let costates = backward_sweep(&traj, scheme, rho_target, cfg.dt, cfg.gamma)?;

        for k in 0..n {
            let u_star = maximize_control(traj.states[k], costates.at(k + 1), scheme, cfg);
            let relaxed = (1.0 - cfg.beta) * controls.values[k] + cfg.beta * u_star;
            controls.values[k] = relaxed.clamp(-cfg.u_max, cfg.u_max);
        }

        traj = propagate(scheme, rho0, &controls, cfg.dt, cfg.gamma);
        let j = total_cost(&controls, &traj, cfg, rho_target);
        history.push(j);

        if traj.diverged.is_some() {
            return finish(
                controls,
                traj,
                history,
                false,
                StopReason::Diverged { iteration: iter },
            );
        }
        let prev = history[history.len() - 2];
        if (prev - j).abs() < cfg.dj_tol {
            return finish(controls, traj, history, true, StopReason::CostTolerance);
        }
    }

    finish(controls, traj, history, false, StopReason::MaxIters)
}
