//! Forward time-steppers for the controlled amplitude-damping qubit.
//!
//! Three schemes share the interface:
//!
//! * `ContactLgvi` — Strang composition of the exact amplitude-damping
//!   channel and the exact SU(2) unitary subflow. Every step is CPTP, so
//!   trace and positivity cannot drift.
//! * `Rk2Heun` — explicit two-stage Runge–Kutta (Heun) applied directly to
//!   the Lindblad generator. Second order, no geometric guarantees; used as
//!   the non-geometric control.
//! * `Rkmk2` — the two-stage Munthe-Kaas-style update
//!   ρ ↦ exp(Δt K₂) ρ exp(−Δt K₂) with K₂ the Lindblad increment frozen at
//!   the half step. Implemented exactly as written; see `rkmk2_step` for
//!   its caveats.

use std::fmt;
use std::str::FromStr;

use crate::channels::{conjugate_unchecked, lindblad_rhs, AdChannel};
use crate::qmat::{herm_exp, su2_exp_x, Herm2, Mat2};

/// Time-stepping scheme identifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    ContactLgvi,
    Rk2Heun,
    Rkmk2,
}

impl Scheme {
    pub const ALL: [Scheme; 3] = [Scheme::ContactLgvi, Scheme::Rk2Heun, Scheme::Rkmk2];

    pub fn name(&self) -> &'static str {
        match self {
            Scheme::ContactLgvi => "lgvi",
            Scheme::Rk2Heun => "rk2",
            Scheme::Rkmk2 => "rkmk2",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheme {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lgvi" => Ok(Scheme::ContactLgvi),
            "rk2" => Ok(Scheme::Rk2Heun),
            "rkmk2" => Ok(Scheme::Rkmk2),
            other => Err(format!(
                "unknown scheme '{other}' (expected lgvi|rk2|rkmk2)"
            )),
        }
    }
}

/// Piecewise-constant control values on a uniform grid; `values[k]` is held
/// over [t_k, t_{k+1}).
#[derive(Debug, Clone, PartialEq)]
pub struct ControlSchedule {
    pub values: Vec<f64>,
}

impl ControlSchedule {
    pub fn new(values: Vec<f64>) -> Self {
        ControlSchedule { values }
    }

    pub fn zeros(n: usize) -> Self {
        ControlSchedule {
            values: vec![0.0; n],
        }
    }

    /// u_k = amplitude · sin(π t_k / t_final) sampled at t_k = k·dt with
    /// n = t_final/dt steps.
    pub fn sine_pulse(amplitude: f64, t_final: f64, n: usize) -> Self {
        let dt = t_final / n as f64;
        ControlSchedule {
            values: (0..n)
                .map(|k| amplitude * (std::f64::consts::PI * (k as f64 * dt) / t_final).sin())
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// States, controls and bookkeeping of one forward run.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub scheme: Scheme,
    pub dt: f64,
    pub gamma: f64,
    /// ρ_k for k = 0..=N.
    pub states: Vec<Herm2>,
    pub controls: ControlSchedule,
    /// Index of the first non-finite state, if propagation blew up. States
    /// from this index on hold the frozen non-finite value.
    pub diverged: Option<usize>,
}

impl Trajectory {
    /// Number of steps N.
    pub fn steps(&self) -> usize {
        self.controls.len()
    }

    pub fn t(&self, k: usize) -> f64 {
        k as f64 * self.dt
    }

    /// Index of the last finite state (N when the run never diverged).
    pub fn last_finite(&self) -> usize {
        match self.diverged {
            Some(0) => 0,
            Some(d) => d - 1,
            None => self.steps(),
        }
    }
}

/// One contact LGVI step: Φ_AD^{Δt/2} ∘ (U · U†-conjugation) ∘ Φ_AD^{Δt/2}
/// with U = exp(−i (u/2) σx Δt).
///
/// Composition of CPTP maps, so the output has the input's trace exactly and
/// stays positive semidefinite.
pub fn lgvi_step(rho: Herm2, u: f64, dt: f64, gamma: f64) -> Herm2 {
    let half = AdChannel::new(gamma, 0.5 * dt).expect("step parameters must be non-negative");
    let unitary = su2_exp_x(u, dt);
    half.apply(conjugate_unchecked(&unitary, half.apply(rho)))
}

/// One Heun step on the Lindblad generator:
/// k₁ = L(ρ), k₂ = L(ρ + Δt k₁), ρ ← ρ + (Δt/2)(k₁ + k₂).
///
/// The generator is traceless, so the trace is preserved to roundoff, but
/// nothing constrains positivity.
pub fn rk2_step(rho: Herm2, u: f64, dt: f64, gamma: f64) -> Herm2 {
    let k1 = lindblad_rhs(rho, u, gamma);
    let k2 = lindblad_rhs(rho + k1.scale(dt), u, gamma);
    rho + (k1 + k2).scale(0.5 * dt)
}

/// One RKMK(2)-style step, exactly as prescribed:
/// K₁ = L(ρ), K₂ = L(exp(Δt K₁/2) ρ exp(−Δt K₁/2)),
/// result = exp(Δt K₂) ρ exp(−Δt K₂).
///
/// K₁, K₂ are Hermitian, so the conjugating factors are Hermitian rather
/// than unitary and the result is a similarity transform: trace and spectrum
/// of ρ are preserved exactly, but the result is generally *not* Hermitian,
/// which is why this returns a full [`Mat2`]. Expanding in Δt shows the step
/// follows ρ̇ = [K, ρ] instead of ρ̇ = L(ρ); it does not converge to the
/// dissipative flow and is excluded from every accuracy comparison.
pub fn rkmk2_step(rho: Herm2, u: f64, dt: f64, gamma: f64) -> Mat2 {
    let k1 = lindblad_rhs(rho, u, gamma);
    let stage = Herm2::hermitian_part(
        &(herm_exp(k1.scale(0.5 * dt)).to_mat()
            * rho.to_mat()
            * herm_exp(k1.scale(-0.5 * dt)).to_mat()),
    );
    let k2 = lindblad_rhs(stage, u, gamma);
    herm_exp(k2.scale(dt)).to_mat() * rho.to_mat() * herm_exp(k2.scale(-dt)).to_mat()
}

fn step_state(scheme: Scheme, rho: Herm2, u: f64, dt: f64, gamma: f64) -> Herm2 {
    match scheme {
        Scheme::ContactLgvi => lgvi_step(rho, u, dt, gamma),
        Scheme::Rk2Heun => rk2_step(rho, u, dt, gamma),
        // The verbatim map leaves the Hermitian matrices; the trajectory
        // records its Hermitian part (which still carries the exact trace).
        Scheme::Rkmk2 => Herm2::hermitian_part(&rkmk2_step(rho, u, dt, gamma)),
    }
}

/// Propagate `rho0` through the whole control schedule with zero-order-hold
/// controls. States are recorded raw: no projection, no renormalization. On
/// the first non-finite state the run freezes and the divergence index is
/// recorded.
pub fn propagate(
    scheme: Scheme,
    rho0: Herm2,
    controls: &ControlSchedule,
    dt: f64,
    gamma: f64,
) -> Trajectory {
    let n = controls.len();
    let mut states = Vec::with_capacity(n + 1);
    states.push(rho0);
    let mut diverged = if rho0.is_finite() { None } else { Some(0) };

    for (k, &u) in controls.values.iter().enumerate() {
        if diverged.is_some() {
            let frozen = states[k];
            states.push(frozen);
            continue;
        }
        let next = step_state(scheme, states[k], u, dt, gamma);
        if !next.is_finite() {
            diverged = Some(k + 1);
        }
        states.push(next);
    }

    Trajectory {
        scheme,
        dt,
        gamma,
        states,
        controls: controls.clone(),
        diverged,
    }
}

/// Contact LGVI run with step `dt/refine`, holding each coarse `u_k` over
/// its whole interval, sampled back at the coarse nodes. With `refine = 1`
/// this is a plain LGVI propagation.
pub fn reference_trajectory(
    rho0: Herm2,
    controls: &ControlSchedule,
    dt: f64,
    gamma: f64,
    refine: u32,
) -> Trajectory {
    assert!(refine >= 1, "refine factor must be at least 1");
    let sub = dt / refine as f64;
    let mut states = Vec::with_capacity(controls.len() + 1);
    states.push(rho0);
    let mut rho = rho0;
    for &u in &controls.values {
        for _ in 0..refine {
            rho = lgvi_step(rho, u, sub, gamma);
        }
        states.push(rho);
    }
    Trajectory {
        scheme: Scheme::ContactLgvi,
        dt,
        gamma,
        states,
        controls: controls.clone(),
        diverged: None,
    }
}

/// Classical RK4 on the Bloch ODE with fine step `dt_fine`, holding each
/// coarse control over its interval of width `dt`. Returns the Bloch vector
/// at the coarse nodes. Test oracle for the density-operator integrators.
pub fn bloch_rk4(
    r0: [f64; 3],
    controls: &ControlSchedule,
    dt: f64,
    dt_fine: f64,
    gamma: f64,
) -> Vec<[f64; 3]> {
    assert!(
        dt_fine > 0.0 && dt_fine <= dt,
        "fine step must subdivide dt"
    );
    let substeps = (dt / dt_fine).round() as usize;
    let h = dt / substeps as f64;

    let axpy =
        |r: [f64; 3], s: f64, v: [f64; 3]| [r[0] + s * v[0], r[1] + s * v[1], r[2] + s * v[2]];

    let mut out = Vec::with_capacity(controls.len() + 1);
    out.push(r0);
    let mut r = r0;
    for &u in &controls.values {
        for _ in 0..substeps {
            let k1 = crate::channels::bloch_rhs(r, u, gamma);
            let k2 = crate::channels::bloch_rhs(axpy(r, 0.5 * h, k1), u, gamma);
            let k3 = crate::channels::bloch_rhs(axpy(r, 0.5 * h, k2), u, gamma);
            let k4 = crate::channels::bloch_rhs(axpy(r, h, k3), u, gamma);
            for i in 0..3 {
                r[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
            }
        }
        out.push(r);
    }
    out
}
