//! Structure-preserving simulation and optimal control of a single qubit
//! under coherent σx drive and amplitude damping.
//!
//! The state stepper of interest is a Strang composition of two exact maps —
//! the amplitude-damping channel in Kraus form and the SU(2) unitary
//! subflow — so every step is completely positive and trace preserving by
//! construction. A Heun RK2 stepper and a Munthe-Kaas-style RKMK(2) stepper
//! serve as non-geometric baselines. On top of the steppers sit exact
//! adjoint (costate) recursions, a discrete Pontryagin shooting solver with
//! box-constrained pointwise Hamiltonian maximization, and the drift
//! diagnostics (trace, positivity, contact-form defect, global error) used
//! to compare the schemes.

pub mod adjoint;
pub mod channels;
pub mod error;
pub mod integrators;
pub mod metrics;
pub mod pmp;
pub mod qmat;

#[cfg(test)]
pub(crate) mod testrng;

pub use adjoint::{accumulate_cost, backward_sweep, CostAccumulator, CostateSeq};
pub use channels::{
    ad_apply, ad_dual_apply, bloch_rhs, kraus_pair, lindblad_rhs, AdChannel, BlochField,
};
pub use error::{Error, Result};
pub use integrators::{
    bloch_rk4, lgvi_step, propagate, reference_trajectory, rk2_step, rkmk2_step, ControlSchedule,
    Scheme, Trajectory,
};
pub use metrics::{
    contact_defect, global_error, positivity_drift, step_series, summarize, trace_drift,
    RunSummary, StepMetrics,
};
pub use pmp::{
    discrete_hamiltonian, maximize_control, shoot, terminal_cost, total_cost, OcpConfig,
    ShootResult, StopReason,
};
pub use qmat::{
    eig_max, eig_min, from_pauli, herm_exp, hs_inner, su2_exp_x, superop_of, superop_transpose,
    to_pauli, Herm2, Mat2, PauliVec, SuperOp4,
};
