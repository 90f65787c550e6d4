//! Physical building blocks: the amplitude-damping Kraus channel and its
//! dual, unitary conjugation, the Lindblad generator, and the equivalent
//! Bloch-coordinate vector field.
//!
//! Basis convention: (|0⟩, |1⟩) with σz|0⟩ = +|0⟩, so the ground state
//! |0⟩⟨0| sits at Bloch vector (0, 0, 1) and amplitude damping relaxes
//! toward it.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qmat::{Herm2, Mat2};

/// Amplitude-damping channel of rate `gamma` over duration `tau`, with jump
/// probability p = 1 − e^{−γτ}.
///
/// Kraus operators: E0 = diag(1, √(1−p)), E1 = √p |0⟩⟨1|.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdChannel {
    pub gamma: f64,
    pub tau: f64,
    /// Jump probability p = 1 − e^{−γτ}.
    pub p: f64,
}

impl AdChannel {
    pub fn new(gamma: f64, tau: f64) -> Result<Self> {
        if !gamma.is_finite() || gamma < 0.0 {
            return Err(Error::InvalidChannelParam {
                name: "gamma",
                value: gamma,
            });
        }
        if !tau.is_finite() || tau < 0.0 {
            return Err(Error::InvalidChannelParam {
                name: "tau",
                value: tau,
            });
        }
        // −expm1 keeps full precision for small γτ, where 1 − exp(−γτ)
        // would cancel.
        let p = -f64::exp_m1(-gamma * tau);
        Ok(AdChannel { gamma, tau, p })
    }

    /// Survival probability 1 − p.
    pub fn q(&self) -> f64 {
        1.0 - self.p
    }

    /// The Kraus pair (E0, E1).
    pub fn kraus(&self) -> (Mat2, Mat2) {
        let sq = self.q().sqrt();
        let sp = self.p.sqrt();
        let e0 = Mat2::new(
            Complex64::ONE,
            Complex64::ZERO,
            Complex64::ZERO,
            Complex64::new(sq, 0.0),
        );
        let e1 = Mat2::new(
            Complex64::ZERO,
            Complex64::new(sp, 0.0),
            Complex64::ZERO,
            Complex64::ZERO,
        );
        (e0, e1)
    }

    /// Φ_AD(ρ) = E0 ρ E0† + E1 ρ E1†, evaluated in Hermitian coordinates.
    pub fn apply(&self, rho: Herm2) -> Herm2 {
        let q = self.q();
        Herm2::new(
            rho.d0 + self.p * rho.d1,
            q * rho.d1,
            rho.off.scale(q.sqrt()),
        )
    }

    /// Dual channel Φ*_AD(X) = E0† X E0 + E1† X E1. Unital: Φ*(I) = I.
    pub fn dual_apply(&self, x: Herm2) -> Herm2 {
        let q = self.q();
        Herm2::new(x.d0, q * x.d1 + self.p * x.d0, x.off.scale(q.sqrt()))
    }
}

/// Kraus operators of the amplitude-damping channel.
pub fn kraus_pair(gamma: f64, tau: f64) -> Result<(Mat2, Mat2)> {
    Ok(AdChannel::new(gamma, tau)?.kraus())
}

/// Amplitude-damping channel applied to a state.
///
/// Panics if `gamma` or `tau` is negative; use [`AdChannel::new`] for a
/// checked constructor.
pub fn ad_apply(rho: Herm2, gamma: f64, tau: f64) -> Herm2 {
    AdChannel::new(gamma, tau)
        .expect("amplitude-damping parameters must be non-negative")
        .apply(rho)
}

/// Dual amplitude-damping channel applied to a costate-like operator.
///
/// Panics if `gamma` or `tau` is negative.
pub fn ad_dual_apply(x: Herm2, gamma: f64, tau: f64) -> Herm2 {
    AdChannel::new(gamma, tau)
        .expect("amplitude-damping parameters must be non-negative")
        .dual_apply(x)
}

/// Conjugation ρ ↦ U ρ U† without the unitarity check; the caller must
/// guarantee U unitary (true for `su2_exp_x` output by construction).
pub(crate) fn conjugate_unchecked(u: &Mat2, rho: Herm2) -> Herm2 {
    let m = *u * rho.to_mat() * u.adjoint();
    // The diagonal imaginary parts and the lower triangle are redundant for
    // a Hermitian result; dropping them keeps Hermiticity structural.
    Herm2::new(m.e[0][0].re, m.e[1][1].re, m.e[0][1])
}

/// ρ ↦ U ρ U† for unitary U. Trace and spectrum are preserved.
pub fn unitary_conjugate(u: &Mat2, rho: Herm2) -> Result<Herm2> {
    let defect = u.unitarity_defect();
    if defect > 1e-12 {
        return Err(Error::NonUnitary { defect });
    }
    Ok(conjugate_unchecked(u, rho))
}

/// Lindblad generator L_u(ρ) = −i[(u/2)σx, ρ] + γ(σ− ρ σ+ − ½{σ+σ−, ρ}),
/// written out in Hermitian coordinates.
///
/// The diagonal increments are exact negatives of each other, so the output
/// is traceless to the last bit.
pub fn lindblad_rhs(rho: Herm2, u: f64, gamma: f64) -> Herm2 {
    let pump = gamma * rho.d1 - u * rho.off.im;
    let off = Complex64::new(
        -0.5 * gamma * rho.off.re,
        0.5 * u * (rho.d0 - rho.d1) - 0.5 * gamma * rho.off.im,
    );
    Herm2::new(pump, -pump, off)
}

/// The same dynamics in Bloch coordinates:
/// ṙ = (−γ rx/2, −γ ry/2 − u rz, −γ(rz − 1) + u ry).
pub fn bloch_rhs(r: [f64; 3], u: f64, gamma: f64) -> [f64; 3] {
    [
        -0.5 * gamma * r[0],
        -0.5 * gamma * r[1] - u * r[2],
        -gamma * (r[2] - 1.0) + u * r[1],
    ]
}

/// The affine control system ṙ = A r + b + u B r behind [`bloch_rhs`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochField {
    /// Damping matrix A = diag(−γ/2, −γ/2, −γ).
    pub a: [[f64; 3]; 3],
    /// Pump vector b = (0, 0, γ).
    pub b: [f64; 3],
    /// Control rotation generator about the x axis.
    pub control: [[f64; 3]; 3],
}

impl BlochField {
    pub fn new(gamma: f64) -> Self {
        BlochField {
            a: [
                [-0.5 * gamma, 0.0, 0.0],
                [0.0, -0.5 * gamma, 0.0],
                [0.0, 0.0, -gamma],
            ],
            b: [0.0, 0.0, gamma],
            control: [[0.0, 0.0, 0.0], [0.0, 0.0, -1.0], [0.0, 1.0, 0.0]],
        }
    }

    /// A r + b + u B r.
    pub fn apply(&self, r: [f64; 3], u: f64) -> [f64; 3] {
        let mut out = self.b;
        for ((o, arow), crow) in out.iter_mut().zip(self.a.iter()).zip(self.control.iter()) {
            for ((aij, cij), rj) in arow.iter().zip(crow.iter()).zip(r.iter()) {
                *o += (aij + u * cij) * rj;
            }
        }
        out
    }
}
