//! Exact 2×2 complex/Hermitian matrix algebra.
//!
//! Everything here is closed form: eigenvalues come from the quadratic
//! formula, the SU(2) exponential from the half-angle identity, and linear
//! maps on Hermitian matrices are carried as 4×4 real matrices in the
//! orthonormal Pauli basis {I/√2, σx/√2, σy/√2, σz/√2}. No iterative
//! solvers, no series truncation.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

/// Discriminants this close to zero (from below) are treated as exactly
/// degenerate spectra rather than letting `sqrt` return NaN.
const DISC_CLAMP: f64 = 1e-14;

const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// General 2×2 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub e: [[Complex64; 2]; 2],
}

impl Mat2 {
    pub fn new(a11: Complex64, a12: Complex64, a21: Complex64, a22: Complex64) -> Self {
        Mat2 {
            e: [[a11, a12], [a21, a22]],
        }
    }

    pub fn zero() -> Self {
        Mat2::new(
            Complex64::ZERO,
            Complex64::ZERO,
            Complex64::ZERO,
            Complex64::ZERO,
        )
    }

    pub fn identity() -> Self {
        Mat2::new(
            Complex64::ONE,
            Complex64::ZERO,
            Complex64::ZERO,
            Complex64::ONE,
        )
    }

    pub fn trace(&self) -> Complex64 {
        self.e[0][0] + self.e[1][1]
    }

    pub fn det(&self) -> Complex64 {
        self.e[0][0] * self.e[1][1] - self.e[0][1] * self.e[1][0]
    }

    /// Conjugate transpose A†.
    pub fn adjoint(&self) -> Self {
        Mat2::new(
            self.e[0][0].conj(),
            self.e[1][0].conj(),
            self.e[0][1].conj(),
            self.e[1][1].conj(),
        )
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.e
            .iter()
            .flatten()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Mat2::new(
            s * self.e[0][0],
            s * self.e[0][1],
            s * self.e[1][0],
            s * self.e[1][1],
        )
    }

    pub fn is_finite(&self) -> bool {
        self.e
            .iter()
            .flatten()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Deviation from unitarity, ‖U†U − I‖_F.
    pub fn unitarity_defect(&self) -> f64 {
        (self.adjoint() * *self - Mat2::identity()).frobenius_norm()
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, rhs: Mat2) -> Mat2 {
        Mat2::new(
            self.e[0][0] + rhs.e[0][0],
            self.e[0][1] + rhs.e[0][1],
            self.e[1][0] + rhs.e[1][0],
            self.e[1][1] + rhs.e[1][1],
        )
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, rhs: Mat2) -> Mat2 {
        Mat2::new(
            self.e[0][0] - rhs.e[0][0],
            self.e[0][1] - rhs.e[0][1],
            self.e[1][0] - rhs.e[1][0],
            self.e[1][1] - rhs.e[1][1],
        )
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        let a = &self.e;
        let b = &rhs.e;
        Mat2::new(
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        )
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        self.scale(-Complex64::ONE)
    }
}

/// 2×2 Hermitian matrix, stored as the two real diagonal entries plus the
/// upper off-diagonal entry. The lower off-diagonal is implicitly the
/// conjugate, so Hermiticity cannot drift.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Herm2 {
    /// Entry (1,1), real.
    pub d0: f64,
    /// Entry (2,2), real.
    pub d1: f64,
    /// Entry (1,2); entry (2,1) is its conjugate.
    pub off: Complex64,
}

impl Herm2 {
    pub fn new(d0: f64, d1: f64, off: Complex64) -> Self {
        Herm2 { d0, d1, off }
    }

    pub fn zero() -> Self {
        Herm2::new(0.0, 0.0, Complex64::ZERO)
    }

    pub fn identity() -> Self {
        Herm2::new(1.0, 1.0, Complex64::ZERO)
    }

    pub fn sigma_x() -> Self {
        Herm2::new(0.0, 0.0, Complex64::ONE)
    }

    pub fn sigma_y() -> Self {
        Herm2::new(0.0, 0.0, Complex64::new(0.0, -1.0))
    }

    pub fn sigma_z() -> Self {
        Herm2::new(1.0, -1.0, Complex64::ZERO)
    }

    /// Ground-state projector |0⟩⟨0| = diag(1, 0).
    pub fn ket0() -> Self {
        Herm2::new(1.0, 0.0, Complex64::ZERO)
    }

    /// Excited-state projector |1⟩⟨1| = diag(0, 1).
    pub fn ket1() -> Self {
        Herm2::new(0.0, 1.0, Complex64::ZERO)
    }

    /// Maximally mixed state I/2.
    pub fn mixed() -> Self {
        Herm2::new(0.5, 0.5, Complex64::ZERO)
    }

    /// Density operator ½(I + r·σ) for a Bloch vector r.
    pub fn from_bloch(r: [f64; 3]) -> Self {
        Herm2::new(
            0.5 * (1.0 + r[2]),
            0.5 * (1.0 - r[2]),
            Complex64::new(0.5 * r[0], -0.5 * r[1]),
        )
    }

    /// Bloch vector (r_x, r_y, r_z); the unit ball for physical states.
    pub fn bloch(&self) -> [f64; 3] {
        [2.0 * self.off.re, -2.0 * self.off.im, self.d0 - self.d1]
    }

    pub fn trace(&self) -> f64 {
        self.d0 + self.d1
    }

    pub fn det(&self) -> f64 {
        self.d0 * self.d1 - self.off.norm_sqr()
    }

    pub fn frobenius_norm(&self) -> f64 {
        (self.d0 * self.d0 + self.d1 * self.d1 + 2.0 * self.off.norm_sqr()).sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.d0.is_finite()
            && self.d1.is_finite()
            && self.off.re.is_finite()
            && self.off.im.is_finite()
    }

    pub fn scale(&self, s: f64) -> Self {
        Herm2::new(s * self.d0, s * self.d1, s * self.off)
    }

    pub fn to_mat(&self) -> Mat2 {
        Mat2::new(
            Complex64::new(self.d0, 0.0),
            self.off,
            self.off.conj(),
            Complex64::new(self.d1, 0.0),
        )
    }

    /// Hermitian part (M + M†)/2 of a general matrix.
    pub fn hermitian_part(m: &Mat2) -> Self {
        Herm2::new(
            m.e[0][0].re,
            m.e[1][1].re,
            0.5 * (m.e[0][1] + m.e[1][0].conj()),
        )
    }

    /// A NaN-filled placeholder, used to mark undefined entries after a
    /// trajectory diverges.
    pub fn nan() -> Self {
        Herm2::new(f64::NAN, f64::NAN, Complex64::new(f64::NAN, f64::NAN))
    }
}

impl Add for Herm2 {
    type Output = Herm2;
    fn add(self, rhs: Herm2) -> Herm2 {
        Herm2::new(self.d0 + rhs.d0, self.d1 + rhs.d1, self.off + rhs.off)
    }
}

impl Sub for Herm2 {
    type Output = Herm2;
    fn sub(self, rhs: Herm2) -> Herm2 {
        Herm2::new(self.d0 - rhs.d0, self.d1 - rhs.d1, self.off - rhs.off)
    }
}

impl Mul<f64> for Herm2 {
    type Output = Herm2;
    fn mul(self, s: f64) -> Herm2 {
        self.scale(s)
    }
}

impl Neg for Herm2 {
    type Output = Herm2;
    fn neg(self) -> Herm2 {
        self.scale(-1.0)
    }
}

impl fmt::Display for Herm2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}+{}i], [{}-{}i, {}]]",
            self.d0, self.off.re, self.off.im, self.off.re, self.off.im, self.d1
        )
    }
}

/// Real Hilbert–Schmidt pairing ⟨A, B⟩ = Re tr(A†B).
///
/// For Hermitian arguments this is tr(AB), which is symmetric and bilinear.
pub fn hs_inner(a: Herm2, b: Herm2) -> f64 {
    a.d0 * b.d0 + a.d1 * b.d1 + 2.0 * (a.off.re * b.off.re + a.off.im * b.off.im)
}

/// Hilbert–Schmidt pairing Re tr(A†B) for general matrices.
pub fn hs_inner_mat(a: &Mat2, b: &Mat2) -> f64 {
    a.e.iter()
        .flatten()
        .zip(b.e.iter().flatten())
        .map(|(x, y)| (x.conj() * y).re)
        .sum()
}

fn eig_pair(h: Herm2) -> (f64, f64) {
    let tr = h.trace();
    let mut disc = tr * tr - 4.0 * h.det();
    if disc < 0.0 {
        // Roundoff at degenerate spectra can push the discriminant slightly
        // negative; beyond the clamp is a usage error unless the state is a
        // flagged non-finite (diverged) one, where NaN/inf just propagate.
        debug_assert!(
            !h.is_finite() || disc > -DISC_CLAMP,
            "discriminant {disc} below clamp"
        );
        disc = 0.0;
    }
    let root = disc.sqrt();
    (0.5 * (tr - root), 0.5 * (tr + root))
}

/// Smallest eigenvalue, (tr − √(tr² − 4 det))/2.
pub fn eig_min(h: Herm2) -> f64 {
    eig_pair(h).0
}

/// Largest eigenvalue, (tr + √(tr² − 4 det))/2.
pub fn eig_max(h: Herm2) -> f64 {
    eig_pair(h).1
}

/// Exact SU(2) exponential exp(−i (u/2) σx · dt) = cos(u·dt/2) I − i sin(u·dt/2) σx.
pub fn su2_exp_x(u: f64, dt: f64) -> Mat2 {
    let half = 0.5 * u * dt;
    let c = Complex64::new(half.cos(), 0.0);
    let ms = Complex64::new(0.0, -half.sin());
    Mat2::new(c, ms, ms, c)
}

/// Exponential of a Hermitian matrix by closed-form spectral decomposition:
/// for H = a I + v·σ, exp(H) = e^a (cosh|v| I + (sinh|v|/|v|) v·σ).
pub fn herm_exp(h: Herm2) -> Herm2 {
    let a = 0.5 * h.trace();
    let vx = h.off.re;
    let vy = -h.off.im;
    let vz = 0.5 * (h.d0 - h.d1);
    let vn = (vx * vx + vy * vy + vz * vz).sqrt();
    let ea = a.exp();
    let (c, s) = if vn < 1e-8 {
        // sinh(x)/x → 1 + x²/6; avoids 0/0 at the isotropic point.
        (vn.cosh(), 1.0 + vn * vn / 6.0)
    } else {
        (vn.cosh(), vn.sinh() / vn)
    };
    Herm2::new(
        ea * (c + s * vz),
        ea * (c - s * vz),
        Complex64::new(ea * s * vx, -ea * s * vy),
    )
}

/// Coordinates of a Hermitian matrix in the orthonormal Pauli basis
/// {I/√2, σx/√2, σy/√2, σz/√2}. The Bloch vector is √2·(cx, cy, cz) when
/// the trace is one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PauliVec {
    pub c: [f64; 4],
}

impl PauliVec {
    pub fn new(c0: f64, cx: f64, cy: f64, cz: f64) -> Self {
        PauliVec {
            c: [c0, cx, cy, cz],
        }
    }

    pub fn dot(&self, other: &PauliVec) -> f64 {
        self.c.iter().zip(other.c.iter()).map(|(a, b)| a * b).sum()
    }
}

/// Expand a Hermitian matrix in the orthonormal Pauli basis.
pub fn to_pauli(h: Herm2) -> PauliVec {
    PauliVec::new(
        (h.d0 + h.d1) * FRAC_1_SQRT_2,
        2.0 * h.off.re * FRAC_1_SQRT_2,
        -2.0 * h.off.im * FRAC_1_SQRT_2,
        (h.d0 - h.d1) * FRAC_1_SQRT_2,
    )
}

/// Reassemble a Hermitian matrix from its Pauli coordinates.
pub fn from_pauli(v: PauliVec) -> Herm2 {
    let [c0, cx, cy, cz] = v.c;
    Herm2::new(
        (c0 + cz) * FRAC_1_SQRT_2,
        (c0 - cz) * FRAC_1_SQRT_2,
        Complex64::new(cx * FRAC_1_SQRT_2, -cy * FRAC_1_SQRT_2),
    )
}

/// Real 4×4 matrix acting on Pauli coordinates; the concrete carrier for
/// linear maps on Hermitian matrices and their Hilbert–Schmidt adjoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuperOp4 {
    /// m[i][j] is the i-th Pauli coordinate of the image of basis element j.
    pub m: [[f64; 4]; 4],
}

impl SuperOp4 {
    pub fn identity() -> Self {
        let mut m = [[0.0; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        SuperOp4 { m }
    }

    pub fn zero() -> Self {
        SuperOp4 { m: [[0.0; 4]; 4] }
    }

    pub fn apply_vec(&self, v: &PauliVec) -> PauliVec {
        let mut out = [0.0; 4];
        for (i, row) in self.m.iter().enumerate() {
            out[i] = row.iter().zip(v.c.iter()).map(|(a, b)| a * b).sum();
        }
        PauliVec { c: out }
    }

    pub fn apply(&self, h: Herm2) -> Herm2 {
        from_pauli(self.apply_vec(&to_pauli(h)))
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut m = self.m;
        for row in m.iter_mut() {
            for x in row.iter_mut() {
                *x *= s;
            }
        }
        SuperOp4 { m }
    }
}

impl Add for SuperOp4 {
    type Output = SuperOp4;
    fn add(self, rhs: SuperOp4) -> SuperOp4 {
        let mut m = self.m;
        for (row, rrow) in m.iter_mut().zip(rhs.m.iter()) {
            for (x, y) in row.iter_mut().zip(rrow.iter()) {
                *x += y;
            }
        }
        SuperOp4 { m }
    }
}

impl Mul for SuperOp4 {
    type Output = SuperOp4;
    fn mul(self, rhs: SuperOp4) -> SuperOp4 {
        let mut m = [[0.0; 4]; 4];
        for (row, srow) in m.iter_mut().zip(self.m.iter()) {
            for (j, x) in row.iter_mut().enumerate() {
                *x = (0..4).map(|k| srow[k] * rhs.m[k][j]).sum();
            }
        }
        SuperOp4 { m }
    }
}

/// Matrix of a linear map on Hermitian matrices, built by evaluating the map
/// on the four Pauli basis elements.
pub fn superop_of<F: Fn(Herm2) -> Herm2>(map: F) -> SuperOp4 {
    let mut m = [[0.0; 4]; 4];
    for j in 0..4 {
        let mut basis = PauliVec::new(0.0, 0.0, 0.0, 0.0);
        basis.c[j] = 1.0;
        let image = to_pauli(map(from_pauli(basis)));
        for (i, row) in m.iter_mut().enumerate() {
            row[j] = image.c[i];
        }
    }
    SuperOp4 { m }
}

/// Hilbert–Schmidt adjoint of a superoperator. In an orthonormal basis this
/// is the plain matrix transpose.
pub fn superop_transpose(s: &SuperOp4) -> SuperOp4 {
    let mut m = [[0.0; 4]; 4];
    for (i, row) in s.m.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            m[j][i] = *x;
        }
    }
    SuperOp4 { m }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testrng::TestRng;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "expected {b}, got {a} (tol {tol})");
    }

    #[test]
    fn hs_inner_identity_with_itself_is_two() {
        assert_close(hs_inner(Herm2::identity(), Herm2::identity()), 2.0, 0.0);
    }

    #[test]
    fn hs_inner_pauli_orthogonality() {
        assert_close(hs_inner(Herm2::sigma_x(), Herm2::sigma_y()), 0.0, 0.0);
        assert_close(hs_inner(Herm2::sigma_x(), Herm2::sigma_z()), 0.0, 0.0);
        assert_close(hs_inner(Herm2::sigma_y(), Herm2::sigma_z()), 0.0, 0.0);
    }

    #[test]
    fn hs_inner_projector_against_half_i_plus_z() {
        // ½(I + σz) = |0⟩⟨0|, so the pairing is tr(|0⟩⟨0|) = 1.
        let half = (Herm2::identity() + Herm2::sigma_z()).scale(0.5);
        assert_close(hs_inner(Herm2::ket0(), half), 1.0, 0.0);
    }

    #[test]
    fn hs_inner_symmetric_on_random_pairs() {
        let mut rng = TestRng::new(11);
        for _ in 0..200 {
            let a = rng.herm(1.0);
            let b = rng.herm(1.0);
            assert_eq!(hs_inner(a, b), hs_inner(b, a));
        }
    }

    #[test]
    fn hs_inner_matches_mat_form() {
        let mut rng = TestRng::new(12);
        for _ in 0..100 {
            let a = rng.herm(2.0);
            let b = rng.herm(2.0);
            assert_close(
                hs_inner(a, b),
                hs_inner_mat(&a.to_mat(), &b.to_mat()),
                1e-13,
            );
        }
    }

    #[test]
    fn eig_min_degenerate_spectrum() {
        assert_close(eig_min(Herm2::mixed()), 0.5, 0.0);
    }

    #[test]
    fn eig_min_sigma_z() {
        assert_close(eig_min(Herm2::sigma_z()), -1.0, 0.0);
        assert_close(eig_max(Herm2::sigma_z()), 1.0, 0.0);
    }

    #[test]
    fn eig_min_diagonal() {
        let h = Herm2::new(0.905, 0.095, Complex64::ZERO);
        assert_close(eig_min(h), 0.095, 1e-15);
    }

    #[test]
    fn eig_sum_equals_trace() {
        let mut rng = TestRng::new(13);
        for _ in 0..500 {
            let h = rng.herm(3.0);
            assert!(eig_min(h) <= eig_max(h));
            assert_close(eig_min(h) + eig_max(h), h.trace(), 1e-13);
        }
    }

    #[test]
    fn su2_exp_zero_generator_is_identity() {
        let u = su2_exp_x(0.0, 0.1);
        assert!((u - Mat2::identity()).frobenius_norm() == 0.0);
    }

    #[test]
    fn su2_exp_pi_rotation_is_minus_i_sigma_x() {
        // u·dt = π gives cos(π/2) I − i sin(π/2) σx = −i σx.
        let u = su2_exp_x(std::f64::consts::PI, 1.0);
        let expect = Mat2::new(
            Complex64::new(0.0, -0.0),
            Complex64::new(0.0, -1.0),
            Complex64::new(0.0, -1.0),
            Complex64::new(0.0, -0.0),
        );
        assert!((u - expect).frobenius_norm() < 1e-15);
    }

    #[test]
    fn su2_exp_inverse_composes_to_identity() {
        let mut rng = TestRng::new(14);
        for _ in 0..100 {
            let u = rng.range(-10.0, 10.0);
            let dt = rng.range(1e-4, 0.1);
            let fwd = su2_exp_x(u, dt);
            let bwd = su2_exp_x(-u, dt);
            assert!((fwd * bwd - Mat2::identity()).frobenius_norm() <= 1e-15);
        }
    }

    #[test]
    fn su2_exp_unitary_up_to_large_angles() {
        let mut rng = TestRng::new(15);
        for _ in 0..500 {
            let u = rng.range(-100.0, 100.0);
            let g = su2_exp_x(u, 1.0);
            assert!(g.unitarity_defect() <= 1e-14);
        }
    }

    #[test]
    fn to_pauli_mixed_state_has_identity_component_only() {
        let v = to_pauli(Herm2::mixed());
        assert_close(v.c[0], FRAC_1_SQRT_2, 1e-16);
        assert_close(v.c[1], 0.0, 0.0);
        assert_close(v.c[2], 0.0, 0.0);
        assert_close(v.c[3], 0.0, 0.0);
    }

    #[test]
    fn to_pauli_excited_state() {
        // |1⟩⟨1| has Bloch vector (0, 0, −1).
        let v = to_pauli(Herm2::ket1());
        assert_close(v.c[0], FRAC_1_SQRT_2, 1e-16);
        assert_close(v.c[3], -FRAC_1_SQRT_2, 1e-16);
    }

    #[test]
    fn pauli_round_trip_on_random_matrices() {
        let mut rng = TestRng::new(16);
        for _ in 0..500 {
            let h = rng.herm(5.0);
            let back = from_pauli(to_pauli(h));
            assert_close(back.d0, h.d0, 1e-15 * h.frobenius_norm().max(1.0));
            assert_close(back.d1, h.d1, 1e-15 * h.frobenius_norm().max(1.0));
            assert_close(back.off.re, h.off.re, 1e-15 * h.frobenius_norm().max(1.0));
            assert_close(back.off.im, h.off.im, 1e-15 * h.frobenius_norm().max(1.0));
        }
    }

    #[test]
    fn pauli_map_is_isometric() {
        let mut rng = TestRng::new(17);
        for _ in 0..200 {
            let a = rng.herm(2.0);
            let b = rng.herm(2.0);
            assert_close(to_pauli(a).dot(&to_pauli(b)), hs_inner(a, b), 1e-13);
        }
    }

    #[test]
    fn superop_of_identity_map() {
        // Identity up to the Pauli round-trip tolerance.
        let s = superop_of(|h| h);
        for (row, irow) in s.m.iter().zip(SuperOp4::identity().m.iter()) {
            for (a, b) in row.iter().zip(irow.iter()) {
                assert!((a - b).abs() <= 1e-15);
            }
        }
    }

    #[test]
    fn superop_of_sigma_x_conjugation_flips_sigma_z() {
        // σx σz σx = −σz.
        let s = superop_of(|h| {
            let m = Herm2::sigma_x().to_mat() * h.to_mat() * Herm2::sigma_x().to_mat();
            Herm2::hermitian_part(&m)
        });
        let out = s.apply(Herm2::sigma_z());
        assert!((out - (-Herm2::sigma_z())).frobenius_norm() <= 1e-15);
    }

    #[test]
    fn superop_transpose_is_hs_adjoint() {
        let mut rng = TestRng::new(18);
        // A non-trivial linear map: conjugation plus a damping-like mix.
        let s = superop_of(|h| {
            let m = su2_exp_x(1.3, 0.7) * h.to_mat() * su2_exp_x(-1.3, 0.7);
            Herm2::hermitian_part(&m).scale(0.8) + Herm2::identity().scale(0.1 * h.trace())
        });
        let st = superop_transpose(&s);
        for _ in 0..300 {
            let x = rng.herm(2.0);
            let rho = rng.herm(2.0);
            let lhs = hs_inner(st.apply(x), rho);
            let rhs = hs_inner(x, s.apply(rho));
            assert_close(lhs, rhs, 1e-14 * (1.0 + lhs.abs()));
        }
    }

    #[test]
    fn herm_exp_matches_known_values() {
        let e0 = herm_exp(Herm2::zero());
        assert!((e0 - Herm2::identity()).frobenius_norm() <= 1e-15);

        // exp(t σz) = diag(e^t, e^{−t}).
        let t = 0.37;
        let ez = herm_exp(Herm2::sigma_z().scale(t));
        assert_close(ez.d0, t.exp(), 1e-14);
        assert_close(ez.d1, (-t).exp(), 1e-14);

        let mut rng = TestRng::new(19);
        for _ in 0..100 {
            let h = rng.herm(1.5);
            let prod = herm_exp(h).to_mat() * herm_exp(-h).to_mat();
            assert!((prod - Mat2::identity()).frobenius_norm() <= 1e-12);
        }
    }
}
