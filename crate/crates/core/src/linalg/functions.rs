//! Matrix functions built on the eigensolvers.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use super::{eigh, schur, CMatrix};
use crate::{Error, Result};

/// Asymmetry / negativity tolerance for PSD square roots.
pub const PSD_TOL: f64 = 1e-10;
/// Unitarity tolerance accepted by [`logm_unitary`].
pub const UNITARY_TOL: f64 = 1e-10;

/// Largest singular value, via the largest eigenvalue of A†A.
pub fn operator_norm(a: &CMatrix) -> Result<f64> {
    a.ensure_finite()?;
    let gram = &a.adjoint() * a;
    let (vals, _) = eigh(&gram)?;
    Ok(vals.last().copied().unwrap_or(0.0).max(0.0).sqrt())
}

/// Principal square root of a Hermitian positive semidefinite matrix.
///
/// Eigenvalues in [−1e-10, 0) are clamped to zero.
pub fn sqrtm_psd(a: &CMatrix) -> Result<CMatrix> {
    a.ensure_finite()?;
    let asym = a.hermitian_defect();
    if asym > PSD_TOL * (1.0 + a.frobenius_norm()) {
        return Err(Error::NotHermitian(asym));
    }
    let (vals, vecs) = eigh(a)?;
    if let Some(&min) = vals.first() {
        if min < -PSD_TOL {
            return Err(Error::NotPsd(min));
        }
    }
    let roots: Vec<f64> = vals.iter().map(|&l| l.max(0.0).sqrt()).collect();
    let b = &(&vecs * &CMatrix::diag_real(&roots)) * &vecs.adjoint();
    Ok(b.hermitian_part())
}

/// Principal logarithm of a unitary matrix.
///
/// Returns the eigenphases φ_k ∈ (−π, π] of U (ascending) and the Hermitian
/// generator G with U = e^{−iG}, so G has eigenvalues −φ_k.
pub fn logm_unitary(u: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    u.ensure_finite()?;
    let defect = u.unitarity_defect();
    if defect > UNITARY_TOL {
        return Err(Error::NotUnitary(defect));
    }
    // unitary matrices are normal, so the Schur factor is diagonal
    let (z, t) = schur(u)?;
    let phases: Vec<f64> = t
        .diagonal()
        .iter()
        .map(|l| principal_phase(l.arg()))
        .collect();
    let gen_diag: Vec<f64> = phases.iter().map(|p| -p).collect();
    let g = (&(&z * &CMatrix::diag_real(&gen_diag)) * &z.adjoint()).hermitian_part();
    let mut sorted = phases;
    sorted.sort_by(f64::total_cmp);
    Ok((sorted, g))
}

fn principal_phase(phi: f64) -> f64 {
    if phi <= -PI {
        phi + 2.0 * PI
    } else {
        phi
    }
}

/// Fidelity-style overlap |⟨a|b⟩| of two vectors, clamped to [0, 1].
pub fn overlap(a: &[C64], b: &[C64]) -> f64 {
    super::inner(a, b).norm().min(1.0)
}
