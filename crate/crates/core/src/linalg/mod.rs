//! Dense complex linear algebra for small matrices (n ≤ 16).

mod eigen;
mod expm;
mod functions;
mod matrix;

pub use eigen::{eig, eigh, hessenberg, schur, svd, EigenDecomposition, MAX_EIGVEC_CONDITION};
pub use expm::{expm, propagator};
pub use functions::{logm_unitary, operator_norm, overlap, sqrtm_psd, PSD_TOL, UNITARY_TOL};
pub use matrix::{inner, vec_norm, CMatrix};
pub use num_complex::Complex64 as C64;

/// Pauli X.
pub fn sigma_x() -> CMatrix {
    CMatrix::from_real_rows(&[[0.0, 1.0], [1.0, 0.0]])
}

/// Pauli Y.
pub fn sigma_y() -> CMatrix {
    CMatrix::from_rows(&[
        [C64::new(0.0, 0.0), C64::new(0.0, -1.0)],
        [C64::new(0.0, 1.0), C64::new(0.0, 0.0)],
    ])
}

/// Pauli Z.
pub fn sigma_z() -> CMatrix {
    CMatrix::diag_real(&[1.0, -1.0])
}
