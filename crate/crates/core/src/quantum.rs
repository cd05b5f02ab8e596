//! States, the two-level PT-symmetric Hamiltonian family, spectra and the
//! metric operator that makes a pseudo-Hermitian evolution unitary.

use std::f64::consts::TAU;

use crate::linalg::{eig, inner, propagator, vec_norm, CMatrix, C64};
use crate::{Error, Result};

/// Tolerance on ‖ψ‖ for the normalized flag.
pub const NORM_TOL: f64 = 1e-12;
/// Relative width of the exceptional-point guard band on s² − r²sin²θ.
pub const EP_BAND: f64 = 1e-8;
/// Imaginary parts below this (times 1 + ‖H‖) count as real.
pub const REAL_TOL: f64 = 1e-10;

/// A pure state as a complex amplitude vector.
///
/// The `normalized` flag is explicit: it is set only by constructors that
/// normalize, never inferred. Evolution under a non-Hermitian generator
/// clears it.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<C64>,
    normalized: bool,
}

impl StateVector {
    /// Wraps raw amplitudes without normalizing.
    pub fn new(amplitudes: Vec<C64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::InvalidArgument(
                "state vector must be non-empty".into(),
            ));
        }
        if amplitudes
            .iter()
            .any(|z| !(z.re.is_finite() && z.im.is_finite()))
        {
            return Err(Error::NonFinite);
        }
        Ok(StateVector {
            amplitudes,
            normalized: false,
        })
    }

    /// Normalizes the amplitudes and sets the flag.
    pub fn normalized(amplitudes: Vec<C64>) -> Result<Self> {
        Self::new(amplitudes)?.normalize()
    }

    /// Computational basis state |k⟩ in dimension `dim`.
    pub fn basis(dim: usize, k: usize) -> Self {
        assert!(k < dim, "basis index out of range");
        let mut amplitudes = vec![C64::new(0.0, 0.0); dim];
        amplitudes[k] = C64::new(1.0, 0.0);
        StateVector {
            amplitudes,
            normalized: true,
        }
    }

    pub fn normalize(mut self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::InvalidArgument(
                "cannot normalize a zero vector".into(),
            ));
        }
        for z in self.amplitudes.iter_mut() {
            *z /= n;
        }
        self.normalized = true;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amplitudes
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn norm(&self) -> f64 {
        vec_norm(&self.amplitudes)
    }

    /// ⟨self|other⟩.
    pub fn inner(&self, other: &StateVector) -> C64 {
        inner(&self.amplitudes, &other.amplitudes)
    }

    /// |⟨self|other⟩| for two states, regardless of their norms.
    pub fn overlap(&self, other: &StateVector) -> f64 {
        self.inner(other).norm()
    }

    /// |⟨a|b⟩| / (‖a‖‖b‖): the overlap of the rays, ignoring norm and phase.
    pub fn ray_overlap(&self, other: &StateVector) -> f64 {
        (self.inner(other).norm() / (self.norm() * other.norm())).min(1.0)
    }

    pub(crate) fn require_normalized(&self) -> Result<()> {
        if self.normalized && (self.norm() - 1.0).abs() <= NORM_TOL {
            Ok(())
        } else {
            Err(Error::NotNormalized)
        }
    }
}

/// Parameters of H = [[r·e^{iθ}, s], [s, r·e^{−iθ}]].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PTParams {
    pub r: f64,
    pub s: f64,
    /// Reduced to [0, 2π).
    pub theta: f64,
    pub hbar: f64,
}

impl PTParams {
    pub fn new(r: f64, s: f64, theta: f64, hbar: f64) -> Result<Self> {
        if !(r.is_finite() && s.is_finite() && theta.is_finite() && hbar.is_finite()) {
            return Err(Error::NonFinite);
        }
        if s <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "s must be positive, got {s}"
            )));
        }
        if hbar <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "hbar must be positive, got {hbar}"
            )));
        }
        Ok(PTParams {
            r,
            s,
            theta: theta.rem_euclid(TAU),
            hbar,
        })
    }

    /// s² − r²·sin²θ; positive in the unbroken phase.
    pub fn discriminant(&self) -> f64 {
        let a = self.r * self.theta.sin();
        self.s * self.s - a * a
    }

    pub fn is_unbroken(&self) -> bool {
        self.discriminant() > 0.0 && !self.at_exceptional_point()
    }

    /// Inside the guard band |s² − r²sin²θ| < 1e-8·s².
    pub fn at_exceptional_point(&self) -> bool {
        self.discriminant().abs() < EP_BAND * self.s * self.s
    }

    /// Closed-form eigenvalue spread 2·√|s² − r²sin²θ|.
    pub fn omega_closed_form(&self) -> f64 {
        2.0 * self.discriminant().abs().sqrt()
    }
}

/// Eigenvalues and spread of a Hamiltonian.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralData {
    pub e_plus: C64,
    pub e_minus: C64,
    /// |E₊ − E₋|
    pub omega: f64,
    /// Both eigenvalues real within tolerance.
    pub unbroken: bool,
    /// All eigenvalues in sorted order.
    pub eigenvalues: Vec<C64>,
    /// Set for dimension > 2, where ω is the largest pairwise distance.
    pub extended: bool,
}

/// The PT-symmetric two-level Hamiltonian for `p`.
pub fn pt_hamiltonian(p: &PTParams) -> CMatrix {
    let d = C64::from_polar(p.r, p.theta);
    let s = C64::new(p.s, 0.0);
    CMatrix::from_rows(&[[d, s], [s, d.conj()]])
}

/// Spectral data of `h`.
pub fn spectral(h: &CMatrix) -> Result<SpectralData> {
    h.ensure_finite()?;
    let hnorm = h.frobenius_norm();
    let dec = match eig(h) {
        Ok(d) => d,
        Err(Error::NotDiagonalizable { .. }) => return Err(Error::ExceptionalPoint),
        Err(e) => return Err(e),
    };
    let ev = dec.eigenvalues;
    let n = ev.len();
    let (mut lo, mut hi, mut omega) = (0, n - 1, (ev[n - 1] - ev[0]).norm());
    for i in 0..n {
        for j in (i + 1)..n {
            let d = (ev[j] - ev[i]).norm();
            if d > omega {
                (lo, hi, omega) = (i, j, d);
            }
        }
    }
    if n > 1 && omega < 1e-8 * hnorm {
        // coalesced eigenvalues: only a scalar matrix is still diagonalizable
        let mean = h.trace() / n as f64;
        let dev = (h - &CMatrix::identity(n).scale(mean)).frobenius_norm();
        if dev > 1e-8 * hnorm {
            return Err(Error::ExceptionalPoint);
        }
    }
    let unbroken = ev.iter().all(|l| l.im.abs() <= REAL_TOL * (1.0 + hnorm));
    Ok(SpectralData {
        e_plus: ev[hi],
        e_minus: ev[lo],
        omega,
        unbroken,
        extended: n > 2,
        eigenvalues: ev,
    })
}

/// Spectral data for the PT family, honouring the exceptional-point band.
pub fn pt_spectral(p: &PTParams) -> Result<SpectralData> {
    if p.at_exceptional_point() {
        return Err(Error::ExceptionalPoint);
    }
    spectral(&pt_hamiltonian(p))
}

/// Metric operator η with H† = η·H·η⁻¹, normalized to tr η = dim.
///
/// Built as Σ_k |φ_k⟩⟨φ_k| from the unit eigenvectors of H† (the left
/// eigenvectors of H). Only defined in the unbroken phase.
pub fn metric_operator(h: &CMatrix) -> Result<CMatrix> {
    let sd = spectral(h)?;
    if !sd.unbroken {
        return Err(Error::BrokenPhase);
    }
    let n = h.dim();
    let left = match eig(&h.adjoint()) {
        Ok(d) => d,
        Err(Error::NotDiagonalizable { .. }) => return Err(Error::ExceptionalPoint),
        Err(e) => return Err(e),
    };
    let mut eta = CMatrix::zeros(n);
    for v in &left.eigenvectors {
        eta = &eta + &CMatrix::outer(v, v);
    }
    let tr = eta.trace().re;
    Ok(eta.scale_real(n as f64 / tr).hermitian_part())
}

/// Checks H†·η = η·H; returns the verdict and ‖H†η − ηH‖_F.
pub fn is_pseudo_hermitian(h: &CMatrix, eta: &CMatrix) -> (bool, f64) {
    let residual = (&(&h.adjoint() * eta) - &(eta * h)).frobenius_norm();
    let tol = 1e-9 * (1.0 + h.frobenius_norm() * eta.frobenius_norm());
    (residual <= tol, residual)
}

fn check_evolution_args(h: &CMatrix, t: f64, psi: &StateVector, hbar: f64) -> Result<()> {
    if psi.dim() != h.dim() {
        return Err(Error::DimensionMismatch {
            expected: h.dim(),
            found: psi.dim(),
        });
    }
    if !(t.is_finite() && hbar.is_finite()) {
        return Err(Error::NonFinite);
    }
    if t < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "time must be non-negative, got {t}"
        )));
    }
    if hbar <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "hbar must be positive, got {hbar}"
        )));
    }
    Ok(())
}

/// e^{−iHt/ℏ}|ψ⟩, returned unnormalized (flag cleared).
pub fn evolve(h: &CMatrix, t: f64, psi: &StateVector, hbar: f64) -> Result<StateVector> {
    check_evolution_args(h, t, psi, hbar)?;
    let u = propagator(h, t, hbar)?;
    StateVector::new(u.mul_vec(psi.amplitudes()))
}

/// γ = ‖e^{−iHt/ℏ}|ψ⟩‖.
pub fn evolution_norm(h: &CMatrix, t: f64, psi: &StateVector, hbar: f64) -> Result<f64> {
    Ok(evolve(h, t, psi, hbar)?.norm())
}
