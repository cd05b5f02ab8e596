//! Hermitian minimal transfer time and the flip time of normalized PT
//! evolutions.

use crate::linalg::{inner, propagator, vec_norm, CMatrix, C64};
use crate::quantum::{pt_hamiltonian, pt_spectral, PTParams, StateVector};
use crate::{Error, Result};

/// Number of uniform scan points in (0, t_max].
pub const SCAN_STEPS: usize = 10_000;
/// Scan points must exceed this overlap to be refined.
pub const PREFILTER: f64 = 1.0 - 1e-6;
/// Overlap that counts as having reached the target.
pub const FLIP_THRESHOLD: f64 = 1.0 - 1e-10;
/// Absolute tolerance of the refined flip time.
pub const BISECT_TOL: f64 = 1e-12;

/// τ = (2ℏ/ω)·arccos(overlap).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TimeBound {
    pub tau: f64,
    pub omega: f64,
    pub overlap: f64,
}

fn check_pair(psi_i: &StateVector, psi_f: &StateVector) -> Result<()> {
    psi_i.require_normalized()?;
    psi_f.require_normalized()?;
    if psi_i.dim() != psi_f.dim() {
        return Err(Error::DimensionMismatch {
            expected: psi_i.dim(),
            found: psi_f.dim(),
        });
    }
    Ok(())
}

fn check_omega_hbar(omega: f64, hbar: f64) -> Result<()> {
    if !(omega > 0.0) || !omega.is_finite() {
        return Err(Error::NonPositiveOmega(omega));
    }
    if !(hbar > 0.0) || !hbar.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "hbar must be positive, got {hbar}"
        )));
    }
    Ok(())
}

/// Minimal time for a Hermitian Hamiltonian with eigenvalue spread `omega`
/// to carry `psi_i` to `psi_f`.
pub fn hermitian_min_time(
    psi_i: &StateVector,
    psi_f: &StateVector,
    omega: f64,
    hbar: f64,
) -> Result<TimeBound> {
    check_pair(psi_i, psi_f)?;
    check_omega_hbar(omega, hbar)?;
    let overlap = psi_i.overlap(psi_f).min(1.0);
    Ok(TimeBound {
        tau: 2.0 * hbar / omega * overlap.acos(),
        omega,
        overlap,
    })
}

/// Hermitian generator with spread `omega` that saturates
/// [`hermitian_min_time`].
///
/// It rotates in the plane spanned by `psi_i` and the component of `psi_f`
/// orthogonal to it. When the two states coincide up to phase the zero
/// matrix is returned (τ = 0).
pub fn optimal_hermitian(
    psi_i: &StateVector,
    psi_f: &StateVector,
    omega: f64,
    hbar: f64,
) -> Result<CMatrix> {
    check_pair(psi_i, psi_f)?;
    check_omega_hbar(omega, hbar)?;
    let n = psi_i.dim();
    let c = psi_i.inner(psi_f);
    let mag = c.norm();
    if mag >= 1.0 - 1e-12 {
        return Ok(CMatrix::zeros(n));
    }
    let phase = if mag > 0.0 {
        c.conj() / mag
    } else {
        C64::new(1.0, 0.0)
    };
    let a = psi_i.amplitudes();
    let mut perp: Vec<C64> = psi_f
        .amplitudes()
        .iter()
        .zip(a)
        .map(|(f, i)| f * phase - i * mag)
        .collect();
    // one re-orthogonalization pass for accuracy
    let proj = inner(a, &perp);
    for (p, i) in perp.iter_mut().zip(a) {
        *p -= proj * i;
    }
    let pn = vec_norm(&perp);
    for p in perp.iter_mut() {
        *p /= pn;
    }
    // H = (ω/2)(i|e⊥⟩⟨ψ_i| − i|ψ_i⟩⟨e⊥|)
    let i_half = C64::new(0.0, omega / 2.0);
    let h = CMatrix::from_fn(n, |r, col| {
        i_half * (perp[r] * a[col].conj() - a[r] * perp[col].conj())
    });
    Ok(h.hermitian_part())
}

/// Flip time of the normalized PT evolution from `psi_i` to `psi_f`.
///
/// The first time in (0, t_max] at which |⟨ψ_f|e^{−iHt/ℏ}ψ_i⟩|/γ(t) peaks at
/// or above [`FLIP_THRESHOLD`]. Found by a uniform scan of [`SCAN_STEPS`]
/// points, then bisection on the sign of the overlap's time derivative.
pub fn pt_flip_time(
    p: &PTParams,
    psi_i: &StateVector,
    psi_f: &StateVector,
    t_max: f64,
) -> Result<f64> {
    pt_spectral(p)?;
    flip_time(&pt_hamiltonian(p), psi_i, psi_f, t_max, p.hbar)
}

/// [`pt_flip_time`] for an arbitrary generator.
pub fn flip_time(
    h: &CMatrix,
    psi_i: &StateVector,
    psi_f: &StateVector,
    t_max: f64,
    hbar: f64,
) -> Result<f64> {
    check_pair(psi_i, psi_f)?;
    if psi_i.dim() != h.dim() {
        return Err(Error::DimensionMismatch {
            expected: h.dim(),
            found: psi_i.dim(),
        });
    }
    if !(t_max > 0.0) || !t_max.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "t_max must be positive, got {t_max}"
        )));
    }
    if !(hbar > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "hbar must be positive, got {hbar}"
        )));
    }
    if psi_i.overlap(psi_f) >= 1.0 - 1e-12 {
        // t = 0 is excluded
        return Err(Error::NotReached);
    }

    let probe = OverlapProbe {
        h,
        psi_i,
        psi_f,
        hbar,
    };
    let step = t_max / SCAN_STEPS as f64;
    let stepper = propagator(h, step, hbar)?;
    let mut state = psi_i.amplitudes().to_vec();
    let target = psi_f.amplitudes();

    let mut k = 1;
    while k <= SCAN_STEPS {
        state = stepper.mul_vec(&state);
        let n = vec_norm(&state);
        if !(n > 0.0 && n.is_finite()) {
            return Err(Error::NonFinite);
        }
        for z in state.iter_mut() {
            *z /= n;
        }
        if inner(target, &state).norm() < PREFILTER {
            k += 1;
            continue;
        }
        // walk to the first grid point past the peak
        let mut j = k;
        while j <= SCAN_STEPS && probe.slope(j as f64 * step)? > 0.0 {
            j += 1;
        }
        let candidate = if j > SCAN_STEPS {
            t_max
        } else {
            let (mut lo, mut hi) = ((j - 1) as f64 * step, j as f64 * step);
            while hi - lo > BISECT_TOL {
                let mid = 0.5 * (lo + hi);
                if probe.slope(mid)? > 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            0.5 * (lo + hi)
        };
        if candidate > 0.0 && probe.overlap(candidate)? >= FLIP_THRESHOLD {
            return Ok(candidate);
        }
        if j >= SCAN_STEPS {
            break;
        }
        // resume the scan after the rejected peak
        state = propagator(h, j as f64 * step, hbar)?.mul_vec(psi_i.amplitudes());
        k = j + 1;
        let n = vec_norm(&state);
        for z in state.iter_mut() {
            *z /= n;
        }
    }
    Err(Error::NotReached)
}

struct OverlapProbe<'a> {
    h: &'a CMatrix,
    psi_i: &'a StateVector,
    psi_f: &'a StateVector,
    hbar: f64,
}

impl OverlapProbe<'_> {
    fn evolved(&self, t: f64) -> Result<Vec<C64>> {
        Ok(propagator(self.h, t, self.hbar)?.mul_vec(self.psi_i.amplitudes()))
    }

    fn overlap(&self, t: f64) -> Result<f64> {
        let phi = self.evolved(t)?;
        Ok(inner(self.psi_f.amplitudes(), &phi).norm() / vec_norm(&phi))
    }

    /// Sign-carrying numerator of d/dt |⟨ψ_f|φ⟩|²/⟨φ|φ⟩.
    fn slope(&self, t: f64) -> Result<f64> {
        let phi = self.evolved(t)?;
        let dphi: Vec<C64> = self
            .h
            .mul_vec(&phi)
            .into_iter()
            .map(|z| z * C64::new(0.0, -1.0 / self.hbar))
            .collect();
        let target = self.psi_f.amplitudes();
        let a = inner(target, &phi);
        let da = inner(target, &dphi);
        let n = inner(&phi, &phi).re;
        let dn = 2.0 * inner(&phi, &dphi).re;
        Ok(2.0 * (a.conj() * da).re * n - a.norm_sqr() * dn)
    }
}
