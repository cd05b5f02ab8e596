//! Effective generator of a dilated unitary, the resulting time bound, and
//! the per-point speed/efficiency report over a PT parameter grid.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::brachistochrone::{hermitian_min_time, pt_flip_time};
use crate::dilation::{dilate_evolution, DilationResult};
use crate::linalg::{logm_unitary, CMatrix};
use crate::quantum::{pt_hamiltonian, pt_spectral, PTParams, StateVector};
use crate::{Error, Result};

/// Eigenphases closer than this to ±π raise the branch warning.
pub const BRANCH_BAND: f64 = 1e-6;
/// Slack allowed when comparing T against the bound.
pub const BOUND_SLACK: f64 = 1e-9;

/// Principal Hermitian generator of a unitary over time T.
#[derive(Clone, Debug)]
pub struct EffectiveGenerator {
    /// H_U with U = e^{−i H_U T/ℏ}.
    pub h: CMatrix,
    /// λ_max(H_U) − λ_min(H_U).
    pub omega: f64,
    /// Eigenphases of U in (−π, π], ascending.
    pub eigenphases: Vec<f64>,
    /// Some eigenphase sits on the branch cut; ω is then a lower estimate.
    pub branch_warning: bool,
}

pub fn effective_generator(u: &CMatrix, t: f64, hbar: f64) -> Result<EffectiveGenerator> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "T must be positive, got {t}"
        )));
    }
    if !(hbar > 0.0) || !hbar.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "hbar must be positive, got {hbar}"
        )));
    }
    let (phases, g) = logm_unitary(u)?;
    let scale = hbar / t;
    let spread = phases.last().unwrap() - phases.first().unwrap();
    let branch_warning = phases.iter().any(|p| PI - p.abs() < BRANCH_BAND);
    Ok(EffectiveGenerator {
        h: g.scale_real(scale),
        omega: spread * scale,
        eigenphases: phases,
        branch_warning,
    })
}

/// Which overlap enters the bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundVariant {
    /// |α·⟨0|e^{−iHT/ℏ}|0⟩/γ|, the matrix-element form.
    MatrixElement,
    /// |⟨Ψ_i|U Ψ_i⟩| with Ψ_i = |0_e 0_a⟩.
    FullState,
}

impl BoundVariant {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundVariant::MatrixElement => "matrix_element",
            BoundVariant::FullState => "full_state",
        }
    }
}

impl fmt::Display for BoundVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The `--variant` selector.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum VariantSelection {
    MatrixElement,
    FullState,
    #[default]
    Both,
}

impl VariantSelection {
    pub fn variants(self) -> &'static [BoundVariant] {
        match self {
            VariantSelection::MatrixElement => &[BoundVariant::MatrixElement],
            VariantSelection::FullState => &[BoundVariant::FullState],
            VariantSelection::Both => &[BoundVariant::MatrixElement, BoundVariant::FullState],
        }
    }

    pub fn includes(self, v: BoundVariant) -> bool {
        self.variants().contains(&v)
    }
}

impl FromStr for VariantSelection {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "eq4" => Ok(VariantSelection::MatrixElement),
            "full" => Ok(VariantSelection::FullState),
            "both" => Ok(VariantSelection::Both),
            other => Err(Error::Config(format!(
                "variant must be eq4, full or both, got `{other}`"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundReport {
    pub t: f64,
    pub omega_used: f64,
    pub overlap_arg: f64,
    /// (2ℏ/ω)·arccos(overlap_arg).
    pub rhs: f64,
    pub satisfied: bool,
    /// T − rhs.
    pub margin: f64,
    pub variant: BoundVariant,
    pub branch_warning: bool,
}

/// Overlap argument of `variant` for the dilation `d`.
pub fn overlap_arg(d: &DilationResult, variant: BoundVariant) -> f64 {
    let v = match variant {
        BoundVariant::MatrixElement => (d.propagator[(0, 0)] * (d.alpha / d.gamma)).norm(),
        BoundVariant::FullState => d.u[(0, 0)].norm(),
    };
    v.min(1.0)
}

/// Time bound for `d` with ω taken from the effective generator of U.
pub fn check_time_bound(d: &DilationResult, t: f64, variant: BoundVariant) -> Result<BoundReport> {
    check_time(d, t)?;
    let eff = effective_generator(&d.u, t, d.hbar)?;
    Ok(bound_report(d, t, eff.omega, variant, eff.branch_warning))
}

/// Time bound for `d` with a caller-supplied ω.
pub fn check_time_bound_with_omega(
    d: &DilationResult,
    t: f64,
    omega: f64,
    variant: BoundVariant,
) -> Result<BoundReport> {
    check_time(d, t)?;
    if !(omega >= 0.0) || !omega.is_finite() {
        return Err(Error::NonPositiveOmega(omega));
    }
    Ok(bound_report(d, t, omega, variant, false))
}

fn check_time(d: &DilationResult, t: f64) -> Result<()> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "T must be positive, got {t}"
        )));
    }
    if (d.t - t).abs() > 1e-12 * t.max(1.0) {
        return Err(Error::InvalidArgument(format!(
            "dilation was built for t = {}, not T = {t}",
            d.t
        )));
    }
    Ok(())
}

fn bound_report(
    d: &DilationResult,
    t: f64,
    omega: f64,
    variant: BoundVariant,
    branch_warning: bool,
) -> BoundReport {
    let arg = overlap_arg(d, variant);
    let angle = arg.acos();
    let rhs = if omega > 0.0 {
        2.0 * d.hbar / omega * angle
    } else if angle <= 1e-12 {
        // U ∝ I: nothing to move, nothing to bound
        0.0
    } else {
        f64::INFINITY
    };
    let margin = t - rhs;
    BoundReport {
        t,
        omega_used: omega,
        overlap_arg: arg,
        rhs,
        satisfied: t >= rhs - BOUND_SLACK,
        margin,
        variant,
        branch_warning,
    }
}

/// Row status in an efficiency report.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowStatus {
    Ok,
    /// Branch-cut warning: ω_U is a lower estimate.
    Flagged,
    /// Exceptional point, broken phase or no flip within t_max.
    Skip,
}

impl RowStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            RowStatus::Ok => "ok",
            RowStatus::Flagged => "flagged",
            RowStatus::Skip => "skip",
        }
    }
}

/// One grid point. Numeric fields are NaN on skipped rows.
#[derive(Clone, Debug)]
pub struct EfficiencyRecord {
    pub params: PTParams,
    pub status: RowStatus,
    /// Why the row was skipped.
    pub skip_reason: Option<String>,
    pub t_flip: f64,
    pub omega_h: f64,
    pub gamma: f64,
    pub alpha2: f64,
    pub omega_u: f64,
    /// (2ℏ/ω_H)·arccos|⟨ψ_i|ψ_f⟩|.
    pub hermitian_tau_same_omega: f64,
    pub bound_element: Option<BoundReport>,
    pub bound_full: Option<BoundReport>,
    /// Every selected variant satisfied.
    pub bound_ok: bool,
}

impl EfficiencyRecord {
    fn skipped(params: PTParams, reason: String) -> Self {
        EfficiencyRecord {
            params,
            status: RowStatus::Skip,
            skip_reason: Some(reason),
            t_flip: f64::NAN,
            omega_h: f64::NAN,
            gamma: f64::NAN,
            alpha2: f64::NAN,
            omega_u: f64::NAN,
            hermitian_tau_same_omega: f64::NAN,
            bound_element: None,
            bound_full: None,
            bound_ok: false,
        }
    }

    pub fn is_skip(&self) -> bool {
        self.status == RowStatus::Skip
    }
}

/// Evaluates one grid point; see [`efficiency_report`].
pub fn efficiency_record(
    p: &PTParams,
    psi_i: &StateVector,
    psi_f: &StateVector,
    selection: VariantSelection,
) -> Result<EfficiencyRecord> {
    let sd = match pt_spectral(p) {
        Ok(sd) => sd,
        Err(Error::ExceptionalPoint) => {
            return Ok(EfficiencyRecord::skipped(*p, "exceptional point".into()))
        }
        Err(e) => return Err(e),
    };
    if !sd.unbroken {
        return Ok(EfficiencyRecord::skipped(*p, "broken phase".into()));
    }
    let omega_h = sd.omega;
    let tau = hermitian_min_time(psi_i, psi_f, omega_h, p.hbar)?.tau;
    let t_max = 2.0 * PI * p.hbar / omega_h;
    let t_flip = match pt_flip_time(p, psi_i, psi_f, t_max) {
        Ok(t) => t,
        Err(Error::NotReached) => {
            return Ok(EfficiencyRecord::skipped(*p, "target not reached".into()))
        }
        Err(e) => return Err(e),
    };

    let d = dilate_evolution(&pt_hamiltonian(p), t_flip, p.hbar)?;
    let eff = effective_generator(&d.u, t_flip, p.hbar)?;
    let element = bound_report(
        &d,
        t_flip,
        eff.omega,
        BoundVariant::MatrixElement,
        eff.branch_warning,
    );
    let full = bound_report(
        &d,
        t_flip,
        eff.omega,
        BoundVariant::FullState,
        eff.branch_warning,
    );
    let bound_ok = selection.variants().iter().all(|v| match v {
        BoundVariant::MatrixElement => element.satisfied,
        BoundVariant::FullState => full.satisfied,
    });

    Ok(EfficiencyRecord {
        params: *p,
        status: if eff.branch_warning {
            RowStatus::Flagged
        } else {
            RowStatus::Ok
        },
        skip_reason: None,
        t_flip,
        omega_h,
        gamma: d.gamma,
        alpha2: d.alpha * d.alpha,
        omega_u: eff.omega,
        hermitian_tau_same_omega: tau,
        bound_element: Some(element),
        bound_full: Some(full),
        bound_ok,
    })
}

/// Flip time, dilation cost and bounds for every grid point, in grid order.
///
/// Exceptional points, broken-phase points and points whose flip is not
/// reached within one Hermitian period 2πℏ/ω_H are emitted as skip rows.
pub fn efficiency_report(
    grid: &[PTParams],
    psi_i: &StateVector,
    psi_f: &StateVector,
    selection: VariantSelection,
) -> Result<Vec<EfficiencyRecord>> {
    if grid.is_empty() {
        return Err(Error::InvalidArgument("parameter grid is empty".into()));
    }
    psi_i.require_normalized()?;
    psi_f.require_normalized()?;
    grid.iter()
        .map(|p| efficiency_record(p, psi_i, psi_f, selection))
        .collect()
}
