//! Unitary dilation of the non-unitary propagator on system ⊗ ancilla.
//!
//! The success branch is the contraction K = (α/γ)·e^{−iHt/ℏ}. It is embedded
//! as the top-left block of
//!
//! ```text
//!     U = [[ K,            √(I − K K†) ],
//!          [ √(I − K† K),  −K†         ]]
//! ```
//!
//! with the ancilla as the slow index: basis index = ancilla·n + system, and
//! ancilla |0⟩ is the success outcome. Tracing out the ancilla prepared in
//! |0⟩ gives the Kraus pair (M0, M1) = (K, √(I − K†K)).

use std::fmt::Write as _;
use std::io::{self, Write};
use std::str::FromStr;

use crate::linalg::{eigh, inner, operator_norm, propagator, svd, vec_norm, CMatrix, C64};
use crate::quantum::StateVector;
use crate::rng::haar_state;
use crate::{Error, Result};

/// Residual tolerance for unitarity, completeness and reconstruction.
pub const DILATION_TOL: f64 = 1e-10;
/// Largest admissible σ_max(K) − 1.
pub const CONTRACTION_TOL: f64 = 1e-12;
/// Branch norms below this make the branch impossible.
pub const ZERO_BRANCH: f64 = 1e-14;
/// Fidelity counted as "matching" in the restriction scan.
pub const MATCH_FIDELITY: f64 = 1.0 - 1e-9;

#[derive(Clone, Debug)]
pub struct DilationResult {
    /// The generator being simulated.
    pub h: CMatrix,
    /// e^{−iHt/ℏ}.
    pub propagator: CMatrix,
    /// 2n×2n unitary, ancilla-major.
    pub u: CMatrix,
    /// Success-branch contraction (α/γ)·e^{−iHt/ℏ}.
    pub k: CMatrix,
    pub alpha: f64,
    /// Norm of the failure branch of U|0_e 0_a⟩.
    pub beta: f64,
    /// ‖e^{−iHt/ℏ}|0_e⟩‖.
    pub gamma: f64,
    pub kraus: (CMatrix, CMatrix),
    /// Normalized failure-branch system state |ψ_e⟩, absent when β = 0.
    pub failure_state: Option<StateVector>,
    /// ‖U|0_e 0_a⟩ − (α·e^{−iHt/ℏ}|0_e⟩/γ ⊕ β|ψ_e⟩)‖.
    pub decomposition_residual: f64,
    pub t: f64,
    pub hbar: f64,
}

impl DilationResult {
    pub fn system_dim(&self) -> usize {
        self.k.dim()
    }

    /// U (ψ ⊗ |0_a⟩).
    pub fn apply_to(&self, psi: &StateVector) -> Vec<C64> {
        let n = self.system_dim();
        let mut full = vec![C64::new(0.0, 0.0); 2 * n];
        full[..n].copy_from_slice(psi.amplitudes());
        self.u.mul_vec(&full)
    }
}

#[derive(Clone, Debug)]
pub struct PostSelectOutcome {
    pub success_prob: f64,
    pub failure_prob: f64,
    success_state: Option<StateVector>,
    failure_state: Option<StateVector>,
}

impl PostSelectOutcome {
    /// Normalized system state after observing ancilla |0⟩.
    pub fn success_state(&self) -> Result<&StateVector> {
        self.success_state.as_ref().ok_or(Error::ZeroBranch)
    }

    /// Normalized system state after observing ancilla |1⟩.
    pub fn failure_state(&self) -> Result<&StateVector> {
        self.failure_state.as_ref().ok_or(Error::ZeroBranch)
    }
}

/// Outcome of [`subdynamics_restriction_scan`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RestrictionScan {
    pub samples: usize,
    pub matching: usize,
    pub fraction: f64,
    pub min_fidelity: f64,
}

/// Scales e^{−iHt/ℏ} into a contraction with the largest admissible α.
///
/// Returns (K, α, γ) with γ = ‖e^{−iHt/ℏ}|0⟩‖, α = γ/σ_max(e^{−iHt/ℏ}) and
/// K = (α/γ)·e^{−iHt/ℏ}, so σ_max(K) = 1.
pub fn contraction_from_evolution(h: &CMatrix, t: f64, hbar: f64) -> Result<(CMatrix, f64, f64)> {
    let (k, alpha, gamma, _) = contraction_parts(h, t, hbar)?;
    Ok((k, alpha, gamma))
}

fn contraction_parts(h: &CMatrix, t: f64, hbar: f64) -> Result<(CMatrix, f64, f64, CMatrix)> {
    h.ensure_finite()?;
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "time must be non-negative, got {t}"
        )));
    }
    if !(hbar > 0.0) || !hbar.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "hbar must be positive, got {hbar}"
        )));
    }
    let e = propagator(h, t, hbar)?;
    let gamma = vec_norm(&e.column(0));
    let smax = operator_norm(&e)?;
    if !(smax > 0.0) {
        return Err(Error::NonFinite);
    }
    let alpha = gamma / smax;
    Ok((e.scale_real(1.0 / smax), alpha, gamma, e))
}

/// Minimal unitary dilation of a contraction.
///
/// Both defect blocks come from one SVD K = W·Σ·V†:
/// √(I − K†K) = V·√(1 − Σ²)·V† and √(I − KK†) = W·√(1 − Σ²)·W†.
/// Sharing Σ keeps K·√(I − K†K) = √(I − KK†)·K exact to rounding even
/// when σ_max(K) = 1.
pub fn sznagy_dilation(k: &CMatrix) -> Result<CMatrix> {
    k.ensure_finite()?;
    let smax = operator_norm(k)?;
    if smax > 1.0 + CONTRACTION_TOL {
        return Err(Error::NotContraction(smax));
    }
    let n = k.dim();
    let (w, sigma, v) = svd(k)?;
    let defect: Vec<f64> = sigma
        .iter()
        .map(|s| (1.0 - s * s).max(0.0).sqrt())
        .collect();
    let d = CMatrix::diag_real(&defect);
    let right = (&(&v * &d) * &v.adjoint()).hermitian_part();
    let left = (&(&w * &d) * &w.adjoint()).hermitian_part();

    let mut u = CMatrix::zeros(2 * n);
    u.set_block(0, 0, k);
    u.set_block(0, n, &left);
    u.set_block(n, 0, &right);
    u.set_block(n, n, &(-&k.adjoint()));
    Ok(u)
}

/// Builds the dilation of e^{−iHt/ℏ} and checks the two-branch
/// decomposition of U|0_e 0_a⟩.
pub fn dilate_evolution(h: &CMatrix, t: f64, hbar: f64) -> Result<DilationResult> {
    let (k, alpha, gamma, e) = contraction_parts(h, t, hbar)?;
    let u = sznagy_dilation(&k)?;
    let n = k.dim();

    let column = u.column(0);
    let failure = &column[n..];
    let beta = vec_norm(failure);

    let evolved = e.column(0);
    let expected: Vec<C64> = evolved.iter().map(|z| z * (alpha / gamma)).collect();
    let failure_state = if beta > ZERO_BRANCH {
        Some(StateVector::normalized(failure.to_vec())?)
    } else {
        None
    };
    let mut reconstructed = expected;
    match &failure_state {
        Some(psi_e) => reconstructed.extend(psi_e.amplitudes().iter().map(|z| z * beta)),
        None => reconstructed.extend(std::iter::repeat_n(C64::new(0.0, 0.0), n)),
    }
    let residual = vec_norm(
        &column
            .iter()
            .zip(&reconstructed)
            .map(|(a, b)| a - b)
            .collect::<Vec<_>>(),
    );
    if residual > DILATION_TOL {
        return Err(Error::Residual {
            what: "two-branch decomposition",
            residual,
        });
    }
    let norm_defect = (alpha * alpha + beta * beta - 1.0).abs();
    if norm_defect > DILATION_TOL {
        return Err(Error::Residual {
            what: "alpha^2 + beta^2",
            residual: norm_defect,
        });
    }

    let kraus = (u.block(0, 0, n), u.block(n, 0, n));
    Ok(DilationResult {
        h: h.clone(),
        propagator: e,
        u,
        k,
        alpha,
        beta,
        gamma,
        kraus,
        failure_state,
        decomposition_residual: residual,
        t,
        hbar,
    })
}

/// Kraus pair M_k = (I ⊗ ⟨k_a|)·U·(I ⊗ |0_a⟩).
pub fn kraus_subdynamics(d: &DilationResult) -> (CMatrix, CMatrix) {
    let n = d.system_dim();
    (d.u.block(0, 0, n), d.u.block(n, 0, n))
}

/// ‖Σ M_k†M_k − I‖_F.
pub fn kraus_completeness_defect(kraus: &[CMatrix]) -> f64 {
    let n = kraus[0].dim();
    let mut sum = CMatrix::zeros(n);
    for m in kraus {
        sum = &sum + &(&m.adjoint() * m);
    }
    (&sum - &CMatrix::identity(n)).frobenius_norm()
}

/// Λ(ρ) = Σ M_k ρ M_k†.
pub fn apply_channel(kraus: &[CMatrix], rho: &CMatrix) -> CMatrix {
    let mut out = CMatrix::zeros(rho.dim());
    for m in kraus {
        out = &out + &(&(m * rho) * &m.adjoint());
    }
    out
}

/// Choi matrix Σ_ij |i⟩⟨j| ⊗ Λ(|i⟩⟨j|).
pub fn choi_matrix(kraus: &[CMatrix]) -> CMatrix {
    let n = kraus[0].dim();
    let mut choi = CMatrix::zeros(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut e = CMatrix::zeros(n);
            e[(i, j)] = C64::new(1.0, 0.0);
            choi.set_block(i * n, j * n, &apply_channel(kraus, &e));
        }
    }
    choi
}

/// Smallest eigenvalue of the Choi matrix; ≥ 0 certifies complete positivity.
pub fn choi_min_eigenvalue(kraus: &[CMatrix]) -> Result<f64> {
    let (vals, _) = eigh(&choi_matrix(kraus))?;
    Ok(vals[0])
}

/// Measures the ancilla after U(ψ ⊗ |0_a⟩).
pub fn postselect(d: &DilationResult, psi: &StateVector) -> Result<PostSelectOutcome> {
    psi.require_normalized()?;
    let n = d.system_dim();
    if psi.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: psi.dim(),
        });
    }
    let s = d.kraus.0.mul_vec(psi.amplitudes());
    let f = d.kraus.1.mul_vec(psi.amplitudes());
    let (sn, fnorm) = (vec_norm(&s), vec_norm(&f));
    let branch = |v: Vec<C64>, norm: f64| -> Result<Option<StateVector>> {
        if norm < ZERO_BRANCH {
            Ok(None)
        } else {
            StateVector::normalized(v).map(Some)
        }
    };
    Ok(PostSelectOutcome {
        success_prob: sn * sn,
        failure_prob: fnorm * fnorm,
        success_state: branch(s, sn)?,
        failure_state: branch(f, fnorm)?,
    })
}

/// Fidelity ⟨φ̂|Λ(ψψ†)|φ̂⟩ between the unconditional channel output and the
/// normalized target φ̂ ∝ e^{−iHt/ℏ}ψ.
pub fn channel_fidelity(d: &DilationResult, psi: &StateVector) -> f64 {
    let phi = d.propagator.mul_vec(psi.amplitudes());
    let pn = vec_norm(&phi);
    let phi: Vec<C64> = phi.iter().map(|z| z / pn).collect();
    let s = d.kraus.0.mul_vec(psi.amplitudes());
    let f = d.kraus.1.mul_vec(psi.amplitudes());
    inner(&phi, &s).norm_sqr() + inner(&phi, &f).norm_sqr()
}

/// Compares the trace-preserving subdynamics with the normalized
/// pseudo-Hermitian target on Haar-random inputs.
pub fn subdynamics_restriction_scan(
    h: &CMatrix,
    t: f64,
    hbar: f64,
    num_samples: usize,
    seed: u64,
) -> Result<RestrictionScan> {
    if num_samples == 0 {
        return Err(Error::InvalidArgument(
            "num_samples must be at least 1".into(),
        ));
    }
    let d = dilate_evolution(h, t, hbar)?;
    let n = d.system_dim();
    let mut matching = 0;
    let mut min_fidelity = f64::INFINITY;
    for k in 0..num_samples {
        let psi = haar_state(n, seed, k as u64);
        let fid = channel_fidelity(&d, &psi);
        if fid >= MATCH_FIDELITY {
            matching += 1;
        }
        min_fidelity = min_fidelity.min(fid);
    }
    Ok(RestrictionScan {
        samples: num_samples,
        matching,
        fraction: matching as f64 / num_samples as f64,
        min_fidelity,
    })
}

/// Which operator a dumped matrix holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixKind {
    U,
    K,
    M0,
    M1,
}

impl MatrixKind {
    pub fn as_str(self) -> &'static str {
        match self {
            MatrixKind::U => "U",
            MatrixKind::K => "K",
            MatrixKind::M0 => "M0",
            MatrixKind::M1 => "M1",
        }
    }
}

impl FromStr for MatrixKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "U" => Ok(MatrixKind::U),
            "K" => Ok(MatrixKind::K),
            "M0" => Ok(MatrixKind::M0),
            "M1" => Ok(MatrixKind::M1),
            other => Err(Error::Config(format!("unknown matrix kind `{other}`"))),
        }
    }
}

/// One complex entry as `re+imj`, both parts with 17 significant digits.
pub fn format_complex(z: C64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{:.16e}{}{:.16e}j", z.re, sign, z.im.abs())
}

fn parse_complex(tok: &str) -> Result<C64> {
    let bad = || Error::Config(format!("malformed complex entry `{tok}`"));
    let body = tok.strip_suffix('j').ok_or_else(bad)?;
    // the separator is the last sign that does not follow an exponent marker
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'))
        .ok_or_else(bad)?;
    let re: f64 = body[..split].parse().map_err(|_| bad())?;
    let im: f64 = body[split..].parse().map_err(|_| bad())?;
    Ok(C64::new(re, im))
}

/// Renders one matrix in the dump format.
pub fn format_matrix(kind: MatrixKind, m: &CMatrix) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# dim={} kind={}", m.dim(), kind.as_str());
    for i in 0..m.dim() {
        let row: Vec<String> = (0..m.dim()).map(|j| format_complex(m[(i, j)])).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}

pub fn write_matrix_dump<W: Write>(
    w: &mut W,
    entries: &[(MatrixKind, &CMatrix)],
) -> io::Result<()> {
    for (kind, m) in entries {
        w.write_all(format_matrix(*kind, m).as_bytes())?;
    }
    Ok(())
}

/// Parses a sequence of dumped matrices.
pub fn parse_matrix_dump(text: &str) -> Result<Vec<(MatrixKind, CMatrix)>> {
    let mut out = Vec::new();
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    while let Some(header) = lines.next() {
        let rest = header
            .strip_prefix("# ")
            .ok_or_else(|| Error::Config(format!("expected header, got `{header}`")))?;
        let mut dim = None;
        let mut kind = None;
        for field in rest.split_whitespace() {
            match field.split_once('=') {
                Some(("dim", v)) => {
                    dim = Some(
                        v.parse::<usize>()
                            .map_err(|_| Error::Config(format!("bad dimension `{v}`")))?,
                    )
                }
                Some(("kind", v)) => kind = Some(v.parse::<MatrixKind>()?),
                _ => return Err(Error::Config(format!("bad header field `{field}`"))),
            }
        }
        let (dim, kind) = match (dim, kind) {
            (Some(d), Some(k)) if d > 0 => (d, k),
            _ => return Err(Error::Config(format!("incomplete header `{header}`"))),
        };
        let mut data = Vec::with_capacity(dim * dim);
        for _ in 0..dim {
            let row = lines
                .next()
                .ok_or_else(|| Error::Config("truncated matrix dump".into()))?;
            let entries: Vec<&str> = row.split(' ').collect();
            if entries.len() != dim {
                return Err(Error::Config(format!(
                    "row has {} entries, expected {dim}",
                    entries.len()
                )));
            }
            for tok in entries {
                data.push(parse_complex(tok)?);
            }
        }
        out.push((kind, CMatrix::from_vec(dim, data)?));
    }
    Ok(out)
}
