//! Seeded ancilla-measurement experiments on a dilated unitary.

use crate::dilation::{dilate_evolution, postselect, DilationResult};
use crate::linalg::vec_norm;
use crate::quantum::{pt_hamiltonian, pt_spectral, StateVector};
use crate::rng::uniform;
use crate::Result;

use super::config::{RunConfig, T_DEFAULT};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MonteCarloResult {
    pub trials: usize,
    pub successes: usize,
    pub empirical_freq: f64,
    pub p_theory: f64,
    /// Binomial z-score; 0 by convention when p_theory is 0 or 1.
    pub z_score: f64,
}

impl MonteCarloResult {
    pub fn new(trials: usize, successes: usize, p_theory: f64) -> Self {
        let empirical_freq = successes as f64 / trials as f64;
        let var = p_theory * (1.0 - p_theory);
        let z_score = if p_theory <= 1e-12 || p_theory >= 1.0 - 1e-12 {
            0.0
        } else {
            (empirical_freq - p_theory) / (var / trials as f64).sqrt()
        };
        MonteCarloResult {
            trials,
            successes,
            empirical_freq,
            p_theory,
            z_score,
        }
    }
}

/// Measures the ancilla of U(ψ ⊗ |0_a⟩) `trials` times. Trial k draws from
/// the stream (seed, k), so results do not depend on evaluation order.
pub fn measure_ancilla(
    d: &DilationResult,
    psi: &StateVector,
    trials: usize,
    seed: u64,
) -> Result<MonteCarloResult> {
    let p_theory = postselect(d, psi)?.success_prob;
    let out = d.apply_to(psi);
    let p_sample = vec_norm(&out[..d.system_dim()]).powi(2);
    let successes = (0..trials as u64)
        .filter(|&k| uniform(seed, k) < p_sample)
        .count();
    Ok(MonteCarloResult::new(trials, successes, p_theory))
}

/// Runs the experiment for the configured point, time and initial state.
/// Exceptional points are rejected.
pub fn run_montecarlo(cfg: &RunConfig) -> Result<(DilationResult, MonteCarloResult)> {
    cfg.validate()?;
    let p = cfg.point()?;
    pt_spectral(&p)?;
    let t = cfg.t.unwrap_or(T_DEFAULT);
    let d = dilate_evolution(&pt_hamiltonian(&p), t, p.hbar)?;
    let psi = StateVector::basis(2, cfg.initial);
    let res = measure_ancilla(&d, &psi, cfg.trials, cfg.seed)?;
    Ok((d, res))
}
