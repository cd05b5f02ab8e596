//! Browser bindings for the ptsim demo page.
//!
//! Each export returns a flat `Float64Array`; the layouts are documented on
//! the pure-Rust functions they wrap, which are also used by the native tests.

use std::f64::consts::TAU;

use ptsim::analysis::{check_time_bound, effective_generator, BoundVariant};
use ptsim::brachistochrone::{hermitian_min_time, pt_flip_time};
use ptsim::dilation::{dilate_evolution, postselect};
use ptsim::linalg::propagator;
use ptsim::quantum::{pt_hamiltonian, pt_spectral, PTParams};
use ptsim::StateVector;
use wasm_bindgen::prelude::*;

fn ket(k: usize) -> StateVector {
    StateVector::basis(2, k)
}

fn params(r: f64, s: f64, theta: f64) -> Result<PTParams, String> {
    let p = PTParams::new(r, s, theta, 1.0).map_err(|e| e.to_string())?;
    pt_spectral(&p).map_err(|e| e.to_string())?;
    Ok(p)
}

/// Normalized |0⟩ → |1⟩ transfer over one period 2π/ω.
///
/// Layout: `[t_flip, tau_hermitian, t₀, overlap₀, γ₀, t₁, overlap₁, γ₁, …]`
/// with `points` samples.
pub fn overlap_curve(r: f64, s: f64, theta: f64, points: usize) -> Result<Vec<f64>, String> {
    if points < 2 {
        return Err("need at least two points".into());
    }
    let p = params(r, s, theta)?;
    let omega = pt_spectral(&p).map_err(|e| e.to_string())?.omega;
    let period = TAU / omega;
    let t_flip = pt_flip_time(&p, &ket(0), &ket(1), period).map_err(|e| e.to_string())?;
    let tau = hermitian_min_time(&ket(0), &ket(1), omega, 1.0)
        .map_err(|e| e.to_string())?
        .tau;
    let h = pt_hamiltonian(&p);
    let mut out = vec![t_flip, tau];
    for k in 0..points {
        let t = period * k as f64 / (points - 1) as f64;
        let u = propagator(&h, t, 1.0).map_err(|e| e.to_string())?;
        let (a, b) = (u[(0, 0)], u[(1, 0)]);
        let gamma = (a.norm_sqr() + b.norm_sqr()).sqrt();
        out.extend([t, b.norm() / gamma, gamma]);
    }
    Ok(out)
}

/// Dilation of e^{−iHt} started from |0⟩.
///
/// Layout: `[alpha, beta, gamma, success_prob, omega_H, omega_U, bound_rhs,
/// satisfied (0/1), branch_warning (0/1)]`.
pub fn dilation_summary(r: f64, s: f64, theta: f64, t: f64) -> Result<Vec<f64>, String> {
    if !t.is_finite() || t <= 0.0 {
        return Err(format!("t must be positive, got {t}"));
    }
    let p = params(r, s, theta)?;
    let omega_h = pt_spectral(&p).map_err(|e| e.to_string())?.omega;
    let d = dilate_evolution(&pt_hamiltonian(&p), t, 1.0).map_err(|e| e.to_string())?;
    let prob = postselect(&d, &ket(0))
        .map_err(|e| e.to_string())?
        .success_prob;
    let eff = effective_generator(&d.u, t, 1.0).map_err(|e| e.to_string())?;
    let rep = check_time_bound(&d, t, BoundVariant::FullState).map_err(|e| e.to_string())?;
    Ok(vec![
        d.alpha,
        d.beta,
        d.gamma,
        prob,
        omega_h,
        eff.omega,
        rep.rhs,
        f64::from(u8::from(rep.satisfied)),
        f64::from(u8::from(eff.branch_warning)),
    ])
}

/// Flip time and post-selection cost for `points` values of θ in [0, 2π).
///
/// Layout: `[θ, t_flip, tau_hermitian, alpha², …]`; broken-phase points
/// carry NaN in the last three slots.
pub fn theta_scan(r: f64, s: f64, points: usize) -> Result<Vec<f64>, String> {
    if points == 0 {
        return Err("need at least one point".into());
    }
    PTParams::new(r, s, 0.0, 1.0).map_err(|e| e.to_string())?;
    let mut out = Vec::with_capacity(4 * points);
    for k in 0..points {
        let theta = TAU * k as f64 / points as f64;
        out.push(theta);
        match scan_point(r, s, theta) {
            Some(row) => out.extend(row),
            None => out.extend([f64::NAN; 3]),
        }
    }
    Ok(out)
}

fn scan_point(r: f64, s: f64, theta: f64) -> Option<[f64; 3]> {
    let p = params(r, s, theta).ok()?;
    let omega = pt_spectral(&p).ok()?.omega;
    let t = pt_flip_time(&p, &ket(0), &ket(1), TAU / omega).ok()?;
    let tau = hermitian_min_time(&ket(0), &ket(1), omega, 1.0).ok()?.tau;
    let d = dilate_evolution(&pt_hamiltonian(&p), t, 1.0).ok()?;
    Some([t, tau, d.alpha * d.alpha])
}

#[wasm_bindgen(js_name = overlapCurve)]
pub fn overlap_curve_js(r: f64, s: f64, theta: f64, points: usize) -> Result<Vec<f64>, JsError> {
    overlap_curve(r, s, theta, points).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = dilationSummary)]
pub fn dilation_summary_js(r: f64, s: f64, theta: f64, t: f64) -> Result<Vec<f64>, JsError> {
    dilation_summary(r, s, theta, t).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = thetaScan)]
pub fn theta_scan_js(r: f64, s: f64, points: usize) -> Result<Vec<f64>, JsError> {
    theta_scan(r, s, points).map_err(|e| JsError::new(&e))
}
