//! Matrix exponential by scaling and squaring with a fixed [13/13] Padé kernel.
//!
//! The input is scaled by 2^-s until its 1-norm is below θ₁₃, the Padé
//! approximant r₁₃ is evaluated there and the result squared s times. The
//! matrices handled here are tiny (n ≤ 16) so the degree is never reduced
//! for small norms; one code path covers every input.

use num_complex::Complex64 as C64;

use super::CMatrix;
use crate::{Error, Result};

/// Largest 1-norm for which r₁₃ reaches double-precision backward error.
const THETA_13: f64 = 5.371_920_351_148_152;

const PADE_13: [f64; 14] = [
    64_764_752_532_480_000.0,
    32_382_376_266_240_000.0,
    7_771_770_303_897_600.0,
    1_187_353_796_428_800.0,
    129_060_195_264_000.0,
    10_559_470_521_600.0,
    670_442_572_800.0,
    33_522_128_640.0,
    1_323_241_920.0,
    40_840_800.0,
    960_960.0,
    16_380.0,
    182.0,
    1.0,
];

/// Computes e^A.
pub fn expm(a: &CMatrix) -> Result<CMatrix> {
    a.ensure_finite()?;
    let n = a.dim();
    let norm = a.norm_1();
    let squarings = if norm > THETA_13 {
        (norm / THETA_13).log2().ceil().max(0.0) as i32
    } else {
        0
    };
    let a = a.scale_real(0.5f64.powi(squarings));

    let b = &PADE_13;
    let ident = CMatrix::identity(n);
    let a2 = &a * &a;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;

    let lin = |c6: f64, c4: f64, c2: f64, c0: f64| -> CMatrix {
        let mut m = a6.scale_real(c6);
        m = &m + &a4.scale_real(c4);
        m = &m + &a2.scale_real(c2);
        if c0 != 0.0 {
            m = &m + &ident.scale_real(c0);
        }
        m
    };

    let u_inner = &(&a6 * &lin(b[13], b[11], b[9], 0.0)) + &lin(b[7], b[5], b[3], b[1]);
    let u = &a * &u_inner;
    let v = &(&a6 * &lin(b[12], b[10], b[8], 0.0)) + &lin(b[6], b[4], b[2], b[0]);

    let p = &v + &u;
    let q = &v - &u;
    let mut r = q.solve(&p)?;
    for _ in 0..squarings {
        r = &r * &r;
    }
    r.ensure_finite()?;
    Ok(r)
}

/// Propagator e^{−iHt/ℏ}.
pub fn propagator(h: &CMatrix, t: f64, hbar: f64) -> Result<CMatrix> {
    if !(t.is_finite() && hbar.is_finite()) {
        return Err(Error::NonFinite);
    }
    expm(&h.scale(C64::new(0.0, -t / hbar)))
}
