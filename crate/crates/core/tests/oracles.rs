//! Frozen reference values (40-digit evaluations) and dual-route kernel checks.

mod common;

use std::f64::consts::{FRAC_PI_2, PI};

use common::*;
use ptsim::brachistochrone::pt_flip_time;
use ptsim::dilation::{contraction_from_evolution, dilate_evolution, postselect};
use ptsim::linalg::{eig, eigh, expm, propagator, svd};
use ptsim::quantum::{evolution_norm, pt_hamiltonian, pt_spectral, spectral, PTParams};
use ptsim::{CMatrix, Error, StateVector, C64};

fn pt_example() -> CMatrix {
    pt_hamiltonian(&PTParams::new(1.0, 2.0, FRAC_PI_2, 1.0).unwrap())
}

fn ket(k: usize) -> StateVector {
    StateVector::basis(2, k)
}

#[test]
fn pt_example_propagator_entries() {
    // e^{−iH}|0⟩ = (0.40930356060782331, −1.1397201983650279 i)
    let e = propagator(&pt_example(), 1.0, 1.0).unwrap();
    assert!((e[(0, 0)] - C64::new(0.409_303_560_607_823_3, 0.0)).norm() < 1e-12);
    assert!((e[(1, 0)] - C64::new(0.0, -1.139_720_198_365_027_9)).norm() < 1e-12);
}

#[test]
fn pt_example_gamma_alpha() {
    let gamma = evolution_norm(&pt_example(), 1.0, &ket(0), 1.0).unwrap();
    assert!((gamma - 1.210_987_834_491_932_7).abs() < 1e-12);
    let (_, alpha, g) = contraction_from_evolution(&pt_example(), 1.0, 1.0).unwrap();
    assert!((g - gamma).abs() < 1e-15);
    // σ_max = 1.7208338315675343719
    assert!((gamma / alpha - 1.720_833_831_567_534_4).abs() < 1e-12);
    assert!((alpha - 0.703_721_540_265_642_6).abs() < 1e-12);
    let d = dilate_evolution(&pt_example(), 1.0, 1.0).unwrap();
    let p = postselect(&d, &ket(0)).unwrap().success_prob;
    assert!((p - 0.495_224_006_233_848_5).abs() < 1e-12);
}

#[test]
fn pt_example_spectrum() {
    let sd = spectral(&pt_example()).unwrap();
    let r3 = 3f64.sqrt();
    assert!((sd.e_plus - C64::new(r3, 0.0)).norm() < 1e-12);
    assert!((sd.e_minus - C64::new(-r3, 0.0)).norm() < 1e-12);
    assert!((sd.omega - 2.0 * r3).abs() < 1e-12);
    assert!(matches!(
        pt_spectral(&PTParams::new(1.0, 1.0, FRAC_PI_2, 1.0).unwrap()),
        Err(Error::ExceptionalPoint)
    ));
}

#[test]
fn flip_times_along_r_09() {
    // (θ, t_flip) from the closed form (2/ω)(π − arctan(ω / 2r sin θ))
    let cases = [
        (0.5, 2.235_766_795_946_61),
        (1.0, 3.721_064_153_155_358),
        (1.5, 6.096_100_905_868_598),
        (2.0 * PI - 1.5, 1.035_542_976_264_706),
    ];
    for (theta, expected) in cases {
        let p = PTParams::new(0.9, 1.0, theta, 1.0).unwrap();
        let omega = pt_spectral(&p).unwrap().omega;
        let t = pt_flip_time(&p, &ket(0), &ket(1), 2.0 * PI / omega).unwrap();
        assert!(
            (t - expected).abs() < 1e-9,
            "theta = {theta}: {t} vs {expected}"
        );
    }
}

#[test]
fn expm_matches_taylor_oracle() {
    for k in 0..200u64 {
        let n = 2 + 2 * (k % 2) as usize;
        let a = gaussian_matrix(n, 7, k);
        let a = a.scale_real(uniform_in(8, k, 0.0, 5.0) / a.frobenius_norm());
        let oracle = taylor_expm(&a);
        let got = expm(&a).unwrap();
        assert!(
            fro_diff(&oracle, &got) <= 1e-12 * fro(&oracle).max(1.0),
            "sample {k}"
        );
    }
}

#[test]
fn dominant_eigenvalue_matches_power_iteration() {
    let mut checked = 0;
    for k in 0..200u64 {
        let a = gaussian_matrix(3, 9, k);
        let dec = eig(&a).unwrap();
        assert!(dec.residual <= 1e-10);
        let mut ev = dec.eigenvalues.clone();
        ev.sort_by(|x, y| y.norm().total_cmp(&x.norm()));
        if ev[1].norm() < 0.8 * ev[0].norm() {
            let lam = power_iteration(&a, 400);
            assert!((lam - ev[0]).norm() <= 1e-9 * ev[0].norm(), "sample {k}");
            checked += 1;
        }
    }
    assert!(checked > 50);
}

#[test]
fn hermitian_solvers_agree() {
    for k in 0..100u64 {
        let h = hermitian_matrix(4, 10, k);
        let (vals, vecs) = eigh(&h).unwrap();
        let mut general: Vec<f64> = eig(&h).unwrap().eigenvalues.iter().map(|z| z.re).collect();
        general.sort_by(f64::total_cmp);
        for (a, b) in vals.iter().zip(&general) {
            assert!((a - b).abs() < 1e-10);
        }
        assert!(vecs.unitarity_defect() < 1e-12);
        let (_, sigma, _) = svd(&h).unwrap();
        let mut abs: Vec<f64> = vals.iter().map(|v| v.abs()).collect();
        abs.sort_by(|a, b| b.total_cmp(a));
        for (a, b) in sigma.iter().zip(&abs) {
            assert!((a - b).abs() < 1e-10);
        }
    }
}
