mod common;

use std::f64::consts::PI;

use common::*;
use proptest::prelude::*;
use ptsim::analysis::{check_time_bound, effective_generator, overlap_arg, BoundVariant};
use ptsim::brachistochrone::{hermitian_min_time, optimal_hermitian, pt_flip_time};
use ptsim::dilation::{
    apply_channel, choi_min_eigenvalue, contraction_from_evolution, dilate_evolution,
    kraus_completeness_defect, postselect,
};
use ptsim::linalg::{eigh, operator_norm, propagator, sqrtm_psd};
use ptsim::quantum::{evolve, metric_operator, pt_hamiltonian, pt_spectral, PTParams};
use ptsim::rng::haar_state;
use ptsim::{CMatrix, StateVector};

/// Unbroken-phase parameters kept 1% away from the exceptional point.
fn unbroken() -> impl Strategy<Value = PTParams> {
    (0.2f64..3.0, 0.0f64..0.99, 0.0f64..(2.0 * PI)).prop_map(|(s, frac, theta)| {
        // r·|sin θ| = frac·s keeps s² − r²sin²θ ≥ (1 − 0.99²)s²
        let r = if theta.sin().abs() > 1e-3 {
            frac * s / theta.sin().abs()
        } else {
            frac * s
        };
        PTParams::new(r.min(10.0), s, theta, 1.0).unwrap()
    })
}

fn state(n: usize) -> impl Strategy<Value = StateVector> {
    any::<u64>().prop_map(move |seed| haar_state(n, seed, 0))
}

fn ket(k: usize) -> StateVector {
    StateVector::basis(2, k)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pt_symmetry(p in unbroken()) {
        let h = pt_hamiltonian(&p);
        // (σx K) H (σx K)⁻¹ = σx H* σx
        let px = ptsim::linalg::sigma_x();
        let back = &(&px * &h.conj()) * &px;
        prop_assert!((&back - &h).frobenius_norm() < 1e-12);
    }

    #[test]
    fn omega_closed_form(p in unbroken()) {
        let sd = pt_spectral(&p).unwrap();
        prop_assert!(sd.unbroken);
        let closed = 4.0 * (p.s * p.s - (p.r * p.theta.sin()).powi(2));
        prop_assert!((sd.omega * sd.omega - closed).abs() < 1e-9 * (1.0 + closed));
    }

    #[test]
    fn metric_is_positive_and_makes_evolution_unitary(p in unbroken(), t in 0.0f64..3.0) {
        let h = pt_hamiltonian(&p);
        let eta = metric_operator(&h).unwrap();
        prop_assert!(eta.hermitian_defect() < 1e-10);
        let (vals, _) = eigh(&eta).unwrap();
        prop_assert!(vals[0] > 0.0);
        let root = sqrtm_psd(&eta).unwrap();
        let inv = root.inverse().unwrap();
        let conj = &(&root * &propagator(&h, t, 1.0).unwrap()) * &inv;
        prop_assert!((operator_norm(&conj).unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn semigroup(p in unbroken(), t1 in 0.0f64..2.0, t2 in 0.0f64..2.0, psi in state(2)) {
        let h = pt_hamiltonian(&p);
        let two = evolve(&h, t2, &evolve(&h, t1, &psi, 1.0).unwrap(), 1.0).unwrap();
        let one = evolve(&h, t1 + t2, &psi, 1.0).unwrap();
        let diff: f64 = two.amplitudes().iter().zip(one.amplitudes())
            .map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt();
        prop_assert!(diff < 1e-10 * (1.0 + one.norm()));
    }

    #[test]
    fn min_time_decreases_with_omega(a in state(3), b in state(3), w in 0.1f64..5.0, dw in 0.01f64..5.0) {
        prop_assume!(a.overlap(&b) < 1.0 - 1e-9);
        let slow = hermitian_min_time(&a, &b, w, 1.0).unwrap().tau;
        let fast = hermitian_min_time(&a, &b, w + dw, 1.0).unwrap().tau;
        prop_assert!(fast < slow);
    }

    #[test]
    fn geodesic_beats_random_hermitian(a in state(2), b in state(2), seed in any::<u64>()) {
        prop_assume!(a.overlap(&b) < 1.0 - 1e-6);
        let omega = 2.0;
        let tau = hermitian_min_time(&a, &b, omega, 1.0).unwrap().tau;
        let h = optimal_hermitian(&a, &b, omega, 1.0).unwrap();
        prop_assert!(evolve(&h, tau, &a, 1.0).unwrap().overlap(&b) >= 1.0 - 1e-9);
        // no Hermitian generator with the same spread gets there first
        for k in 0..100 {
            let g = hermitian_matrix(2, seed, k);
            let (vals, _) = eigh(&g).unwrap();
            let g = g.scale_real(omega / (vals[1] - vals[0]));
            for j in 1..=20 {
                let t = tau * j as f64 / 21.0;
                let ov = evolve(&g, t, &a, 1.0).unwrap().overlap(&b);
                prop_assert!(ov < 1.0 - 1e-9);
            }
        }
    }

    #[test]
    fn dilation_invariants(p in unbroken(), t in 0.01f64..4.0) {
        let d = dilate_evolution(&pt_hamiltonian(&p), t, 1.0).unwrap();
        let n = d.u.dim();
        prop_assert!(d.u.unitarity_defect() <= 1e-10);
        prop_assert!((&(&d.u * &d.u.adjoint()) - &CMatrix::identity(n)).frobenius_norm() <= 1e-10);
        prop_assert!(d.decomposition_residual <= 1e-10);
        prop_assert!(operator_norm(&d.k).unwrap() <= 1.0 + 1e-12);
        let kraus = [d.kraus.0.clone(), d.kraus.1.clone()];
        prop_assert!(kraus_completeness_defect(&kraus) <= 1e-10);
        prop_assert!(choi_min_eigenvalue(&kraus).unwrap() >= -1e-10);
        prop_assert!(d.alpha <= 1.0 + 1e-15);
    }

    #[test]
    fn channel_preserves_trace(p in unbroken(), t in 0.01f64..3.0, seed in any::<u64>()) {
        let d = dilate_evolution(&pt_hamiltonian(&p), t, 1.0).unwrap();
        let kraus = [d.kraus.0.clone(), d.kraus.1.clone()];
        for k in 0..100 {
            let a = gaussian_matrix(2, seed, k);
            let rho = &a * &a.adjoint();
            let rho = rho.scale_real(1.0 / rho.trace().re);
            let out = apply_channel(&kraus, &rho);
            prop_assert!((out.trace().re - 1.0).abs() <= 1e-10);
            prop_assert!(out.trace().im.abs() <= 1e-10);
        }
    }

    #[test]
    fn postselection_simulates_evolution(p in unbroken(), t in 0.01f64..3.0, psi in state(2)) {
        let d = dilate_evolution(&pt_hamiltonian(&p), t, 1.0).unwrap();
        let out = postselect(&d, &psi).unwrap();
        prop_assert!((out.success_prob + out.failure_prob - 1.0).abs() <= 1e-12);
        let target = evolve(&d.h, t, &psi, 1.0).unwrap().normalize().unwrap();
        let got = out.success_state().unwrap();
        prop_assert!(phase_aligned_distance(got.amplitudes(), target.amplitudes()) <= 1e-10);
    }

    #[test]
    fn generator_round_trip(seed in any::<u64>(), t in 0.1f64..3.0, hbar in 0.5f64..2.0) {
        let h = hermitian_matrix(2 + (seed % 3) as usize, seed, 0);
        // keep ‖H‖T/ℏ below π
        let h = h.scale_real(0.9 * PI * hbar / (t * operator_norm(&h).unwrap()));
        let u = propagator(&h, t, hbar).unwrap();
        let eff = effective_generator(&u, t, hbar).unwrap();
        prop_assert!((&eff.h - &h).frobenius_norm() <= 1e-9);
    }

    #[test]
    fn bound_variants_and_universality(p in unbroken(), t in 0.01f64..6.0) {
        let d = dilate_evolution(&pt_hamiltonian(&p), t, 1.0).unwrap();
        let a = overlap_arg(&d, BoundVariant::MatrixElement);
        prop_assert!((a - d.u[(0, 0)].norm().min(1.0)).abs() <= 1e-12);
        let rep = check_time_bound(&d, t, BoundVariant::FullState).unwrap();
        prop_assert!(rep.satisfied, "{:?}", rep);
        prop_assert!((rep.rhs - 2.0 / rep.omega_used * rep.overlap_arg.acos()).abs() <= 1e-12);
    }

    #[test]
    fn hermitian_limit_flip_matches_bound(s in 0.2f64..3.0, theta in 0.0f64..(2.0 * PI)) {
        let p = PTParams::new(0.0, s, theta, 1.0).unwrap();
        let omega = pt_spectral(&p).unwrap().omega;
        let t = pt_flip_time(&p, &ket(0), &ket(1), 2.0 * PI / omega).unwrap();
        let tau = hermitian_min_time(&ket(0), &ket(1), omega, 1.0).unwrap().tau;
        prop_assert!((t - tau).abs() <= 1e-9);
    }
}

#[test]
fn alpha_is_one_only_where_propagator_is_unitary() {
    let p = PTParams::new(0.8, 1.0, 1.0, 1.0).unwrap();
    let h = pt_hamiltonian(&p);
    for k in 1..200 {
        let t = 0.05 * k as f64;
        let (_, alpha, _) = contraction_from_evolution(&h, t, 1.0).unwrap();
        assert!(alpha <= 1.0 + 1e-15);
        if (alpha - 1.0).abs() < 1e-12 {
            assert!(propagator(&h, t, 1.0).unwrap().unitarity_defect() < 1e-6);
        }
    }
}

#[test]
fn fast_side_shrinks_toward_exceptional_point() {
    // approaching r = s along θ = 3π/2, where sin θ < 0
    let mut last = f64::INFINITY;
    for k in 0..10 {
        let r = 0.5 + 0.049 * k as f64;
        let p = PTParams::new(r, 1.0, 1.5 * PI, 1.0).unwrap();
        let omega = pt_spectral(&p).unwrap().omega;
        let t = pt_flip_time(&p, &ket(0), &ket(1), 2.0 * PI / omega).unwrap();
        assert!(t < last, "r = {r}: {t} >= {last}");
        last = t;
    }
}

#[test]
fn hermitian_row_has_no_cost() {
    let d = dilate_evolution(
        &pt_hamiltonian(&PTParams::new(0.0, 1.0, 0.0, 1.0).unwrap()),
        1.3,
        1.0,
    )
    .unwrap();
    assert!(d.kraus.1.frobenius_norm() < 1e-7);
    assert!((d.alpha - 1.0).abs() < 1e-14);
}
