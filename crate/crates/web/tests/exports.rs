use std::f64::consts::{FRAC_PI_2, PI};

use ptsim_web::{dilation_summary, overlap_curve, theta_scan};

#[test]
fn hermitian_curve_reaches_target_at_half_period() {
    let c = overlap_curve(0.0, 1.0, 0.0, 101).unwrap();
    assert_eq!(c.len(), 2 + 3 * 101);
    assert!((c[0] - FRAC_PI_2).abs() < 1e-9);
    assert!((c[1] - FRAC_PI_2).abs() < 1e-12);
    // the period is π for ω = 2, so sample 50 sits at t = π/2
    let row = &c[2 + 3 * 50..2 + 3 * 51];
    assert!((row[0] - FRAC_PI_2).abs() < 1e-12);
    assert!((row[1] - 1.0).abs() < 1e-12);
    assert!((row[2] - 1.0).abs() < 1e-12);
}

#[test]
fn curve_rejects_exceptional_point() {
    assert!(overlap_curve(1.0, 1.0, FRAC_PI_2, 10).is_err());
    assert!(overlap_curve(0.5, 1.0, 0.0, 1).is_err());
}

#[test]
fn summary_matches_reference_point() {
    let v = dilation_summary(1.0, 2.0, FRAC_PI_2, 1.0).unwrap();
    assert_eq!(v.len(), 9);
    assert!((v[0] - 0.703_721_540_265_642_6).abs() < 1e-12);
    assert!((v[0] * v[0] + v[1] * v[1] - 1.0).abs() < 1e-12);
    assert!((v[2] - 1.210_987_834_491_932_7).abs() < 1e-12);
    assert!((v[3] - 0.495_224_006_233_848_5).abs() < 1e-12);
    assert!((v[4] - 2.0 * 3f64.sqrt()).abs() < 1e-12);
    assert_eq!(v[7], 1.0);
    assert!(dilation_summary(1.0, 2.0, FRAC_PI_2, 0.0).is_err());
}

#[test]
fn scan_marks_broken_phase() {
    let v = theta_scan(1.5, 1.0, 8).unwrap();
    assert_eq!(v.len(), 32);
    // θ = 0 is unbroken, θ = π/2 is broken
    assert!(v[1].is_finite());
    assert!((v[4 * 2] - FRAC_PI_2).abs() < 1e-15);
    assert!(v[4 * 2 + 1].is_nan());
}

#[test]
fn scan_speedup_on_lower_half() {
    let v = theta_scan(0.9, 1.0, 16).unwrap();
    for row in v.chunks(4) {
        let (theta, t, tau) = (row[0], row[1], row[2]);
        if theta > PI + 0.1 && theta < 2.0 * PI - 0.1 {
            assert!(t < tau, "theta = {theta}");
        } else if theta > 0.1 && theta < PI - 0.1 {
            assert!(t > tau, "theta = {theta}");
        }
    }
}
