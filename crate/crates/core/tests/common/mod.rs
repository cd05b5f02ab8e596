//! Independent reference implementations shared by the integration tests.
//! Nothing here goes through the crate's own matrix arithmetic.

#![allow(dead_code)]

use ptsim::rng::stream;
use ptsim::{CMatrix, C64};
use rand::Rng;
use rand_distr::StandardNormal;

pub type Dense = Vec<Vec<C64>>;

pub fn to_dense(m: &CMatrix) -> Dense {
    (0..m.dim())
        .map(|i| (0..m.dim()).map(|j| m[(i, j)]).collect())
        .collect()
}

pub fn matmul(a: &Dense, b: &Dense) -> Dense {
    let n = a.len();
    let mut c = vec![vec![C64::new(0.0, 0.0); n]; n];
    for i in 0..n {
        for k in 0..n {
            for j in 0..n {
                c[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    c
}

pub fn fro(a: &Dense) -> f64 {
    a.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn fro_diff(a: &Dense, b: &CMatrix) -> f64 {
    let mut s = 0.0;
    for (i, row) in a.iter().enumerate() {
        for (j, z) in row.iter().enumerate() {
            s += (z - b[(i, j)]).norm_sqr();
        }
    }
    s.sqrt()
}

/// e^A by 2^-s scaling until ‖A‖_F ≤ 1/2, a 60-term Taylor series, and
/// s squarings.
pub fn taylor_expm(a: &CMatrix) -> Dense {
    let n = a.dim();
    let mut x = to_dense(a);
    let mut s = 0;
    while fro(&x) > 0.5 {
        for z in x.iter_mut().flatten() {
            *z *= 0.5;
        }
        s += 1;
    }
    let mut sum: Dense = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| C64::new(if i == j { 1.0 } else { 0.0 }, 0.0))
                .collect()
        })
        .collect();
    let mut term = sum.clone();
    for k in 1..=60 {
        term = matmul(&term, &x);
        for z in term.iter_mut().flatten() {
            *z /= k as f64;
        }
        for (si, ti) in sum.iter_mut().flatten().zip(term.iter().flatten()) {
            *si += ti;
        }
    }
    for _ in 0..s {
        sum = matmul(&sum, &sum);
    }
    sum
}

/// Matrix with i.i.d. complex Gaussian entries for sample `index`.
pub fn gaussian_matrix(n: usize, seed: u64, index: u64) -> CMatrix {
    let mut rng = stream(seed, index);
    CMatrix::from_fn(n, |_, _| {
        C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

/// Random Hermitian matrix (A + A†)/2.
pub fn hermitian_matrix(n: usize, seed: u64, index: u64) -> CMatrix {
    gaussian_matrix(n, seed, index).hermitian_part()
}

pub fn uniform_in(seed: u64, index: u64, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * stream(seed, index).random::<f64>()
}

/// (2ℏ/ω)·arccos|Σ conj(a)·b| with a plain loop.
pub fn scalar_min_time(a: &[C64], b: &[C64], omega: f64, hbar: f64) -> f64 {
    let mut acc = C64::new(0.0, 0.0);
    for (x, y) in a.iter().zip(b) {
        acc += x.conj() * y;
    }
    2.0 * hbar / omega * acc.norm().min(1.0).acos()
}

/// Largest-modulus eigenvalue by power iteration with a Rayleigh quotient.
pub fn power_iteration(a: &CMatrix, iters: usize) -> C64 {
    let n = a.dim();
    let d = to_dense(a);
    let mut v: Vec<C64> = (0..n).map(|i| C64::new(1.0, 0.1 * i as f64)).collect();
    let mut lambda = C64::new(0.0, 0.0);
    for _ in 0..iters {
        let w: Vec<C64> = (0..n)
            .map(|i| (0..n).map(|j| d[i][j] * v[j]).sum())
            .collect();
        let num: C64 = v.iter().zip(&w).map(|(x, y)| x.conj() * y).sum();
        let den: f64 = v.iter().map(|x| x.norm_sqr()).sum();
        lambda = num / den;
        let norm = w.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        v = w.iter().map(|x| x / norm).collect();
    }
    lambda
}

/// Distance between two unit vectors after aligning their global phase.
pub fn phase_aligned_distance(a: &[C64], b: &[C64]) -> f64 {
    let ip: C64 = a.iter().zip(b).map(|(x, y)| x.conj() * y).sum();
    let phase = if ip.norm() > 0.0 {
        ip.conj() / ip.norm()
    } else {
        C64::new(1.0, 0.0)
    };
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y * phase).norm_sqr())
        .sum::<f64>()
        .sqrt()
}
