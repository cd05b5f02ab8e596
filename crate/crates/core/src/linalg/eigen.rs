//! Eigensolvers for small dense complex matrices.
//!
//! * [`schur`]: Householder reduction to upper Hessenberg form followed by
//!   single-shift complex QR with Wilkinson shifts, giving A = Z·T·Z†.
//! * [`eig`]: eigenvalues from the diagonal of T, eigenvectors by back
//!   substitution on T, transformed back by Z.
//! * [`eigh`]: cyclic Jacobi rotations for Hermitian input.
//! * [`svd`]: one-sided (Hestenes) Jacobi.

use std::cmp::Ordering;

use num_complex::Complex64 as C64;

use super::{matrix::vec_norm, CMatrix};
use crate::{Error, Result};

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
const ONE: C64 = C64 { re: 1.0, im: 0.0 };

/// Eigenvector matrices with a condition estimate above this are treated as
/// defective.
pub const MAX_EIGVEC_CONDITION: f64 = 1e8;

/// Result of [`eig`].
#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    /// Sorted by real part, then imaginary part.
    pub eigenvalues: Vec<C64>,
    /// Unit-norm eigenvectors, `eigenvectors[k]` belongs to `eigenvalues[k]`.
    pub eigenvectors: Vec<Vec<C64>>,
    /// max_k ‖A v_k − λ_k v_k‖.
    pub residual: f64,
    /// ‖V‖_F · ‖V⁻¹‖_F for the eigenvector matrix V.
    pub condition: f64,
}

impl EigenDecomposition {
    pub fn vector_matrix(&self) -> CMatrix {
        let n = self.eigenvalues.len();
        let mut v = CMatrix::zeros(n);
        for (j, col) in self.eigenvectors.iter().enumerate() {
            v.set_column(j, col);
        }
        v
    }
}

/// Complex Givens rotation G = [[c, s], [−s̄, c]] with G·[x; y] = [r; 0].
#[derive(Clone, Copy, Debug)]
struct Givens {
    c: f64,
    s: C64,
}

impl Givens {
    fn zeroing(x: C64, y: C64) -> Self {
        let ax = x.norm();
        let ay = y.norm();
        if ay == 0.0 {
            return Givens { c: 1.0, s: ZERO };
        }
        if ax == 0.0 {
            return Givens { c: 0.0, s: ONE };
        }
        let rho = ax.hypot(ay);
        Givens {
            c: ax / rho,
            s: (x / ax) * y.conj() / rho,
        }
    }

    /// Rows p, q ← G · rows p, q over columns `cols`.
    fn apply_left(&self, m: &mut CMatrix, p: usize, q: usize, cols: std::ops::Range<usize>) {
        for j in cols {
            let (a, b) = (m[(p, j)], m[(q, j)]);
            m[(p, j)] = a * self.c + self.s * b;
            m[(q, j)] = -self.s.conj() * a + b * self.c;
        }
    }

    /// Columns p, q ← columns p, q · G† over rows `rows`.
    fn apply_right(&self, m: &mut CMatrix, p: usize, q: usize, rows: std::ops::Range<usize>) {
        for i in rows {
            let (a, b) = (m[(i, p)], m[(i, q)]);
            m[(i, p)] = a * self.c + self.s.conj() * b;
            m[(i, q)] = -self.s * a + b * self.c;
        }
    }
}

/// Householder reduction A = Q·H·Q† with H upper Hessenberg.
pub fn hessenberg(a: &CMatrix) -> (CMatrix, CMatrix) {
    let n = a.dim();
    let mut h = a.clone();
    let mut q = CMatrix::identity(n);
    for k in 0..n.saturating_sub(2) {
        let x: Vec<C64> = ((k + 1)..n).map(|i| h[(i, k)]).collect();
        let xnorm = vec_norm(&x);
        if xnorm == 0.0 {
            continue;
        }
        let phase = if x[0].norm() == 0.0 {
            ONE
        } else {
            x[0] / x[0].norm()
        };
        let mut v = x.clone();
        v[0] += phase * xnorm;
        let vnorm = vec_norm(&v);
        if vnorm == 0.0 {
            continue;
        }
        for z in v.iter_mut() {
            *z /= vnorm;
        }
        // P = I − 2 v v† acting on indices k+1..n
        for j in 0..n {
            let dot: C64 = v
                .iter()
                .enumerate()
                .map(|(i, vi)| vi.conj() * h[(k + 1 + i, j)])
                .sum();
            for (i, vi) in v.iter().enumerate() {
                h[(k + 1 + i, j)] -= *vi * dot * 2.0;
            }
        }
        for m in [&mut h, &mut q] {
            for i in 0..n {
                let dot: C64 = v
                    .iter()
                    .enumerate()
                    .map(|(j, vj)| m[(i, k + 1 + j)] * vj)
                    .sum();
                for (j, vj) in v.iter().enumerate() {
                    m[(i, k + 1 + j)] -= dot * vj.conj() * 2.0;
                }
            }
        }
        for i in (k + 2)..n {
            h[(i, k)] = ZERO;
        }
    }
    (q, h)
}

/// Complex Schur decomposition A = Z·T·Z† with T upper triangular.
pub fn schur(a: &CMatrix) -> Result<(CMatrix, CMatrix)> {
    a.ensure_finite()?;
    let n = a.dim();
    let (mut z, mut t) = hessenberg(a);
    if n == 1 {
        return Ok((z, t));
    }
    let eps = f64::EPSILON;
    let max_iter = 60 * n;
    let mut hi = n - 1;
    let mut iter = 0usize;
    let mut total = 0usize;
    let scale = a.max_abs().max(f64::MIN_POSITIVE);

    while hi > 0 {
        // locate the start of the active unreduced block
        let mut lo = hi;
        while lo > 0 {
            let sub = t[(lo, lo - 1)].norm();
            let diag = t[(lo - 1, lo - 1)].norm() + t[(lo, lo)].norm();
            if sub <= eps * diag || sub <= eps * eps * scale {
                t[(lo, lo - 1)] = ZERO;
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            hi -= 1;
            iter = 0;
            continue;
        }
        iter += 1;
        total += 1;
        if iter > max_iter {
            return Err(Error::NoConvergence(total));
        }

        let shift = if iter.is_multiple_of(11) {
            // exceptional shift to break cycles
            t[(hi, hi)] + C64::new(0.75, 0.25) * t[(hi, hi - 1)].norm()
        } else {
            wilkinson_shift(
                t[(hi - 1, hi - 1)],
                t[(hi - 1, hi)],
                t[(hi, hi - 1)],
                t[(hi, hi)],
            )
        };

        // implicit single-shift QR sweep on rows/cols lo..=hi
        for k in lo..hi {
            let g = if k == lo {
                Givens::zeroing(t[(lo, lo)] - shift, t[(lo + 1, lo)])
            } else {
                Givens::zeroing(t[(k, k - 1)], t[(k + 1, k - 1)])
            };
            let col_start = if k == lo { lo } else { k - 1 };
            g.apply_left(&mut t, k, k + 1, col_start..n);
            if k > lo {
                t[(k + 1, k - 1)] = ZERO;
            }
            let row_end = (k + 3).min(hi + 1);
            g.apply_right(&mut t, k, k + 1, 0..row_end);
            g.apply_right(&mut z, k, k + 1, 0..n);
        }
    }
    // clean the strictly lower part
    for i in 1..n {
        for j in 0..i {
            t[(i, j)] = ZERO;
        }
    }
    Ok((z, t))
}

/// Eigenvalue of the trailing 2×2 block [[a, b], [c, d]] closest to d.
fn wilkinson_shift(a: C64, b: C64, c: C64, d: C64) -> C64 {
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let m1 = (a + d) * 0.5 + disc;
    let m2 = (a + d) * 0.5 - disc;
    if (m1 - d).norm() <= (m2 - d).norm() {
        m1
    } else {
        m2
    }
}

fn cmp_eigen(a: &C64, b: &C64) -> Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

/// Full eigendecomposition of a general (possibly non-normal) matrix.
///
/// Fails with [`Error::NotDiagonalizable`] when the eigenvector matrix is
/// numerically singular, which is how exceptional points show up.
pub fn eig(a: &CMatrix) -> Result<EigenDecomposition> {
    let n = a.dim();
    let (z, t) = schur(a)?;
    let tnorm = t.frobenius_norm();
    let smin = (f64::EPSILON * tnorm).max(f64::MIN_POSITIVE);

    let mut pairs: Vec<(C64, Vec<C64>)> = Vec::with_capacity(n);
    for k in 0..n {
        let lambda = t[(k, k)];
        let mut x = vec![ZERO; n];
        x[k] = ONE;
        for i in (0..k).rev() {
            let acc: C64 = ((i + 1)..=k).map(|j| t[(i, j)] * x[j]).sum();
            let mut denom = t[(i, i)] - lambda;
            if denom.norm() < smin {
                denom = C64::new(smin, 0.0);
            }
            x[i] = -acc / denom;
        }
        let mut v = z.mul_vec(&x);
        let nv = vec_norm(&v);
        for e in v.iter_mut() {
            *e /= nv;
        }
        pairs.push((lambda, v));
    }
    pairs.sort_by(|p, q| cmp_eigen(&p.0, &q.0));

    let (eigenvalues, eigenvectors): (Vec<C64>, Vec<Vec<C64>>) = pairs.into_iter().unzip();
    let residual = eigenvalues
        .iter()
        .zip(&eigenvectors)
        .map(|(&l, v)| {
            let av = a.mul_vec(v);
            vec_norm(&av.iter().zip(v).map(|(x, y)| x - l * y).collect::<Vec<_>>())
        })
        .fold(0.0, f64::max);

    let mut dec = EigenDecomposition {
        eigenvalues,
        eigenvectors,
        residual,
        condition: f64::INFINITY,
    };
    let vm = dec.vector_matrix();
    let condition = match vm.inverse() {
        Ok(inv) => vm.frobenius_norm() * inv.frobenius_norm(),
        Err(_) => f64::INFINITY,
    };
    dec.condition = condition;
    if !(condition <= MAX_EIGVEC_CONDITION) {
        return Err(Error::NotDiagonalizable { condition });
    }
    if residual > 1e-10 * (1.0 + a.frobenius_norm()) {
        return Err(Error::Residual {
            what: "eigenpair",
            residual,
        });
    }
    Ok(dec)
}

/// Hermitian eigendecomposition by cyclic Jacobi rotations.
///
/// Returns eigenvalues in ascending order and the unitary matrix whose
/// columns are the matching eigenvectors. Only the Hermitian part of the
/// input is used; callers validate Hermiticity themselves.
pub fn eigh(a: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    a.ensure_finite()?;
    let n = a.dim();
    let mut m = a.hermitian_part();
    let mut v = CMatrix::identity(n);
    let total = m.frobenius_norm();
    if total == 0.0 {
        return Ok((vec![0.0; n], v));
    }
    let off = |m: &CMatrix| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += m[(i, j)].norm_sqr();
                }
            }
        }
        s.sqrt()
    };
    let mut sweeps = 0;
    while off(&m) > 1e-17 * total {
        sweeps += 1;
        if sweeps > 100 {
            return Err(Error::NoConvergence(sweeps));
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let g = m[(p, q)];
                let ag = g.norm();
                if ag <= 1e-300 {
                    continue;
                }
                let alpha = m[(p, p)].re;
                let beta = m[(q, q)].re;
                let phase = g / ag; // e^{iφ}
                let theta = (beta - alpha) / (2.0 * ag);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let pc = phase.conj(); // e^{−iφ}
                                       // columns: A ← A J
                for i in 0..n {
                    let (ap, aq) = (m[(i, p)], m[(i, q)]);
                    m[(i, p)] = ap * c - aq * pc * s;
                    m[(i, q)] = ap * s + aq * pc * c;
                    let (vp, vq) = (v[(i, p)], v[(i, q)]);
                    v[(i, p)] = vp * c - vq * pc * s;
                    v[(i, q)] = vp * s + vq * pc * c;
                }
                // rows: A ← J† A
                for j in 0..n {
                    let (ap, aq) = (m[(p, j)], m[(q, j)]);
                    m[(p, j)] = ap * c - aq * phase * s;
                    m[(q, j)] = ap * s + aq * phase * c;
                }
                m[(p, q)] = ZERO;
                m[(q, p)] = ZERO;
                m[(p, p)] = C64::new(m[(p, p)].re, 0.0);
                m[(q, q)] = C64::new(m[(q, q)].re, 0.0);
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].re.total_cmp(&m[(j, j)].re));
    let values: Vec<f64> = order.iter().map(|&i| m[(i, i)].re).collect();
    let vectors = CMatrix::from_fn(n, |i, j| v[(i, order[j])]);
    Ok((values, vectors))
}

/// Singular value decomposition A = W·diag(σ)·V†, σ descending.
pub fn svd(a: &CMatrix) -> Result<(CMatrix, Vec<f64>, CMatrix)> {
    a.ensure_finite()?;
    let n = a.dim();
    let mut g = a.clone();
    let mut v = CMatrix::identity(n);
    let eps = f64::EPSILON;
    let mut sweeps = 0;
    loop {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let mut alpha = 0.0;
                let mut beta = 0.0;
                let mut gamma = ZERO;
                for i in 0..n {
                    alpha += g[(i, p)].norm_sqr();
                    beta += g[(i, q)].norm_sqr();
                    gamma += g[(i, p)].conj() * g[(i, q)];
                }
                let ag = gamma.norm();
                if ag == 0.0 || ag <= eps * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let pc = (gamma / ag).conj();
                let zeta = (beta - alpha) / (2.0 * ag);
                let t = if zeta == 0.0 {
                    1.0
                } else {
                    zeta.signum() / (zeta.abs() + (zeta * zeta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for m in [&mut g, &mut v] {
                    for i in 0..n {
                        let (xp, xq) = (m[(i, p)], m[(i, q)]);
                        m[(i, p)] = xp * c - xq * pc * s;
                        m[(i, q)] = xp * s + xq * pc * c;
                    }
                }
            }
        }
        if !rotated {
            break;
        }
        sweeps += 1;
        if sweeps > 100 {
            return Err(Error::NoConvergence(sweeps));
        }
    }

    let mut order: Vec<(usize, f64)> = (0..n).map(|j| (j, vec_norm(&g.column(j)))).collect();
    order.sort_by(|a, b| b.1.total_cmp(&a.1));
    let sigma_max = order[0].1;
    let cutoff = 1e-14 * sigma_max.max(1.0);

    let mut w = CMatrix::zeros(n);
    let mut vs = CMatrix::zeros(n);
    let mut sigma = Vec::with_capacity(n);
    let mut missing = Vec::new();
    for (k, &(j, s)) in order.iter().enumerate() {
        vs.set_column(k, &v.column(j));
        if s > cutoff {
            let col: Vec<C64> = g.column(j).iter().map(|z| z / s).collect();
            w.set_column(k, &col);
            sigma.push(s);
        } else {
            sigma.push(s);
            missing.push(k);
        }
    }
    // complete W to a unitary with Gram-Schmidt against unit vectors
    let mut basis_idx = 0;
    for k in missing {
        loop {
            let mut cand = vec![ZERO; n];
            cand[basis_idx % n] = ONE;
            basis_idx += 1;
            for j in 0..n {
                if j == k || (vec_norm(&w.column(j)) == 0.0) {
                    continue;
                }
                let col = w.column(j);
                let proj: C64 = col.iter().zip(&cand).map(|(a, b)| a.conj() * b).sum();
                for (c, a) in cand.iter_mut().zip(&col) {
                    *c -= proj * a;
                }
            }
            let nc = vec_norm(&cand);
            // columns of negligible singular values are rebuilt, costing at
            // most `cutoff` in the reconstruction
            if nc > 0.5 {
                let cand: Vec<C64> = cand.iter().map(|z| z / nc).collect();
                w.set_column(k, &cand);
                break;
            }
            if basis_idx > 4 * n {
                return Err(Error::NoConvergence(basis_idx));
            }
        }
    }
    Ok((w, sigma, vs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn sample(n: usize, seed: u64) -> CMatrix {
        // small deterministic LCG, independent of the crate's RNG module
        let mut state = seed
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        let mut next = || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((state >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
        };
        CMatrix::from_fn(n, |_, _| c(next(), next()))
    }

    #[test]
    fn pauli_x_spectrum() {
        let sx = CMatrix::from_real_rows(&[[0.0, 1.0], [1.0, 0.0]]);
        let d = eig(&sx).unwrap();
        assert!((d.eigenvalues[0] - c(-1.0, 0.0)).norm() < 1e-14);
        assert!((d.eigenvalues[1] - c(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn triangular_spectrum() {
        let t = CMatrix::from_rows(&[
            [c(3.0, 0.0), c(1.0, 2.0), c(0.5, 0.0)],
            [c(0.0, 0.0), c(-1.0, 1.0), c(2.0, 0.0)],
            [c(0.0, 0.0), c(0.0, 0.0), c(0.0, -2.0)],
        ]);
        let d = eig(&t).unwrap();
        let expected = [c(-1.0, 1.0), c(0.0, -2.0), c(3.0, 0.0)];
        for (a, b) in d.eigenvalues.iter().zip(expected.iter()) {
            assert!((a - b).norm() < 1e-13, "{a} vs {b}");
        }
    }

    #[test]
    fn random_residuals_and_reconstruction() {
        for seed in 0..40 {
            for n in [2, 3, 4, 6] {
                let a = sample(n, seed * 17 + n as u64);
                let d = eig(&a).unwrap();
                assert!(d.residual <= 1e-10 * (1.0 + a.frobenius_norm()));
                for v in &d.eigenvectors {
                    assert!((vec_norm(v) - 1.0).abs() < 1e-12);
                }
                let vm = d.vector_matrix();
                let rec = &(&vm * &CMatrix::diag(&d.eigenvalues)) * &vm.inverse().unwrap();
                assert!((&rec - &a).frobenius_norm() <= 1e-9 * (1.0 + a.frobenius_norm()));
                for w in d.eigenvalues.windows(2) {
                    assert_ne!(cmp_eigen(&w[0], &w[1]), Ordering::Greater);
                }
            }
        }
    }

    #[test]
    fn jordan_block_is_not_diagonalizable() {
        let j = CMatrix::from_real_rows(&[[1.0, 1.0], [0.0, 1.0]]);
        assert!(matches!(eig(&j), Err(Error::NotDiagonalizable { .. })));
    }

    #[test]
    fn scalar_matrix_is_diagonalizable() {
        let d = eig(&CMatrix::identity(3).scale(c(2.0, -1.0))).unwrap();
        assert!(d.condition < 10.0);
    }

    #[test]
    fn schur_is_unitary_similarity() {
        for seed in 0..10 {
            let a = sample(5, seed);
            let (z, t) = schur(&a).unwrap();
            assert!(z.unitarity_defect() < 1e-12);
            let rec = &(&z * &t) * &z.adjoint();
            assert!((&rec - &a).frobenius_norm() < 1e-12 * (1.0 + a.frobenius_norm()));
        }
    }

    #[test]
    fn eigh_matches_definition() {
        for seed in 0..20 {
            let b = sample(4, 100 + seed);
            let h = (&b + &b.adjoint()).scale_real(0.5);
            let (vals, vecs) = eigh(&h).unwrap();
            assert!(vecs.unitarity_defect() < 1e-13);
            let rec = &(&vecs * &CMatrix::diag_real(&vals)) * &vecs.adjoint();
            assert!((&rec - &h).frobenius_norm() < 1e-13);
            assert!(vals.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn eigh_degenerate() {
        let (vals, vecs) = eigh(&CMatrix::identity(3)).unwrap();
        assert_eq!(vals, vec![1.0; 3]);
        assert!(vecs.unitarity_defect() < 1e-15);
    }

    #[test]
    fn svd_reconstructs() {
        for seed in 0..20 {
            let a = sample(3, 300 + seed);
            let (w, s, v) = svd(&a).unwrap();
            assert!(w.unitarity_defect() < 1e-13);
            assert!(v.unitarity_defect() < 1e-13);
            let rec = &(&w * &CMatrix::diag_real(&s)) * &v.adjoint();
            assert!((&rec - &a).frobenius_norm() < 1e-13);
            assert!(s.windows(2).all(|x| x[0] >= x[1]));
        }
    }

    #[test]
    fn svd_of_rank_deficient() {
        let a = CMatrix::from_real_rows(&[[1.0, 2.0], [2.0, 4.0]]);
        let (w, s, v) = svd(&a).unwrap();
        assert!(w.unitarity_defect() < 1e-14);
        assert!((s[0] - 5.0).abs() < 1e-14 && s[1] < 1e-14);
        let rec = &(&w * &CMatrix::diag_real(&s)) * &v.adjoint();
        assert!((&rec - &a).frobenius_norm() < 1e-14);
        let (w0, s0, _) = svd(&CMatrix::zeros(2)).unwrap();
        assert_eq!(s0, vec![0.0, 0.0]);
        assert!(w0.unitarity_defect() < 1e-15);
    }
}
