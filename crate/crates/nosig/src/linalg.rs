//! Dense complex-matrix kernel: Hermitian eigendecomposition, positive
//! parts, unitary exponentials and PSD tests.
//!
//! Everything here targets small operators (dimension up to a few tens),
//! so the eigensolver is a cyclic Jacobi sweep over the complex Hermitian
//! matrix: simple, accurate and dependency-free at these sizes.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Tolerance below which a nearly-Hermitian input is silently symmetrized.
/// Deviations above it are treated as caller bugs and rejected.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Off-diagonal mass threshold, relative to the Frobenius norm, at which
/// the Jacobi iteration is considered converged.
const JACOBI_REL_TOL: f64 = 1e-14;

/// Hard cap on Jacobi sweeps; convergence is quadratic, so small matrices
/// finish in well under ten.
const JACOBI_MAX_SWEEPS: usize = 100;

/// Square complex matrix with f64 precision, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Zero matrix of dimension `dim`.
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    /// Identity matrix of dimension `dim`.
    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    /// Build from rows; every row must have the same length as the number
    /// of rows and every entry must be finite.
    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let dim = rows.len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::NotSquare {
                    rows: dim,
                    cols: row.len(),
                });
            }
            for (j, z) in row.iter().enumerate() {
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(Error::NonFinite { row: i, col: j });
                }
            }
        }
        Ok(Self {
            dim,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Build entrywise from a closure over (row, col).
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Diagonal matrix from real entries.
    pub fn diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &x) in diag.iter().enumerate() {
            m.set(i, i, Complex64::new(x, 0.0));
        }
        m
    }

    /// Rank-one projector |v><v| from a ket.
    pub fn outer(ket: &[Complex64]) -> Self {
        let dim = ket.len();
        Self::from_fn(dim, |i, j| ket[i] * ket[j].conj())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.data[row * self.dim + col] = value;
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(j, i).conj())
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Frobenius distance ||A - B||_F.
    pub fn distance(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn scale_re(&self, factor: f64) -> Self {
        self.scale(Complex64::new(factor, 0.0))
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let d = self.dim;
        let mut out = Self::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let aik = self.get(i, k);
                if aik == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..d {
                    let v = out.get(i, j) + aik * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Apply to a ket: returns M|v>.
    pub fn apply(&self, ket: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.dim, ket.len(), "dimension mismatch");
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j) * ket[j]).sum())
            .collect()
    }

    /// Largest entrywise deviation from Hermiticity, max_ij |a_ij - conj(a_ji)|.
    pub fn hermitian_deviation(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for i in 0..self.dim {
            for j in 0..=i {
                dev = dev.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        dev
    }

    /// (A + A†)/2 when A is Hermitian within `HERMITIAN_TOL`, else an error.
    pub fn symmetrized(&self) -> Result<Self> {
        let dev = self.hermitian_deviation();
        if dev > HERMITIAN_TOL {
            return Err(Error::NotHermitian {
                deviation: dev,
                tol: HERMITIAN_TOL,
            });
        }
        let mut out = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.set(i, j, (self.get(i, j) + self.get(j, i).conj()).scale(0.5));
            }
        }
        Ok(out)
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, other: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(other)
    }
}

/// Complex numbers serialize as `[re, im]`, matrices as row-major arrays
/// of rows. This is the wire format of the CLI's JSON schema.
impl Serialize for ComplexMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<[f64; 2]>> = (0..self.dim)
            .map(|i| (0..self.dim).map(|j| [self.get(i, j).re, self.get(i, j).im]).collect())
            .collect();
        rows.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ComplexMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows: Vec<Vec<[f64; 2]>> = Vec::deserialize(deserializer)?;
        let rows = rows
            .into_iter()
            .map(|r| r.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
            .collect();
        ComplexMatrix::from_rows(rows).map_err(D::Error::custom)
    }
}

/// Spectral decomposition of a Hermitian matrix: ascending eigenvalues and
/// the matching orthonormal eigenvector columns.
#[derive(Debug, Clone)]
pub struct HermitianEig {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl HermitianEig {
    /// Column `k` of the eigenvector matrix as a ket.
    pub fn eigenvector(&self, k: usize) -> Vec<Complex64> {
        (0..self.eigenvectors.dim())
            .map(|i| self.eigenvectors.get(i, k))
            .collect()
    }

    /// Rebuild V diag(f(lambda)) V† for a spectral function `f`.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> Complex64) -> ComplexMatrix {
        let d = self.eigenvectors.dim();
        let v = &self.eigenvectors;
        ComplexMatrix::from_fn(d, |i, j| {
            (0..d)
                .map(|k| v.get(i, k) * f(self.eigenvalues[k]) * v.get(j, k).conj())
                .sum()
        })
    }

    /// V diag(lambda) V†, for residual checks.
    pub fn reconstruct(&self) -> ComplexMatrix {
        self.map_spectrum(|x| Complex64::new(x, 0.0))
    }
}

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
///
/// The input is symmetrized as (H + H†)/2 first; deviations beyond
/// `HERMITIAN_TOL` are rejected. Eigenvalues come back ascending, ties
/// keeping the original column order.
pub fn eig_hermitian(h: &ComplexMatrix) -> Result<HermitianEig> {
    let mut a = h.symmetrized()?;
    let d = a.dim();
    let mut v = ComplexMatrix::identity(d);
    let scale = a.frobenius_norm();

    if scale > 0.0 && d > 1 {
        let mut converged = false;
        for _ in 0..JACOBI_MAX_SWEEPS {
            if off_diagonal_norm(&a) <= JACOBI_REL_TOL * scale {
                converged = true;
                break;
            }
            for p in 0..d - 1 {
                for q in p + 1..d {
                    rotate(&mut a, &mut v, p, q, scale);
                }
            }
        }
        if !converged && off_diagonal_norm(&a) > JACOBI_REL_TOL * scale {
            return Err(Error::EigNoConvergence {
                sweeps: JACOBI_MAX_SWEEPS,
            });
        }
    }

    // Ascending eigenvalue order; stable sort keeps original column order on ties.
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&i, &j| a.get(i, i).re.partial_cmp(&a.get(j, j).re).unwrap());
    let eigenvalues = order.iter().map(|&i| a.get(i, i).re).collect();
    let eigenvectors = ComplexMatrix::from_fn(d, |i, j| v.get(i, order[j]));

    Ok(HermitianEig {
        eigenvalues,
        eigenvectors,
    })
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let d = a.dim();
    let mut sum = 0.0;
    for i in 0..d {
        for j in 0..d {
            if i != j {
                sum += a.get(i, j).norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// One Jacobi rotation zeroing the (p,q) entry of the Hermitian matrix `a`,
/// accumulated into the eigenvector matrix `v`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize, scale: f64) {
    let apq = a.get(p, q);
    let r = apq.norm();
    if r <= 1e-18 * scale {
        return;
    }
    let phase = apq / r;
    let big_theta = (a.get(p, p).re - a.get(q, q).re) / (2.0 * r);
    let sign = if big_theta >= 0.0 { 1.0 } else { -1.0 };
    let t = sign / (big_theta.abs() + (big_theta * big_theta + 1.0).sqrt());
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    let d = a.dim();
    // A <- U† A U with U_pp = c, U_pq = -s e^{i phi}, U_qp = s e^{-i phi}, U_qq = c.
    for j in 0..d {
        let apj = a.get(p, j);
        let aqj = a.get(q, j);
        a.set(p, j, apj.scale(c) + phase * aqj.scale(s));
        a.set(q, j, aqj.scale(c) - phase.conj() * apj.scale(s));
    }
    for i in 0..d {
        let aip = a.get(i, p);
        let aiq = a.get(i, q);
        a.set(i, p, aip.scale(c) + phase.conj() * aiq.scale(s));
        a.set(i, q, aiq.scale(c) - phase * aip.scale(s));
    }
    // Keep the diagonal exactly real and the zeroed pair exactly conjugate.
    let app = a.get(p, p);
    let aqq = a.get(q, q);
    a.set(p, p, Complex64::new(app.re, 0.0));
    a.set(q, q, Complex64::new(aqq.re, 0.0));
    a.set(p, q, Complex64::new(0.0, 0.0));
    a.set(q, p, Complex64::new(0.0, 0.0));

    for i in 0..d {
        let vip = v.get(i, p);
        let viq = v.get(i, q);
        v.set(i, p, vip.scale(c) + phase.conj() * viq.scale(s));
        v.set(i, q, viq.scale(c) - phase * vip.scale(s));
    }
}

/// Positive part of a Hermitian operator: keep the strictly positive
/// eigenvalues of the spectral decomposition.
pub fn positive_part(h: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = eig_hermitian(h)?;
    Ok(eig.map_spectrum(|x| Complex64::new(x.max(0.0), 0.0)))
}

/// exp(-i theta G) for a Hermitian generator G, via its spectral decomposition.
pub fn unitary_from_generator(theta: f64, g: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = eig_hermitian(g)?;
    Ok(eig.map_spectrum(|x| Complex64::from_polar(1.0, -theta * x)))
}

/// Smallest eigenvalue of the symmetrized input.
pub fn min_eigenvalue(h: &ComplexMatrix) -> Result<f64> {
    Ok(eig_hermitian(h)?.eigenvalues[0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn random_hermitian(rng: &mut impl Rng, d: usize) -> ComplexMatrix {
        let raw = ComplexMatrix::from_fn(d, |_, _| {
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        let half = raw.scale_re(0.5);
        &half + &half.adjoint()
    }

    #[test]
    fn identity_eigenvalues() {
        let eig = eig_hermitian(&ComplexMatrix::identity(2)).unwrap();
        assert_eq!(eig.eigenvalues, vec![1.0, 1.0]);
    }

    #[test]
    fn sigma_z_eigenvalues_ascending() {
        let sz = ComplexMatrix::diagonal(&[1.0, -1.0]);
        let eig = eig_hermitian(&sz).unwrap();
        assert_eq!(eig.eigenvalues, vec![-1.0, 1.0]);
    }

    #[test]
    fn random_hermitian_reconstruction() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let h = random_hermitian(&mut rng, 3);
            let eig = eig_hermitian(&h).unwrap();
            let resid = eig.reconstruct().distance(&h);
            assert!(resid <= 1e-12 * h.frobenius_norm().max(1.0), "residual {resid}");
            let vtv = eig.eigenvectors.adjoint().matmul(&eig.eigenvectors);
            assert!(vtv.distance(&ComplexMatrix::identity(3)) <= 1e-12);
        }
    }

    #[test]
    fn non_hermitian_rejected() {
        let m = ComplexMatrix::from_rows(vec![
            vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
            vec![Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)],
        ])
        .unwrap();
        assert!(matches!(eig_hermitian(&m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn non_square_rejected() {
        let err = ComplexMatrix::from_rows(vec![vec![Complex64::new(1.0, 0.0); 3]; 2]);
        assert!(matches!(err, Err(Error::NotSquare { .. })));
    }

    #[test]
    fn non_finite_rejected() {
        let err = ComplexMatrix::from_rows(vec![vec![Complex64::new(f64::NAN, 0.0)]]);
        assert!(matches!(err, Err(Error::NonFinite { .. })));
    }

    #[test]
    fn positive_part_clamps_sigma_z() {
        let sz = ComplexMatrix::diagonal(&[1.0, -1.0]);
        let pos = positive_part(&sz).unwrap();
        assert!(pos.distance(&ComplexMatrix::diagonal(&[1.0, 0.0])) <= 1e-14);
    }

    #[test]
    fn positive_part_fixes_psd_input() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let h = random_hermitian(&mut rng, 3);
            let psd = positive_part(&h).unwrap();
            assert!(positive_part(&psd).unwrap().distance(&psd) <= 1e-12);
            assert!(min_eigenvalue(&psd).unwrap() >= -1e-13);
        }
    }

    #[test]
    fn jordan_decomposition_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let h = random_hermitian(&mut rng, 4);
            let plus = positive_part(&h).unwrap();
            let minus = positive_part(&h.scale_re(-1.0)).unwrap();
            assert!((&plus - &minus).distance(&h) <= 1e-11);
        }
    }

    #[test]
    fn positive_part_trace_identity() {
        // tr (H)_+ = (||H||_1 + tr H) / 2 with the trace norm from the spectrum.
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let h = random_hermitian(&mut rng, 3);
            let eig = eig_hermitian(&h).unwrap();
            let trace_norm: f64 = eig.eigenvalues.iter().map(|x| x.abs()).sum();
            let expected = (trace_norm + h.trace().re) / 2.0;
            let got = positive_part(&h).unwrap().trace().re;
            assert!((got - expected).abs() <= 1e-11);
        }
    }

    #[test]
    fn unitary_at_zero_is_identity() {
        let g = ComplexMatrix::diagonal(&[0.3, -0.7]);
        let u = unitary_from_generator(0.0, &g).unwrap();
        assert!(u.distance(&ComplexMatrix::identity(2)) <= 1e-14);
    }

    #[test]
    fn unitary_of_j3_is_diagonal_phases() {
        // Spin-1 J3 = diag(1, 0, -1) exponentiates entrywise.
        let j3 = ComplexMatrix::diagonal(&[1.0, 0.0, -1.0]);
        let theta = 0.83;
        let u = unitary_from_generator(theta, &j3).unwrap();
        let expected = ComplexMatrix::from_fn(3, |i, j| {
            if i != j {
                Complex64::new(0.0, 0.0)
            } else {
                Complex64::from_polar(1.0, -theta * (1 - i as i64) as f64)
            }
        });
        assert!(u.distance(&expected) <= 1e-13);
    }

    #[test]
    fn unitary_is_unitary_for_random_generators() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..20 {
            let g = random_hermitian(&mut rng, 4);
            let theta: f64 = rng.gen_range(-6.0..6.0);
            let u = unitary_from_generator(theta, &g).unwrap();
            let utu = u.adjoint().matmul(&u);
            assert!(utu.distance(&ComplexMatrix::identity(4)) <= 1e-12);
        }
    }

    #[test]
    fn one_parameter_group_law() {
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        for _ in 0..20 {
            let g = random_hermitian(&mut rng, 3);
            let (t1, t2): (f64, f64) = (rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
            let u12 = unitary_from_generator(t1 + t2, &g).unwrap();
            let prod = unitary_from_generator(t1, &g)
                .unwrap()
                .matmul(&unitary_from_generator(t2, &g).unwrap());
            assert!(u12.distance(&prod) <= 1e-11);
        }
    }

    #[test]
    fn min_eigenvalue_basics() {
        assert!((min_eigenvalue(&ComplexMatrix::identity(2)).unwrap() - 1.0).abs() <= 1e-14);
        let sx = ComplexMatrix::from_rows(vec![
            vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
            vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
        ])
        .unwrap();
        assert!((min_eigenvalue(&sx).unwrap() + 1.0).abs() <= 1e-14);
    }

    #[test]
    fn matrix_json_round_trip() {
        let m = ComplexMatrix::from_rows(vec![
            vec![Complex64::new(0.25, 0.0), Complex64::new(0.1, -0.3)],
            vec![Complex64::new(0.1, 0.3), Complex64::new(0.75, 0.0)],
        ])
        .unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, "[[[0.25,0.0],[0.1,-0.3]],[[0.1,0.3],[0.75,0.0]]]");
        let back: ComplexMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn ragged_json_rejected() {
        let res: std::result::Result<ComplexMatrix, _> =
            serde_json::from_str("[[[1.0,0.0],[0.0,0.0]],[[0.0,0.0]]]");
        assert!(res.is_err());
    }
}
