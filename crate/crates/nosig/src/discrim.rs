//! Optimal and comparison discrimination: POVM evaluation, the Helstrom
//! two-state formula, the known optimal measurement for symmetric states,
//! the L4 error bound, and the Holevo-Helstrom optimality certificate.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{eig_hermitian, min_eigenvalue, positive_part, ComplexMatrix};
use crate::states::{family_azimuth, DensityOperator, Ensemble};

/// Positive-operator-valued measure: PSD elements summing to the identity.
///
/// Construction validates each element (Hermitian within 1e-10, smallest
/// eigenvalue >= -1e-9) and completeness (within 1e-9 Frobenius).
#[derive(Debug, Clone)]
pub struct Povm {
    elements: Vec<ComplexMatrix>,
}

impl Povm {
    pub fn new(elements: Vec<ComplexMatrix>) -> Result<Self> {
        let first = elements.first().ok_or(Error::EmptyPovm)?;
        let dim = first.dim();
        let mut sum = ComplexMatrix::zeros(dim);
        for (index, m) in elements.iter().enumerate() {
            if m.dim() != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: m.dim(),
                });
            }
            let sym = m.symmetrized()?;
            let min_eig = min_eigenvalue(&sym)?;
            if min_eig < -1e-9 {
                return Err(Error::PovmElementNotPositive {
                    index,
                    min_eigenvalue: min_eig,
                });
            }
            sum = &sum + &sym;
        }
        let deviation = sum.distance(&ComplexMatrix::identity(dim));
        if deviation > 1e-9 {
            return Err(Error::PovmNotComplete { deviation });
        }
        Ok(Self { elements })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.elements[0].dim()
    }

    pub fn elements(&self) -> &[ComplexMatrix] {
        &self.elements
    }

    pub fn element(&self, k: usize) -> &ComplexMatrix {
        &self.elements[k]
    }

    /// Uniform POVM {I/N, ..., I/N}: random guessing.
    pub fn uniform(dim: usize, n: usize) -> Self {
        Self {
            elements: vec![ComplexMatrix::identity(dim).scale_re(1.0 / n as f64); n],
        }
    }
}

/// Average success probability sum_k mu_k tr(M_k rho_k), clamped to [0,1].
pub fn success_probability(ensemble: &Ensemble, povm: &Povm) -> Result<f64> {
    if ensemble.len() != povm.len() {
        return Err(Error::LengthMismatch {
            left: ensemble.len(),
            right: povm.len(),
        });
    }
    if ensemble.dim() != povm.dim() {
        return Err(Error::DimensionMismatch {
            left: ensemble.dim(),
            right: povm.dim(),
        });
    }
    let total: Complex64 = ensemble
        .members()
        .iter()
        .zip(povm.elements())
        .map(|((mu, rho), m)| m.matmul(rho.matrix()).trace().scale(*mu))
        .sum();
    debug_assert!(total.im.abs() <= 1e-12, "imaginary residue {}", total.im);
    Ok(total.re.clamp(0.0, 1.0))
}

/// Optimal success probability for discriminating two states with priors
/// (mu0, 1 - mu0): mu1 + tr(mu0 rho0 - mu1 rho1)_+.
pub fn helstrom_two_state(
    rho0: &DensityOperator,
    rho1: &DensityOperator,
    mu0: f64,
) -> Result<f64> {
    if rho0.dim() != rho1.dim() {
        return Err(Error::DimensionMismatch {
            left: rho0.dim(),
            right: rho1.dim(),
        });
    }
    assert!((0.0..=1.0).contains(&mu0), "mu0 must lie in [0,1]");
    let mu1 = 1.0 - mu0;
    let delta = &rho0.matrix().scale_re(mu0) - &rho1.matrix().scale_re(mu1);
    Ok(mu1 + positive_part(&delta)?.trace().re)
}

/// The known optimal measurement for N symmetric pure states with
/// coefficients c: rank-one elements on
/// |mu_j> = (1/sqrt N) sum_k (c_k/|c_k|) e^{2 pi i j k / N} |k>.
///
/// Undefined when any c_k = 0 (the phase c_k/|c_k| does not exist); such
/// input is rejected rather than silently picking a phase convention.
pub fn symmetric_pure_optimal_povm(n: usize, c: &[Complex64]) -> Result<Povm> {
    if c.len() > n {
        return Err(Error::TooManyCoefficients {
            coeffs: c.len(),
            states: n,
        });
    }
    for (index, ck) in c.iter().enumerate() {
        if ck.norm() == 0.0 {
            return Err(Error::ZeroCoefficient { index });
        }
    }
    let scale = 1.0 / (n as f64).sqrt();
    let elements = (0..n)
        .map(|j| {
            let ket: Vec<Complex64> = c
                .iter()
                .enumerate()
                .map(|(k, ck)| {
                    (ck / ck.norm())
                        * Complex64::from_polar(scale, family_azimuth(n, j) * k as f64)
                })
                .collect();
            ComplexMatrix::outer(&ket)
        })
        .collect();
    Povm::new(elements)
}

/// Success probability of the measurement above in closed form:
/// (1/N)(sum_k |c_k|)^2.
pub fn symmetric_pure_success(n: usize, c: &[Complex64]) -> f64 {
    let s: f64 = c.iter().map(|z| z.norm()).sum();
    s * s / n as f64
}

/// Optimal measurement for N symmetric qubit states (pure or mixed):
/// M_j = (2/N) |e_j><e_j| with |e_j> the equatorial pure state at azimuth
/// 2 pi j / N.
pub fn symmetric_qubit_optimal_povm(n: usize) -> Povm {
    assert!(n >= 2, "need at least two outcomes");
    let elements = (0..n)
        .map(|j| {
            let phi = family_azimuth(n, j);
            let ket = [
                Complex64::new(1.0 / 2.0_f64.sqrt(), 0.0),
                Complex64::from_polar(1.0 / 2.0_f64.sqrt(), phi),
            ];
            ComplexMatrix::outer(&ket).scale_re(2.0 / n as f64)
        })
        .collect();
    Povm::new(elements).expect("equatorial construction is complete by the root-of-unity sum")
}

/// The L4 comparison bound on the discrimination error, together with its
/// complementary success bound.
#[derive(Debug, Clone, Copy)]
pub struct L4Bound {
    /// Lower bound on the minimum error.
    pub error_lower: f64,
    /// 1 - error_lower, an upper bound on the optimal success.
    pub success_upper: f64,
}

/// L4 = 1 - min_k ( mu_k + sum_{j != k} tr(mu_j rho_j - mu_k rho_k)_+ ).
pub fn l4_bound(ensemble: &Ensemble) -> Result<L4Bound> {
    let mut best = f64::INFINITY;
    for (k, (mu_k, rho_k)) in ensemble.members().iter().enumerate() {
        let mut value = *mu_k;
        for (j, (mu_j, rho_j)) in ensemble.members().iter().enumerate() {
            if j == k {
                continue;
            }
            let delta = &rho_j.matrix().scale_re(*mu_j) - &rho_k.matrix().scale_re(*mu_k);
            value += positive_part(&delta)?.trace().re;
        }
        best = best.min(value);
    }
    Ok(L4Bound {
        error_lower: 1.0 - best,
        success_upper: best,
    })
}

/// eta(theta_2, theta_3) = (2/3)(sin(theta_2/2) + sin(theta_3/2)) for the
/// spin-1 family with theta_1 = 0; always below sqrt(2).
pub fn spin1_eta(theta2: f64, theta3: f64) -> f64 {
    (2.0 / 3.0) * ((theta2 / 2.0).sin() + (theta3 / 2.0).sin())
}

/// The L4 success complement for the spin-1 family in closed form:
/// 1 - L4 = (1 + eta alpha)/3.
pub fn spin1_l4_success(alpha: f64, theta2: f64, theta3: f64) -> f64 {
    (1.0 + spin1_eta(theta2, theta3) * alpha) / 3.0
}

/// Holevo-Helstrom optimality check for a measurement.
#[derive(Debug, Clone)]
pub struct CertificateReport {
    /// Symmetrized Gamma = sum_k mu_k rho_k M_k.
    pub gamma: ComplexMatrix,
    /// Most negative eigenvalue over k of Gamma - mu_k rho_k.
    pub gap: f64,
    /// gap >= -1e-8.
    pub optimal: bool,
}

/// Tolerance on the certificate gap, commensurate with 1e-10-level
/// linear-algebra noise accumulated over products of three matrices.
pub const CERTIFICATE_TOL: f64 = 1e-8;

/// Evaluate the optimality conditions: a POVM maximizes the success
/// probability iff Gamma - mu_k rho_k >= 0 for every k.
pub fn certificate(ensemble: &Ensemble, povm: &Povm) -> Result<CertificateReport> {
    if ensemble.len() != povm.len() {
        return Err(Error::LengthMismatch {
            left: ensemble.len(),
            right: povm.len(),
        });
    }
    if ensemble.dim() != povm.dim() {
        return Err(Error::DimensionMismatch {
            left: ensemble.dim(),
            right: povm.dim(),
        });
    }
    let dim = ensemble.dim();
    let mut gamma_raw = ComplexMatrix::zeros(dim);
    for ((mu, rho), m) in ensemble.members().iter().zip(povm.elements()) {
        gamma_raw = &gamma_raw + &rho.matrix().matmul(m).scale_re(*mu);
    }
    // Gamma is Hermitian at the optimum; symmetrize the numeric residue.
    let gamma = ComplexMatrix::from_fn(dim, |i, j| {
        (gamma_raw.get(i, j) + gamma_raw.get(j, i).conj()).scale(0.5)
    });
    let mut gap = f64::INFINITY;
    for (mu, rho) in ensemble.members() {
        let diff = &gamma - &rho.matrix().scale_re(*mu);
        gap = gap.min(min_eigenvalue(&diff)?);
    }
    Ok(CertificateReport {
        gamma,
        gap,
        optimal: gap >= -CERTIFICATE_TOL,
    })
}

/// Inverse square root of a PSD matrix by spectral decomposition, treating
/// eigenvalues at or below `floor` as zero (pseudo-inverse on the support).
/// Returns the inverse root together with the support projector.
pub(crate) fn inverse_sqrt_psd(
    s: &ComplexMatrix,
    floor: f64,
) -> Result<(ComplexMatrix, ComplexMatrix)> {
    let eig = eig_hermitian(s)?;
    let inv = eig.map_spectrum(|x| {
        if x > floor {
            Complex64::new(1.0 / x.sqrt(), 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let projector = eig.map_spectrum(|x| {
        if x > floor {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    Ok((inv, projector))
}
