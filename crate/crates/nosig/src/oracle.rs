//! Independent numerical optimizer for minimum-error discrimination.
//!
//! Fixed-point iteration on the optimality conditions:
//!
//! ```text
//! G_k = mu_k rho_k M_k rho_k mu_k,   Lambda = (sum_k G_k)^(1/2),
//! M_k <- Lambda^-1 G_k Lambda^-1,
//! ```
//!
//! starting from the strictly positive uniform POVM {I/N}. The update
//! keeps every element PSD, restores completeness exactly through the
//! symmetric inverse square root, and never decreases the success
//! probability. Convergence is declared by the Holevo-Helstrom
//! certificate gap, not by step size.

use num_complex::Complex64;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::discrim::{certificate, inverse_sqrt_psd, success_probability, Povm};
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::states::Ensemble;

/// Eigenvalue floor under which Lambda is inverted on its support only.
const LAMBDA_FLOOR: f64 = 1e-12;

/// Outcome of a fixed-point run.
#[derive(Debug, Clone)]
pub struct OracleResult {
    pub povm: Povm,
    pub success: f64,
    pub certificate_gap: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// One fixed-point update of a POVM for the given ensemble.
///
/// When Lambda is singular the inverse is taken on its support and the
/// orthogonal complement is spread uniformly over the outcomes, which
/// keeps the POVM complete without affecting any state supported there.
pub fn fixed_point_step(ensemble: &Ensemble, povm: &Povm) -> Result<Povm> {
    let elements = step_elements(ensemble, povm.elements())?;
    Povm::new(elements)
}

fn step_elements(
    ensemble: &Ensemble,
    elements: &[ComplexMatrix],
) -> Result<Vec<ComplexMatrix>> {
    if ensemble.len() != elements.len() {
        return Err(Error::LengthMismatch {
            left: ensemble.len(),
            right: elements.len(),
        });
    }
    let dim = ensemble.dim();
    let n = elements.len();
    let g: Vec<ComplexMatrix> = ensemble
        .members()
        .iter()
        .zip(elements)
        .map(|((mu, rho), m)| {
            rho.matrix()
                .matmul(m)
                .matmul(rho.matrix())
                .scale_re(mu * mu)
        })
        .collect();
    let mut s = ComplexMatrix::zeros(dim);
    for gk in &g {
        s = &s + gk;
    }
    let (inv_root, projector) = inverse_sqrt_psd(&s, LAMBDA_FLOOR)?;
    let complement = &ComplexMatrix::identity(dim) - &projector;
    let leak = complement.trace().re;
    if leak > 0.5 {
        log::warn!(
            "fixed-point normalizer is singular (rank deficit {:.0}); inverting on its support",
            leak
        );
    }
    Ok(g.iter()
        .map(|gk| {
            let renorm = inv_root.matmul(gk).matmul(&inv_root);
            &renorm + &complement.scale_re(1.0 / n as f64)
        })
        .collect())
}

/// Run the fixed-point iteration from the uniform POVM {I/N} until the
/// certificate gap reaches -tol or `max_iters` updates have been applied.
/// Non-convergence is reported through the flag, never as an error.
pub fn optimize_povm(ensemble: &Ensemble, max_iters: usize, tol: f64) -> Result<OracleResult> {
    assert!(max_iters >= 1, "need at least one iteration");
    let start = Povm::uniform(ensemble.dim(), ensemble.len());
    optimize_from(ensemble, start, max_iters, tol)
}

fn optimize_from(
    ensemble: &Ensemble,
    start: Povm,
    max_iters: usize,
    tol: f64,
) -> Result<OracleResult> {
    let mut elements: Vec<ComplexMatrix> = start.elements().to_vec();
    let mut iterations = 0;
    let mut gap = certificate_gap_raw(ensemble, &elements)?;
    while gap < -tol && iterations < max_iters {
        elements = step_elements(ensemble, &elements)?;
        iterations += 1;
        gap = certificate_gap_raw(ensemble, &elements)?;
    }
    let povm = Povm::new(elements)?;
    let success = success_probability(ensemble, &povm)?;
    Ok(OracleResult {
        success,
        certificate_gap: gap,
        iterations,
        converged: gap >= -tol,
        povm,
    })
}

fn certificate_gap_raw(ensemble: &Ensemble, elements: &[ComplexMatrix]) -> Result<f64> {
    let povm = Povm::new(elements.to_vec())?;
    Ok(certificate(ensemble, &povm)?.gap)
}

/// `optimize_povm` from the uniform start plus `restarts - 1` randomized
/// strictly positive starts drawn from the seeded stream; returns the best
/// result by success, preferring certified ones on ties.
///
/// The random starts are normalized squares of complex Gaussian matrices,
/// drawn sequentially from one stream, so the best success over the first
/// r restarts is nondecreasing in r for a fixed seed.
pub fn random_restarts(
    ensemble: &Ensemble,
    restarts: usize,
    seed: u64,
    max_iters: usize,
    tol: f64,
) -> Result<OracleResult> {
    assert!(restarts >= 1, "need at least one restart");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = optimize_povm(ensemble, max_iters, tol)?;
    for _ in 1..restarts {
        let start = random_positive_povm(ensemble.dim(), ensemble.len(), &mut rng);
        let run = optimize_from(ensemble, start, max_iters, tol)?;
        let better = run.success > best.success
            || (run.success >= best.success - 1e-15 && run.converged && !best.converged);
        if better {
            best = run;
        }
    }
    Ok(best)
}

/// Strictly positive random POVM: E_k = A_k A_k† + eps I from complex
/// Gaussian A_k, completeness restored by the symmetric inverse root.
fn random_positive_povm(dim: usize, n: usize, rng: &mut ChaCha8Rng) -> Povm {
    let e: Vec<ComplexMatrix> = (0..n)
        .map(|_| {
            let a = ComplexMatrix::from_fn(dim, |_, _| {
                Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
            });
            let psd = a.matmul(&a.adjoint());
            &psd + &ComplexMatrix::identity(dim).scale_re(1e-6)
        })
        .collect();
    let mut s = ComplexMatrix::zeros(dim);
    for ek in &e {
        s = &s + ek;
    }
    let (inv_root, _) = inverse_sqrt_psd(&s, LAMBDA_FLOOR).expect("sum of positive matrices");
    let elements = e
        .iter()
        .map(|ek| inv_root.matmul(ek).matmul(&inv_root))
        .collect();
    Povm::new(elements).expect("renormalized positive start is a POVM")
}
