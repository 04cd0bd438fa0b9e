//! The no-signaling bound on minimum-error discrimination.
//!
//! A detector that distinguishes remotely-prepared decompositions of one
//! common average state better than chance would signal. Encoding each
//! candidate state rho_k as the target of its own decomposition of that
//! average, the detector probabilities P_k = P(k|rho_k) are constrained by
//!
//! ```text
//! sum_k p_k P_k <= 1
//! ```
//!
//! where p_k is the weight of rho_k inside its decomposition. Maximizing
//! the mean of the P_k under that budget is a one-constraint box LP; its
//! value (Np)^-1 for equal weights is the working bound, and minimizing
//! over candidate decomposition families tightens it.

use crate::error::{Error, Result};
use crate::linalg::{min_eigenvalue, ComplexMatrix};
use crate::states::{
    density_from_bloch, family_azimuth, reduce_polar_angle, spin_family, BlochVector,
    DensityOperator, SpinSystem,
};

/// Pairwise Frobenius tolerance for the identical-ensemble condition.
/// Constructions are exact in exact arithmetic; this absorbs float noise
/// while still catching genuinely mismatched averages.
pub const AVERAGE_TOL: f64 = 1e-10;

/// sin(theta) at or below this is treated as the degenerate equatorial
/// construction (the delta states' azimuth sign is undefined there).
const DEGENERATE_SIN_TOL: f64 = 1e-12;

/// One convex decomposition of an average state, with a designated target
/// member whose weight enters the no-signaling budget.
#[derive(Debug, Clone)]
pub struct Decomposition {
    members: Vec<(f64, DensityOperator)>,
    target_index: usize,
    average: DensityOperator,
}

impl Decomposition {
    pub fn new(members: Vec<(f64, DensityOperator)>, target_index: usize) -> Result<Self> {
        assert!(target_index < members.len(), "target index out of range");
        for (index, (w, _)) in members.iter().enumerate() {
            if *w < 0.0 {
                return Err(Error::NegativeWeight { index, value: *w });
            }
        }
        let sum: f64 = members.iter().map(|(w, _)| w).sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::WeightsNotNormalized { sum });
        }
        let dim = members[0].1.dim();
        let mut avg = ComplexMatrix::zeros(dim);
        for (w, state) in &members {
            if state.dim() != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: state.dim(),
                });
            }
            avg = &avg + &state.matrix().scale_re(*w);
        }
        let average = DensityOperator::new(avg)?;
        Ok(Self {
            members,
            target_index,
            average,
        })
    }

    pub fn members(&self) -> &[(f64, DensityOperator)] {
        &self.members
    }

    pub fn target_weight(&self) -> f64 {
        self.members[self.target_index].0
    }

    pub fn target(&self) -> &DensityOperator {
        &self.members[self.target_index].1
    }

    pub fn average(&self) -> &DensityOperator {
        &self.average
    }

    pub fn dim(&self) -> usize {
        self.average.dim()
    }
}

/// N decompositions of one common average, decomposition k containing the
/// k-th state to be discriminated. Construction rejects families whose
/// averages differ beyond `AVERAGE_TOL`.
#[derive(Debug, Clone)]
pub struct DecompositionFamily {
    decompositions: Vec<Decomposition>,
}

impl DecompositionFamily {
    pub fn new(decompositions: Vec<Decomposition>) -> Result<Self> {
        if decompositions.len() < 2 {
            return Err(Error::TooFewDecompositions {
                count: decompositions.len(),
            });
        }
        let dim = decompositions[0].dim();
        for d in &decompositions {
            if d.dim() != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: d.dim(),
                });
            }
        }
        let worst = Self::max_average_distance(&decompositions);
        if worst > AVERAGE_TOL {
            return Err(Error::AveragesDiffer { distance: worst });
        }
        Ok(Self { decompositions })
    }

    fn max_average_distance(decompositions: &[Decomposition]) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, a) in decompositions.iter().enumerate() {
            for b in &decompositions[i + 1..] {
                worst = worst.max(a.average().distance(b.average()));
            }
        }
        worst
    }

    pub fn len(&self) -> usize {
        self.decompositions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.decompositions.is_empty()
    }

    pub fn decompositions(&self) -> &[Decomposition] {
        &self.decompositions
    }

    /// The weights p_k of each decomposition's target member.
    pub fn target_weights(&self) -> Vec<f64> {
        self.decompositions.iter().map(|d| d.target_weight()).collect()
    }

    /// Largest pairwise Frobenius distance between the cached averages.
    pub fn average_spread(&self) -> f64 {
        Self::max_average_distance(&self.decompositions)
    }
}

/// Result of the no-signaling LP: an upper bound on the success
/// probability, the complementary error lower bound, and the detector
/// allocation attaining the optimum.
#[derive(Debug, Clone)]
pub struct NoSignalBound {
    pub success_upper: f64,
    pub error_lower: f64,
    pub allocation: Vec<f64>,
}

/// Exact solution of max (1/N) sum_k P_k subject to sum_k p_k P_k <= 1 and
/// 0 <= P_k <= 1, by greedy fractional allocation in ascending p_k order
/// (ties broken by ascending index).
///
/// The program has a single budget constraint and equal objective
/// coefficients, so cheapest-first filling is exact. For equal weights
/// p_k = p it returns min(1, 1/(Np)).
pub fn lp_bound_for_weights(weights: &[f64]) -> Result<NoSignalBound> {
    for (index, &p) in weights.iter().enumerate() {
        if p <= 0.0 {
            return Err(Error::NonPositiveTargetWeight { index, value: p });
        }
    }
    let n = weights.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| weights[i].partial_cmp(&weights[j]).unwrap().then(i.cmp(&j)));

    let mut allocation = vec![0.0; n];
    let mut budget = 1.0;
    for &k in &order {
        if budget <= 0.0 {
            break;
        }
        let take = (budget / weights[k]).min(1.0);
        allocation[k] = take;
        budget -= take * weights[k];
    }
    let success_upper = allocation.iter().sum::<f64>() / n as f64;
    Ok(NoSignalBound {
        success_upper,
        error_lower: 1.0 - success_upper,
        allocation,
    })
}

/// The no-signaling bound of a decomposition family: the LP above with
/// p_k the family's target weights.
pub fn lp_bound(family: &DecompositionFamily) -> Result<NoSignalBound> {
    lp_bound_for_weights(&family.target_weights())
}

/// Minimum of `lp_bound` over a finite list of candidate families, which
/// must all target the same states in the same order. Returns the bound
/// together with the index of the attaining candidate.
pub fn min_over_decompositions(
    families: &[DecompositionFamily],
) -> Result<(NoSignalBound, usize)> {
    let first = families.first().ok_or(Error::EmptyCandidates)?;
    for fam in &families[1..] {
        if fam.len() != first.len() {
            return Err(Error::MismatchedTargets { index: 0 });
        }
        for (k, (a, b)) in first
            .decompositions()
            .iter()
            .zip(fam.decompositions())
            .enumerate()
        {
            if a.target().distance(b.target()) > AVERAGE_TOL {
                return Err(Error::MismatchedTargets { index: k });
            }
        }
    }
    let mut best: Option<(NoSignalBound, usize)> = None;
    for (i, fam) in families.iter().enumerate() {
        let bound = lp_bound(fam)?;
        match &best {
            Some((b, _)) if b.success_upper <= bound.success_upper => {}
            _ => best = Some((bound, i)),
        }
    }
    Ok(best.expect("nonempty candidate list"))
}

/// The pure equatorial states delta_j completing the symmetric qubit
/// decompositions: Bloch vectors (-cos(2 pi j / N), -sin(2 pi j / N), 0)
/// after the polar angle is reduced to (0, pi).
pub fn qubit_delta_states(n: usize, theta: f64) -> Result<Vec<DensityOperator>> {
    let theta = reduce_polar_angle(theta);
    if theta.sin() <= DEGENERATE_SIN_TOL {
        return Err(Error::DegenerateTheta);
    }
    (0..n)
        .map(|j| {
            let phi = family_azimuth(n, j);
            density_from_bloch(&BlochVector::new(-phi.cos(), -phi.sin(), 0.0))
        })
        .collect()
}

/// The canonical identical-average family for N symmetric qubit states:
/// decomposition k mixes rho_k with weight p = 1/(1 + r |sin theta|) and
/// delta_k with weight 1 - p, placing every average on the z-axis.
pub fn build_qubit_family(n: usize, theta: f64, r: f64) -> Result<DecompositionFamily> {
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::RadiusOutOfRange { r });
    }
    let theta = reduce_polar_angle(theta);
    let rhos = crate::states::symmetric_qubit_family(n, theta, r)?;
    let deltas = qubit_delta_states(n, theta)?;
    let p = 1.0 / (1.0 + r * theta.sin());
    let decompositions = deltas
        .into_iter()
        .enumerate()
        .map(|(k, delta)| {
            Decomposition::new(vec![(p, rhos.state(k).clone()), (1.0 - p, delta)], 0)
        })
        .collect::<Result<Vec<_>>>()?;
    DecompositionFamily::new(decompositions)
}

/// Closed-form no-signaling bound for N symmetric qubit states:
/// success <= (1 + r |sin theta|)/N, matching `lp_bound` on the canonical
/// family wherever that construction exists; 1/N at the degenerate poles.
pub fn qubit_ns_bound(n: usize, theta: f64, r: f64) -> Result<NoSignalBound> {
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::RadiusOutOfRange { r });
    }
    if n < 2 {
        return Err(Error::TooFewStates { count: n });
    }
    let theta = reduce_polar_angle(theta);
    let p = if theta.sin() <= DEGENERATE_SIN_TOL {
        1.0
    } else {
        1.0 / (1.0 + r * theta.sin())
    };
    lp_bound_for_weights(&vec![p; n])
}

/// The sigma_k companions of the spin-j family: sigma_0 = (I + w0.J)/(2j+1)
/// with w0 = (beta, 0, beta), rotated by the same U_k as the rho family.
pub fn spin_sigma_states(
    sys: &SpinSystem,
    beta: f64,
    thetas: &[f64],
) -> Result<Vec<DensityOperator>> {
    let sigma0 = sys.linear_state([beta, 0.0, beta])?;
    thetas
        .iter()
        .map(|&t| Ok(sigma0.conjugated_by(&sys.rotation_about_3(t)?)))
        .collect()
}

/// Largest beta keeping sigma_0(beta) positive semidefinite, located by
/// bisection on its smallest eigenvalue to absolute tolerance 1e-10.
pub fn beta_max(sys: &SpinSystem) -> Result<f64> {
    let dim = sys.dim() as f64;
    let sigma_min_eig = |beta: f64| -> Result<f64> {
        let m = (&ComplexMatrix::identity(sys.dim()) + &sys.dot([beta, 0.0, beta]))
            .scale_re(1.0 / dim);
        min_eigenvalue(&m)
    };
    let mut lo = 0.0;
    let mut hi = 1.0;
    while sigma_min_eig(hi)? >= 0.0 {
        lo = hi;
        hi *= 2.0;
        assert!(hi < 1e6, "sigma_0 stayed positive out to beta = 1e6");
    }
    while hi - lo > 1e-10 {
        let mid = 0.5 * (lo + hi);
        if sigma_min_eig(mid)? >= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// The identical-average family for the spin-j states: decomposition k
/// mixes rho_k with weight p = beta/(alpha + beta) and sigma_k with
/// weight 1 - p, so every average points along J3. Since (alpha+beta)/beta
/// decreases in beta, beta = beta_max gives the tightest bound and is
/// used here.
pub fn build_spin_family(
    sys: &SpinSystem,
    alpha: f64,
    thetas: &[f64],
) -> Result<DecompositionFamily> {
    let rhos = spin_family(sys, alpha, thetas)?;
    let beta = beta_max(sys)?;
    let sigmas = spin_sigma_states(sys, beta, thetas)?;
    let p = beta / (alpha + beta);
    let decompositions = sigmas
        .into_iter()
        .enumerate()
        .map(|(k, sigma)| {
            Decomposition::new(vec![(p, rhos.state(k).clone()), (1.0 - p, sigma)], 0)
        })
        .collect::<Result<Vec<_>>>()?;
    DecompositionFamily::new(decompositions)
}

/// No-signaling bound for the spin-j family:
/// success <= (alpha + beta_max) / (beta_max N).
pub fn spin_ns_bound(sys: &SpinSystem, alpha: f64, thetas: &[f64]) -> Result<NoSignalBound> {
    lp_bound(&build_spin_family(sys, alpha, thetas)?)
}
