//! State families to be discriminated: Bloch-parameterized qubits,
//! symmetric qubit and qudit families, and SO(3) spin-j families.
//!
//! The symmetry axis is canonicalized to z throughout: a rotation by
//! 2 pi / N about z maps each family member to the next. Families given
//! in another frame are unitarily equivalent, and every bound computed
//! downstream is invariant under a global unitary.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{min_eigenvalue, unitary_from_generator, ComplexMatrix};

const TAU: f64 = std::f64::consts::TAU;

/// Pauli x.
pub fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::from_fn(2, |i, j| Complex64::new(if i != j { 1.0 } else { 0.0 }, 0.0))
}

/// Pauli y.
pub fn pauli_y() -> ComplexMatrix {
    ComplexMatrix::from_fn(2, |i, j| match (i, j) {
        (0, 1) => Complex64::new(0.0, -1.0),
        (1, 0) => Complex64::new(0.0, 1.0),
        _ => Complex64::new(0.0, 0.0),
    })
}

/// Pauli z.
pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::diagonal(&[1.0, -1.0])
}

/// Real 3-vector n with rho = (I + n.sigma)/2; |n| = 1 on pure states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }
}

/// Hermitian, unit-trace, positive-semidefinite operator.
///
/// Construction validates all three invariants (each within its stated
/// tolerance) and stores the symmetrized matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    matrix: ComplexMatrix,
}

impl DensityOperator {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let matrix = matrix.symmetrized()?;
        let trace = matrix.trace().re;
        if (trace - 1.0).abs() > 1e-10 {
            return Err(Error::TraceNotUnit { trace, tol: 1e-10 });
        }
        let min_eig = min_eigenvalue(&matrix)?;
        if min_eig < -1e-10 {
            return Err(Error::NotPositive {
                min_eigenvalue: min_eig,
            });
        }
        Ok(Self { matrix })
    }

    /// Rank-one state |psi><psi| from a normalized ket.
    pub fn pure(ket: &[Complex64]) -> Result<Self> {
        Self::new(ComplexMatrix::outer(ket))
    }

    /// Maximally mixed state I/d.
    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            matrix: ComplexMatrix::identity(dim).scale_re(1.0 / dim as f64),
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// tr(rho^2); 1 on pure states.
    pub fn purity(&self) -> f64 {
        self.matrix.matmul(&self.matrix).trace().re
    }

    /// U rho U†.
    pub fn conjugated_by(&self, u: &ComplexMatrix) -> Self {
        Self {
            matrix: u.matmul(&self.matrix).matmul(&u.adjoint()),
        }
    }

    pub fn distance(&self, other: &Self) -> f64 {
        self.matrix.distance(&other.matrix)
    }
}

/// States with a priori probabilities; the discrimination problem instance.
#[derive(Debug, Clone)]
pub struct Ensemble {
    members: Vec<(f64, DensityOperator)>,
}

impl Ensemble {
    pub fn new(members: Vec<(f64, DensityOperator)>) -> Result<Self> {
        if members.len() < 2 {
            return Err(Error::TooFewStates {
                count: members.len(),
            });
        }
        let dim = members[0].1.dim();
        for (index, (prior, state)) in members.iter().enumerate() {
            if state.dim() != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: state.dim(),
                });
            }
            if *prior < 0.0 {
                return Err(Error::NegativePrior {
                    index,
                    value: *prior,
                });
            }
        }
        let sum: f64 = members.iter().map(|(p, _)| p).sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::PriorsNotNormalized { sum });
        }
        Ok(Self { members })
    }

    /// Equal-prior ensemble over the given states.
    pub fn uniform(states: Vec<DensityOperator>) -> Result<Self> {
        let n = states.len();
        Self::new(states.into_iter().map(|s| (1.0 / n as f64, s)).collect())
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.members[0].1.dim()
    }

    pub fn members(&self) -> &[(f64, DensityOperator)] {
        &self.members
    }

    pub fn prior(&self, k: usize) -> f64 {
        self.members[k].0
    }

    pub fn state(&self, k: usize) -> &DensityOperator {
        &self.members[k].1
    }

    /// The average state sum_k mu_k rho_k.
    pub fn average(&self) -> DensityOperator {
        let mut m = ComplexMatrix::zeros(self.dim());
        for (prior, state) in &self.members {
            m = &m + &state.matrix().scale_re(*prior);
        }
        DensityOperator { matrix: m }
    }
}

/// rho(n) = (I + n.sigma)/2.
pub fn density_from_bloch(n: &BlochVector) -> Result<DensityOperator> {
    if n.norm() > 1.0 + 1e-10 {
        return Err(Error::BlochNorm { norm: n.norm() });
    }
    let m = ComplexMatrix::from_rows(vec![
        vec![
            Complex64::new((1.0 + n.z) / 2.0, 0.0),
            Complex64::new(n.x / 2.0, -n.y / 2.0),
        ],
        vec![
            Complex64::new(n.x / 2.0, n.y / 2.0),
            Complex64::new((1.0 - n.z) / 2.0, 0.0),
        ],
    ])?;
    Ok(DensityOperator { matrix: m })
}

/// Inverse of `density_from_bloch`: n_a = tr(rho sigma_a).
pub fn bloch_from_density(rho: &DensityOperator) -> Result<BlochVector> {
    if rho.dim() != 2 {
        return Err(Error::DimensionMismatch {
            left: rho.dim(),
            right: 2,
        });
    }
    let m = rho.matrix();
    Ok(BlochVector::new(
        (m.get(0, 1) + m.get(1, 0)).re,
        ((m.get(1, 0) - m.get(0, 1)) * Complex64::new(0.0, -1.0)).re,
        (m.get(0, 0) - m.get(1, 1)).re,
    ))
}

/// Fold an arbitrary polar angle into [0, pi].
///
/// The family with angle theta outside that range coincides, up to a
/// global z-rotation, with the reduced one, and every bound downstream
/// depends on theta only through |sin theta|.
pub fn reduce_polar_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    if t > std::f64::consts::PI {
        TAU - t
    } else {
        t
    }
}

/// Azimuth of member j in an N-element symmetric family.
pub fn family_azimuth(n: usize, j: usize) -> f64 {
    TAU * j as f64 / n as f64
}

/// N symmetric qubit states with Bloch vectors of common length `r` and
/// polar angle `theta`, equally spaced in azimuth, each with prior 1/N.
pub fn symmetric_qubit_family(n: usize, theta: f64, r: f64) -> Result<Ensemble> {
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::RadiusOutOfRange { r });
    }
    let theta = reduce_polar_angle(theta);
    let states = (0..n)
        .map(|j| {
            let phi = family_azimuth(n, j);
            density_from_bloch(&BlochVector::new(
                r * theta.sin() * phi.cos(),
                r * theta.sin() * phi.sin(),
                r * theta.cos(),
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Ensemble::uniform(states)
}

/// N symmetric pure states |phi_j> = sum_k c_k e^{2 pi i j k / N} |k> in
/// dimension D = c.len(), each with prior 1/N. Phases of the coefficients
/// are preserved.
pub fn symmetric_pure_family(n: usize, c: &[Complex64]) -> Result<Ensemble> {
    if c.len() > n {
        return Err(Error::TooManyCoefficients {
            coeffs: c.len(),
            states: n,
        });
    }
    let norm_sq: f64 = c.iter().map(|z| z.norm_sqr()).sum();
    if (norm_sq - 1.0).abs() > 1e-10 {
        return Err(Error::CoefficientsNotNormalized { norm_sq });
    }
    let states = (0..n)
        .map(|j| {
            let ket: Vec<Complex64> = c
                .iter()
                .enumerate()
                .map(|(k, ck)| ck * Complex64::from_polar(1.0, family_azimuth(n, j) * k as f64))
                .collect();
            DensityOperator::pure(&ket)
        })
        .collect::<Result<Vec<_>>>()?;
    Ensemble::uniform(states)
}

/// Spin-j system: half-integer j stored as two_j, with the rotation
/// generators J1, J2, J3 in the (2j+1)-dimensional representation,
/// J3 diagonal with entries j, j-1, ..., -j.
#[derive(Debug, Clone)]
pub struct SpinSystem {
    two_j: u32,
    j1: ComplexMatrix,
    j2: ComplexMatrix,
    j3: ComplexMatrix,
}

impl SpinSystem {
    /// Build the generators from the ladder matrix elements
    /// <j,m+1| J± |j,m> = sqrt((j ∓ m)(j ± m + 1)).
    pub fn new(two_j: u32) -> Result<Self> {
        if two_j < 1 {
            return Err(Error::InvalidTwoJ { two_j });
        }
        let dim = two_j as usize + 1;
        let j = two_j as f64 / 2.0;
        // Basis index i holds m = j - i.
        let mut j_plus = ComplexMatrix::zeros(dim);
        for i in 1..dim {
            let m = j - i as f64;
            j_plus.set(i - 1, i, Complex64::new(((j - m) * (j + m + 1.0)).sqrt(), 0.0));
        }
        let j_minus = j_plus.adjoint();
        let j1 = (&j_plus + &j_minus).scale_re(0.5);
        let j2 = (&j_plus - &j_minus).scale(Complex64::new(0.0, -0.5));
        let j3 = ComplexMatrix::from_fn(dim, |i, jcol| {
            if i == jcol {
                Complex64::new(j - i as f64, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        Ok(Self { two_j, j1, j2, j3 })
    }

    pub fn two_j(&self) -> u32 {
        self.two_j
    }

    pub fn j(&self) -> f64 {
        self.two_j as f64 / 2.0
    }

    pub fn dim(&self) -> usize {
        self.two_j as usize + 1
    }

    pub fn j1(&self) -> &ComplexMatrix {
        &self.j1
    }

    pub fn j2(&self) -> &ComplexMatrix {
        &self.j2
    }

    pub fn j3(&self) -> &ComplexMatrix {
        &self.j3
    }

    /// v . J for a real 3-vector v.
    pub fn dot(&self, v: [f64; 3]) -> ComplexMatrix {
        let a = self.j1.scale_re(v[0]);
        let b = self.j2.scale_re(v[1]);
        let c = self.j3.scale_re(v[2]);
        &(&a + &b) + &c
    }

    /// Rotation by `theta` about the 3-axis, exp(-i theta J3).
    pub fn rotation_about_3(&self, theta: f64) -> Result<ComplexMatrix> {
        unitary_from_generator(theta, &self.j3)
    }

    /// (I + v.J)/(2j+1), validated as a state.
    pub fn linear_state(&self, v: [f64; 3]) -> Result<DensityOperator> {
        let dim = self.dim() as f64;
        let m = (&ComplexMatrix::identity(self.dim()) + &self.dot(v)).scale_re(1.0 / dim);
        let min_eig = min_eigenvalue(&m)?;
        if min_eig < -1e-10 {
            return Err(Error::FamilyNotPositive {
                min_eigenvalue: min_eig,
            });
        }
        DensityOperator::new(m)
    }
}

/// Spin-j family rho_k = U_k rho_0 U_k† with rho_0 = (I + v0.J)/(2j+1),
/// v0 = (-alpha, 0, alpha), and U_k = exp(-i theta_k J3); priors 1/N.
pub fn spin_family(sys: &SpinSystem, alpha: f64, thetas: &[f64]) -> Result<Ensemble> {
    let rho0 = sys.linear_state([-alpha, 0.0, alpha])?;
    let states = thetas
        .iter()
        .map(|&t| Ok(rho0.conjugated_by(&sys.rotation_about_3(t)?)))
        .collect::<Result<Vec<_>>>()?;
    Ensemble::uniform(states)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::positive_part;

    const PI: f64 = std::f64::consts::PI;

    #[test]
    fn bloch_origin_is_maximally_mixed() {
        let rho = density_from_bloch(&BlochVector::new(0.0, 0.0, 0.0)).unwrap();
        assert!(rho.distance(&DensityOperator::maximally_mixed(2)) <= 1e-15);
    }

    #[test]
    fn bloch_north_pole_is_projector() {
        let rho = density_from_bloch(&BlochVector::new(0.0, 0.0, 1.0)).unwrap();
        assert!(rho.matrix().distance(&ComplexMatrix::diagonal(&[1.0, 0.0])) <= 1e-15);
    }

    #[test]
    fn bloch_example_state() {
        // (1/2)(I - sigma_z / 3) = diag(1/3, 2/3).
        let rho = density_from_bloch(&BlochVector::new(0.0, 0.0, -1.0 / 3.0)).unwrap();
        let expected = ComplexMatrix::diagonal(&[1.0 / 3.0, 2.0 / 3.0]);
        assert!(rho.matrix().distance(&expected) <= 1e-15);
    }

    #[test]
    fn bloch_norm_rejected_above_one() {
        let err = density_from_bloch(&BlochVector::new(0.8, 0.8, 0.0));
        assert!(matches!(err, Err(Error::BlochNorm { .. })));
    }

    #[test]
    fn bloch_round_trip() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for _ in 0..100 {
            let v = loop {
                let v = BlochVector::new(
                    rng.gen_range(-1.0..1.0),
                    rng.gen_range(-1.0..1.0),
                    rng.gen_range(-1.0..1.0),
                );
                if v.norm() <= 1.0 {
                    break v;
                }
            };
            let w = bloch_from_density(&density_from_bloch(&v).unwrap()).unwrap();
            let resid = ((v.x - w.x).powi(2) + (v.y - w.y).powi(2) + (v.z - w.z).powi(2)).sqrt();
            assert!(resid <= 1e-12);
        }
    }

    #[test]
    fn bloch_from_density_requires_qubit() {
        let rho = DensityOperator::maximally_mixed(3);
        assert!(matches!(
            bloch_from_density(&rho),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn symmetric_family_is_cyclic_under_z_rotation() {
        // Conjugation by exp(-i (2 pi / N) sigma_z / 2) advances j by one.
        for n in [2, 3, 5] {
            let fam = symmetric_qubit_family(n, 1.1, 0.7).unwrap();
            let step = unitary_from_generator(TAU / n as f64, &pauli_z().scale_re(0.5)).unwrap();
            for j in 0..n {
                let rotated = fam.state(j).conjugated_by(&step);
                assert!(rotated.distance(fam.state((j + 1) % n)) <= 1e-12);
            }
        }
    }

    #[test]
    fn symmetric_family_orthogonal_pair() {
        let fam = symmetric_qubit_family(2, PI / 2.0, 1.0).unwrap();
        let n0 = bloch_from_density(fam.state(0)).unwrap();
        let n1 = bloch_from_density(fam.state(1)).unwrap();
        assert!((n0.x - 1.0).abs() <= 1e-12 && (n1.x + 1.0).abs() <= 1e-12);
        assert!(n0.y.abs() <= 1e-12 && n0.z.abs() <= 1e-12);
    }

    #[test]
    fn symmetric_family_neighbor_distances_equal() {
        let fam = symmetric_qubit_family(5, 0.9, 0.6).unwrap();
        let d: Vec<f64> = (0..5)
            .map(|j| {
                positive_part(&(fam.state(j).matrix() - fam.state((j + 1) % 5).matrix()))
                    .unwrap()
                    .trace()
                    .re
            })
            .collect();
        for w in d.windows(2) {
            assert!((w[0] - w[1]).abs() <= 1e-12);
        }
    }

    #[test]
    fn symmetric_family_radius_checked() {
        assert!(matches!(
            symmetric_qubit_family(3, 1.0, 1.2),
            Err(Error::RadiusOutOfRange { .. })
        ));
    }

    #[test]
    fn angle_reduction_is_equivalent_up_to_relabeling() {
        // theta and 2 pi - theta give the same state set, azimuth-shifted by pi.
        let a = symmetric_qubit_family(4, 2.0 * PI - 1.2, 0.5).unwrap();
        let b = symmetric_qubit_family(4, 1.2, 0.5).unwrap();
        let na = bloch_from_density(a.state(0)).unwrap();
        let nb = bloch_from_density(b.state(0)).unwrap();
        assert!((na.norm() - nb.norm()).abs() <= 1e-12);
        assert!((na.z - nb.z).abs() <= 1e-12);
    }

    #[test]
    fn degenerate_pure_family() {
        // c = (1, 0) collapses every member to the same basis projector.
        let c = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
        let fam = symmetric_pure_family(4, &c).unwrap();
        for j in 1..4 {
            assert!(fam.state(0).distance(fam.state(j)) <= 1e-15);
        }
    }

    #[test]
    fn pure_family_matches_qubit_family() {
        for theta in [0.4_f64, 1.3, 2.8] {
            let c = [
                Complex64::new((theta / 2.0).cos(), 0.0),
                Complex64::new((theta / 2.0).sin(), 0.0),
            ];
            let pure = symmetric_pure_family(5, &c).unwrap();
            let qubit = symmetric_qubit_family(5, theta, 1.0).unwrap();
            for j in 0..5 {
                assert!(pure.state(j).distance(qubit.state(j)) <= 1e-12);
            }
        }
    }

    #[test]
    fn trine_pure_overlaps() {
        let inv = 1.0 / 2.0_f64.sqrt();
        let c = [Complex64::new(inv, 0.0), Complex64::new(inv, 0.0)];
        let fam = symmetric_pure_family(3, &c).unwrap();
        // |<phi_j|phi_k>|^2 = tr(rho_j rho_k) for pure states; 1/4 for the trine.
        for j in 0..3 {
            for k in 0..3 {
                if j == k {
                    continue;
                }
                let overlap_sq = fam.state(j).matrix().matmul(fam.state(k).matrix()).trace().re;
                assert!((overlap_sq - 0.25).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn unnormalized_coefficients_rejected() {
        let c = [Complex64::new(0.9, 0.0), Complex64::new(0.2, 0.0)];
        assert!(matches!(
            symmetric_pure_family(3, &c),
            Err(Error::CoefficientsNotNormalized { .. })
        ));
    }

    #[test]
    fn spin_half_generators_are_half_paulis() {
        let sys = SpinSystem::new(1).unwrap();
        assert!(sys.j1().distance(&pauli_x().scale_re(0.5)) <= 1e-15);
        assert!(sys.j2().distance(&pauli_y().scale_re(0.5)) <= 1e-15);
        assert!(sys.j3().distance(&pauli_z().scale_re(0.5)) <= 1e-15);
    }

    #[test]
    fn spin_one_generators_explicit() {
        let sys = SpinSystem::new(2).unwrap();
        let inv = 1.0 / 2.0_f64.sqrt();
        let j1 = ComplexMatrix::from_rows(vec![
            vec![Complex64::new(0.0, 0.0), Complex64::new(inv, 0.0), Complex64::new(0.0, 0.0)],
            vec![Complex64::new(inv, 0.0), Complex64::new(0.0, 0.0), Complex64::new(inv, 0.0)],
            vec![Complex64::new(0.0, 0.0), Complex64::new(inv, 0.0), Complex64::new(0.0, 0.0)],
        ])
        .unwrap();
        assert!(sys.j1().distance(&j1) <= 1e-15);
        assert!(sys.j3().distance(&ComplexMatrix::diagonal(&[1.0, 0.0, -1.0])) <= 1e-15);
    }

    #[test]
    fn commutation_relations_hold_up_to_spin_4() {
        for two_j in 1..=8 {
            let sys = SpinSystem::new(two_j).unwrap();
            let pairs = [
                (sys.j1(), sys.j2(), sys.j3()),
                (sys.j2(), sys.j3(), sys.j1()),
                (sys.j3(), sys.j1(), sys.j2()),
            ];
            for (a, b, c) in pairs {
                let comm = &a.matmul(b) - &b.matmul(a);
                let expected = c.scale(Complex64::new(0.0, 1.0));
                assert!(
                    comm.distance(&expected) <= 1e-10,
                    "two_j = {two_j}"
                );
            }
        }
    }

    #[test]
    fn spin_zero_rejected() {
        assert!(matches!(SpinSystem::new(0), Err(Error::InvalidTwoJ { .. })));
    }

    #[test]
    fn spin_one_rotation_is_diagonal_phases() {
        let sys = SpinSystem::new(2).unwrap();
        let theta = 1.37;
        let u = sys.rotation_about_3(theta).unwrap();
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
    fn spin_family_at_zero_alpha_is_maximally_mixed() {
        let sys = SpinSystem::new(2).unwrap();
        let fam = spin_family(&sys, 0.0, &[0.0, 2.0, 4.0]).unwrap();
        for k in 0..3 {
            assert!(fam.state(k).distance(&DensityOperator::maximally_mixed(3)) <= 1e-13);
        }
    }

    #[test]
    fn spin_family_purity_is_rotation_invariant() {
        let sys = SpinSystem::new(2).unwrap();
        let fam = spin_family(&sys, 0.4, &[0.0, 1.0, 2.5, 4.0]).unwrap();
        let p0 = fam.state(0).purity();
        for k in 1..4 {
            assert!((fam.state(k).purity() - p0).abs() <= 1e-12);
        }
    }

    #[test]
    fn spin_family_cyclic_step() {
        let sys = SpinSystem::new(2).unwrap();
        let thetas = [0.0, TAU / 3.0, 2.0 * TAU / 3.0];
        let fam = spin_family(&sys, 0.3, &thetas).unwrap();
        for k in 0..2 {
            let step = sys.rotation_about_3(thetas[k + 1] - thetas[k]).unwrap();
            assert!(fam.state(k).conjugated_by(&step).distance(fam.state(k + 1)) <= 1e-12);
        }
    }

    #[test]
    fn spin_one_trace_distance_formula() {
        // 3 tr(rho_j - rho_k)_+ = |alpha| sqrt(2 (1 - cos(theta_j - theta_k))).
        let sys = SpinSystem::new(2).unwrap();
        let thetas = [0.0, TAU / 3.0, 2.0 * TAU / 3.0];
        let alpha = 0.35;
        let fam = spin_family(&sys, alpha, &thetas).unwrap();
        for j in 0..3 {
            for k in 0..3 {
                if j == k {
                    continue;
                }
                let lhs = positive_part(&(fam.state(j).matrix() - fam.state(k).matrix()))
                    .unwrap()
                    .trace()
                    .re;
                let rhs = alpha.abs() * (2.0 * (1.0 - (thetas[j] - thetas[k]).cos())).sqrt() / 3.0;
                assert!((lhs - rhs).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn spin_family_alpha_too_large() {
        let sys = SpinSystem::new(2).unwrap();
        let err = spin_family(&sys, 0.9, &[0.0, 1.0, 2.0]);
        assert!(matches!(err, Err(Error::FamilyNotPositive { .. })));
    }

    #[test]
    fn ensemble_priors_validated() {
        let s = DensityOperator::maximally_mixed(2);
        assert!(matches!(
            Ensemble::new(vec![(0.6, s.clone()), (0.5, s.clone())]),
            Err(Error::PriorsNotNormalized { .. })
        ));
        assert!(matches!(
            Ensemble::new(vec![(1.2, s.clone()), (-0.2, s.clone())]),
            Err(Error::NegativePrior { .. })
        ));
        assert!(matches!(
            Ensemble::new(vec![(1.0, s)]),
            Err(Error::TooFewStates { .. })
        ));
    }
}
