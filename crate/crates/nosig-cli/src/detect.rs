//! Recognize symmetric qubit families given in an arbitrary frame.
//!
//! A family matches when the Bloch vectors share one polar height and
//! equatorial radius about some axis, with azimuths advancing by 2 pi / N
//! in member order. The closed-form bound and optimum then apply, with
//! the match tolerance fixed at 1e-8 on the Bloch vectors.

use nosig::states::bloch_from_density;
use nosig::Ensemble;

pub const MATCH_TOL: f64 = 1e-8;

/// Parameters of a recognized family: z-canonical polar angle and radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitSymmetry {
    pub n: usize,
    pub theta: f64,
    pub r: f64,
}

type Vec3 = [f64; 3];

fn sub(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn dot(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: Vec3, b: Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn norm(a: Vec3) -> f64 {
    dot(a, a).sqrt()
}

fn normalize(a: Vec3) -> Option<Vec3> {
    let n = norm(a);
    if n > 1e-9 {
        Some([a[0] / n, a[1] / n, a[2] / n])
    } else {
        None
    }
}

/// Try to match `ensemble` against a symmetric qubit family.
pub fn detect_qubit_symmetry(ensemble: &Ensemble) -> Option<QubitSymmetry> {
    if ensemble.dim() != 2 {
        return None;
    }
    let n = ensemble.len();
    let uniform = 1.0 / n as f64;
    if ensemble
        .members()
        .iter()
        .any(|(prior, _)| (prior - uniform).abs() > MATCH_TOL)
    {
        return None;
    }
    let bloch: Vec<Vec3> = ensemble
        .members()
        .iter()
        .map(|(_, s)| {
            let b = bloch_from_density(s).expect("dimension checked above");
            [b.x, b.y, b.z]
        })
        .collect();

    for axis in candidate_axes(&bloch) {
        for signed in [axis, [-axis[0], -axis[1], -axis[2]]] {
            if let Some(found) = verify_axis(&bloch, signed) {
                return Some(found);
            }
        }
    }
    None
}

/// Plausible symmetry axes: the mean Bloch vector, the normal to the
/// circle the vectors trace, the bisector for pairs, and z as the
/// fallback for degenerate (all-equal) families.
fn candidate_axes(bloch: &[Vec3]) -> Vec<Vec3> {
    let n = bloch.len();
    let mut axes = Vec::new();
    let mut mean = [0.0; 3];
    for b in bloch {
        mean = [mean[0] + b[0], mean[1] + b[1], mean[2] + b[2]];
    }
    mean = [mean[0] / n as f64, mean[1] / n as f64, mean[2] / n as f64];
    if let Some(a) = normalize(mean) {
        axes.push(a);
    }
    if n >= 3 {
        for j in 0..n {
            let d1 = sub(bloch[(j + 1) % n], bloch[j]);
            let d2 = sub(bloch[(j + 2) % n], bloch[(j + 1) % n]);
            if let Some(a) = normalize(cross(d1, d2)) {
                axes.push(a);
                break;
            }
        }
    }
    if n == 2 {
        // Antipodal pairs leave the axis free within the orthogonal plane.
        if let Some(a) = normalize(cross(bloch[0], [0.0, 0.0, 1.0])) {
            axes.push(a);
        }
        if let Some(a) = normalize(cross(bloch[0], [1.0, 0.0, 0.0])) {
            axes.push(a);
        }
    }
    axes.push([0.0, 0.0, 1.0]);
    axes
}

fn verify_axis(bloch: &[Vec3], axis: Vec3) -> Option<QubitSymmetry> {
    let n = bloch.len();
    let heights: Vec<f64> = bloch.iter().map(|&b| dot(b, axis)).collect();
    let height = heights.iter().sum::<f64>() / n as f64;
    if heights.iter().any(|h| (h - height).abs() > MATCH_TOL) {
        return None;
    }
    let planar: Vec<Vec3> = bloch
        .iter()
        .map(|&b| sub(b, [axis[0] * height, axis[1] * height, axis[2] * height]))
        .collect();
    let radii: Vec<f64> = planar.iter().map(|&u| norm(u)).collect();
    let radius = radii.iter().sum::<f64>() / n as f64;
    if radii.iter().any(|r| (r - radius).abs() > MATCH_TOL) {
        return None;
    }

    if radius > MATCH_TOL {
        // Azimuths must advance by 2 pi / N starting from member 0; check
        // by rebuilding each vector in the frame anchored at member 0.
        let e1 = normalize(planar[0])?;
        let e2 = cross(axis, e1);
        for (j, &u) in planar.iter().enumerate() {
            let phi = std::f64::consts::TAU * j as f64 / n as f64;
            let expected = [
                radius * (phi.cos() * e1[0] + phi.sin() * e2[0]),
                radius * (phi.cos() * e1[1] + phi.sin() * e2[1]),
                radius * (phi.cos() * e1[2] + phi.sin() * e2[2]),
            ];
            if norm(sub(u, expected)) > MATCH_TOL {
                return None;
            }
        }
    }

    let r = (height * height + radius * radius).sqrt();
    let theta = radius.atan2(height);
    Some(QubitSymmetry { n, theta, r })
}

#[cfg(test)]
mod tests {
    use super::*;
    use nosig::linalg::unitary_from_generator;
    use nosig::states::{pauli_x, symmetric_qubit_family};
    use nosig::Ensemble;

    const PI: f64 = std::f64::consts::PI;

    fn rotate_family(fam: &Ensemble, angle: f64) -> Ensemble {
        // Conjugate every member by a rotation about x, moving the
        // symmetry axis away from z.
        let u = unitary_from_generator(angle, &pauli_x().scale_re(0.5)).unwrap();
        Ensemble::new(
            fam.members()
                .iter()
                .map(|(mu, rho)| (*mu, rho.conjugated_by(&u)))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn detects_canonical_families() {
        for (n, theta, r) in [(3, PI / 2.0, 1.0 / 3.0), (4, 0.8, 1.0), (2, 1.3, 0.6)] {
            let fam = symmetric_qubit_family(n, theta, r).unwrap();
            let found = detect_qubit_symmetry(&fam).expect("family should match");
            assert_eq!(found.n, n);
            assert!((found.theta - theta).abs() <= 1e-7, "{found:?}");
            assert!((found.r - r).abs() <= 1e-8);
        }
    }

    #[test]
    fn detects_rotated_frames() {
        for angle in [0.3, 1.1, 2.0] {
            let fam = rotate_family(&symmetric_qubit_family(3, PI / 2.0, 1.0 / 3.0).unwrap(), angle);
            let found = detect_qubit_symmetry(&fam).expect("rotation preserves symmetry");
            assert_eq!(found.n, 3);
            assert!((found.theta - PI / 2.0).abs() <= 1e-7);
            assert!((found.r - 1.0 / 3.0).abs() <= 1e-8);
        }
    }

    #[test]
    fn detects_degenerate_families() {
        // All maximally mixed: r = 0, any axis.
        let fam = symmetric_qubit_family(3, 1.0, 0.0).unwrap();
        let found = detect_qubit_symmetry(&fam).expect("trivial family matches");
        assert!(found.r <= 1e-12);
        // Polar family: theta = 0.
        let fam = symmetric_qubit_family(3, 0.0, 0.9).unwrap();
        let found = detect_qubit_symmetry(&fam).unwrap();
        assert!(found.theta.abs() <= 1e-8);
        assert!((found.r - 0.9).abs() <= 1e-8);
    }

    #[test]
    fn rejects_asymmetric_ensembles() {
        use nosig::states::{density_from_bloch, BlochVector};
        let a = density_from_bloch(&BlochVector::new(0.9, 0.0, 0.0)).unwrap();
        let b = density_from_bloch(&BlochVector::new(0.0, 0.4, 0.0)).unwrap();
        let c = density_from_bloch(&BlochVector::new(0.0, 0.0, 0.2)).unwrap();
        let ens = Ensemble::uniform(vec![a, b, c]).unwrap();
        assert!(detect_qubit_symmetry(&ens).is_none());
    }

    #[test]
    fn rejects_nonuniform_priors() {
        let fam = symmetric_qubit_family(2, 1.0, 1.0).unwrap();
        let skewed = Ensemble::new(vec![
            (0.6, fam.state(0).clone()),
            (0.4, fam.state(1).clone()),
        ])
        .unwrap();
        assert!(detect_qubit_symmetry(&skewed).is_none());
    }
}
