//! Single-proposition complex embedding that restores linearity.
//!
//! A proposition with outcome weights `(pT, pF, pU)` is a point on the unit
//! sphere via square roots. Projecting that direction to the complex plane,
//!
//! ```text
//! psi = (cos phi, e^{i theta} sin phi),   phi = atan2(sqrt pF, sqrt pT),
//!                                         theta = arcsin(sqrt pU)
//! ```
//!
//! turns the nonlinear ratio rule into a plain quadratic form: with
//! `P = diag(1, 0)`, the Born value `<psi|P|psi> = cos^2 phi` equals
//! `pT / (pT + pF)` exactly. The unobservable weight survives only as the
//! phase `theta`, which drops out of every single-proposition probability
//! and resurfaces solely as the `cos(theta' - theta'')` factor inside
//! pairwise overlaps.
//!
//! The embedding is defined for one proposition; there is deliberately no
//! tensor recipe for joint complex states here. [`overlap`] exposes the
//! phase-bearing inner product and nothing more.

use num_complex::Complex64;
use thiserror::Error;

use crate::classical::INTAKE_TOLERANCE;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ComplexError {
    #[error("component {value} is negative or not finite")]
    BadComponent { value: f64 },
    #[error("components sum to {sum}, outside 1 \u{b1} {tolerance}")]
    NotNormalized { sum: f64, tolerance: f64 },
    #[error("direction has pT + pF = 0; the frequency has no value to restore")]
    NeverObservable,
    #[error("phi = {phi} outside [0, pi/2]")]
    PhiOutOfRange { phi: f64 },
    #[error("superposition norm {norm} is numerically zero")]
    DegenerateSuperposition { norm: f64 },
}

/// Point on the outcome sphere: nonnegative weights for true, false, and
/// unobservable, summing to 1. Intake renormalizes drift up to
/// [`INTAKE_TOLERANCE`] and rejects anything worse.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereDirection {
    p_true: f64,
    p_false: f64,
    p_unobservable: f64,
}

impl SphereDirection {
    pub fn new(p_true: f64, p_false: f64, p_unobservable: f64) -> Result<Self, ComplexError> {
        for value in [p_true, p_false, p_unobservable] {
            if !value.is_finite() || value < 0.0 {
                return Err(ComplexError::BadComponent { value });
            }
        }
        let sum = p_true + p_false + p_unobservable;
        if (sum - 1.0).abs() > INTAKE_TOLERANCE {
            return Err(ComplexError::NotNormalized { sum, tolerance: INTAKE_TOLERANCE });
        }
        Ok(SphereDirection {
            p_true: p_true / sum,
            p_false: p_false / sum,
            p_unobservable: p_unobservable / sum,
        })
    }

    /// Uniform draw from the weight simplex.
    pub fn random<R: rand::Rng + ?Sized>(rng: &mut R) -> Self {
        let w = crate::sampling::simplex_weights(3, rng);
        SphereDirection { p_true: w[0], p_false: w[1], p_unobservable: w[2] }
    }

    pub fn p_true(&self) -> f64 {
        self.p_true
    }

    pub fn p_false(&self) -> f64 {
        self.p_false
    }

    pub fn p_unobservable(&self) -> f64 {
        self.p_unobservable
    }

    /// The frequency the embedding must reproduce: `pT / (pT + pF)`.
    pub fn measurable_frequency(&self) -> Result<f64, ComplexError> {
        let observable = self.p_true + self.p_false;
        if observable == 0.0 {
            return Err(ComplexError::NeverObservable);
        }
        Ok(self.p_true / observable)
    }
}

/// Gauge-fixed unit vector `(a0, a1)` in C^2 with `a0` real nonnegative,
/// carrying the angles it was built from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexQubit {
    a0: f64,
    a1: Complex64,
    phi: f64,
    theta: f64,
}

impl ComplexQubit {
    /// Builds `(cos phi, e^{i theta} sin phi)`. The gauge confines `phi` to
    /// `[0, pi/2]`; `theta` is unrestricted.
    pub fn from_angles(phi: f64, theta: f64) -> Result<Self, ComplexError> {
        if !phi.is_finite() || !(0.0..=std::f64::consts::FRAC_PI_2).contains(&phi) {
            return Err(ComplexError::PhiOutOfRange { phi });
        }
        Ok(ComplexQubit {
            a0: phi.cos(),
            a1: Complex64::from_polar(phi.sin(), theta),
            phi,
            theta,
        })
    }

    /// First amplitude; real and nonnegative by gauge.
    pub fn a0(&self) -> f64 {
        self.a0
    }

    pub fn a1(&self) -> Complex64 {
        self.a1
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }
}

/// Projects a sphere direction onto the complex plane:
/// `phi = atan2(sqrt pF, sqrt pT)`, `theta = arcsin(sqrt pU)`.
///
/// The all-U direction has no TF-angle and errors instead of silently
/// picking one.
pub fn bloch_project(d: &SphereDirection) -> Result<ComplexQubit, ComplexError> {
    if d.p_true + d.p_false == 0.0 {
        return Err(ComplexError::NeverObservable);
    }
    let phi = d.p_false.sqrt().atan2(d.p_true.sqrt());
    let theta = d.p_unobservable.sqrt().min(1.0).asin();
    ComplexQubit::from_angles(phi, theta)
}

/// Born value of `P = diag(1, 0)` on the qubit: `|a0|^2 = cos^2 phi`.
/// Recovers the source direction's measurable frequency; `theta` never
/// enters.
pub fn restored_born(q: &ComplexQubit) -> f64 {
    q.a0 * q.a0
}

/// Inner product `<q1|q2> = cos phi' cos phi'' + e^{i(theta'' - theta')}
/// sin phi' sin phi''`. The phase difference appears here and nowhere else.
pub fn overlap(q1: &ComplexQubit, q2: &ComplexQubit) -> Complex64 {
    Complex64::from(q1.a0 * q2.a0) + q1.a1.conj() * q2.a1
}

/// Normalized superposition `alpha q1 + beta q2`, re-gauged so the first
/// amplitude is real nonnegative. Linearity restoration in one line: the
/// result's [`restored_born`] is the quadratic form `|v0|^2 / |v|^2` of the
/// raw combination.
pub fn superpose(
    q1: &ComplexQubit,
    q2: &ComplexQubit,
    alpha: Complex64,
    beta: Complex64,
) -> Result<ComplexQubit, ComplexError> {
    let v0 = alpha * Complex64::from(q1.a0) + beta * Complex64::from(q2.a0);
    let v1 = alpha * q1.a1 + beta * q2.a1;
    let norm = (v0.norm_sqr() + v1.norm_sqr()).sqrt();
    if norm < 1e-12 {
        return Err(ComplexError::DegenerateSuperposition { norm });
    }
    // Global phase is unphysical; rotate it away. A vanishing first
    // amplitude leaves the gauge to the second.
    let reference = if v0.norm() > 0.0 { v0 } else { v1 };
    let gauge = Complex64::from_polar(1.0, -reference.arg());
    let a0 = (v0 * gauge / norm).re.clamp(0.0, 1.0);
    let a1 = v1 * gauge / norm;
    Ok(ComplexQubit { a0, a1, phi: a1.norm().atan2(a0), theta: a1.arg() })
}

#[cfg(test)]
mod tests {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    use crate::ternary::TernaryDistribution;

    use super::*;

    #[test]
    fn direction_intake() {
        assert!(SphereDirection::new(0.2, 0.3, 0.5).is_ok());
        assert!(SphereDirection::new(0.2, 0.3, 0.5 + 3e-10).is_ok());
        assert!(matches!(
            SphereDirection::new(0.2, 0.3, 0.5 + 3e-9),
            Err(ComplexError::NotNormalized { .. })
        ));
        assert!(matches!(
            SphereDirection::new(-0.1, 0.6, 0.5),
            Err(ComplexError::BadComponent { .. })
        ));
        assert!(matches!(
            SphereDirection::new(f64::NAN, 0.5, 0.5),
            Err(ComplexError::BadComponent { .. })
        ));
    }

    #[test]
    fn equal_tf_direction_gives_quarter_angle() {
        let q = bloch_project(&SphereDirection::new(0.25, 0.25, 0.5).unwrap()).unwrap();
        assert!((q.phi() - FRAC_PI_4).abs() < 1e-15);
        assert!((restored_born(&q) - 0.5).abs() < 1e-12);
        assert!((restored_born(&q) - FRAC_PI_4.cos().powi(2)).abs() < 1e-15);
    }

    #[test]
    fn pure_true_direction_is_the_first_basis_vector() {
        let q = bloch_project(&SphereDirection::new(1.0, 0.0, 0.0).unwrap()).unwrap();
        assert_eq!(q.a0(), 1.0);
        assert_eq!(q.a1(), Complex64::ZERO);
        assert_eq!(q.theta(), 0.0);
        assert_eq!(restored_born(&q), 1.0);
    }

    #[test]
    fn perfect_box_has_no_projection() {
        assert!(matches!(
            bloch_project(&SphereDirection::new(0.0, 0.0, 1.0).unwrap()),
            Err(ComplexError::NeverObservable)
        ));
    }

    #[test]
    fn restored_frequency_matches_ternary_conditional() {
        let q = bloch_project(&SphereDirection::new(0.3, 0.1, 0.6).unwrap()).unwrap();
        assert!((restored_born(&q) - 0.75).abs() < 1e-12);

        let d = TernaryDistribution::new(1, vec![0.3, 0.1, 0.6]).unwrap();
        assert!((restored_born(&q) - d.measurable_frequency(0).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn zero_phi_is_certainty() {
        let q = ComplexQubit::from_angles(0.0, 1.23).unwrap();
        assert_eq!(restored_born(&q), 1.0);
        assert!(matches!(
            ComplexQubit::from_angles(-0.1, 0.0),
            Err(ComplexError::PhiOutOfRange { .. })
        ));
        assert!(matches!(
            ComplexQubit::from_angles(1.7, 0.0),
            Err(ComplexError::PhiOutOfRange { .. })
        ));
    }

    #[test]
    fn round_trip_over_random_directions() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10_000 {
            let d = SphereDirection::random(&mut rng);
            let expected = d.measurable_frequency().unwrap();
            let got = restored_born(&bloch_project(&d).unwrap());
            assert!(
                (got - expected).abs() < 1e-12,
                "direction {d:?}: restored {got}, frequency {expected}"
            );
        }
    }

    #[test]
    fn theta_shifts_leave_restored_born_bit_identical() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..50 {
            let d = SphereDirection::random(&mut rng);
            let q = bloch_project(&d).unwrap();
            let base = restored_born(&q);
            for k in 0..64 {
                let shifted = 2.0 * PI * (k as f64) / 64.0 - PI;
                let q2 = ComplexQubit::from_angles(q.phi(), q.theta() + shifted).unwrap();
                assert_eq!(restored_born(&q2), base, "theta shift {shifted} changed the value");
            }
        }
    }

    #[test]
    fn overlap_identities() {
        let q = bloch_project(&SphereDirection::new(0.4, 0.35, 0.25).unwrap()).unwrap();
        let with_self = overlap(&q, &q);
        assert!((with_self.re - 1.0).abs() < 1e-12);
        assert!(with_self.im.abs() < 1e-12);

        // Opposite phases at phi = pi/2 interfere to -1.
        let q1 = ComplexQubit::from_angles(FRAC_PI_2, PI).unwrap();
        let q2 = ComplexQubit::from_angles(FRAC_PI_2, 0.0).unwrap();
        let opposed = overlap(&q1, &q2);
        assert!((opposed.re + 1.0).abs() < 1e-12);
        assert!(opposed.im.abs() < 1e-12);

        // Equal phases reduce the overlap to cos(phi' - phi'').
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let phi1 = rng.random::<f64>() * FRAC_PI_2;
            let phi2 = rng.random::<f64>() * FRAC_PI_2;
            let theta = rng.random::<f64>() * 2.0 * PI;
            let a = ComplexQubit::from_angles(phi1, theta).unwrap();
            let b = ComplexQubit::from_angles(phi2, theta).unwrap();
            let o = overlap(&a, &b);
            assert!((o.re - (phi1 - phi2).cos()).abs() < 1e-12);
            assert!(o.im.abs() < 1e-12);
        }
    }

    #[test]
    fn overlap_obeys_cauchy_schwarz() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..1000 {
            let q1 = bloch_project(&SphereDirection::random(&mut rng)).unwrap();
            let shift = rng.random::<f64>() * 2.0 * PI;
            let q2 = ComplexQubit::from_angles(
                bloch_project(&SphereDirection::random(&mut rng)).unwrap().phi(),
                shift,
            )
            .unwrap();
            assert!(overlap(&q1, &q2).norm() <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn superpositions_stay_inside_the_quadratic_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let mut checked = 0;
        while checked < 1000 {
            let q1 = bloch_project(&SphereDirection::random(&mut rng)).unwrap();
            let q2 = bloch_project(&SphereDirection::random(&mut rng)).unwrap();
            let alpha = Complex64::new(
                2.0 * rng.random::<f64>() - 1.0,
                2.0 * rng.random::<f64>() - 1.0,
            );
            let beta = Complex64::new(
                2.0 * rng.random::<f64>() - 1.0,
                2.0 * rng.random::<f64>() - 1.0,
            );

            let v0 = alpha * Complex64::from(q1.a0()) + beta * Complex64::from(q2.a0());
            let v1 = alpha * q1.a1() + beta * q2.a1();
            let norm_sq = v0.norm_sqr() + v1.norm_sqr();
            let q = match superpose(&q1, &q2, alpha, beta) {
                Ok(q) => q,
                Err(ComplexError::DegenerateSuperposition { .. }) => continue,
                Err(other) => panic!("unexpected error {other}"),
            };

            let via_quadratic_form = v0.norm_sqr() / norm_sq;
            assert!((restored_born(&q) - via_quadratic_form).abs() < 1e-12);
            assert!(q.a0() >= 0.0);
            assert!(((q.a0() * q.a0() + q.a1().norm_sqr()) - 1.0).abs() < 1e-12);
            checked += 1;
        }
    }

    #[test]
    fn cancelling_superposition_is_rejected() {
        let q = bloch_project(&SphereDirection::new(0.5, 0.3, 0.2).unwrap()).unwrap();
        assert!(matches!(
            superpose(&q, &q, Complex64::ONE, -Complex64::ONE),
            Err(ComplexError::DegenerateSuperposition { .. })
        ));
    }
}
