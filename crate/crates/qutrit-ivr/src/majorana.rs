//! Majorana star representation of pure qutrit states.
//!
//! A pure qutrit state maps to an unordered pair of points on the unit
//! sphere: the roots of the quadratic
//! (C1/sqrt(2)) z^2 - C0 z + C-1/sqrt(2) = 0 pulled back through the
//! stereographic projection z = tan(theta/2) e^{i phi}. The south pole is
//! the point at infinity of the projection and is handled as an explicit
//! variant, never as an overflowing float.

use std::f64::consts::SQRT_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::density::{matrix_to_params, pure_from_state, QutritState, SpinParams};
use crate::error::{Error, Result};
use crate::invariants::{invariant_vectors, SphericalAngles};
use crate::linalg::Mat3;

/// A point on the unit sphere, stored as colatitude/azimuth.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Star {
    /// Colatitude in [0, pi].
    pub theta: f64,
    /// Azimuth in [0, 2*pi).
    pub phi: f64,
}

impl Star {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=std::f64::consts::PI).contains(&theta) || !phi.is_finite() {
            return Err(Error::BadInput(format!(
                "star angles out of range: theta {theta}, phi {phi}"
            )));
        }
        Ok(Star {
            theta,
            phi: phi.rem_euclid(std::f64::consts::TAU),
        })
    }

    pub fn cartesian(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }

    /// Angular distance to another star, in radians. Chord-based, so it
    /// stays accurate near zero separation where acos(dot) loses half the
    /// working precision.
    pub fn angular_distance(&self, other: &Star) -> f64 {
        let a = self.cartesian();
        let b = other.cartesian();
        let chord = a
            .iter()
            .zip(b.iter())
            .map(|(x, y)| (x - y) * (x - y))
            .sum::<f64>()
            .sqrt();
        2.0 * (chord / 2.0).clamp(-1.0, 1.0).asin()
    }
}

/// Unordered pair of Majorana stars.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct StarPair(pub [Star; 2]);

impl StarPair {
    pub fn new(s1: Star, s2: Star) -> Self {
        StarPair([s1, s2])
    }

    /// Max angular mismatch against another pair, minimized over the swap.
    pub fn angular_error(&self, other: &StarPair) -> f64 {
        let direct = self.0[0]
            .angular_distance(&other.0[0])
            .max(self.0[1].angular_distance(&other.0[1]));
        let swapped = self.0[0]
            .angular_distance(&other.0[1])
            .max(self.0[1].angular_distance(&other.0[0]));
        direct.min(swapped)
    }
}

/// Stereographic image of a star: a point in the equatorial plane or the
/// point at infinity (south pole).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StereoPoint {
    Finite(Complex64),
    Infinity,
}

impl StereoPoint {
    pub fn is_infinite(&self) -> bool {
        matches!(self, StereoPoint::Infinity)
    }
}

/// z = tan(theta/2) e^{i phi}; theta = pi maps to infinity.
pub fn star_to_zeta(star: &Star) -> StereoPoint {
    if star.theta == std::f64::consts::PI {
        return StereoPoint::Infinity;
    }
    let r = (star.theta / 2.0).tan();
    StereoPoint::Finite(Complex64::from_polar(r, star.phi))
}

/// Inverse of [`star_to_zeta`]: theta = 2 atan(|z|), phi = arg(z) mod 2 pi.
pub fn zeta_to_star(zeta: &StereoPoint) -> Star {
    match zeta {
        StereoPoint::Infinity => Star {
            theta: std::f64::consts::PI,
            phi: 0.0,
        },
        StereoPoint::Finite(z) => {
            let theta = 2.0 * z.norm().atan();
            let phi = if z.norm() == 0.0 {
                0.0
            } else {
                z.arg().rem_euclid(std::f64::consts::TAU)
            };
            Star { theta, phi }
        }
    }
}

/// State from a star pair: (1, (z1 + z2)/sqrt(2), z1 z2) normalized, with
/// degree reduction when a star sits at the south pole.
pub fn stars_to_state(stars: &StarPair) -> QutritState {
    let z1 = star_to_zeta(&stars.0[0]);
    let z2 = star_to_zeta(&stars.0[1]);
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let raw = match (z1, z2) {
        (StereoPoint::Finite(a), StereoPoint::Finite(b)) => [one, (a + b) / SQRT_2, a * b],
        (StereoPoint::Finite(a), StereoPoint::Infinity)
        | (StereoPoint::Infinity, StereoPoint::Finite(a)) => [zero, one, a * SQRT_2],
        (StereoPoint::Infinity, StereoPoint::Infinity) => [zero, zero, one],
    };
    QutritState::from_unnormalized(raw).expect("star image is never the zero vector")
}

/// Direct normalization constant: N = |(1, (z1+z2)/sqrt(2), z1 z2)|.
pub fn msr_normalization(stars: &StarPair) -> Option<f64> {
    match (star_to_zeta(&stars.0[0]), star_to_zeta(&stars.0[1])) {
        (StereoPoint::Finite(a), StereoPoint::Finite(b)) => {
            Some((1.0 + (a + b).norm_sqr() / 2.0 + (a * b).norm_sqr()).sqrt())
        }
        _ => None,
    }
}

/// Stars of a pure state: roots of (C1/sqrt(2)) z^2 - C0 z + C-1/sqrt(2) = 0
/// via the full quadratic formula, with the Vieta fallback for the
/// cancellation-prone root and degree reduction when C1 (and C0) vanish.
pub fn state_to_stars(psi: &QutritState) -> Result<StarPair> {
    let [c1, c0, cm1] = *psi.amplitudes();
    if c1.norm() == 0.0 && c0.norm() == 0.0 && cm1.norm() == 0.0 {
        return Err(Error::ZeroVector);
    }
    let (r1, r2) = if c1.norm() == 0.0 {
        if c0.norm() == 0.0 {
            (StereoPoint::Infinity, StereoPoint::Infinity)
        } else {
            // linear equation: -C0 z + C-1/sqrt(2) = 0
            (
                StereoPoint::Finite(cm1 / (c0 * SQRT_2)),
                StereoPoint::Infinity,
            )
        }
    } else {
        let disc = (c0 * c0 - 2.0 * c1 * cm1).sqrt();
        // pick the sign that avoids cancellation in C0 +/- sqrt(disc)
        let big = if (c0 + disc).norm() >= (c0 - disc).norm() {
            c0 + disc
        } else {
            c0 - disc
        };
        if big.norm() == 0.0 {
            // C0 = 0 and disc = 0: double root at the origin... only if
            // C-1 = 0 too; otherwise big != 0
            (
                StereoPoint::Finite(Complex64::new(0.0, 0.0)),
                StereoPoint::Finite(Complex64::new(0.0, 0.0)),
            )
        } else {
            let za = big / (c1 * SQRT_2);
            // Vieta: z1 z2 = C-1 / C1
            let zb = (cm1 / c1) / za;
            (StereoPoint::Finite(za), StereoPoint::Finite(zb))
        }
    };
    Ok(StarPair::new(zeta_to_star(&r1), zeta_to_star(&r2)))
}

/// Rank-1 projector of the star pair's state.
pub fn msr_density_matrix(stars: &StarPair) -> Mat3 {
    stars_to_state(stars).density_matrix()
}

/// Result of the star-to-parameters map: the published closed-form values,
/// the matrix readout they are checked against, and the per-call residual.
///
/// The published a1 component comes out with its sign flipped relative to
/// the layout readout; `max_residual` makes that visible instead of hiding
/// it.
#[derive(Debug, Clone, Serialize)]
pub struct MsrIvrParams {
    /// Closed-form values (finite-star pairs only; otherwise a copy of the
    /// readout).
    pub formula: SpinParams,
    /// Ground truth: layout readout of the star density matrix.
    pub readout: SpinParams,
    /// Normalization constant N, when both stars are finite.
    pub n: Option<f64>,
    /// Max absolute formula-vs-readout residual.
    pub max_residual: f64,
    pub formula_matches_readout: bool,
}

pub const MSR_IVR_TOL: f64 = 1e-12;

pub fn msr_to_ivr_params(stars: &StarPair) -> Result<MsrIvrParams> {
    let readout = matrix_to_params(&msr_density_matrix(stars))?;
    let z1 = star_to_zeta(&stars.0[0]);
    let z2 = star_to_zeta(&stars.0[1]);
    let (a, b) = match (z1, z2) {
        (StereoPoint::Finite(a), StereoPoint::Finite(b)) => (a, b),
        _ => {
            // fall back to the matrix readout when a star sits at the pole
            return Ok(MsrIvrParams {
                formula: readout,
                readout,
                n: None,
                max_residual: 0.0,
                formula_matches_readout: true,
            });
        }
    };
    let (al1, be1) = (a.re, a.im);
    let (al2, be2) = (b.re, b.im);
    let m1 = al1 * al1 + be1 * be1;
    let m2 = al2 * al2 + be2 * be2;
    let n_sq = 1.0 + (a + b).norm_sqr() / 2.0 + m1 * m2;
    let inv = 1.0 / n_sq;
    let sum_al = al1 + al2;
    let sum_be = be1 + be2;
    let formula = SpinParams {
        omega: [
            inv,
            0.5 * inv * (sum_al * sum_al + sum_be * sum_be),
            inv * m1 * m2,
        ],
        a: [
            -SQRT_2 * inv * (be1 * m2 + be2 * m1),
            2.0 * inv * (al1 * be2 + al2 * be1),
            -SQRT_2 * inv * sum_be,
        ],
        q: [
            -SQRT_2 * inv * (al1 * m2 + al2 * m1),
            2.0 * inv * (al1 * al2 - be1 * be2),
            SQRT_2 * inv * sum_al,
        ],
    };
    let mut max_residual = 0.0f64;
    for k in 0..3 {
        max_residual = max_residual
            .max((formula.omega[k] - readout.omega[k]).abs())
            .max((formula.a[k] - readout.a[k]).abs())
            .max((formula.q[k] - readout.q[k]).abs());
    }
    Ok(MsrIvrParams {
        formula,
        readout,
        n: Some(n_sq.sqrt()),
        max_residual,
        formula_matches_readout: max_residual <= MSR_IVR_TOL,
    })
}

/// One row of the fixed-star sweep.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SweepRow {
    pub theta2: f64,
    pub angles: [SphericalAngles; 3],
}

/// Sweep theta2 with the first star and phi2 fixed, reporting the invariant
/// vector angles of the resulting pure state.
pub fn msr_angle_sweep(
    theta1: f64,
    phi1: f64,
    phi2: f64,
    theta2_grid: &[f64],
) -> Result<Vec<SweepRow>> {
    if theta2_grid.is_empty() {
        return Err(Error::BadGrid);
    }
    let fixed = Star::new(theta1, phi1)?;
    let mut rows = Vec::with_capacity(theta2_grid.len());
    for &theta2 in theta2_grid {
        let moving = Star::new(theta2, phi2)?;
        let pair = StarPair::new(fixed, moving);
        let params = pure_from_state(&stars_to_state(&pair))?;
        let angles = invariant_vectors(&params)?.angles()?;
        rows.push(SweepRow { theta2, angles });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_pure(rng: &mut impl Rng) -> QutritState {
        QutritState::from_unnormalized([
            c(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5),
            c(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5),
            c(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5),
        ])
        .unwrap()
    }

    fn random_star(rng: &mut impl Rng) -> Star {
        // uniform on the sphere, away from the south-pole cut
        loop {
            let z: f64 = rng.gen_range(-1.0..1.0);
            let theta = z.acos();
            if (theta - PI).abs() > 1e-6 {
                return Star::new(theta, rng.gen_range(0.0..std::f64::consts::TAU)).unwrap();
            }
        }
    }

    #[test]
    fn zeta_of_poles_and_equator() {
        let north = Star::new(0.0, 0.0).unwrap();
        assert_eq!(star_to_zeta(&north), StereoPoint::Finite(c(0.0, 0.0)));
        let south = Star::new(PI, 1.0).unwrap();
        assert!(star_to_zeta(&south).is_infinite());
        let eq = Star::new(FRAC_PI_2, 0.0).unwrap();
        match star_to_zeta(&eq) {
            StereoPoint::Finite(z) => assert!((z - c(1.0, 0.0)).norm() < 1e-15),
            _ => panic!(),
        }
    }

    #[test]
    fn zeta_matches_cartesian_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(51);
        for _ in 0..200 {
            let star = random_star(&mut rng);
            let [x, y, z] = star.cartesian();
            match star_to_zeta(&star) {
                StereoPoint::Finite(zeta) => {
                    assert!((zeta.re - x / (1.0 + z)).abs() < 1e-12);
                    assert!((zeta.im - y / (1.0 + z)).abs() < 1e-12);
                }
                _ => panic!(),
            }
        }
    }

    #[test]
    fn zeta_numeric_example() {
        let star = Star::new(1.0, 1.0).unwrap();
        match star_to_zeta(&star) {
            StereoPoint::Finite(z) => {
                assert!((z.re - 0.2952).abs() < 1e-4);
                assert!((z.im - 0.4597).abs() < 1e-4);
            }
            _ => panic!(),
        }
    }

    #[test]
    fn both_north_gives_ground_state() {
        let pair = StarPair::new(Star::new(0.0, 0.0).unwrap(), Star::new(0.0, 0.0).unwrap());
        let psi = stars_to_state(&pair);
        assert!((psi.amplitudes()[0].norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn antipodal_pair_gives_middle_state() {
        let pair = StarPair::new(Star::new(0.0, 0.0).unwrap(), Star::new(PI, 0.3).unwrap());
        let psi = stars_to_state(&pair);
        assert!((psi.amplitudes()[1].norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn generic_pair_matches_direct_evaluation() {
        let pair = StarPair::new(Star::new(1.0, 1.0).unwrap(), Star::new(2.0, 4.0).unwrap());
        let psi = stars_to_state(&pair);
        let z1 = Complex64::from_polar((0.5f64).tan(), 1.0);
        let z2 = Complex64::from_polar((1.0f64).tan(), 4.0);
        let raw = [c(1.0, 0.0), (z1 + z2) / SQRT_2, z1 * z2];
        let n = raw.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for k in 0..3 {
            assert!((psi.amplitudes()[k] - raw[k] / n).norm() < 1e-14);
        }
    }

    #[test]
    fn degenerate_states_map_to_poles() {
        let ground = QutritState::new([c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        let stars = state_to_stars(&ground).unwrap();
        assert!(stars.0[0].theta.abs() < 1e-15 && stars.0[1].theta.abs() < 1e-15);

        let middle = QutritState::new([c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        let stars = state_to_stars(&middle).unwrap();
        let thetas = {
            let mut t = [stars.0[0].theta, stars.0[1].theta];
            t.sort_by(|a, b| a.partial_cmp(b).unwrap());
            t
        };
        assert!(thetas[0].abs() < 1e-15 && (thetas[1] - PI).abs() < 1e-15);

        let top = QutritState::new([c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        let stars = state_to_stars(&top).unwrap();
        assert!((stars.0[0].theta - PI).abs() < 1e-15);
        assert!((stars.0[1].theta - PI).abs() < 1e-15);
    }

    #[test]
    fn round_trip_stars_state_stars() {
        let mut rng = ChaCha8Rng::seed_from_u64(52);
        for _ in 0..1000 {
            let pair = StarPair::new(random_star(&mut rng), random_star(&mut rng));
            let back = state_to_stars(&stars_to_state(&pair)).unwrap();
            assert!(
                pair.angular_error(&back) < 1e-9,
                "angular error {}",
                pair.angular_error(&back)
            );
        }
    }

    #[test]
    fn round_trip_state_stars_state() {
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        for _ in 0..1000 {
            let psi = random_pure(&mut rng);
            let back = stars_to_state(&state_to_stars(&psi).unwrap());
            assert!(psi.overlap(&back) >= 1.0 - 1e-12);
        }
    }

    #[test]
    fn south_pole_limit_round_trip() {
        // exact-limit cases near and at the pole
        let pair = StarPair::new(Star::new(1.2, 0.7).unwrap(), Star::new(PI, 0.0).unwrap());
        let back = state_to_stars(&stars_to_state(&pair)).unwrap();
        assert!(pair.angular_error(&back) < 1e-9);
    }

    #[test]
    fn density_matrix_is_rank_one_projector() {
        let mut rng = ChaCha8Rng::seed_from_u64(54);
        for _ in 0..200 {
            let pair = StarPair::new(random_star(&mut rng), random_star(&mut rng));
            let rho = msr_density_matrix(&pair);
            let (t1, t2, _) = crate::linalg::trace_powers(&rho).unwrap();
            assert!((t1 - 1.0).abs() < 1e-12);
            assert!((t2 - 1.0).abs() < 1e-12);
            let outer = stars_to_state(&pair).density_matrix();
            assert!(rho.sub(&outer).max_abs() < 1e-14);
        }
    }

    #[test]
    fn equatorial_pair_state() {
        let pair = StarPair::new(
            Star::new(FRAC_PI_2, 0.0).unwrap(),
            Star::new(FRAC_PI_2, 0.0).unwrap(),
        );
        let psi = stars_to_state(&pair);
        // proportional to (1, sqrt(2), 1)/2
        assert!((psi.amplitudes()[0].norm() - 0.5).abs() < 1e-14);
        assert!((psi.amplitudes()[1].norm() - SQRT_2 / 2.0).abs() < 1e-14);
        assert!((psi.amplitudes()[2].norm() - 0.5).abs() < 1e-14);
    }

    #[test]
    fn ivr_params_both_north() {
        let pair = StarPair::new(Star::new(0.0, 0.0).unwrap(), Star::new(0.0, 0.0).unwrap());
        let out = msr_to_ivr_params(&pair).unwrap();
        assert_eq!(out.formula.omega, [1.0, 0.0, 0.0]);
        assert!(out.formula.a.iter().chain(out.formula.q.iter()).all(|x| *x == 0.0));
        assert_eq!(out.n, Some(1.0));
        assert!(out.formula_matches_readout);
    }

    #[test]
    fn ivr_params_equatorial_pair() {
        let pair = StarPair::new(
            Star::new(FRAC_PI_2, 0.0).unwrap(),
            Star::new(FRAC_PI_2, 0.0).unwrap(),
        );
        let out = msr_to_ivr_params(&pair).unwrap();
        assert!((out.formula.omega[0] - 0.25).abs() < 1e-14);
        assert!((out.formula.omega[1] - 0.5).abs() < 1e-14);
        assert!((out.formula.omega[2] - 0.25).abs() < 1e-14);
        assert!((out.n.unwrap() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn formula_a1_sign_characterization() {
        // the published a1 expression carries the opposite sign from the
        // layout readout whenever beta1 |z2|^2 + beta2 |z1|^2 != 0; the
        // omega, q, a2 and a3 components all agree
        let mut rng = ChaCha8Rng::seed_from_u64(55);
        let mut saw_flip = false;
        for _ in 0..200 {
            let pair = StarPair::new(random_star(&mut rng), random_star(&mut rng));
            let out = msr_to_ivr_params(&pair).unwrap();
            for k in 0..3 {
                assert!((out.formula.omega[k] - out.readout.omega[k]).abs() < 1e-12);
                assert!((out.formula.q[k] - out.readout.q[k]).abs() < 1e-12);
            }
            assert!((out.formula.a[1] - out.readout.a[1]).abs() < 1e-12);
            assert!((out.formula.a[2] - out.readout.a[2]).abs() < 1e-12);
            // a1: formula = -readout
            assert!((out.formula.a[0] + out.readout.a[0]).abs() < 1e-12);
            if out.readout.a[0].abs() > 1e-6 {
                saw_flip = true;
                assert!(!out.formula_matches_readout);
                assert!(out.max_residual > 1e-6);
            }
        }
        assert!(saw_flip);
    }

    #[test]
    fn sweep_constant_third_vector() {
        let grid: Vec<f64> = (0..=360).map(|k| PI * k as f64 / 360.0).collect();
        let rows = msr_angle_sweep(1.0, 1.0, 4.0, &grid).unwrap();
        assert_eq!(rows.len(), 361);
        for row in &rows {
            assert!((row.angles[2].psi - 0.9553166181).abs() < 1e-9);
            assert!((row.angles[2].chi - PI / 4.0).abs() < 1e-9);
        }
    }

    #[test]
    fn sweep_handles_coincident_and_pole_rows() {
        let rows = msr_angle_sweep(1.0, 1.0, 1.0, &[1.0, PI]).unwrap();
        assert_eq!(rows.len(), 2);
        for row in &rows {
            assert!(row.angles[0].psi.is_finite());
        }
        assert!(msr_angle_sweep(1.0, 1.0, 4.0, &[]).is_err());
    }

    proptest! {
        #[test]
        fn prop_star_swap_leaves_state_invariant(
            t1 in 0.0..3.0f64, p1 in 0.0..6.28f64,
            t2 in 0.0..3.0f64, p2 in 0.0..6.28f64,
        ) {
            let a = Star::new(t1, p1).unwrap();
            let b = Star::new(t2, p2).unwrap();
            let s1 = stars_to_state(&StarPair::new(a, b));
            let s2 = stars_to_state(&StarPair::new(b, a));
            prop_assert!(s1.overlap(&s2) >= 1.0 - 1e-12);
        }
    }
}
