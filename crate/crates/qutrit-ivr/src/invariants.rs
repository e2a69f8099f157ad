//! The three invariant vectors w, u, v of a qutrit density matrix.
//!
//! Their squared norms equal the first three trace invariants:
//!
//! ```text
//!   sum w_i^2 = Tr rho
//!   sum u_i^2 = Tr rho^2
//!   sum v_i^2 = 3 Tr rho^2 - 2 Tr rho^3
//! ```
//!
//! The component formula for v used here carries an omega_k weight,
//! v_k^2 = X + (3/2) omega_k (q_k^2 + a_k^2), which is what the trace
//! contract above actually requires. The unweighted variant (which breaks
//! the contract on superposition states) is kept behind
//! [`compute_v_unweighted`] for diagnostics.

use serde::Serialize;

use crate::density::SpinParams;
use crate::error::{Error, Result};
use crate::linalg::ALGEBRAIC_TOL;

/// Roundoff window: radicands in [-CLAMP_TOL, 0] are clamped to zero,
/// anything more negative is a hard error.
pub const CLAMP_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, Serialize)]
pub struct InvariantVectors {
    pub w: [f64; 3],
    pub u: [f64; 3],
    pub v: [f64; 3],
    /// The scalar cubic combination entering every v component.
    pub x: f64,
}

/// Colatitude and azimuth of a first-octant vector, both in [0, pi/2].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SphericalAngles {
    pub psi: f64,
    pub chi: f64,
}

fn clamped_sqrt(value: f64) -> Result<f64> {
    if value < -CLAMP_TOL {
        return Err(Error::NegativeRadicand { value });
    }
    Ok(value.max(0.0).sqrt())
}

/// w_i = sqrt(omega_i).
pub fn compute_w(p: &SpinParams) -> Result<[f64; 3]> {
    for (i, &w) in p.omega.iter().enumerate() {
        if w < -ALGEBRAIC_TOL {
            return Err(Error::NegativePopulation {
                index: i + 1,
                value: w,
            });
        }
    }
    Ok([
        p.omega[0].max(0.0).sqrt(),
        p.omega[1].max(0.0).sqrt(),
        p.omega[2].max(0.0).sqrt(),
    ])
}

/// u_i = sqrt(omega_i^2 + (q_i^2 + a_i^2)/2).
pub fn compute_u(p: &SpinParams) -> Result<[f64; 3]> {
    let mut u = [0.0; 3];
    for k in 0..3 {
        u[k] = (p.omega[k] * p.omega[k] + 0.5 * (p.q[k] * p.q[k] + p.a[k] * p.a[k])).sqrt();
    }
    Ok(u)
}

/// The scalar X = 1/3 - 2 w1 w2 w3 - (a2 a3 q1 + a3 a1 q2 + a1 a2 q3 - q1 q2 q3)/2.
pub fn scalar_x(p: &SpinParams) -> f64 {
    let w = p.omega;
    let cubic = p.a[1] * p.a[2] * p.q[0] + p.a[2] * p.a[0] * p.q[1] + p.a[0] * p.a[1] * p.q[2]
        - p.q[0] * p.q[1] * p.q[2];
    1.0 / 3.0 - 2.0 * w[0] * w[1] * w[2] - 0.5 * cubic
}

/// v_k = sqrt(X + (3/2) omega_k (q_k^2 + a_k^2)).
pub fn compute_v(p: &SpinParams) -> Result<[f64; 3]> {
    let x = scalar_x(p);
    let mut v = [0.0; 3];
    for k in 0..3 {
        v[k] = clamped_sqrt(x + 1.5 * p.omega[k] * (p.q[k] * p.q[k] + p.a[k] * p.a[k]))?;
    }
    Ok(v)
}

/// The unweighted variant v_k = sqrt(X + 3 (q_k^2 + a_k^2)/2). Diagnostic
/// only: its norm does not satisfy the third trace contract on states with
/// off-diagonal structure.
pub fn compute_v_unweighted(p: &SpinParams) -> Result<[f64; 3]> {
    let x = scalar_x(p);
    let mut v = [0.0; 3];
    for k in 0..3 {
        v[k] = clamped_sqrt(x + 1.5 * (p.q[k] * p.q[k] + p.a[k] * p.a[k]))?;
    }
    Ok(v)
}

pub fn invariant_vectors(p: &SpinParams) -> Result<InvariantVectors> {
    Ok(InvariantVectors {
        w: compute_w(p)?,
        u: compute_u(p)?,
        v: compute_v(p)?,
        x: scalar_x(p),
    })
}

/// Spherical angles of a nonnegative vector: psi = arccos(z / |vec|),
/// chi = atan2(y, x), with chi := 0 for exactly polar vectors.
pub fn vector_angles(vec: &[f64; 3]) -> Result<SphericalAngles> {
    let norm = (vec[0] * vec[0] + vec[1] * vec[1] + vec[2] * vec[2]).sqrt();
    if norm == 0.0 {
        return Err(Error::ZeroVector);
    }
    let psi = (vec[2] / norm).clamp(-1.0, 1.0).acos();
    let chi = if vec[0] == 0.0 && vec[1] == 0.0 {
        0.0
    } else {
        vec[1].atan2(vec[0])
    };
    Ok(SphericalAngles { psi, chi })
}

impl InvariantVectors {
    pub fn angles(&self) -> Result<[SphericalAngles; 3]> {
        Ok([
            vector_angles(&self.w)?,
            vector_angles(&self.u)?,
            vector_angles(&self.v)?,
        ])
    }
}

pub fn norm_sq(vec: &[f64; 3]) -> f64 {
    vec.iter().map(|x| x * x).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::{matrix_to_params, pure_from_state, QutritState, SpinParams};
    use crate::linalg::{trace_powers, Mat3};
    use num_complex::Complex64;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

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

    fn random_density(rng: &mut impl Rng) -> Mat3 {
        let k = rng.gen_range(1..=3);
        let mut weights: Vec<f64> = (0..k).map(|_| rng.gen::<f64>() + 1e-3).collect();
        let total: f64 = weights.iter().sum();
        for w in weights.iter_mut() {
            *w /= total;
        }
        let mut rho = Mat3::zero();
        for w in weights {
            let d = random_pure(rng).density_matrix();
            for i in 0..3 {
                for j in 0..3 {
                    rho.0[i][j] += d.0[i][j] * c(w, 0.0);
                }
            }
        }
        rho
    }

    #[test]
    fn w_basic() {
        let p = SpinParams::new([1.0, 0.0, 0.0], [0.0; 3], [0.0; 3]).unwrap();
        assert_eq!(compute_w(&p).unwrap(), [1.0, 0.0, 0.0]);
        let third = 1.0 / 3.0;
        let p = SpinParams::new([third; 3], [0.0; 3], [0.0; 3]).unwrap();
        let w = compute_w(&p).unwrap();
        let r = third.sqrt();
        for k in 0..3 {
            assert!((w[k] - r).abs() < 1e-15);
        }
    }

    #[test]
    fn w_cascade_sample() {
        // populations (1/8, 3/8, 1/2) from the cascade closed forms at
        // theta = pi/2, omega t = pi/3
        let p = SpinParams {
            omega: [0.125, 0.375, 0.5],
            a: [0.0; 3],
            q: [0.0; 3],
        };
        let w = compute_w(&p).unwrap();
        assert!((w[0] - 0.3535533906).abs() < 1e-9);
        assert!((w[1] - 0.6123724357).abs() < 1e-9);
        assert!((w[2] - 0.7071067812).abs() < 1e-9);
    }

    #[test]
    fn u_examples() {
        let p = SpinParams::new([1.0, 0.0, 0.0], [0.0; 3], [0.0; 3]).unwrap();
        assert_eq!(compute_u(&p).unwrap(), [1.0, 0.0, 0.0]);

        let third = 1.0 / 3.0;
        let p = SpinParams::new([third; 3], [0.0; 3], [0.0; 3]).unwrap();
        let u = compute_u(&p).unwrap();
        for k in 0..3 {
            assert!((u[k] - third).abs() < 1e-15);
        }
        assert!((norm_sq(&u) - third).abs() < 1e-15);

        let p = SpinParams::new([0.5, 0.5, 0.0], [0.0; 3], [0.0, 0.0, 1.0]).unwrap();
        let u = compute_u(&p).unwrap();
        assert!((u[0] - 0.5).abs() < 1e-15);
        assert!((u[1] - 0.5).abs() < 1e-15);
        assert!((u[2] - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((norm_sq(&u) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn v_constant_for_pure_states() {
        let r = 1.0 / 3f64.sqrt();
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..1000 {
            let p = pure_from_state(&random_pure(&mut rng)).unwrap();
            let v = compute_v(&p).unwrap();
            for k in 0..3 {
                assert!((v[k] - r).abs() < 1e-9, "v[{k}] = {}", v[k]);
            }
        }
        // the quoted decimal
        assert!((r - 0.5773502692).abs() < 1e-9);
    }

    #[test]
    fn v_maximally_mixed() {
        let third = 1.0 / 3.0;
        let p = SpinParams::new([third; 3], [0.0; 3], [0.0; 3]).unwrap();
        let v = compute_v(&p).unwrap();
        let expect = (7.0 / 27.0f64).sqrt();
        for k in 0..3 {
            assert!((v[k] - expect).abs() < 1e-12);
        }
        assert!((norm_sq(&v) - 7.0 / 9.0).abs() < 1e-12);
        assert!((expect - 0.5091750772).abs() < 1e-9);
    }

    #[test]
    fn unweighted_v_breaks_the_trace_contract() {
        // the documented erratum case: on (1,1,0)/sqrt(2) the unweighted
        // formula gives |v|^2 = 5/2 while the contract (and the weighted
        // form) give 1
        let p = SpinParams::new([0.5, 0.5, 0.0], [0.0; 3], [0.0, 0.0, 1.0]).unwrap();
        let bad = compute_v_unweighted(&p).unwrap();
        assert!((norm_sq(&bad) - 2.5).abs() < 1e-12);
        let good = compute_v(&p).unwrap();
        assert!((norm_sq(&good) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn trace_contract_triple_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        for _ in 0..1000 {
            let rho = random_density(&mut rng);
            let p = matrix_to_params(&rho).unwrap();
            let iv = invariant_vectors(&p).unwrap();
            let (t1, t2, t3) = trace_powers(&rho).unwrap();
            assert!((norm_sq(&iv.w) - t1).abs() < 1e-12);
            assert!((norm_sq(&iv.u) - t2).abs() < 1e-12);
            assert!((norm_sq(&iv.v) - (3.0 * t2 - 2.0 * t3)).abs() < 1e-12);
        }
    }

    #[test]
    fn purity_equivalence_via_largest_eigenvalue() {
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        for _ in 0..300 {
            let rho = random_density(&mut rng);
            let p = matrix_to_params(&rho).unwrap();
            let u2 = norm_sq(&compute_u(&p).unwrap());
            let pairs = crate::linalg::eigensystem_oracle(&rho).unwrap();
            let top = pairs[2].0;
            assert_eq!((u2 - 1.0).abs() < 1e-9, (top - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn norm_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(34);
        for _ in 0..500 {
            let p = matrix_to_params(&random_density(&mut rng)).unwrap();
            let u2 = norm_sq(&compute_u(&p).unwrap());
            let v2 = norm_sq(&compute_v(&p).unwrap());
            assert!(u2 >= 1.0 / 3.0 - 1e-12 && u2 <= 1.0 + 1e-12);
            assert!(v2 > 0.0 && v2 <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn mixing_toward_identity_never_increases_u_norm() {
        let mut rng = ChaCha8Rng::seed_from_u64(35);
        let third = 1.0 / 3.0;
        for _ in 0..100 {
            let rho = random_density(&mut rng);
            let mut prev = f64::INFINITY;
            for step in 0..=10 {
                let lam = step as f64 / 10.0;
                let mut mixed = Mat3::zero();
                for i in 0..3 {
                    for j in 0..3 {
                        let id = if i == j { third } else { 0.0 };
                        mixed.0[i][j] = rho.0[i][j] * c(1.0 - lam, 0.0) + c(lam * id, 0.0);
                    }
                }
                let u2 = norm_sq(&compute_u(&matrix_to_params(&mixed).unwrap()).unwrap());
                assert!(u2 <= prev + 1e-12);
                prev = u2;
            }
        }
    }

    #[test]
    fn angle_examples() {
        let r = 1.0 / 3f64.sqrt();
        let a = vector_angles(&[r, r, r]).unwrap();
        assert!((a.psi - 0.9553166181).abs() < 1e-9);
        assert!((a.chi - std::f64::consts::FRAC_PI_4).abs() < 1e-15);

        let a = vector_angles(&[0.0, 0.0, 1.0]).unwrap();
        assert_eq!(a, SphericalAngles { psi: 0.0, chi: 0.0 });

        let a = vector_angles(&[1.0, 0.0, 0.0]).unwrap();
        assert!((a.psi - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
        assert_eq!(a.chi, 0.0);

        assert!(vector_angles(&[0.0; 3]).is_err());
    }

    #[test]
    fn negative_radicand_is_a_hard_error() {
        // corrupted parameters: strongly negative X with nothing to offset it
        let p = SpinParams {
            omega: [0.0, 0.0, 1.0],
            a: [0.0; 3],
            q: [2.0, 0.0, 0.0],
        };
        // X = 1/3 - 0 - 0 = 1/3; make it negative via the cubic term
        let p2 = SpinParams {
            omega: p.omega,
            a: [0.0, 2.0, 2.0],
            q: [2.0, 0.0, 0.0],
        };
        // a2*a3*q1 = 8 -> X = 1/3 - 4; v1 radicand = X + 0 < 0
        assert!(matches!(
            compute_v(&p2),
            Err(Error::NegativeRadicand { .. })
        ));
        let _ = p;
    }
}
