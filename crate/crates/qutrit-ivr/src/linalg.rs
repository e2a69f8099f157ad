//! Fixed-size complex linear algebra for 3-level systems.
//!
//! Everything here is written out at size 3: a dense Hermitian eigensolver
//! (cyclic Jacobi), trace powers, and a fixed-step RK4 integrator for the
//! Schrödinger equation. The eigensolver and the integrator serve as
//! independent oracles for the closed-form results elsewhere in the crate.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub const ALGEBRAIC_TOL: f64 = 1e-12;

/// Three complex amplitudes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vec3(pub [Complex64; 3]);

/// Dense complex 3x3 matrix, row major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat3(pub [[Complex64; 3]; 3]);

impl Vec3 {
    pub fn zero() -> Self {
        Vec3([Complex64::new(0.0, 0.0); 3])
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn normalized(&self) -> Result<Vec3> {
        let n = self.norm();
        if n == 0.0 {
            return Err(Error::ZeroVector);
        }
        Ok(self.scale(Complex64::new(1.0 / n, 0.0)))
    }

    pub fn scale(&self, s: Complex64) -> Vec3 {
        Vec3([self.0[0] * s, self.0[1] * s, self.0[2] * s])
    }

    pub fn add(&self, other: &Vec3) -> Vec3 {
        Vec3([
            self.0[0] + other.0[0],
            self.0[1] + other.0[1],
            self.0[2] + other.0[2],
        ])
    }

    /// Hermitian inner product, conjugate-linear in `self`.
    pub fn dot(&self, other: &Vec3) -> Complex64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Outer product |self><other|.
    pub fn outer(&self, other: &Vec3) -> Mat3 {
        let mut m = Mat3::zero();
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] = self.0[i] * other.0[j].conj();
            }
        }
        m
    }
}

impl Mat3 {
    pub fn zero() -> Self {
        Mat3([[Complex64::new(0.0, 0.0); 3]; 3])
    }

    pub fn identity() -> Self {
        let mut m = Mat3::zero();
        for i in 0..3 {
            m.0[i][i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn diag(d: [f64; 3]) -> Self {
        let mut m = Mat3::zero();
        for i in 0..3 {
            m.0[i][i] = Complex64::new(d[i], 0.0);
        }
        m
    }

    pub fn adjoint(&self) -> Mat3 {
        let mut m = Mat3::zero();
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] = self.0[j][i].conj();
            }
        }
        m
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1] + self.0[2][2]
    }

    pub fn mul(&self, other: &Mat3) -> Mat3 {
        let mut m = Mat3::zero();
        for i in 0..3 {
            for j in 0..3 {
                let mut s = Complex64::new(0.0, 0.0);
                for k in 0..3 {
                    s += self.0[i][k] * other.0[k][j];
                }
                m.0[i][j] = s;
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &Vec3) -> Vec3 {
        let mut out = Vec3::zero();
        for i in 0..3 {
            let mut s = Complex64::new(0.0, 0.0);
            for k in 0..3 {
                s += self.0[i][k] * v.0[k];
            }
            out.0[i] = s;
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> Mat3 {
        let mut m = *self;
        for row in m.0.iter_mut() {
            for e in row.iter_mut() {
                *e *= s;
            }
        }
        m
    }

    pub fn sub(&self, other: &Mat3) -> Mat3 {
        let mut m = *self;
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] -= other.0[i][j];
            }
        }
        m
    }

    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|c| c.norm())
            .fold(0.0, f64::max)
    }

    /// Frobenius-compatible operator norm bound, used only for step-size heuristics.
    pub fn frobenius_norm(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|c| c.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

/// The spin-1 matrices S1, S2, S3 in the level basis, with S3 = diag(1, 0, -1).
pub struct SpinOperators;

impl SpinOperators {
    pub fn s1() -> Mat3 {
        let r = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let z = Complex64::new(0.0, 0.0);
        Mat3([[z, r, z], [r, z, r], [z, r, z]])
    }

    pub fn s2() -> Mat3 {
        let p = Complex64::new(0.0, std::f64::consts::FRAC_1_SQRT_2);
        let z = Complex64::new(0.0, 0.0);
        Mat3([[z, -p, z], [p, z, -p], [z, p, z]])
    }

    pub fn s3() -> Mat3 {
        Mat3::diag([1.0, 0.0, -1.0])
    }

    pub fn all() -> [Mat3; 3] {
        [Self::s1(), Self::s2(), Self::s3()]
    }
}

/// Max entrywise |M - M†| at or below `tol`.
pub fn hermitian_check(m: &Mat3, tol: f64) -> bool {
    assert!(tol > 0.0, "tolerance must be positive");
    hermitian_deviation(m) <= tol
}

pub fn hermitian_deviation(m: &Mat3) -> f64 {
    m.sub(&m.adjoint()).max_abs()
}

fn require_hermitian(m: &Mat3) -> Result<()> {
    let dev = hermitian_deviation(m);
    if dev > ALGEBRAIC_TOL {
        return Err(Error::NotHermitian { deviation: dev });
    }
    Ok(())
}

/// (Tr rho, Tr rho^2, Tr rho^3) for a Hermitian matrix.
pub fn trace_powers(rho: &Mat3) -> Result<(f64, f64, f64)> {
    require_hermitian(rho)?;
    let r2 = rho.mul(rho);
    let r3 = r2.mul(rho);
    Ok((rho.trace().re, r2.trace().re, r3.trace().re))
}

/// Eigendecomposition of a Hermitian 3x3 matrix by cyclic Jacobi rotations.
///
/// Eigenvalues come back sorted ascending with orthonormal eigenvectors;
/// residuals |H v - lambda v| are below 1e-10 for well-scaled input.
pub fn eigensystem_oracle(h: &Mat3) -> Result<[(f64, Vec3); 3]> {
    require_hermitian(h)?;
    let mut a = *h;
    // symmetrize roundoff so the iteration sees an exactly Hermitian matrix
    for i in 0..3 {
        a.0[i][i] = Complex64::new(a.0[i][i].re, 0.0);
        for j in (i + 1)..3 {
            let avg = (a.0[i][j] + a.0[j][i].conj()) * 0.5;
            a.0[i][j] = avg;
            a.0[j][i] = avg.conj();
        }
    }
    let mut vecs = Mat3::identity();
    let scale = a.max_abs().max(1.0);
    for _sweep in 0..64 {
        let off = (0..3)
            .flat_map(|i| ((i + 1)..3).map(move |j| (i, j)))
            .map(|(i, j)| a.0[i][j].norm())
            .fold(0.0, f64::max);
        if off <= 1e-15 * scale {
            break;
        }
        for p in 0..3 {
            for q in (p + 1)..3 {
                jacobi_rotate(&mut a, &mut vecs, p, q);
            }
        }
    }
    let mut pairs: Vec<(f64, Vec3)> = (0..3)
        .map(|k| {
            (
                a.0[k][k].re,
                Vec3([vecs.0[0][k], vecs.0[1][k], vecs.0[2][k]]),
            )
        })
        .collect();
    pairs.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
    Ok([pairs[0], pairs[1], pairs[2]])
}

/// One complex Jacobi rotation zeroing the (p, q) entry; columns of `vecs`
/// accumulate the eigenvectors.
fn jacobi_rotate(a: &mut Mat3, vecs: &mut Mat3, p: usize, q: usize) {
    let apq = a.0[p][q];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let phase = apq / mag;
    let app = a.0[p][p].re;
    let aqq = a.0[q][q].re;
    let tau = (aqq - app) / (2.0 * mag);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    // G has G[p][p] = c, G[q][q] = c, G[p][q] = s*phase, G[q][p] = -s*conj(phase);
    // update A <- G† A G and vecs <- vecs G.
    let cp = Complex64::new(c, 0.0);
    let sp = phase * s;
    for k in 0..3 {
        let akp = a.0[k][p];
        let akq = a.0[k][q];
        a.0[k][p] = akp * cp - akq * sp.conj();
        a.0[k][q] = akp * sp + akq * cp;
    }
    for k in 0..3 {
        let apk = a.0[p][k];
        let aqk = a.0[q][k];
        a.0[p][k] = apk * cp - aqk * sp;
        a.0[q][k] = apk * sp.conj() + aqk * cp;
    }
    a.0[p][q] = Complex64::new(0.0, 0.0);
    a.0[q][p] = Complex64::new(0.0, 0.0);
    a.0[p][p] = Complex64::new(a.0[p][p].re, 0.0);
    a.0[q][q] = Complex64::new(a.0[q][q].re, 0.0);
    for k in 0..3 {
        let vkp = vecs.0[k][p];
        let vkq = vecs.0[k][q];
        vecs.0[k][p] = vkp * cp - vkq * sp.conj();
        vecs.0[k][q] = vkp * sp + vkq * cp;
    }
}

/// Fixed-step RK4 integration of i d(psi)/dt = H psi from t = 0 to `t_end`.
///
/// The result is deliberately not renormalized; norm drift is a diagnostic
/// for the step size.
pub fn integrate_schrodinger(h: &Mat3, psi0: &Vec3, t_end: f64, dt: f64) -> Result<Vec3> {
    if dt <= 0.0 {
        return Err(Error::BadStep { dt });
    }
    require_hermitian(h)?;
    let norm = psi0.norm();
    if (norm - 1.0).abs() > ALGEBRAIC_TOL {
        return Err(Error::NotNormalized { norm });
    }
    if t_end == 0.0 {
        return Ok(*psi0);
    }
    let n_steps = (t_end / dt).ceil().max(1.0) as usize;
    let step = t_end / n_steps as f64;
    let minus_i = Complex64::new(0.0, -1.0);
    let deriv = |psi: &Vec3| h.mul_vec(psi).scale(minus_i);
    let mut psi = *psi0;
    let half = Complex64::new(step / 2.0, 0.0);
    let full = Complex64::new(step, 0.0);
    let sixth = Complex64::new(step / 6.0, 0.0);
    let two = Complex64::new(2.0, 0.0);
    for _ in 0..n_steps {
        let k1 = deriv(&psi);
        let k2 = deriv(&psi.add(&k1.scale(half)));
        let k3 = deriv(&psi.add(&k2.scale(half)));
        let k4 = deriv(&psi.add(&k3.scale(full)));
        let incr = k1.add(&k2.scale(two)).add(&k3.scale(two)).add(&k4);
        psi = psi.add(&incr.scale(sixth));
    }
    Ok(psi)
}
