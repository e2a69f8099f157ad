//! Nine-parameter spin-1 layout of a qutrit density matrix.
//!
//! The layout is
//!
//! ```text
//!         [ omega1            (q3 + i a3)/2    (q2 - i a2)/2 ]
//!   rho = [ (q3 - i a3)/2     omega2          -(q1 + i a1)/2 ]
//!         [ (q2 + i a2)/2    -(q1 - i a1)/2    omega3        ]
//! ```
//!
//! Note the minus sign on the (2,3) block. The parameters are defined by this
//! layout; the spin-operator traces Tr(rho S_i^2) etc. are exposed separately
//! as a diagnostic because they follow a different normalization under the
//! standard spin-1 matrices (their populations sum to 2, not 1).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{hermitian_deviation, Mat3, SpinOperators, Vec3, ALGEBRAIC_TOL};

/// The nine real parameters of the spin-1 density layout.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinParams {
    /// Populations omega1..3, summing to 1.
    pub omega: [f64; 3],
    /// Spin expectation values a1..3.
    pub a: [f64; 3],
    /// Anticommutator expectation values q1..3.
    pub q: [f64; 3],
}

/// Flat field names for serialization: omega1..3, a1..3, q1..3.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SpinParamsWire {
    pub omega1: f64,
    pub omega2: f64,
    pub omega3: f64,
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
    pub q1: f64,
    pub q2: f64,
    pub q3: f64,
}

impl From<SpinParams> for SpinParamsWire {
    fn from(p: SpinParams) -> Self {
        SpinParamsWire {
            omega1: p.omega[0],
            omega2: p.omega[1],
            omega3: p.omega[2],
            a1: p.a[0],
            a2: p.a[1],
            a3: p.a[2],
            q1: p.q[0],
            q2: p.q[1],
            q3: p.q[2],
        }
    }
}

impl From<SpinParamsWire> for SpinParams {
    fn from(w: SpinParamsWire) -> Self {
        SpinParams {
            omega: [w.omega1, w.omega2, w.omega3],
            a: [w.a1, w.a2, w.a3],
            q: [w.q1, w.q2, w.q3],
        }
    }
}

impl Serialize for SpinParams {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SpinParamsWire::from(*self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for SpinParams {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        SpinParamsWire::deserialize(d).map(SpinParams::from)
    }
}

impl SpinParams {
    pub fn new(omega: [f64; 3], a: [f64; 3], q: [f64; 3]) -> Result<Self> {
        let p = SpinParams { omega, a, q };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let sum: f64 = self.omega.iter().sum();
        if (sum - 1.0).abs() > ALGEBRAIC_TOL {
            return Err(Error::PopulationSum { sum });
        }
        for (i, &w) in self.omega.iter().enumerate() {
            if w < -ALGEBRAIC_TOL || w > 1.0 + ALGEBRAIC_TOL {
                return Err(Error::NegativePopulation {
                    index: i + 1,
                    value: w,
                });
            }
        }
        Ok(())
    }
}

/// Unit-norm qutrit state vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QutritState(pub Vec3);

impl QutritState {
    pub fn new(amplitudes: [Complex64; 3]) -> Result<Self> {
        let v = Vec3(amplitudes);
        let norm = v.norm();
        if (norm - 1.0).abs() > ALGEBRAIC_TOL {
            return Err(Error::NotNormalized { norm });
        }
        Ok(QutritState(v))
    }

    pub fn from_unnormalized(amplitudes: [Complex64; 3]) -> Result<Self> {
        Ok(QutritState(Vec3(amplitudes).normalized()?))
    }

    pub fn amplitudes(&self) -> &[Complex64; 3] {
        &self.0 .0
    }

    pub fn density_matrix(&self) -> Mat3 {
        self.0.outer(&self.0)
    }

    /// |<self|other>|, phase-insensitive overlap.
    pub fn overlap(&self, other: &QutritState) -> f64 {
        self.0.dot(&other.0).norm()
    }
}

/// Build the density matrix from the parameter layout.
pub fn params_to_matrix(p: &SpinParams) -> Result<Mat3> {
    p.validate()?;
    let half = 0.5;
    let c = |re: f64, im: f64| Complex64::new(re, im);
    Ok(Mat3([
        [
            c(p.omega[0], 0.0),
            c(half * p.q[2], half * p.a[2]),
            c(half * p.q[1], -half * p.a[1]),
        ],
        [
            c(half * p.q[2], -half * p.a[2]),
            c(p.omega[1], 0.0),
            c(-half * p.q[0], -half * p.a[0]),
        ],
        [
            c(half * p.q[1], half * p.a[1]),
            c(-half * p.q[0], half * p.a[0]),
            c(p.omega[2], 0.0),
        ],
    ]))
}

/// Read the parameters back off the matrix layout. Exact inverse of
/// [`params_to_matrix`].
pub fn matrix_to_params(rho: &Mat3) -> Result<SpinParams> {
    let dev = hermitian_deviation(rho);
    if dev > ALGEBRAIC_TOL {
        return Err(Error::NotHermitian { deviation: dev });
    }
    let trace = rho.trace().re;
    if (trace - 1.0).abs() > ALGEBRAIC_TOL {
        return Err(Error::BadTrace { trace });
    }
    let omega = [rho.0[0][0].re, rho.0[1][1].re, rho.0[2][2].re];
    let q3 = 2.0 * rho.0[0][1].re;
    let a3 = 2.0 * rho.0[0][1].im;
    let q2 = 2.0 * rho.0[0][2].re;
    let a2 = -2.0 * rho.0[0][2].im;
    let q1 = -2.0 * rho.0[1][2].re;
    let a1 = -2.0 * rho.0[1][2].im;
    Ok(SpinParams {
        omega,
        a: [a1, a2, a3],
        q: [q1, q2, q3],
    })
}

/// Parameters of the rank-1 projector |psi><psi|.
pub fn pure_from_state(psi: &QutritState) -> Result<SpinParams> {
    matrix_to_params(&psi.density_matrix())
}

/// Spin-operator traces (Tr(rho S_i^2), Tr(rho S_i), anticommutators),
/// exposed for diagnosis only. Under the standard spin-1 matrices these do
/// not reproduce the layout parameters: the squared-operator traces sum to
/// 2 Tr(rho), not Tr(rho).
pub fn spin_operator_traces(rho: &Mat3) -> Result<SpinParams> {
    let dev = hermitian_deviation(rho);
    if dev > ALGEBRAIC_TOL {
        return Err(Error::NotHermitian { deviation: dev });
    }
    let ops = SpinOperators::all();
    let mut omega = [0.0; 3];
    let mut a = [0.0; 3];
    for i in 0..3 {
        omega[i] = rho.mul(&ops[i].mul(&ops[i])).trace().re;
        a[i] = rho.mul(&ops[i]).trace().re;
    }
    let anti = |x: &Mat3, y: &Mat3| {
        let xy = x.mul(y);
        let yx = y.mul(x);
        let mut m = Mat3::zero();
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] = xy.0[i][j] + yx.0[i][j];
            }
        }
        m
    };
    let q = [
        rho.mul(&anti(&ops[1], &ops[2])).trace().re,
        rho.mul(&anti(&ops[2], &ops[0])).trace().re,
        rho.mul(&anti(&ops[0], &ops[1])).trace().re,
    ];
    Ok(SpinParams { omega, a, q })
}

pub const PURITY_TOL: f64 = 1e-9;

/// One pure-state constraint: lhs, rhs, and their signed residual.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ConstraintCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    pub pass: bool,
}

impl ConstraintCheck {
    fn new(lhs: f64, rhs: f64) -> Self {
        let residual = lhs - rhs;
        ConstraintCheck {
            lhs,
            rhs,
            residual,
            pass: residual.abs() <= PURITY_TOL,
        }
    }
}

/// Report for the four pure-state relations:
/// q_k^2 + a_k^2 = 4 omega_i omega_j (three cyclic relations) and the cubic
/// relation a2 a3 q1 + a3 a1 q2 + a1 a2 q3 - q1 q2 q3 = 8 omega1 omega2 omega3.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PurityReport {
    pub quadratic: [ConstraintCheck; 3],
    pub cubic: ConstraintCheck,
}

impl PurityReport {
    pub fn all_pass(&self) -> bool {
        self.quadratic.iter().all(|c| c.pass) && self.cubic.pass
    }

    pub fn max_abs_residual(&self) -> f64 {
        self.quadratic
            .iter()
            .map(|c| c.residual.abs())
            .fold(self.cubic.residual.abs(), f64::max)
    }
}

pub fn check_purity_constraints(p: &SpinParams) -> PurityReport {
    let w = p.omega;
    let quad = |k: usize, i: usize, j: usize| {
        ConstraintCheck::new(p.q[k] * p.q[k] + p.a[k] * p.a[k], 4.0 * w[i] * w[j])
    };
    let cubic_lhs = p.a[1] * p.a[2] * p.q[0] + p.a[2] * p.a[0] * p.q[1] + p.a[0] * p.a[1] * p.q[2]
        - p.q[0] * p.q[1] * p.q[2];
    PurityReport {
        quadratic: [quad(0, 1, 2), quad(1, 2, 0), quad(2, 0, 1)],
        cubic: ConstraintCheck::new(cubic_lhs, 8.0 * w[0] * w[1] * w[2]),
    }
}
