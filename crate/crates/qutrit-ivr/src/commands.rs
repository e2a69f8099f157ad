//! The operations behind the CLI subcommands, written against `io::Write`
//! so they can be exercised directly in tests.

use std::f64::consts::PI;
use std::io::Write;

use num_complex::Complex64;
use serde::Serialize;

use crate::cascade::{
    self, audit_parameters, uniform_grid, CascadeParams, ParamSource, Trajectory, PARAM_NAMES,
};
use crate::density::{
    check_purity_constraints, params_to_matrix, pure_from_state, PurityReport, QutritState,
    SpinParams,
};
use crate::error::{Error, Result};
use crate::invariants::{
    compute_v_unweighted, invariant_vectors, norm_sq, InvariantVectors, SphericalAngles,
};
use crate::linalg::{eigensystem_oracle, trace_powers, Vec3};
use crate::majorana::{msr_to_ivr_params, state_to_stars, stars_to_state, Star, StarPair};
use crate::output::{write_csv_row, write_json, OutputFormat};

const RAD_TO_DEG: f64 = 180.0 / PI;

/// Exact column contract for trajectory files.
pub const TRAJECTORY_HEADER: &str = "t,omega_t,re_psi0,im_psi0,re_psi1,im_psi1,re_psi2,im_psi2,\
omega1,omega2,omega3,q1,q2,q3,a1,a2,a3,w1,w2,w3,u1,u2,u3,v1,v2,v3,psi1,psi2,psi3,chi1,chi2,chi3";

pub const SWEEP_HEADER: &str = "theta2,psi1,chi1,psi2,chi2,psi3,chi3";

#[derive(Debug, Clone)]
pub struct EvolveConfig {
    pub params: CascadeParams,
    pub source: ParamSource,
    /// Grid end in units of omega*t.
    pub omega_t_max: f64,
    pub samples: usize,
    pub format: OutputFormat,
    pub degrees: bool,
}

impl EvolveConfig {
    /// The published trajectory setup: omega*t over [0, 4*pi], 400 samples.
    pub fn defaults(params: CascadeParams) -> Self {
        EvolveConfig {
            params,
            source: ParamSource::PaperFormulas,
            omega_t_max: 4.0 * PI,
            samples: 400,
            format: OutputFormat::Csv,
            degrees: false,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
struct TrajectoryRecord {
    t: f64,
    omega_t: f64,
    re_psi0: f64,
    im_psi0: f64,
    re_psi1: f64,
    im_psi1: f64,
    re_psi2: f64,
    im_psi2: f64,
    omega1: f64,
    omega2: f64,
    omega3: f64,
    q1: f64,
    q2: f64,
    q3: f64,
    a1: f64,
    a2: f64,
    a3: f64,
    w1: f64,
    w2: f64,
    w3: f64,
    u1: f64,
    u2: f64,
    u3: f64,
    v1: f64,
    v2: f64,
    v3: f64,
    psi1: f64,
    psi2: f64,
    psi3: f64,
    chi1: f64,
    chi2: f64,
    chi3: f64,
}

fn angle(x: f64, degrees: bool) -> f64 {
    if degrees {
        x * RAD_TO_DEG
    } else {
        x
    }
}

fn trajectory_records(traj: &Trajectory, degrees: bool) -> Vec<TrajectoryRecord> {
    traj.samples
        .iter()
        .map(|s| {
            let amps = s.state.amplitudes();
            TrajectoryRecord {
                t: s.t,
                omega_t: s.omega_t,
                re_psi0: amps[0].re,
                im_psi0: amps[0].im,
                re_psi1: amps[1].re,
                im_psi1: amps[1].im,
                re_psi2: amps[2].re,
                im_psi2: amps[2].im,
                omega1: s.params.omega[0],
                omega2: s.params.omega[1],
                omega3: s.params.omega[2],
                q1: s.params.q[0],
                q2: s.params.q[1],
                q3: s.params.q[2],
                a1: s.params.a[0],
                a2: s.params.a[1],
                a3: s.params.a[2],
                w1: s.vectors.w[0],
                w2: s.vectors.w[1],
                w3: s.vectors.w[2],
                u1: s.vectors.u[0],
                u2: s.vectors.u[1],
                u3: s.vectors.u[2],
                v1: s.vectors.v[0],
                v2: s.vectors.v[1],
                v3: s.vectors.v[2],
                psi1: angle(s.angles[0].psi, degrees),
                psi2: angle(s.angles[1].psi, degrees),
                psi3: angle(s.angles[2].psi, degrees),
                chi1: angle(s.angles[0].chi, degrees),
                chi2: angle(s.angles[1].chi, degrees),
                chi3: angle(s.angles[2].chi, degrees),
            }
        })
        .collect()
}

fn record_row(r: &TrajectoryRecord) -> [f64; 32] {
    [
        r.t, r.omega_t, r.re_psi0, r.im_psi0, r.re_psi1, r.im_psi1, r.re_psi2, r.im_psi2,
        r.omega1, r.omega2, r.omega3, r.q1, r.q2, r.q3, r.a1, r.a2, r.a3, r.w1, r.w2, r.w3,
        r.u1, r.u2, r.u3, r.v1, r.v2, r.v3, r.psi1, r.psi2, r.psi3, r.chi1, r.chi2, r.chi3,
    ]
}

/// Emit the trajectory table for the chosen parameter source.
pub fn cmd_evolve(cfg: &EvolveConfig, out: &mut dyn Write) -> Result<()> {
    let grid = uniform_grid(&cfg.params, cfg.omega_t_max, cfg.samples)?;
    let traj = cascade::angle_trajectory(&cfg.params, &grid, cfg.source)?;
    let records = trajectory_records(&traj, cfg.degrees);
    match cfg.format {
        OutputFormat::Csv => {
            writeln!(out, "{TRAJECTORY_HEADER}")?;
            for r in &records {
                write_csv_row(out, &record_row(r))?;
            }
        }
        OutputFormat::Json => write_json(&records, out)?,
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub struct AuditConfig {
    pub params: CascadeParams,
    pub omega_t_max: f64,
    pub samples: usize,
}

impl AuditConfig {
    pub fn defaults(params: CascadeParams) -> Self {
        AuditConfig {
            params,
            omega_t_max: 4.0 * PI,
            samples: 101,
        }
    }
}

#[derive(Debug, Serialize)]
struct NamedDivergence {
    parameter: &'static str,
    max_abs_divergence: f64,
}

#[derive(Debug, Serialize)]
struct ErratumCheck {
    /// |v|^2 from the unweighted component formula on (1,1,0)/sqrt(2).
    unweighted_sum_sq: f64,
    /// |v|^2 from the weighted formula on the same state.
    weighted_sum_sq: f64,
    /// 3 Tr rho^2 - 2 Tr rho^3 from the trace oracle.
    oracle: f64,
    unweighted_residual: f64,
    weighted_residual: f64,
}

#[derive(Debug, Serialize)]
struct AuditOutput {
    model: CascadeParams,
    divergence: Vec<NamedDivergence>,
    max_overall_divergence: f64,
    notes: Vec<String>,
    samples: Vec<cascade::AuditSample>,
    third_vector_erratum: ErratumCheck,
    /// Max purity-constraint residual of the pipeline source over the grid.
    pipeline_purity_max_residual: f64,
    /// Constraint report for the maximally mixed state, as a reference for
    /// what failure looks like.
    maximally_mixed_reference: PurityReport,
}

fn erratum_check() -> Result<ErratumCheck> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let psi = QutritState::new([
        Complex64::new(s, 0.0),
        Complex64::new(s, 0.0),
        Complex64::new(0.0, 0.0),
    ])?;
    let p = pure_from_state(&psi)?;
    let unweighted = norm_sq(&compute_v_unweighted(&p)?);
    let weighted = norm_sq(&crate::invariants::compute_v(&p)?);
    let (_, t2, t3) = trace_powers(&psi.density_matrix())?;
    let oracle = 3.0 * t2 - 2.0 * t3;
    Ok(ErratumCheck {
        unweighted_sum_sq: unweighted,
        weighted_sum_sq: weighted,
        oracle,
        unweighted_residual: unweighted - oracle,
        weighted_residual: weighted - oracle,
    })
}

/// Machine-readable reconciliation report: closed-form parameters vs the
/// pipeline, the third-vector component erratum, and purity residuals.
pub fn cmd_audit(cfg: &AuditConfig, out: &mut dyn Write) -> Result<()> {
    let grid = uniform_grid(&cfg.params, cfg.omega_t_max, cfg.samples)?;
    let report = audit_parameters(&cfg.params, &grid)?;
    let divergence = PARAM_NAMES
        .iter()
        .zip(report.max_by_param.iter())
        .map(|(name, &d)| NamedDivergence {
            parameter: name,
            max_abs_divergence: d,
        })
        .collect();
    let mut purity_max = 0.0f64;
    for sample in &report.samples {
        purity_max = purity_max.max(check_purity_constraints(&sample.pipeline).max_abs_residual());
    }
    let third = 1.0 / 3.0;
    let mixed = SpinParams {
        omega: [third; 3],
        a: [0.0; 3],
        q: [0.0; 3],
    };
    let output = AuditOutput {
        model: cfg.params,
        divergence,
        max_overall_divergence: report.max_overall,
        notes: report.notes.clone(),
        samples: report.samples,
        third_vector_erratum: erratum_check()?,
        pipeline_purity_max_residual: purity_max,
        maximally_mixed_reference: check_purity_constraints(&mixed),
    };
    write_json(&output, out)
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub theta1: f64,
    pub phi1: f64,
    pub phi2: f64,
    pub samples: usize,
    pub format: OutputFormat,
    pub degrees: bool,
}

impl Default for SweepConfig {
    /// The published sweep setup: first star at (1, 1), second azimuth 4,
    /// theta2 over [0, pi].
    fn default() -> Self {
        SweepConfig {
            theta1: 1.0,
            phi1: 1.0,
            phi2: 4.0,
            samples: 361,
            format: OutputFormat::Csv,
            degrees: false,
        }
    }
}

#[derive(Debug, Serialize)]
struct SweepRecord {
    theta2: f64,
    psi1: f64,
    chi1: f64,
    psi2: f64,
    chi2: f64,
    psi3: f64,
    chi3: f64,
}

/// Emit the fixed-star sweep table.
pub fn cmd_msr_sweep(cfg: &SweepConfig, out: &mut dyn Write) -> Result<()> {
    if cfg.samples < 2 {
        return Err(Error::BadGrid);
    }
    let grid: Vec<f64> = (0..cfg.samples)
        .map(|k| PI * k as f64 / (cfg.samples - 1) as f64)
        .collect();
    let rows = crate::majorana::msr_angle_sweep(cfg.theta1, cfg.phi1, cfg.phi2, &grid)?;
    let records: Vec<SweepRecord> = rows
        .iter()
        .map(|r| SweepRecord {
            theta2: r.theta2,
            psi1: angle(r.angles[0].psi, cfg.degrees),
            chi1: angle(r.angles[0].chi, cfg.degrees),
            psi2: angle(r.angles[1].psi, cfg.degrees),
            chi2: angle(r.angles[1].chi, cfg.degrees),
            psi3: angle(r.angles[2].psi, cfg.degrees),
            chi3: angle(r.angles[2].chi, cfg.degrees),
        })
        .collect();
    match cfg.format {
        OutputFormat::Csv => {
            writeln!(out, "{SWEEP_HEADER}")?;
            for r in &records {
                write_csv_row(
                    out,
                    &[r.theta2, r.psi1, r.chi1, r.psi2, r.chi2, r.psi3, r.chi3],
                )?;
            }
        }
        OutputFormat::Json => write_json(&records, out)?,
    }
    Ok(())
}

/// Exactly one input form for `convert`.
#[derive(Debug, Clone)]
pub enum ConvertInput {
    State([Complex64; 3]),
    Stars { star1: Star, star2: Star },
    DensityParams(SpinParams),
}

#[derive(Debug, Serialize)]
struct AnglesWire {
    psi1: f64,
    psi2: f64,
    psi3: f64,
    chi1: f64,
    chi2: f64,
    chi3: f64,
}

impl AnglesWire {
    fn new(angles: &[SphericalAngles; 3], degrees: bool) -> Self {
        AnglesWire {
            psi1: angle(angles[0].psi, degrees),
            psi2: angle(angles[1].psi, degrees),
            psi3: angle(angles[2].psi, degrees),
            chi1: angle(angles[0].chi, degrees),
            chi2: angle(angles[1].chi, degrees),
            chi3: angle(angles[2].chi, degrees),
        }
    }
}

#[derive(Debug, Serialize)]
struct ConvertOutput {
    /// Amplitudes as [re, im] pairs; absent for mixed input.
    state: Option<[[f64; 2]; 3]>,
    stars: Option<StarPair>,
    #[serde(skip_serializing_if = "Option::is_none")]
    stars_note: Option<String>,
    params: SpinParams,
    vectors: InvariantVectors,
    angles: AnglesWire,
    purity: PurityReport,
    /// Majorana normalization constant, when derived from finite stars.
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<f64>,
    /// Closed-form vs readout residual of the star-to-parameter map, when
    /// stars are involved.
    #[serde(skip_serializing_if = "Option::is_none")]
    star_formula_residual: Option<f64>,
}

const PURE_TOL: f64 = 1e-9;

/// Derive every representation from whichever form was supplied.
pub fn cmd_convert(input: &ConvertInput, degrees: bool, out: &mut dyn Write) -> Result<()> {
    let output = match input {
        ConvertInput::State(amps) => {
            let psi = QutritState::from_unnormalized(*amps)?;
            let stars = state_to_stars(&psi)?;
            let params = pure_from_state(&psi)?;
            let vectors = invariant_vectors(&params)?;
            let angles = AnglesWire::new(&vectors.angles()?, degrees);
            let msr = msr_to_ivr_params(&stars)?;
            ConvertOutput {
                state: Some(psi.amplitudes().map(|c| [c.re, c.im])),
                stars: Some(stars),
                stars_note: None,
                params,
                vectors,
                angles,
                purity: check_purity_constraints(&params),
                n: msr.n,
                star_formula_residual: Some(msr.max_residual),
            }
        }
        ConvertInput::Stars { star1, star2 } => {
            let pair = StarPair::new(*star1, *star2);
            let psi = stars_to_state(&pair);
            let msr = msr_to_ivr_params(&pair)?;
            let params = msr.readout;
            let vectors = invariant_vectors(&params)?;
            let angles = AnglesWire::new(&vectors.angles()?, degrees);
            ConvertOutput {
                state: Some(psi.amplitudes().map(|c| [c.re, c.im])),
                stars: Some(pair),
                stars_note: None,
                params,
                vectors,
                angles,
                purity: check_purity_constraints(&params),
                n: msr.n,
                star_formula_residual: Some(msr.max_residual),
            }
        }
        ConvertInput::DensityParams(params) => {
            params.validate()?;
            let rho = params_to_matrix(params)?;
            let pairs = eigensystem_oracle(&rho)?;
            if pairs[0].0 < -1e-10 {
                return Err(Error::NotPositive { min_eig: pairs[0].0 });
            }
            let (_, t2, _) = trace_powers(&rho)?;
            let vectors = invariant_vectors(params)?;
            let angles = AnglesWire::new(&vectors.angles()?, degrees);
            let (state, stars, note, n, residual) = if (t2 - 1.0).abs() <= PURE_TOL {
                // rank 1: the top eigenvector is the state
                let psi = QutritState::new(pairs[2].1 .0)
                    .or_else(|_| QutritState::from_unnormalized(pairs[2].1 .0))?;
                let stars = state_to_stars(&psi)?;
                let msr = msr_to_ivr_params(&stars)?;
                (
                    Some(psi.amplitudes().map(|c| [c.re, c.im])),
                    Some(stars),
                    None,
                    msr.n,
                    Some(msr.max_residual),
                )
            } else {
                (
                    None,
                    None,
                    Some(format!(
                        "mixed state has no MSR (Tr rho^2 = {t2}); stars omitted"
                    )),
                    None,
                    None,
                )
            };
            ConvertOutput {
                state,
                stars,
                stars_note: note,
                params: *params,
                vectors,
                angles,
                purity: check_purity_constraints(params),
                n,
                star_formula_residual: residual,
            }
        }
    };
    write_json(&output, out)
}

/// Parse "re,im,re,im,re,im" into amplitudes.
pub fn parse_state_arg(s: &str) -> Result<[Complex64; 3]> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| Error::BadInput(format!("bad number '{p}' in state")))
        })
        .collect::<Result<_>>()?;
    if parts.len() != 6 {
        return Err(Error::BadInput(format!(
            "state needs 6 comma-separated numbers (re,im x3), got {}",
            parts.len()
        )));
    }
    Ok([
        Complex64::new(parts[0], parts[1]),
        Complex64::new(parts[2], parts[3]),
        Complex64::new(parts[4], parts[5]),
    ])
}

/// Parse "theta1,phi1,theta2,phi2".
pub fn parse_stars_arg(s: &str) -> Result<(Star, Star)> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| Error::BadInput(format!("bad number '{p}' in stars")))
        })
        .collect::<Result<_>>()?;
    if parts.len() != 4 {
        return Err(Error::BadInput(format!(
            "stars need 4 comma-separated numbers (theta1,phi1,theta2,phi2), got {}",
            parts.len()
        )));
    }
    Ok((Star::new(parts[0], parts[1])?, Star::new(parts[2], parts[3])?))
}

/// Used by the trajectory record test below and the acceptance suite.
pub fn ground_state() -> Vec3 {
    Vec3([
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 0.0),
    ])
}
