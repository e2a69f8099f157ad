//! Invariant-vector and Majorana-star representations of qutrit states.
//!
//! A qutrit density matrix is parametrized by nine real numbers in a spin-1
//! layout ([`density`]). Three nonnegative 3-vectors w, u, v built from
//! those parameters carry the first three trace invariants as their squared
//! norms ([`invariants`]), so an 8-dimensional state space becomes three
//! points on (or inside) a sphere. The crate also implements:
//!
//! - the exactly solvable cascade model of a driven three-level ladder,
//!   with closed-form eigensystem and time evolution cross-checked against
//!   an in-repo eigensolver and RK4 integrator ([`cascade`], [`linalg`]);
//! - the Majorana star representation of pure states (two points on the
//!   unit sphere via stereographic roots of a quadratic) and its map onto
//!   the invariant-vector parameters ([`majorana`]);
//! - deterministic CSV/JSON emission of trajectories, audits, sweeps and
//!   conversions ([`commands`], [`output`]).
//!
//! See the `examples/` directory for one runnable example per capability,
//! and the `qutrit-ivr` binary for the command-line surface.

pub mod cascade;
pub mod commands;
pub mod density;
pub mod error;
pub mod invariants;
pub mod linalg;
pub mod majorana;
pub mod output;

pub use cascade::{CascadeParams, ParamSource, Trajectory};
pub use density::{QutritState, SpinParams};
pub use error::{Error, Result};
pub use invariants::{InvariantVectors, SphericalAngles};
pub use linalg::{Mat3, Vec3};
pub use majorana::{Star, StarPair};
