use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max entrywise deviation {deviation:e})")]
    NotHermitian { deviation: f64 },
    #[error("matrix trace {trace} differs from 1 beyond tolerance")]
    BadTrace { trace: f64 },
    #[error("state norm {norm} differs from 1 beyond tolerance")]
    NotNormalized { norm: f64 },
    #[error("zero vector has no direction")]
    ZeroVector,
    #[error("integration step must be positive, got {dt}")]
    BadStep { dt: f64 },
    #[error("population sum {sum} differs from 1 beyond tolerance")]
    PopulationSum { sum: f64 },
    #[error("population omega{index} = {value} is negative beyond tolerance")]
    NegativePopulation { index: usize, value: f64 },
    #[error("invariant-vector radicand {value:e} is negative beyond the roundoff window")]
    NegativeRadicand { value: f64 },
    #[error("time grid must be nonempty and strictly increasing")]
    BadGrid,
    #[error("level energies or couplings violate the cascade reduction: {0}")]
    CascadeReduction(String),
    #[error("density matrix is not positive semidefinite (min eigenvalue {min_eig:e})")]
    NotPositive { min_eig: f64 },
    #[error("mixed state has no Majorana star representation (Tr rho^2 = {purity})")]
    MixedStateStars { purity: f64 },
    #[error("invalid input: {0}")]
    BadInput(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
