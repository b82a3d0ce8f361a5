use thiserror::Error;

/// Failures of the array model.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("array geometry must contain at least one antenna")]
    EmptyGeometry,
    #[error("first antenna must sit at the origin, found {0}")]
    UnpinnedOrigin(f64),
    #[error("antenna position {index} is not finite")]
    NonFinitePosition { index: usize },
    #[error("invalid spacing bounds: d_min = {d_min}, d_max = {d_max}")]
    InvalidBounds { d_min: f64, d_max: f64 },
    #[error("direction cosine {0} outside [-1, 1]")]
    InvalidDirection(f64),
    #[error("coupling matrix is singular even with diagonal loading {max_jitter}")]
    SingularCoupling { max_jitter: f64 },
    #[error("orthonormalization denominator {norm} below threshold at antenna {index}")]
    DegenerateBasis { index: usize, norm: f64 },
    #[error("antenna spacing {0} too small for the two-antenna closed form")]
    DegenerateSpacing(f64),
    #[error("quadrature needs at least one node")]
    EmptyQuadrature,
}

/// Failures of the position optimizers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum OptError {
    #[error("invalid grid: d_g = {d_g}, d_min = {d_min}, d_max = {d_max}")]
    InvalidGrid { d_g: f64, d_min: f64, d_max: f64 },
    #[error("invalid optimizer configuration: {0}")]
    InvalidConfig(String),
    #[error("no feasible grid point for antenna {antenna}")]
    GridExhausted { antenna: usize },
    #[error("exhaustive search needs about {estimate} evaluations, budget is {budget}")]
    BudgetExceeded { estimate: u128, budget: u128 },
    #[error("initial geometry violates the spacing constraints")]
    InfeasibleStart,
    #[error(transparent)]
    Model(#[from] ModelError),
}

impl OptError {
    /// Short stable name used in CSV output and on stderr.
    pub fn name(&self) -> &'static str {
        match self {
            OptError::InvalidGrid { .. } => "InvalidGrid",
            OptError::InvalidConfig(_) => "InvalidConfig",
            OptError::GridExhausted { .. } => "GridExhausted",
            OptError::BudgetExceeded { .. } => "BudgetExceeded",
            OptError::InfeasibleStart => "InfeasibleStart",
            OptError::Model(ModelError::SingularCoupling { .. }) => "SingularCoupling",
            OptError::Model(_) => "ModelError",
        }
    }
}

/// Failures of the sweep harness.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SweepError {
    #[error("invalid sweep: {0}")]
    InvalidSpec(String),
    #[error("records lack aperture d_max = {0} wavelengths")]
    MissingAperture(f64),
    #[error("fig2 spacing {0} outside [0.5, 2] wavelengths")]
    SpacingOutOfRange(f64),
    #[error(transparent)]
    Model(#[from] ModelError),
}
