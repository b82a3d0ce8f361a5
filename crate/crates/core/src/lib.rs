//! Directivity of linear arrays of isotropic elements with mutual coupling,
//! and optimization of antenna positions for a given wave direction.
//!
//! Lengths are in wavelengths throughout. The numeric core is generic over
//! [`Real`]; the aliases below fix the scalar for common use.

pub mod closed_forms;
pub mod coupling;
pub mod direction;
pub mod double;
pub mod error;
pub mod geometry;
pub mod legendre;
pub mod model;
pub mod optimizer;
pub mod quadrature;
pub mod scalar;
pub mod sweep;

pub use closed_forms::{
    adjacent_only_broadside, first_order_directivity, legendre_directivity,
    two_antenna_broadside, two_antenna_directivity,
};
pub use coupling::{sinc, CouplingMatrix};
pub use direction::DirectionCosine;
pub use double::DoubleDouble;
pub use error::{ModelError, OptError, SweepError};
pub use geometry::{is_feasible, ArrayGeometry};
pub use legendre::LegendreTable;
pub use model::{
    directivity, effective_steering, evaluate, gram_schmidt_patterns, optimal_excitation,
    steering_vector, EffectiveSteering, Evaluation, ExcitationVector,
};
pub use optimizer::{
    build_grid, directivity_gradient, exhaustive_search, gradient_descent, greedy_search, gs_gd,
    ulah_positions, DescentParams, GridSpec, OptResult, OptimizerConfig, Termination,
};
pub use quadrature::GaussLegendre;
pub use scalar::Real;
pub use sweep::{run_sweep, Algorithm, SweepRecord, SweepSpec};

pub type Geometry = ArrayGeometry<f64>;
pub type Geometry32 = ArrayGeometry<f32>;
pub type GeometryDd = ArrayGeometry<DoubleDouble>;
pub type Direction = DirectionCosine<f64>;
pub type Direction32 = DirectionCosine<f32>;
pub type DirectionDd = DirectionCosine<DoubleDouble>;
pub type Coupling = CouplingMatrix<f64>;
pub type CouplingDd = CouplingMatrix<DoubleDouble>;
pub type Config = OptimizerConfig<f64>;
pub type Outcome = OptResult<f64>;
