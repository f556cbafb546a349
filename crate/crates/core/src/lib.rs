//! Bound states of the Woods-Saxon potential for arbitrary `l`, from the
//! closed-form Nikiforov-Uvarov solution with the Pekeris approximation of the
//! centrifugal barrier.
//!
//! * [`spectrum`]: bound-state windows and the energy formula.
//! * [`wavefunction`]: Jacobi-polynomial eigenfunctions and their normalisation.
//! * [`oracle`]: a Numerov shooting solver that checks the closed forms.
//!
//! Units are MeV, fm and u throughout.

// `!(x > 0.0)` is deliberate: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod jacobi;
pub mod oracle;
pub mod params;
pub mod pekeris;
pub mod presets;
pub mod quadrature;
pub mod spectrum;
pub mod wavefunction;

pub use error::{Error, NoBoundState, Result};
pub use jacobi::jacobi;
pub use oracle::{
    compare, effective_potential, find_eigenvalue, numerov_integrate, NumerovSolution, OracleReport, PotentialKind,
    ShootingConfig,
};
pub use params::PhysicalParams;
pub use pekeris::{dimensionless, pekeris_coefficients, DimensionlessSet, PekerisCoefficients};
pub use spectrum::{
    allowed_n_range, bound_state_exists, energy, epsilon_bound, n_prime, spectrum, v0_window, BoundCheck, BoundWindow,
    EnergyLevel, ExcludedLevel, QuantumNumbers, Spectrum,
};
pub use wavefunction::{
    normalize, normalized_wavefunction, ode_residual_z, u_unnormalized, wave_exponents, z_of_r, AnalyticState,
    RadialGrid, WaveExponents, WavefunctionTable,
};
