use std::fmt;

use serde::Serialize;

use crate::spectrum::QuantumNumbers;

pub type Result<T> = std::result::Result<T, Error>;

/// Why a given `(n, l)` level is not a bound state of the Pekeris potential.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NoBoundState {
    /// `l = 0`: the shifted quantum number is `-n`, never positive.
    ZeroAngularMomentum,
    /// `n` is at or above `(sqrt(1 + 4 gamma^2) - 1) / 2`, so `n' <= 0`.
    NOutOfRange { n: u32, n_max_exclusive: f64 },
    /// `V0 <= V0min`.
    BelowWindow { v0: f64, v0_min: f64 },
    /// `V0 >= V0max`.
    AboveWindow { v0: f64, v0_max: f64 },
}

impl fmt::Display for NoBoundState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            NoBoundState::ZeroAngularMomentum => {
                write!(f, "n′ ≤ 0: no bound state for l=0")
            }
            NoBoundState::NOutOfRange { n, n_max_exclusive } => write!(
                f,
                "n exceeds allowed range (n′ ≤ 0: n = {n}, need n < {n_max_exclusive:.6})"
            ),
            NoBoundState::BelowWindow { v0, v0_min } => {
                write!(f, "V0 < V0min ({v0} <= {v0_min:.6} MeV)")
            }
            NoBoundState::AboveWindow { v0, v0_max } => {
                write!(f, "V0 > V0max ({v0} >= {v0_max:.6} MeV)")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("no bound state for {qn}: {reason}")]
    NoBoundState { qn: QuantumNumbers, reason: NoBoundState },

    #[error("wavefunction tail not decayed at grid edge: |u(r_max)| / max|u| = {ratio:.3e}")]
    TruncatedTail { ratio: f64 },

    #[error("wavefunction has zero norm")]
    ZeroNorm,

    #[error("centrifugal term is singular at r = {r}")]
    Singular { r: f64 },

    #[error("energy {energy} MeV is not below the potential at the grid edge ({edge} MeV)")]
    UnboundEnergy { energy: f64, edge: f64 },

    #[error("integration overflowed after rescaling at r = {r}")]
    Overflow { r: f64 },

    #[error("no eigenvalue with {nodes} nodes below {ceiling} MeV")]
    NoEigenvalue { nodes: u32, ceiling: f64 },

    #[error("bisection did not converge in {iterations} steps (bracket width {width:.3e} MeV)")]
    NotConverged { iterations: usize, width: f64 },
}

impl Error {
    /// True for the "no bound state" family, which the CLI maps to exit code 2.
    pub fn is_no_bound_state(&self) -> bool {
        matches!(self, Error::NoBoundState { .. })
    }
}
