//! Pekeris replacement of the centrifugal barrier and the dimensionless
//! parameters of the resulting radial equation.
//!
//! With `x = (r - R0) / R0` and `alpha = R0 / a`, the centrifugal term
//! `delta / (1 + x)^2` is replaced by
//!
//! ```text
//! delta * (C0 + C1 f + C2 f^2),   f = 1 / (1 + exp(alpha x))
//! ```
//!
//! with the coefficients chosen so both sides agree through `x^2` at `x = 0`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::PhysicalParams;

/// Expansion coefficients `(C0, C1, C2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PekerisCoefficients {
    pub c0: f64,
    pub c1: f64,
    pub c2: f64,
}

impl PekerisCoefficients {
    /// `C0 + C1 f + C2 f^2`.
    pub fn shape(&self, fermi: f64) -> f64 {
        self.c0 + fermi * (self.c1 + fermi * self.c2)
    }
}

/// `C0 = 1 - 4/α + 12/α²`, `C1 = 8/α - 48/α²`, `C2 = 48/α²`.
pub fn pekeris_coefficients(alpha: f64) -> Result<PekerisCoefficients> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::Domain(format!(
            "Pekeris coefficients need alpha > 0, got {alpha}"
        )));
    }
    let inv = 1.0 / alpha;
    let inv2 = inv * inv;
    Ok(PekerisCoefficients {
        c0: 1.0 - 4.0 * inv + 12.0 * inv2,
        c1: 8.0 * inv - 48.0 * inv2,
        c2: 48.0 * inv2,
    })
}

/// Dimensionless description of one partial wave.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DimensionlessSet {
    pub l: u32,
    /// `R0 / a`.
    pub alpha: f64,
    /// Centrifugal scale `ħ² l(l+1) / (2μ R0²)` (MeV).
    pub delta: f64,
    pub c0: f64,
    pub c1: f64,
    pub c2: f64,
    /// `2μ (V0 - δ C1) a² / ħ²`. Negative when `V0 < δ C1`.
    pub beta2: f64,
    /// `2μ δ C2 a² / ħ² = 48 l(l+1) a⁴ / R0⁴`.
    pub gamma2: f64,
    /// `ħ² / (2μ a²)` (MeV), converts the dimensionless energies back.
    pub energy_unit: f64,
}

impl DimensionlessSet {
    pub fn coefficients(&self) -> PekerisCoefficients {
        PekerisCoefficients {
            c0: self.c0,
            c1: self.c1,
            c2: self.c2,
        }
    }

    /// Asymptote of the Pekeris effective potential as `r -> +inf` (MeV).
    pub fn asymptote(&self) -> f64 {
        self.delta * self.c0
    }

    /// Re-derives `ε` from an energy: `ε² = -(E - δ C0) / (ħ²/2μa²)`.
    /// Returns `None` above the asymptote.
    pub fn epsilon_from_energy(&self, energy: f64) -> Option<f64> {
        let eps2 = -(energy - self.asymptote()) / self.energy_unit;
        (eps2 > 0.0).then(|| eps2.sqrt())
    }
}

pub fn dimensionless(params: &PhysicalParams, l: u32) -> Result<DimensionlessSet> {
    params.validate()?;
    let alpha = params.alpha();
    let PekerisCoefficients { c0, c1, c2 } = pekeris_coefficients(alpha)?;
    let ll1 = f64::from(l) * (f64::from(l) + 1.0);
    let delta = params.hbar2_over_2mu() * ll1 / (params.r0 * params.r0);
    let energy_unit = params.surface_energy_unit();
    Ok(DimensionlessSet {
        l,
        alpha,
        delta,
        c0,
        c1,
        c2,
        beta2: (params.v0 - delta * c1) / energy_unit,
        gamma2: delta * c2 / energy_unit,
        energy_unit,
    })
}
