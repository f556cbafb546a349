//! Physical inputs in MeV / fm / u units.

use serde::Serialize;

use crate::error::{Error, Result};

/// ħc in MeV·fm (CODATA).
pub const HBAR_C: f64 = 197.326_963_1;
/// Atomic mass unit in MeV (CODATA).
pub const U_TO_MEV: f64 = 931.494_095_4;

/// Above this `a / R0` the Pekeris expansion around `r = R0` gets poor.
pub const THIN_SURFACE_RATIO: f64 = 0.2;

/// Empirical radius parameter `r0` in `R0 = r0 A^(1/3)` (fm).
pub const EMPIRICAL_R0: f64 = 1.285;
/// Empirical surface thickness (fm).
pub const EMPIRICAL_A: f64 = 0.65;
/// Reduced mass used for the A = 56 worked example (u).
pub const EMPIRICAL_MU: f64 = 0.50433;
/// Mass number of the worked example.
pub const EMPIRICAL_MASS_NUMBER: f64 = 56.0;

/// Woods-Saxon depth and geometry plus the reduced mass and unit constants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhysicalParams {
    /// Potential depth `V0` (MeV).
    pub v0: f64,
    /// Nuclear radius `R0` (fm).
    pub r0: f64,
    /// Surface thickness `a` (fm).
    pub a: f64,
    /// Reduced mass (u).
    pub mu: f64,
    pub hbar_c: f64,
    pub u_to_mev: f64,
}

impl PhysicalParams {
    /// Builds a validated parameter set with CODATA constants.
    pub fn new(v0: f64, r0: f64, a: f64, mu: f64) -> Result<Self> {
        Self::with_constants(v0, r0, a, mu, HBAR_C, U_TO_MEV)
    }

    pub fn with_constants(v0: f64, r0: f64, a: f64, mu: f64, hbar_c: f64, u_to_mev: f64) -> Result<Self> {
        let p = PhysicalParams {
            v0,
            r0,
            a,
            mu,
            hbar_c,
            u_to_mev,
        };
        p.validate()?;
        Ok(p)
    }

    /// Parameters derived from a mass number:
    /// `V0 = 40.5 + 0.13 A` MeV, `R0 = 1.285 A^(1/3)` fm, `a = 0.65` fm.
    pub fn from_mass_number(mass_number: f64) -> Result<Self> {
        if !(mass_number > 0.0) || !mass_number.is_finite() {
            return Err(Error::InvalidParameter {
                name: "A",
                value: mass_number,
                reason: "mass number must be positive",
            });
        }
        Self::new(
            40.5 + 0.13 * mass_number,
            EMPIRICAL_R0 * mass_number.cbrt(),
            EMPIRICAL_A,
            EMPIRICAL_MU,
        )
    }

    /// The A = 56 parameter set used for the published tables.
    pub fn empirical() -> Self {
        Self::from_mass_number(EMPIRICAL_MASS_NUMBER).expect("empirical parameters are valid")
    }

    /// The rounded parameter set printed alongside the published tables
    /// (`V0 = 47.78`, `R0 = 4.9162`, `a = 0.65`, `mu = 0.50433`).
    pub fn tabulated() -> Self {
        Self::new(47.78, 4.9162, EMPIRICAL_A, EMPIRICAL_MU).expect("tabulated parameters are valid")
    }

    /// Same geometry and constants with a different depth.
    pub fn with_depth(&self, v0: f64) -> Result<Self> {
        Self::with_constants(v0, self.r0, self.a, self.mu, self.hbar_c, self.u_to_mev)
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("V0", self.v0),
            ("R0", self.r0),
            ("a", self.a),
            ("mu", self.mu),
            ("hbar_c", self.hbar_c),
            ("u_to_mev", self.u_to_mev),
        ];
        for (name, value) in fields {
            if !(value > 0.0) || !value.is_finite() {
                return Err(Error::InvalidParameter {
                    name,
                    value,
                    reason: "must be finite and strictly positive",
                });
            }
        }
        if self.a >= self.r0 {
            return Err(Error::InvalidParameter {
                name: "a",
                value: self.a,
                reason: "surface thickness must be smaller than R0",
            });
        }
        Ok(())
    }

    /// Warning text when `a / R0` exceeds [`THIN_SURFACE_RATIO`].
    pub fn thin_surface_warning(&self) -> Option<String> {
        let ratio = self.a / self.r0;
        (ratio > THIN_SURFACE_RATIO)
            .then(|| format!("a/R0 = {ratio:.3} exceeds {THIN_SURFACE_RATIO}; the Pekeris expansion assumes a << R0"))
    }

    /// Reduced mass energy `mu c^2` (MeV).
    pub fn mass_mev(&self) -> f64 {
        self.mu * self.u_to_mev
    }

    /// `ħ² / (2μ)` in MeV·fm².
    pub fn hbar2_over_2mu(&self) -> f64 {
        self.hbar_c * self.hbar_c / (2.0 * self.mass_mev())
    }

    /// `ħ² / (2μ a²)`, the energy unit of the dimensionless equation (MeV).
    pub fn surface_energy_unit(&self) -> f64 {
        self.hbar2_over_2mu() / (self.a * self.a)
    }

    /// `R0 / a`.
    pub fn alpha(&self) -> f64 {
        self.r0 / self.a
    }
}
