//! Analytic radial eigenfunctions
//! `u(z) = C z^ε (1-z)^η P_n^(2ε, 2η)(1 - 2z)` with `z = 1 / (1 + exp((r - R0)/a))`
//! and their numerical normalisation on `r ∈ [0, r_max]`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::jacobi::jacobi_unchecked;
use crate::params::PhysicalParams;
use crate::pekeris::dimensionless;
use crate::quadrature::simpson;
use crate::spectrum::{bound_state_exists, energy, epsilon_bound, QuantumNumbers};

/// Default radial step for sampled wavefunctions (fm).
pub const DEFAULT_STEP: f64 = 1e-3;
/// Tail amplitude, relative to the peak, below which the grid counts as long enough.
pub const TAIL_TOLERANCE: f64 = 1e-12;
/// Finite-difference step in `z` for [`ode_residual_z`].
pub const RESIDUAL_STEP: f64 = 1e-4;

/// `ln(1 + e^t)` without overflow.
fn softplus(t: f64) -> f64 {
    t.max(0.0) + (-t.abs()).exp().ln_1p()
}

/// `z = 1 / (1 + exp((r - R0) / a))`.
pub fn z_of_r(r: f64, params: &PhysicalParams) -> f64 {
    let t = (r - params.r0) / params.a;
    (-softplus(t)).exp()
}

/// Exponents of the two boundary factors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WaveExponents {
    /// `ε`, decay rate towards `r -> +inf` in units of `1/a`.
    pub eps: f64,
    /// `η = sqrt(ε² - β² + γ²)`, decay rate towards `z -> 1`.
    pub eta: f64,
}

impl WaveExponents {
    /// `ε` from the quantisation condition and `η = n' - ε`; both must be positive.
    pub fn from_dimensionless(n_prime: f64, beta2: f64, gamma2: f64) -> Result<Self> {
        let eps = epsilon_bound(n_prime, beta2, gamma2)?;
        let eta = n_prime - eps;
        if !(eps > 0.0) || !(eta > 0.0) {
            return Err(Error::Domain(format!(
                "bound exponents need ε > 0 and η > 0, got ε = {eps}, η = {eta}"
            )));
        }
        debug_assert!({
            let eta2 = eps * eps - beta2 + gamma2;
            (eta * eta - eta2).abs() <= 1e-9 * (eps * eps).max(beta2.abs()).max(gamma2)
        });
        Ok(WaveExponents { eps, eta })
    }
}

pub fn wave_exponents(params: &PhysicalParams, qn: QuantumNumbers) -> Result<WaveExponents> {
    let check = bound_state_exists(params, qn)?;
    if let Some(reason) = check.failure {
        return Err(Error::NoBoundState { qn, reason });
    }
    WaveExponents::from_dimensionless(check.n_prime, check.dims.beta2, check.dims.gamma2)
}

/// Unnormalised analytic eigenfunction of one bound level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalyticState {
    pub qn: QuantumNumbers,
    pub exponents: WaveExponents,
    r0: f64,
    a: f64,
}

impl AnalyticState {
    pub fn new(params: &PhysicalParams, qn: QuantumNumbers) -> Result<Self> {
        Ok(AnalyticState {
            qn,
            exponents: wave_exponents(params, qn)?,
            r0: params.r0,
            a: params.a,
        })
    }

    pub fn at_r(&self, r: f64) -> f64 {
        let t = (r - self.r0) / self.a;
        let ln_z = -softplus(t);
        let ln_1mz = -softplus(-t);
        self.eval_logs(ln_z, ln_1mz)
    }

    /// Same function in the `z` variable, `z ∈ (0, 1)`.
    pub fn at_z(&self, z: f64) -> f64 {
        self.eval_logs(z.ln(), (-z).ln_1p())
    }

    fn eval_logs(&self, ln_z: f64, ln_1mz: f64) -> f64 {
        let WaveExponents { eps, eta } = self.exponents;
        let envelope = (eps * ln_z + eta * ln_1mz).exp();
        if self.qn.n == 0 || envelope == 0.0 {
            return envelope;
        }
        let x = ln_1mz.exp() - ln_z.exp();
        envelope * jacobi_unchecked(self.qn.n, 2.0 * eps, 2.0 * eta, x)
    }

    /// Radius past which the envelope has fallen by roughly `e^-34` (fm).
    pub fn tail_radius(&self) -> f64 {
        self.r0 + self.a * (34.0 / self.exponents.eps).max(25.0)
    }
}

/// `z^ε (1-z)^η P_n^(2ε,2η)(1-2z)` at radius `r`, without `C_nl`.
pub fn u_unnormalized(r: f64, params: &PhysicalParams, qn: QuantumNumbers) -> Result<f64> {
    Ok(AnalyticState::new(params, qn)?.at_r(r))
}

/// Uniform mesh starting at `r = 0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadialGrid {
    pub r_values: Vec<f64>,
    pub spacing: f64,
}

impl RadialGrid {
    /// `[0, r_max]` with the largest step not exceeding `h` that lands on `r_max`.
    pub fn uniform(r_max: f64, h: f64) -> Result<Self> {
        if !(r_max > 0.0) || !(h > 0.0) || !r_max.is_finite() || h > r_max {
            return Err(Error::Domain(format!(
                "grid needs 0 < h <= r_max, got h = {h}, r_max = {r_max}"
            )));
        }
        let intervals = (r_max / h - 1e-9).ceil().max(1.0) as usize;
        let spacing = r_max / intervals as f64;
        let r_values = (0..=intervals).map(|i| i as f64 * spacing).collect();
        Ok(RadialGrid { r_values, spacing })
    }

    /// Grid long enough for the level's tail to decay below [`TAIL_TOLERANCE`].
    pub fn for_state(state: &AnalyticState, h: f64) -> Result<Self> {
        Self::uniform(state.tail_radius(), h)
    }

    pub fn r_max(&self) -> f64 {
        *self.r_values.last().expect("grids are never empty")
    }

    pub fn len(&self) -> usize {
        self.r_values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.r_values.is_empty()
    }
}

/// `u_nl` sampled on a grid. `u_values = norm_constant * u_unnormalized`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WavefunctionTable {
    pub qn: QuantumNumbers,
    pub grid: RadialGrid,
    pub u_values: Vec<f64>,
    pub norm_constant: f64,
}

impl WavefunctionTable {
    /// Samples the unnormalised function (`norm_constant = 1`).
    pub fn sample(state: &AnalyticState, grid: RadialGrid) -> Self {
        let u_values = grid.r_values.iter().map(|&r| state.at_r(r)).collect();
        WavefunctionTable {
            qn: state.qn,
            grid,
            u_values,
            norm_constant: 1.0,
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.u_values.iter().fold(0.0f64, |m, u| m.max(u.abs()))
    }

    /// `∫ u² dr` by composite Simpson.
    pub fn norm_squared(&self) -> f64 {
        let squares: Vec<f64> = self.u_values.iter().map(|u| u * u).collect();
        simpson(&squares, self.grid.spacing)
    }

    /// Interior sign changes, ignoring exact zeros.
    pub fn node_count(&self) -> usize {
        sign_changes(&self.u_values)
    }
}

/// Scales the table so `∫ u² dr = 1`.
pub fn normalize(table: &WavefunctionTable) -> Result<WavefunctionTable> {
    let peak = table.max_abs();
    if peak == 0.0 || !peak.is_finite() {
        return Err(Error::ZeroNorm);
    }
    let tail = table.u_values.last().copied().unwrap_or(0.0).abs();
    if tail > TAIL_TOLERANCE * peak {
        return Err(Error::TruncatedTail { ratio: tail / peak });
    }
    let norm2 = table.norm_squared();
    if !(norm2 > 0.0) {
        return Err(Error::ZeroNorm);
    }
    let scale = norm2.sqrt().recip();
    Ok(WavefunctionTable {
        qn: table.qn,
        grid: table.grid.clone(),
        u_values: table.u_values.iter().map(|u| u * scale).collect(),
        norm_constant: table.norm_constant * scale,
    })
}

/// Samples and normalises a bound level on a grid of step `h` reaching `r_max`
/// (tail-adapted when `r_max` is `None`).
pub fn normalized_wavefunction(
    params: &PhysicalParams,
    qn: QuantumNumbers,
    r_max: Option<f64>,
    h: f64,
) -> Result<WavefunctionTable> {
    let state = AnalyticState::new(params, qn)?;
    let grid = match r_max {
        Some(r_max) => RadialGrid::uniform(r_max, h)?,
        None => RadialGrid::for_state(&state, h)?,
    };
    normalize(&WavefunctionTable::sample(&state, grid))
}

pub fn sign_changes(values: &[f64]) -> usize {
    let mut last = 0.0f64;
    let mut count = 0;
    for &v in values {
        if v == 0.0 {
            continue;
        }
        if last != 0.0 && (v > 0.0) != (last > 0.0) {
            count += 1;
        }
        last = v;
    }
    count
}

/// Residual of the `z`-space radial equation
/// `u'' + (1-2z)/(z(1-z)) u' + (-ε² + β² z - γ² z²)/(z(1-z))² u`
/// for the analytic `u`, with `ε` re-derived from the closed-form energy.
/// Returns `max |residual| / max |u|` over the samples.
pub fn ode_residual_z(params: &PhysicalParams, qn: QuantumNumbers, z_samples: &[f64]) -> Result<f64> {
    let e = energy(params, qn)?.energy;
    ode_residual_z_at_energy(params, qn, e, z_samples)
}

/// As [`ode_residual_z`], but the equation's `ε` comes from `energy` while
/// `u` stays the analytic eigenfunction. Off-eigenvalue energies leave a
/// visible residual.
pub fn ode_residual_z_at_energy(
    params: &PhysicalParams,
    qn: QuantumNumbers,
    energy: f64,
    z_samples: &[f64],
) -> Result<f64> {
    let state = AnalyticState::new(params, qn)?;
    let dims = dimensionless(params, qn.l)?;
    let eps = dims
        .epsilon_from_energy(energy)
        .ok_or_else(|| Error::Domain(format!("energy {energy} MeV lies above the asymptote")))?;
    let h = RESIDUAL_STEP;
    let mut worst = 0.0f64;
    let mut peak = 0.0f64;
    for &z in z_samples {
        if !(2.0 * h < z && z < 1.0 - 2.0 * h) {
            return Err(Error::Domain(format!("z sample {z} too close to an endpoint")));
        }
        let [m2, m1, c, p1, p2] = [-2.0, -1.0, 0.0, 1.0, 2.0].map(|k| state.at_z(z + k * h));
        let d1 = (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h);
        let d2 = (-m2 + 16.0 * m1 - 30.0 * c + 16.0 * p1 - p2) / (12.0 * h * h);
        let s = z * (1.0 - z);
        let potential = -eps * eps + dims.beta2 * z - dims.gamma2 * z * z;
        let residual = d2 + (1.0 - 2.0 * z) / s * d1 + potential / (s * s) * c;
        worst = worst.max(residual.abs());
        peak = peak.max(c.abs());
    }
    if peak == 0.0 {
        return Err(Error::ZeroNorm);
    }
    Ok(worst / peak)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn tabulated(v0: f64) -> PhysicalParams {
        PhysicalParams::tabulated().with_depth(v0).unwrap()
    }

    #[test]
    fn z_examples() {
        let p = PhysicalParams::tabulated();
        assert_relative_eq!(z_of_r(p.r0, &p), 0.5, epsilon = 1e-15);
        assert!(z_of_r(1e4, &p) < 1e-300);
        assert_relative_eq!(
            z_of_r(0.0, &p),
            1.0 / (1.0 + (-4.9162f64 / 0.65).exp()),
            max_relative = 1e-14
        );
        assert_relative_eq!(z_of_r(0.0, &p), 0.999_48, epsilon = 1e-5);
    }

    #[test]
    fn z_is_decreasing() {
        let p = PhysicalParams::tabulated();
        let zs: Vec<f64> = (0..200).map(|i| z_of_r(i as f64 * 0.1, &p)).collect();
        assert!(zs.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn exponent_examples() {
        let w = WaveExponents::from_dimensionless(1.0, 0.3, 0.3).unwrap();
        assert_eq!((w.eps, w.eta), (0.5, 0.5));
        assert!(WaveExponents::from_dimensionless(2.0, 5.0, 1.0).is_err());

        let w = wave_exponents(&tabulated(3.6), QuantumNumbers::new(0, 1)).unwrap();
        assert_relative_eq!(w.eps, 9.368_822_139_93e-3, max_relative = 1e-9);
        assert_relative_eq!(w.eta, 1.915_400_403_49e-2, max_relative = 1e-9);
    }

    #[test]
    fn ground_state_has_no_polynomial_factor() {
        let p = tabulated(47.78);
        let state = AnalyticState::new(&p, QuantumNumbers::new(0, 5)).unwrap();
        let WaveExponents { eps, eta } = state.exponents;
        for r in [0.5, 3.0, 4.9162, 8.0] {
            let z = z_of_r(r, &p);
            assert_relative_eq!(state.at_r(r), z.powf(eps) * (1.0 - z).powf(eta), max_relative = 1e-12);
        }
        assert!(state.at_r(1e5) == 0.0);
    }

    #[test]
    fn grid_hits_both_ends() {
        let g = RadialGrid::uniform(10.0, 0.3).unwrap();
        assert_eq!(g.r_values[0], 0.0);
        assert_relative_eq!(g.r_max(), 10.0, epsilon = 1e-12);
        assert!(g.spacing <= 0.3);
        assert!(RadialGrid::uniform(1.0, 0.0).is_err());
    }

    #[test]
    fn zero_table_cannot_be_normalised() {
        let grid = RadialGrid::uniform(1.0, 0.1).unwrap();
        let table = WavefunctionTable {
            qn: QuantumNumbers::new(0, 1),
            u_values: vec![0.0; grid.len()],
            grid,
            norm_constant: 1.0,
        };
        assert_eq!(normalize(&table).unwrap_err(), Error::ZeroNorm);
    }

    #[test]
    fn short_grid_is_rejected() {
        let p = tabulated(3.6);
        let err = normalized_wavefunction(&p, QuantumNumbers::new(0, 1), Some(p.r0 + 25.0 * p.a), 1e-3).unwrap_err();
        assert!(matches!(err, Error::TruncatedTail { .. }));
    }

    #[test]
    fn shallow_p_wave_normalises() {
        let p = tabulated(3.6);
        let t = normalized_wavefunction(&p, QuantumNumbers::new(0, 1), None, 1e-3).unwrap();
        assert_relative_eq!(t.norm_squared(), 1.0, epsilon = 1e-12);
        assert_eq!(t.node_count(), 0);
    }

    #[test]
    fn residual_small_on_eigenvalue_and_large_off_it() {
        let p = tabulated(47.78);
        let qn = QuantumNumbers::new(0, 5);
        let zs: Vec<f64> = (0..=18).map(|i| 0.05 + 0.05 * i as f64).collect();
        let on = ode_residual_z(&p, qn, &zs).unwrap();
        assert!(on < 1e-6, "{on}");
        let dims = dimensionless(&p, 5).unwrap();
        let level = energy(&p, qn).unwrap();
        let eps = level.epsilon * 1.01;
        let detuned = dims.asymptote() - dims.energy_unit * eps * eps;
        let off = ode_residual_z_at_energy(&p, qn, detuned, &zs).unwrap();
        assert!(off > 100.0 * on, "on {on}, off {off}");
    }

    #[test]
    fn residual_rejects_endpoint_samples() {
        let p = tabulated(47.78);
        assert!(ode_residual_z(&p, QuantumNumbers::new(0, 5), &[0.0]).is_err());
    }

    #[test]
    fn sign_change_counting() {
        assert_eq!(sign_changes(&[1.0, 0.0, -1.0, -2.0, 0.0, 3.0]), 2);
        assert_eq!(sign_changes(&[0.0, 0.0]), 0);
    }
}
