//! Bound-state conditions and the closed-form energy spectrum.

use std::fmt;
use std::ops::Range;

use serde::Serialize;

use crate::error::{Error, NoBoundState, Result};
use crate::params::PhysicalParams;
use crate::pekeris::{dimensionless, DimensionlessSet};

/// Below this the shifted quantum number is treated as zero.
pub const N_PRIME_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct QuantumNumbers {
    /// Radial quantum number (number of interior nodes).
    pub n: u32,
    pub l: u32,
}

impl QuantumNumbers {
    pub fn new(n: u32, l: u32) -> Self {
        QuantumNumbers { n, l }
    }
}

impl fmt::Display for QuantumNumbers {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n={}, l={})", self.n, self.l)
    }
}

/// Open interval of depths `(v0_min, v0_max)` admitting a given level.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundWindow {
    pub v0_min: f64,
    pub v0_max: f64,
    /// `(sqrt(1 + 192 a⁴ l(l+1) / R0⁴) - 1) / 2`; bound levels need `n` below it.
    pub n_max_exclusive: f64,
}

impl BoundWindow {
    pub fn width(&self) -> f64 {
        self.v0_max - self.v0_min
    }

    pub fn contains(&self, v0: f64) -> bool {
        self.v0_min < v0 && v0 < self.v0_max
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnergyLevel {
    pub qn: QuantumNumbers,
    /// `E_nl` (MeV).
    pub energy: f64,
    pub epsilon: f64,
    pub n_prime: f64,
    pub window: BoundWindow,
}

/// `n' = -n + (sqrt(1 + 4γ²) - 1) / 2`.
pub fn n_prime(n: u32, gamma2: f64) -> f64 {
    -f64::from(n) + ((1.0 + 4.0 * gamma2).sqrt() - 1.0) / 2.0
}

/// `ε = (n' + (β² - γ²) / n') / 2`. The caller still has to check `ε > 0`.
pub fn epsilon_bound(n_prime: f64, beta2: f64, gamma2: f64) -> Result<f64> {
    if !(n_prime > 0.0) {
        return Err(Error::Domain(format!("ε needs n′ > 0, got n′ = {n_prime}")));
    }
    Ok(0.5 * (n_prime + (beta2 - gamma2) / n_prime))
}

fn n_max_exclusive(params: &PhysicalParams, l: u32) -> f64 {
    let ll1 = f64::from(l) * (f64::from(l) + 1.0);
    let ratio = params.a / params.r0;
    ((1.0 + 192.0 * ratio.powi(4) * ll1).sqrt() - 1.0) / 2.0
}

/// Radial quantum numbers that can bind for this `l`, for some depth.
pub fn allowed_n_range(params: &PhysicalParams, l: u32) -> Range<u32> {
    let n_max = n_max_exclusive(params, l);
    if n_max <= 0.0 {
        return 0..0;
    }
    // n < n_max, strictly
    0..n_max.ceil() as u32
}

pub fn v0_window(params: &PhysicalParams, qn: QuantumNumbers) -> Result<BoundWindow> {
    let n_max = n_max_exclusive(params, qn.l);
    if qn.l == 0 {
        return Err(Error::NoBoundState {
            qn,
            reason: NoBoundState::ZeroAngularMomentum,
        });
    }
    if f64::from(qn.n) >= n_max {
        return Err(Error::NoBoundState {
            qn,
            reason: NoBoundState::NOutOfRange {
                n: qn.n,
                n_max_exclusive: n_max,
            },
        });
    }
    let ll1 = f64::from(qn.l) * (f64::from(qn.l) + 1.0);
    let k = params.hbar2_over_2mu();
    let (a, r0) = (params.a, params.r0);
    // Λ = 2n'
    let lambda = 2.0 * n_max - 2.0 * f64::from(qn.n);
    let centre = 8.0 * k * a * ll1 / (r0 * r0 * r0);
    let half_width = k * lambda * lambda / (4.0 * a * a);
    Ok(BoundWindow {
        v0_min: centre - half_width,
        v0_max: centre + half_width,
        n_max_exclusive: n_max,
    })
}

/// Everything the bound-state predicate computes along the way.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundCheck {
    pub dims: DimensionlessSet,
    pub n_prime: f64,
    /// Present when `n` is inside the allowed range.
    pub window: Option<BoundWindow>,
    /// `None` when the level is bound.
    pub failure: Option<NoBoundState>,
}

impl BoundCheck {
    pub fn exists(&self) -> bool {
        self.failure.is_none()
    }
}

/// `n' > 0` and `-n'² < β² - γ² < n'²`, i.e. `V0min < V0 < V0max`.
/// Ties at the window edges count as unbound.
pub fn bound_state_exists(params: &PhysicalParams, qn: QuantumNumbers) -> Result<BoundCheck> {
    let dims = dimensionless(params, qn.l)?;
    let np = n_prime(qn.n, dims.gamma2);
    let mut check = BoundCheck {
        dims,
        n_prime: np,
        window: None,
        failure: None,
    };
    let window = match v0_window(params, qn) {
        Ok(w) => w,
        Err(Error::NoBoundState { reason, .. }) => {
            check.failure = Some(reason);
            return Ok(check);
        }
        Err(e) => return Err(e),
    };
    check.window = Some(window);
    if np < N_PRIME_FLOOR {
        check.failure = Some(NoBoundState::NOutOfRange {
            n: qn.n,
            n_max_exclusive: window.n_max_exclusive,
        });
        return Ok(check);
    }
    let below = NoBoundState::BelowWindow {
        v0: params.v0,
        v0_min: window.v0_min,
    };
    let above = NoBoundState::AboveWindow {
        v0: params.v0,
        v0_max: window.v0_max,
    };
    if params.v0 <= window.v0_min {
        check.failure = Some(below);
    } else if params.v0 >= window.v0_max {
        check.failure = Some(above);
    } else {
        // Guard against rounding right at an edge: ε > 0 and η = n' - ε > 0.
        let eps = 0.5 * (np + (dims.beta2 - dims.gamma2) / np);
        if eps <= 0.0 {
            check.failure = Some(below);
        } else if np - eps <= 0.0 {
            check.failure = Some(above);
        }
    }
    Ok(check)
}

/// `E = δC0 - (V0 - δC1) ((n'² + β² - γ²) / (2β n'))²`.
fn energy_compact(params: &PhysicalParams, d: &DimensionlessSet, np: f64) -> f64 {
    let ratio = (np * np + d.beta2 - d.gamma2) / (2.0 * d.beta2.sqrt() * np);
    d.delta * d.c0 - (params.v0 - d.delta * d.c1) * ratio * ratio
}

/// The same energy with every auxiliary quantity substituted back in terms of
/// `V0`, `R0`, `a`, `μ`, `l` and `n`.
fn energy_expanded(params: &PhysicalParams, qn: QuantumNumbers) -> f64 {
    let ll1 = f64::from(qn.l) * (f64::from(qn.l) + 1.0);
    let (a, r0, v0) = (params.a, params.r0, params.v0);
    let k = params.hbar2_over_2mu();
    let root = (1.0 + 192.0 * ll1 * a.powi(4) / r0.powi(4)).sqrt();
    let lambda = root - 2.0 * f64::from(qn.n) - 1.0;
    let lambda2 = lambda * lambda;
    // μ a² V0 / ħ² = V0 a² / (2k)
    let depth = v0 * a * a / (2.0 * k);
    let shifted = depth - 4.0 * ll1 * a.powi(3) / r0.powi(3);
    k * ll1 / (r0 * r0) * (1.0 + 12.0 * a * a / (r0 * r0))
        - k / (a * a) * (lambda2 / 16.0 + 4.0 * shifted * shifted / lambda2 + depth)
}

/// Both closed forms of `E_nl` for a bound level, compact form first.
pub fn energy_closed_forms(params: &PhysicalParams, qn: QuantumNumbers) -> Result<(f64, f64)> {
    let check = bound_state_exists(params, qn)?;
    if let Some(reason) = check.failure {
        return Err(Error::NoBoundState { qn, reason });
    }
    Ok((
        energy_compact(params, &check.dims, check.n_prime),
        energy_expanded(params, qn),
    ))
}

pub fn energy(params: &PhysicalParams, qn: QuantumNumbers) -> Result<EnergyLevel> {
    let check = bound_state_exists(params, qn)?;
    if let Some(reason) = check.failure {
        return Err(Error::NoBoundState { qn, reason });
    }
    let d = &check.dims;
    let np = check.n_prime;
    let e = energy_compact(params, d, np);
    debug_assert!({
        let expanded = energy_expanded(params, qn);
        (e - expanded).abs() <= 1e-9 * e.abs().max(params.v0)
    });
    Ok(EnergyLevel {
        qn,
        energy: e,
        epsilon: epsilon_bound(np, d.beta2, d.gamma2)?,
        n_prime: np,
        window: check.window.expect("bound levels have a window"),
    })
}

/// A level in the allowed `n` range whose window excludes the given depth.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExcludedLevel {
    pub qn: QuantumNumbers,
    pub window: BoundWindow,
    pub reason: NoBoundState,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Spectrum {
    pub levels: Vec<EnergyLevel>,
    pub excluded: Vec<ExcludedLevel>,
}

/// All bound levels with `l <= l_max`, sorted by `(l, n)`.
pub fn spectrum(params: &PhysicalParams, l_max: u32) -> Result<Spectrum> {
    params.validate()?;
    let mut out = Spectrum::default();
    for l in 0..=l_max {
        for n in allowed_n_range(params, l) {
            let qn = QuantumNumbers::new(n, l);
            match energy(params, qn) {
                Ok(level) => out.levels.push(level),
                Err(Error::NoBoundState { reason, .. }) => {
                    if let Ok(window) = v0_window(params, qn) {
                        out.excluded.push(ExcludedLevel { qn, window, reason });
                    }
                }
                Err(e) => return Err(e),
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn tabulated(v0: f64) -> PhysicalParams {
        PhysicalParams::tabulated().with_depth(v0).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a / b - 1.0).abs()
    }

    #[test]
    fn n_prime_examples() {
        assert_eq!(n_prime(0, 0.0), 0.0);
        assert_eq!(n_prime(3, 0.0), -3.0);
        assert_eq!(n_prime(0, 2.0), 1.0);
        let d = dimensionless(&tabulated(3.6), 1).unwrap();
        assert_relative_eq!(n_prime(0, d.gamma2), 0.028_522_826_174_8, max_relative = 1e-10);
    }

    #[test]
    fn epsilon_examples() {
        assert_eq!(epsilon_bound(1.0, 0.7, 0.7).unwrap(), 0.5);
        assert_eq!(epsilon_bound(2.0, 5.0, 1.0).unwrap(), 2.0);
        assert!(epsilon_bound(0.0, 1.0, 1.0).is_err());
        assert!(epsilon_bound(-0.5, 1.0, 1.0).is_err());
        let d = dimensionless(&tabulated(3.6), 1).unwrap();
        let eps = epsilon_bound(n_prime(0, d.gamma2), d.beta2, d.gamma2).unwrap();
        assert_relative_eq!(eps, 9.368_822_139_93e-3, max_relative = 1e-9);
    }

    #[test]
    fn allowed_ranges() {
        let p = PhysicalParams::tabulated();
        assert!(allowed_n_range(&p, 0).is_empty());
        assert_eq!(allowed_n_range(&p, 1), 0..1);
        assert_eq!(allowed_n_range(&p, 20), 0..3);
        assert_eq!(allowed_n_range(&p, 100), 0..12);
    }

    #[test]
    fn windows_match_tables_within_one_percent() {
        let p = PhysicalParams::tabulated();
        let cases = [
            (1, 0, 3.5590, 3.7191),
            (20, 2, 764.1028, 764.3034),
            (40, 4, 2965.8279, 3002.2441),
        ];
        for (l, n, lo, hi) in cases {
            let w = v0_window(&p, QuantumNumbers::new(n, l)).unwrap();
            assert!(rel(w.v0_min, lo) < 0.01, "l={l} n={n} min {}", w.v0_min);
            assert!(rel(w.v0_max, hi) < 0.01, "l={l} n={n} max {}", w.v0_max);
        }
    }

    #[test]
    fn window_outside_range_is_an_error() {
        let p = PhysicalParams::tabulated();
        let err = v0_window(&p, QuantumNumbers::new(1, 1)).unwrap_err();
        assert!(matches!(
            err,
            Error::NoBoundState {
                reason: NoBoundState::NOutOfRange { .. },
                ..
            }
        ));
        assert!(v0_window(&p, QuantumNumbers::new(0, 0)).is_err());
    }

    #[test]
    fn existence_examples() {
        let check = bound_state_exists(&tabulated(3.6), QuantumNumbers::new(0, 0)).unwrap();
        assert_eq!(check.failure, Some(NoBoundState::ZeroAngularMomentum));
        assert!(check.failure.unwrap().to_string().contains("n′ ≤ 0"));

        assert!(bound_state_exists(&tabulated(3.6), QuantumNumbers::new(0, 1))
            .unwrap()
            .exists());

        let check = bound_state_exists(&tabulated(10.0), QuantumNumbers::new(0, 1)).unwrap();
        assert!(matches!(check.failure, Some(NoBoundState::AboveWindow { .. })));
        assert!(check.failure.unwrap().to_string().contains("V0 > V0max"));
    }

    #[test]
    fn window_edges_are_unbound() {
        let p = tabulated(3.6);
        let w = v0_window(&p, QuantumNumbers::new(0, 1)).unwrap();
        for edge in [w.v0_min, w.v0_max] {
            let check = bound_state_exists(&tabulated(edge), QuantumNumbers::new(0, 1)).unwrap();
            assert!(!check.exists());
        }
    }

    #[test]
    fn energies_match_tables_within_one_percent() {
        let cases = [(1, 0, 3.6, 2.3374), (5, 0, 47.78, 34.7761)];
        for (l, n, v0, e) in cases {
            let level = energy(&tabulated(v0), QuantumNumbers::new(n, l)).unwrap();
            assert!(rel(level.energy, e) < 0.01, "l={l}: {}", level.energy);
        }
    }

    #[test]
    fn frozen_energy_values() {
        let level = energy(&tabulated(3.6), QuantumNumbers::new(0, 1)).unwrap();
        assert_relative_eq!(level.energy, 2.326_503_117_86, max_relative = 1e-10);
        let level = energy(&tabulated(47.78), QuantumNumbers::new(0, 5)).unwrap();
        assert_relative_eq!(level.energy, 34.635_680_556, max_relative = 1e-10);
        assert_relative_eq!(level.epsilon, 0.063_137_123_397_4, max_relative = 1e-9);
    }

    #[test]
    fn deepest_table_two_row_needs_the_tabulated_constant() {
        // At CODATA constants V0 = 18400 lies just above V0max = 18363.86.
        let qn = QuantumNumbers::new(11, 100);
        let err = energy(&tabulated(18400.0), qn).unwrap_err();
        assert!(matches!(
            err,
            Error::NoBoundState {
                reason: NoBoundState::AboveWindow { .. },
                ..
            }
        ));
        let p =
            PhysicalParams::with_constants(18400.0, 4.9162, 0.65, 0.50433, 197.6445, crate::params::U_TO_MEV).unwrap();
        let level = energy(&p, qn).unwrap();
        assert!(rel(level.energy, 11804.6769) < 0.01);
    }

    #[test]
    fn closed_forms_agree() {
        let (a, b) = energy_closed_forms(&tabulated(47.78), QuantumNumbers::new(0, 5)).unwrap();
        assert_relative_eq!(a, b, max_relative = 1e-12);
    }

    #[test]
    fn no_bound_state_error_carries_reason() {
        let err = energy(&tabulated(10.0), QuantumNumbers::new(0, 1)).unwrap_err();
        assert!(err.is_no_bound_state());
        assert!(err.to_string().contains("V0 > V0max"));
    }

    #[test]
    fn spectrum_examples() {
        assert!(spectrum(&PhysicalParams::tabulated(), 0).unwrap().levels.is_empty());

        let s = spectrum(&PhysicalParams::tabulated(), 5).unwrap();
        let l5: Vec<_> = s.levels.iter().filter(|lv| lv.qn.l == 5).collect();
        assert_eq!(l5.len(), 1);
        assert_eq!(l5[0].qn.n, 0);

        let s = spectrum(&tabulated(3.6), 1).unwrap();
        assert_eq!(s.levels.len(), 1);
        assert_eq!(s.levels[0].qn, QuantumNumbers::new(0, 1));
        assert!(s.excluded.is_empty());
    }

    #[test]
    fn spectrum_reports_excluded_windows_in_order() {
        let s = spectrum(&PhysicalParams::tabulated(), 8).unwrap();
        assert!(!s.excluded.is_empty());
        let keys: Vec<_> = s.levels.iter().map(|lv| (lv.qn.l, lv.qn.n)).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        for ex in &s.excluded {
            assert!(!ex.window.contains(47.78));
        }
    }
}
