//! Numerov shooting solver for the radial equation
//! `u'' = (2μ/ħ²) (V_eff(r) - E) u`, used as an independent check on the
//! closed-form spectrum.
//!
//! Two effective potentials are supported. [`PotentialKind::Exact`] is the
//! Woods-Saxon well plus the true centrifugal barrier on `r > 0`.
//! [`PotentialKind::Pekeris`] is the Pekeris-approximated potential, which the
//! closed forms solve on the whole `z ∈ (0, 1)` interval; it is integrated on
//! `[pekeris_r_min, r_max]` with `pekeris_r_min` well below zero so that both
//! tails are asymptotic.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::PhysicalParams;
use crate::pekeris::{dimensionless, DimensionlessSet};
use crate::spectrum::{energy, QuantumNumbers};

/// Surface thicknesses between `R0` and either end of the default grid.
pub const DEFAULT_TAIL_SPAN: f64 = 25.0;
/// Energies sampled when bracketing a level.
pub const BRACKET_STEPS: usize = 200;

const RESCALE_LIMIT: f64 = 1e100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PotentialKind {
    Exact,
    Pekeris,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShootingConfig {
    /// Inner edge for the exact potential (fm).
    pub r_min: f64,
    /// Outer edge for both kinds (fm).
    pub r_max: f64,
    /// Inner edge for the Pekeris potential (fm); may be negative.
    pub pekeris_r_min: f64,
    /// Largest allowed step (fm).
    pub h: f64,
    /// Bisection stops once the bracket is narrower than this (MeV).
    pub energy_tol: f64,
    pub max_bisections: usize,
}

impl ShootingConfig {
    /// `r_min = 1e-6` fm, edges `R0 ± 25a`, `h = 1e-3` fm, `energy_tol = 1e-9` MeV.
    pub fn for_params(params: &PhysicalParams) -> Self {
        ShootingConfig {
            r_min: 1e-6,
            r_max: params.r0 + DEFAULT_TAIL_SPAN * params.a,
            pekeris_r_min: params.r0 - DEFAULT_TAIL_SPAN * params.a,
            h: 1e-3,
            energy_tol: 1e-9,
            max_bisections: 200,
        }
    }

    pub fn with_step(mut self, h: f64) -> Self {
        self.h = h;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.r_min >= 0.0 && self.r_min < self.r_max) {
            return Err(Error::Domain(format!(
                "need 0 <= r_min < r_max, got r_min = {}, r_max = {}",
                self.r_min, self.r_max
            )));
        }
        if !(self.pekeris_r_min < self.r_max) {
            return Err(Error::Domain("pekeris_r_min must be below r_max".into()));
        }
        if !(self.h > 0.0) || !(self.energy_tol > 0.0) || self.max_bisections == 0 {
            return Err(Error::Domain(
                "h, energy_tol and max_bisections must be positive".into(),
            ));
        }
        Ok(())
    }
}

fn fermi(r: f64, params: &PhysicalParams) -> f64 {
    1.0 / (1.0 + ((r - params.r0) / params.a).exp())
}

fn potential_with(r: f64, params: &PhysicalParams, dims: &DimensionlessSet, kind: PotentialKind) -> f64 {
    let f = fermi(r, params);
    match kind {
        PotentialKind::Exact => dims.delta * (params.r0 / r).powi(2) - params.v0 * f,
        PotentialKind::Pekeris => {
            dims.delta * dims.c0 - (params.v0 - dims.delta * dims.c1) * f + dims.delta * dims.c2 * f * f
        }
    }
}

/// Effective potential in MeV.
pub fn effective_potential(r: f64, params: &PhysicalParams, l: u32, kind: PotentialKind) -> Result<f64> {
    if kind == PotentialKind::Exact {
        if r < 0.0 {
            return Err(Error::Domain(format!("negative radius {r}")));
        }
        if r == 0.0 && l > 0 {
            return Err(Error::Singular { r });
        }
    }
    let dims = dimensionless(params, l)?;
    if kind == PotentialKind::Exact && l == 0 {
        return Ok(-params.v0 * fermi(r, params));
    }
    Ok(potential_with(r, params, &dims, kind))
}

/// Result of one outward + inward integration at a trial energy.
#[derive(Debug, Clone, PartialEq)]
pub struct NumerovSolution {
    pub r: Vec<f64>,
    /// Matched solution, scaled to `max |u| = 1`.
    pub u: Vec<f64>,
    pub node_count: u32,
    /// `u'/u` (outward) minus `u'/u` (inward) at the matching point (1/fm).
    /// Positive below an eigenvalue, negative above it.
    pub mismatch: f64,
    pub matching_r: f64,
}

#[derive(Debug, Clone, Copy)]
struct Shot {
    nodes: u32,
    mismatch: f64,
    matching: usize,
}

/// Grid and potential for one `(params, l, kind)`, reused across trial energies.
///
/// The recurrence is carried in summed form on `Y = (1 - t) u` with
/// `t = h² (V - E) / 12k`: `ΔY` grows by `12 t u` per step. Forming
/// `1 - t` and differencing it directly would lose about `ε_mach / h²` of
/// the potential, which at `h = 1e-3` fm already shows up at the 1e-8 MeV
/// level.
struct Shooter {
    r: Vec<f64>,
    v: Vec<f64>,
    h: f64,
    inv_k: f64,
    kind: PotentialKind,
    l: u32,
    centre: usize,
    t: Vec<f64>,
    out: Vec<f64>,
    inw: Vec<f64>,
}

impl Shooter {
    fn new(params: &PhysicalParams, l: u32, kind: PotentialKind, cfg: &ShootingConfig) -> Result<Self> {
        cfg.validate()?;
        let dims = dimensionless(params, l)?;
        let start = match kind {
            PotentialKind::Exact => cfg.r_min.max(1e-12),
            PotentialKind::Pekeris => cfg.pekeris_r_min,
        };
        let intervals = ((cfg.r_max - start) / cfg.h - 1e-9).ceil().max(8.0) as usize;
        let h = (cfg.r_max - start) / intervals as f64;
        let r: Vec<f64> = (0..=intervals).map(|i| start + i as f64 * h).collect();
        let v: Vec<f64> = r
            .iter()
            .map(|&x| match (kind, l) {
                (PotentialKind::Exact, 0) => -params.v0 * fermi(x, params),
                _ => potential_with(x, params, &dims, kind),
            })
            .collect();
        let centre = ((params.r0 - start) / h).round().clamp(2.0, (intervals - 2) as f64) as usize;
        let len = r.len();
        Ok(Shooter {
            r,
            v,
            h,
            inv_k: 1.0 / params.hbar2_over_2mu(),
            kind,
            l,
            centre,
            t: vec![0.0; len],
            out: vec![0.0; len],
            inw: vec![0.0; len],
        })
    }

    fn last(&self) -> usize {
        self.r.len() - 1
    }

    /// Lowest energy at which the solution is unbound at one of the edges.
    fn ceiling(&self) -> f64 {
        let right = self.v[self.last()];
        match self.kind {
            PotentialKind::Exact => right,
            PotentialKind::Pekeris => right.min(self.v[0]),
        }
    }

    fn floor(&self) -> f64 {
        self.v.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// `λ - 1` for the root `λ > 1` of `λ² - 2cλ + 1 = 0`, the per-step growth
    /// of the solution rising away from an edge where the potential is flat.
    fn edge_growth_minus_one(t: f64) -> f64 {
        let c_minus_one = 6.0 * t / (1.0 - t);
        c_minus_one + (c_minus_one * (c_minus_one + 2.0)).max(0.0).sqrt()
    }

    fn shoot(&mut self, e: f64) -> Result<Shot> {
        let last = self.last();
        let ceiling = self.ceiling();
        if !(e < ceiling) {
            return Err(Error::UnboundEnergy {
                energy: e,
                edge: ceiling,
            });
        }
        let scale = self.h * self.h / 12.0 * self.inv_k;
        for (ti, vi) in self.t.iter_mut().zip(&self.v) {
            *ti = scale * (vi - e);
        }
        let t = &self.t;

        // outer classical turning point, R0 when the energy is below the whole well
        let m = match self.v.iter().rposition(|&vi| vi < e) {
            Some(i) => i,
            None => self.centre,
        }
        .clamp(2, last - 2);

        // outward
        let (first, mut y, mut dy) = match self.kind {
            PotentialKind::Pekeris => {
                self.out[0] = 1.0;
                let g = Self::edge_growth_minus_one(t[0]);
                self.out[1] = 1.0 + g;
                (0, (1.0 - t[1]) * (1.0 + g), (1.0 - t[1]) * g - (t[1] - t[0]))
            }
            PotentialKind::Exact => {
                // skip the deep centrifugal region where the weights 1 - t go negative
                let first = t[..m - 1]
                    .iter()
                    .rposition(|&ti| ti >= 0.5)
                    .map_or(0, |i| i + 1)
                    .min(m - 2);
                let ratio = self.r[first] / self.r[first + 1];
                let u0 = ((f64::from(self.l) + 1.0) * ratio.ln()).exp();
                self.out[..first].fill(0.0);
                self.out[first] = u0;
                self.out[first + 1] = 1.0;
                let y1 = 1.0 - t[first + 1];
                (first, y1, y1 - (1.0 - t[first]) * u0)
            }
        };
        for i in first + 1..m {
            dy += 12.0 * t[i] * self.out[i];
            y += dy;
            let next = y / (1.0 - t[i + 1]);
            if !next.is_finite() {
                return Err(Error::Overflow { r: self.r[i + 1] });
            }
            self.out[i + 1] = next;
            if next.abs() > RESCALE_LIMIT {
                self.out[first..=i + 1].iter_mut().for_each(|u| *u /= RESCALE_LIMIT);
                y /= RESCALE_LIMIT;
                dy /= RESCALE_LIMIT;
            }
        }
        let dy_out = dy;

        // inward, with `back = Y[i-1] - Y[i]`
        let g = Self::edge_growth_minus_one(t[last]);
        self.inw[last] = 1.0;
        self.inw[last - 1] = 1.0 + g;
        let mut y = (1.0 - t[last - 1]) * (1.0 + g);
        let mut back = g + (t[last] - t[last - 1] * (1.0 + g));
        for i in (m + 1..last).rev() {
            back += 12.0 * t[i] * self.inw[i];
            y += back;
            let next = y / (1.0 - t[i - 1]);
            if !next.is_finite() {
                return Err(Error::Overflow { r: self.r[i - 1] });
            }
            self.inw[i - 1] = next;
            if next.abs() > RESCALE_LIMIT {
                self.inw[i - 1..=last].iter_mut().for_each(|u| *u /= RESCALE_LIMIT);
                y /= RESCALE_LIMIT;
                back /= RESCALE_LIMIT;
            }
        }

        let nodes = crate::wavefunction::sign_changes(&self.out[first..=m])
            + crate::wavefunction::sign_changes(&self.inw[m..=last]);
        let mismatch = (dy_out / self.out[m] + back / self.inw[m] + 12.0 * t[m]) / self.h;
        Ok(Shot {
            nodes: nodes as u32,
            mismatch,
            matching: m,
        })
    }

    fn solution(&mut self, e: f64) -> Result<NumerovSolution> {
        let shot = self.shoot(e)?;
        let m = shot.matching;
        let scale = self.out[m] / self.inw[m];
        let mut u: Vec<f64> = self.out[..m].to_vec();
        u.extend(self.inw[m..].iter().map(|x| x * scale));
        let peak = u.iter().fold(0.0f64, |a, x| a.max(x.abs()));
        if peak > 0.0 && peak.is_finite() {
            u.iter_mut().for_each(|x| *x /= peak);
        }
        Ok(NumerovSolution {
            r: self.r.clone(),
            u,
            node_count: shot.nodes,
            mismatch: shot.mismatch,
            matching_r: self.r[m],
        })
    }

    /// True when `e` lies above the level with `n` nodes.
    fn above(&mut self, e: f64, n: u32) -> Result<bool> {
        let shot = self.shoot(e)?;
        Ok(shot.nodes > n || (shot.nodes == n && !(shot.mismatch > 0.0)))
    }
}

/// Integrates at a trial energy and reports nodes and the matching mismatch.
pub fn numerov_integrate(
    e_trial: f64,
    params: &PhysicalParams,
    l: u32,
    kind: PotentialKind,
    cfg: &ShootingConfig,
) -> Result<NumerovSolution> {
    Shooter::new(params, l, kind, cfg)?.solution(e_trial)
}

/// Energy of the level with `n` interior nodes, by node-count bracketing and
/// bisection on the mismatch sign.
pub fn find_eigenvalue(
    n: u32,
    params: &PhysicalParams,
    l: u32,
    kind: PotentialKind,
    cfg: &ShootingConfig,
) -> Result<f64> {
    let mut shooter = Shooter::new(params, l, kind, cfg)?;
    let floor = shooter.floor();
    let ceiling = shooter.ceiling();
    let span = ceiling - floor;
    if !(span > 0.0) {
        return Err(Error::NoEigenvalue { nodes: n, ceiling });
    }
    let top = ceiling - span * 1e-12;

    let mut lo = floor;
    let mut hi = None;
    for j in 1..=BRACKET_STEPS {
        let e = if j == BRACKET_STEPS {
            top
        } else {
            floor + span * j as f64 / BRACKET_STEPS as f64
        };
        if shooter.above(e, n)? {
            hi = Some(e);
            break;
        }
        lo = e;
    }
    let mut hi = hi.ok_or(Error::NoEigenvalue { nodes: n, ceiling })?;

    let mut iterations = 0;
    while hi - lo > cfg.energy_tol {
        if iterations == cfg.max_bisections {
            return Err(Error::NotConverged {
                iterations,
                width: hi - lo,
            });
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if shooter.above(mid, n)? {
            hi = mid;
        } else {
            lo = mid;
        }
        iterations += 1;
    }
    Ok(0.5 * (lo + hi))
}

/// Closed-form energy against the numerical eigenvalues of both potentials.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleReport {
    pub qn: QuantumNumbers,
    pub e_analytic: f64,
    pub e_numeric_pekeris: f64,
    pub e_numeric_exact: Option<f64>,
    /// `|E_exact - E_pekeris|`, both numerical.
    pub pekeris_error: Option<f64>,
    /// `|E_analytic - E_pekeris|`.
    pub agreement: f64,
    /// Why the exact-potential solve failed, if it did.
    pub exact_failure: Option<String>,
}

pub fn compare(params: &PhysicalParams, qn: QuantumNumbers, cfg: &ShootingConfig) -> Result<OracleReport> {
    let analytic = energy(params, qn)?.energy;
    let pekeris = find_eigenvalue(qn.n, params, qn.l, PotentialKind::Pekeris, cfg)?;
    let exact = find_eigenvalue(qn.n, params, qn.l, PotentialKind::Exact, cfg);
    let (e_numeric_exact, exact_failure) = match exact {
        Ok(e) => (Some(e), None),
        Err(err) => (None, Some(err.to_string())),
    };
    Ok(OracleReport {
        qn,
        e_analytic: analytic,
        e_numeric_pekeris: pekeris,
        e_numeric_exact,
        pekeris_error: e_numeric_exact.map(|e| (e - pekeris).abs()),
        agreement: (analytic - pekeris).abs(),
        exact_failure,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn tabulated(v0: f64) -> PhysicalParams {
        PhysicalParams::tabulated().with_depth(v0).unwrap()
    }

    #[test]
    fn potentials_at_r0_for_s_wave() {
        let p = tabulated(47.78);
        for kind in [PotentialKind::Exact, PotentialKind::Pekeris] {
            assert_relative_eq!(
                effective_potential(p.r0, &p, 0, kind).unwrap(),
                -p.v0 / 2.0,
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn pekeris_tends_to_delta_c0() {
        let p = tabulated(47.78);
        let d = dimensionless(&p, 3).unwrap();
        let far = effective_potential(1e4, &p, 3, PotentialKind::Pekeris).unwrap();
        assert_relative_eq!(far, d.delta * d.c0, max_relative = 1e-14);
    }

    #[test]
    fn kinds_agree_near_r0() {
        let p = tabulated(3.6);
        let d = dimensionless(&p, 1).unwrap();
        let exact = effective_potential(p.r0, &p, 1, PotentialKind::Exact).unwrap();
        let pek = effective_potential(p.r0, &p, 1, PotentialKind::Pekeris).unwrap();
        assert!((exact - pek).abs() < 0.02 * d.delta);
    }

    #[test]
    fn exact_kind_is_singular_at_origin() {
        let p = tabulated(3.6);
        assert_eq!(
            effective_potential(0.0, &p, 1, PotentialKind::Exact).unwrap_err(),
            Error::Singular { r: 0.0 }
        );
        assert!(effective_potential(0.0, &p, 1, PotentialKind::Pekeris).is_ok());
    }

    #[test]
    fn below_the_well_has_no_nodes_and_positive_mismatch() {
        let p = tabulated(47.78);
        let cfg = ShootingConfig::for_params(&p);
        let sol = numerov_integrate(-200.0, &p, 5, PotentialKind::Pekeris, &cfg).unwrap();
        assert_eq!(sol.node_count, 0);
        assert!(sol.mismatch > 0.0);
        let sol = numerov_integrate(-300.0, &p, 5, PotentialKind::Exact, &cfg).unwrap();
        assert_eq!(sol.node_count, 0);
        assert!(sol.mismatch > 0.0);
    }

    #[test]
    fn energy_above_the_edge_is_unbound() {
        let p = tabulated(3.6);
        let cfg = ShootingConfig::for_params(&p);
        let err = numerov_integrate(10.0, &p, 1, PotentialKind::Pekeris, &cfg).unwrap_err();
        assert!(matches!(err, Error::UnboundEnergy { .. }));
    }

    #[test]
    fn shallow_p_wave_matches_closed_form() {
        let p = tabulated(3.6);
        let cfg = ShootingConfig::for_params(&p);
        let e = find_eigenvalue(0, &p, 1, PotentialKind::Pekeris, &cfg).unwrap();
        let analytic = energy(&p, QuantumNumbers::new(0, 1)).unwrap().energy;
        assert!((e - analytic).abs() < 1e-5, "{e} vs {analytic}");

        let sol = numerov_integrate(analytic, &p, 1, PotentialKind::Pekeris, &cfg).unwrap();
        assert!(sol.mismatch.abs() * p.a < 1e-6, "{}", sol.mismatch);
    }

    #[test]
    fn missing_level_is_reported() {
        let p = tabulated(3.6);
        let cfg = ShootingConfig::for_params(&p);
        let err = find_eigenvalue(1, &p, 1, PotentialKind::Pekeris, &cfg).unwrap_err();
        assert!(matches!(err, Error::NoEigenvalue { nodes: 1, .. }));
    }

    #[test]
    fn compare_requires_an_analytic_level() {
        let p = tabulated(3.6);
        let cfg = ShootingConfig::for_params(&p);
        assert!(compare(&p, QuantumNumbers::new(0, 0), &cfg)
            .unwrap_err()
            .is_no_bound_state());
    }

    #[test]
    fn config_validation() {
        let p = tabulated(3.6);
        let mut cfg = ShootingConfig::for_params(&p);
        cfg.h = 0.0;
        assert!(cfg.validate().is_err());
        let mut cfg = ShootingConfig::for_params(&p);
        cfg.r_min = cfg.r_max;
        assert!(cfg.validate().is_err());
    }
}
