use proptest::prelude::*;
use woods_saxon::spectrum::energy_closed_forms;
use woods_saxon::*;

fn geometry() -> impl Strategy<Value = PhysicalParams> {
    (3.0f64..9.0, 0.05f64..0.2, 0.5f64..3.0)
        .prop_map(|(r0, ratio, mu)| PhysicalParams::new(50.0, r0, ratio * r0, mu).unwrap())
}

/// A geometry, an `l`, an `n` inside the allowed range and a depth strictly
/// inside that level's window.
fn bound_case() -> impl Strategy<Value = (PhysicalParams, QuantumNumbers)> {
    (geometry(), 1u32..60, 0.0f64..1.0, 0.01f64..0.99).prop_filter_map("empty window", |(p, l, nf, t)| {
        let range = allowed_n_range(&p, l);
        let n = ((nf * range.end as f64) as u32).min(range.end.checked_sub(1)?);
        let qn = QuantumNumbers::new(n, l);
        let w = v0_window(&p, qn).ok()?;
        let lo = w.v0_min.max(0.0);
        let v0 = lo + t * (w.v0_max - lo);
        let p = p.with_depth(v0).ok()?;
        energy(&p, qn).ok()?;
        Some((p, qn))
    })
}

proptest! {
    #[test]
    fn closed_forms_agree((p, qn) in bound_case()) {
        let (compact, expanded) = energy_closed_forms(&p, qn).unwrap();
        let d = dimensionless(&p, qn.l).unwrap();
        prop_assert!((compact - expanded).abs() <= 1e-10 * compact.abs().max(d.delta));
    }

    #[test]
    fn epsilon_is_consistent_with_energy((p, qn) in bound_case()) {
        let level = energy(&p, qn).unwrap();
        let d = dimensionless(&p, qn.l).unwrap();
        let eps = d.epsilon_from_energy(level.energy).unwrap();
        prop_assert!((eps - level.epsilon).abs() <= 1e-8 * level.epsilon.max(1e-3));
        prop_assert!(level.epsilon > 0.0 && level.n_prime > 0.0);
        prop_assert!(level.energy < d.asymptote());
        prop_assert!(level.window.contains(p.v0));
    }

    #[test]
    fn window_centred_on_centrifugal_scale(p in geometry(), l in 1u32..80) {
        let d = dimensionless(&p, l).unwrap();
        let centre = 8.0 * d.delta * p.a / p.r0;
        for n in allowed_n_range(&p, l) {
            let w = v0_window(&p, QuantumNumbers::new(n, l)).unwrap();
            prop_assert!(((w.v0_min + w.v0_max) / 2.0 - centre).abs() <= 1e-9 * centre);
        }
    }

    #[test]
    fn window_shrinks_with_n(p in geometry(), l in 1u32..80) {
        let widths: Vec<f64> = allowed_n_range(&p, l)
            .map(|n| v0_window(&p, QuantumNumbers::new(n, l)).unwrap().width())
            .collect();
        prop_assert!(widths.windows(2).all(|w| w[1] < w[0]));
        prop_assert!(widths.iter().all(|w| *w > 0.0));
    }

    #[test]
    fn predicate_and_energy_agree(p in geometry(), l in 0u32..40, n in 0u32..8, v0 in 0.1f64..2000.0) {
        let p = p.with_depth(v0).unwrap();
        let qn = QuantumNumbers::new(n, l);
        let check = bound_state_exists(&p, qn).unwrap();
        let level = energy(&p, qn);
        prop_assert_eq!(check.exists(), level.is_ok());
        if let Err(e) = level {
            prop_assert!(e.is_no_bound_state());
        }
    }

    #[test]
    fn s_waves_never_bind(p in geometry(), n in 0u32..5, v0 in 0.1f64..1e4) {
        let p = p.with_depth(v0).unwrap();
        let qn = QuantumNumbers::new(n, 0);
        prop_assert!(!bound_state_exists(&p, qn).unwrap().exists());
        prop_assert_eq!(
            energy(&p, qn).unwrap_err(),
            Error::NoBoundState { qn, reason: NoBoundState::ZeroAngularMomentum }
        );
        prop_assert!(spectrum(&p, 0).unwrap().levels.is_empty());
    }

    #[test]
    fn dimensionless_invariants(p in geometry(), l in 0u32..100) {
        let d = dimensionless(&p, l).unwrap();
        let ll1 = f64::from(l) * f64::from(l + 1);
        prop_assert!((d.c0 + d.c1 / 2.0 + d.c2 / 4.0 - 1.0).abs() < 1e-14);
        let gamma2 = 48.0 * ll1 * (p.a / p.r0).powi(4);
        prop_assert!((d.gamma2 - gamma2).abs() <= 1e-12 * gamma2.max(1e-300));
        prop_assert_eq!(d.gamma2 == 0.0, l == 0);
    }

    #[test]
    fn levels_rise_with_n((p, qn) in bound_case()) {
        let s = spectrum(&p, qn.l).unwrap();
        let energies: Vec<f64> = s.levels.iter().filter(|lv| lv.qn.l == qn.l).map(|lv| lv.energy).collect();
        prop_assert!(energies.windows(2).all(|w| w[1] > w[0]));
    }
}

#[test]
fn published_levels_lie_below_the_depth() {
    // Not a general property: near V0min the level approaches δC0, which can exceed V0.
    use woods_saxon::presets::{TABLE_1, TABLE_2};
    for row in TABLE_1.iter().chain(TABLE_2) {
        let p = PhysicalParams::tabulated().with_depth(row.v0).unwrap();
        if let Ok(level) = energy(&p, row.qn()) {
            assert!(level.energy < p.v0, "{row:?}");
        }
    }
}

#[test]
fn spectrum_is_sorted_and_partitioned() {
    let p = PhysicalParams::tabulated().with_depth(284.0).unwrap();
    let s = spectrum(&p, 14).unwrap();
    let keys: Vec<_> = s.levels.iter().map(|lv| lv.qn).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    assert!(s.levels.iter().any(|lv| lv.qn == QuantumNumbers::new(0, 12)));
    assert!(s.excluded.iter().any(|ex| ex.qn == QuantumNumbers::new(1, 12)));
    for lv in &s.levels {
        assert!(!s.excluded.iter().any(|ex| ex.qn == lv.qn));
    }
}

#[test]
fn energy_errors_name_the_failed_condition() {
    let p = PhysicalParams::tabulated().with_depth(3.6).unwrap();
    let msg = |qn| energy(&p, qn).unwrap_err().to_string();
    assert!(msg(QuantumNumbers::new(0, 0)).contains("n′ ≤ 0: no bound state for l=0"));
    assert!(msg(QuantumNumbers::new(5, 1)).contains("n exceeds allowed range"));
    let deep = p.with_depth(10.0).unwrap();
    assert!(energy(&deep, QuantumNumbers::new(0, 1))
        .unwrap_err()
        .to_string()
        .contains("V0 > V0max"));
    let shallow = p.with_depth(1.0).unwrap();
    assert!(energy(&shallow, QuantumNumbers::new(0, 1))
        .unwrap_err()
        .to_string()
        .contains("V0 < V0min"));
}
