use serde_json::{json, Value};
use woods_saxon::presets::TablePreset;
use woods_saxon::wavefunction::DEFAULT_STEP;
use woods_saxon::{
    allowed_n_range, compare, energy, find_eigenvalue, normalized_wavefunction, spectrum, v0_window, Error,
    PhysicalParams, PotentialKind, QuantumNumbers, ShootingConfig,
};

use crate::error::{library_exit_code, CliError};
use crate::format::{fmt_g, json_number, Cell, Document, Table};

/// A rendered document plus the exit code it implies.
pub struct Outcome {
    pub document: Document,
    pub exit_code: u8,
    /// Printed to stderr after the document is written.
    pub warnings: Vec<String>,
}

impl Outcome {
    fn ok(document: Document) -> Self {
        Outcome {
            document,
            exit_code: 0,
            warnings: Vec::new(),
        }
    }
}

/// One `(l, n, V0)` request for `table`, with the printed energy for presets.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RowSpec {
    pub l: u32,
    pub n: u32,
    pub v0: f64,
    pub published: Option<f64>,
}

fn parse_list<T>(
    spec: &str,
    width: usize,
    what: &str,
    build: impl Fn(&[&str]) -> Option<T>,
) -> Result<Vec<T>, CliError> {
    spec.split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|item| {
            let parts: Vec<&str> = item.split(',').map(str::trim).collect();
            if parts.len() != width {
                return None;
            }
            build(&parts)
        })
        .collect::<Option<Vec<T>>>()
        .filter(|v| !v.is_empty())
        .ok_or_else(|| CliError::Usage(format!("cannot parse {what} list `{spec}`")))
}

/// `"l,n,V0;l,n,V0"`.
pub fn parse_rows(spec: &str) -> Result<Vec<RowSpec>, CliError> {
    parse_list(spec, 3, "row", |p| {
        Some(RowSpec {
            l: p[0].parse().ok()?,
            n: p[1].parse().ok()?,
            v0: p[2].parse().ok()?,
            published: None,
        })
    })
}

/// `"l,n;l,n"`.
pub fn parse_states(spec: &str) -> Result<Vec<QuantumNumbers>, CliError> {
    parse_list(spec, 2, "state", |p| {
        Some(QuantumNumbers::new(p[1].parse().ok()?, p[0].parse().ok()?))
    })
}

pub fn preset_rows(name: &str) -> Result<Vec<RowSpec>, CliError> {
    let preset = TablePreset::from_name(name).ok_or_else(|| {
        CliError::Usage(format!(
            "unknown preset `{name}` (paper-table-1, paper-table-2, custom)"
        ))
    })?;
    Ok(preset
        .rows()
        .iter()
        .map(|r| RowSpec {
            l: r.l,
            n: r.n,
            v0: r.v0,
            published: Some(r.energy),
        })
        .collect())
}

fn level_columns() -> Table {
    Table::new(&["l", "n", "V0", "V0min", "V0max", "E", "epsilon", "eta", "n_prime"])
}

fn level_row(params: &PhysicalParams, level: &woods_saxon::EnergyLevel) -> Vec<Cell> {
    vec![
        level.qn.l.into(),
        level.qn.n.into(),
        params.v0.into(),
        level.window.v0_min.into(),
        level.window.v0_max.into(),
        level.energy.into(),
        level.epsilon.into(),
        (level.n_prime - level.epsilon).into(),
        level.n_prime.into(),
    ]
}

pub fn energy_cmd(params: &PhysicalParams, qn: QuantumNumbers) -> Result<Outcome, CliError> {
    let level = energy(params, qn)?;
    let mut doc = Document::new("energy", params);
    doc.levels = level_columns();
    doc.levels.push(level_row(params, &level));
    Ok(Outcome::ok(doc))
}

pub fn spectrum_cmd(params: &PhysicalParams, l_max: u32) -> Result<Outcome, CliError> {
    let s = spectrum(params, l_max)?;
    let mut doc = Document::new("spectrum", params);
    doc.levels = level_columns();
    for level in &s.levels {
        doc.levels.push(level_row(params, level));
    }
    doc.excluded = Table::new(&["l", "n", "V0min", "V0max", "reason"]);
    for ex in &s.excluded {
        doc.excluded.push(vec![
            ex.qn.l.into(),
            ex.qn.n.into(),
            ex.window.v0_min.into(),
            ex.window.v0_max.into(),
            ex.reason.to_string().into(),
        ]);
    }
    let mut outcome = Outcome::ok(doc);
    if l_max == 0 {
        outcome.warnings.push("no l=0 bound states".into());
    }
    Ok(outcome)
}

pub fn window_cmd(params: &PhysicalParams, l: u32, n: Option<u32>) -> Result<Outcome, CliError> {
    let ns: Vec<u32> = match n {
        Some(n) => vec![n],
        None => allowed_n_range(params, l).collect(),
    };
    let mut doc = Document::new("window", params);
    doc.levels = Table::new(&["l", "n", "V0min", "V0max", "width", "n_max", "V0_inside"]);
    if ns.is_empty() {
        // surfaces the l = 0 reason
        v0_window(params, QuantumNumbers::new(0, l))?;
    }
    for n in ns {
        let w = v0_window(params, QuantumNumbers::new(n, l))?;
        doc.levels.push(vec![
            l.into(),
            n.into(),
            w.v0_min.into(),
            w.v0_max.into(),
            w.width().into(),
            w.n_max_exclusive.into(),
            (if w.contains(params.v0) { "yes" } else { "no" }).to_string().into(),
        ]);
    }
    Ok(Outcome::ok(doc))
}

pub fn table_cmd(
    params: &PhysicalParams,
    rows: &[RowSpec],
    with_oracle: bool,
    h: f64,
    preset: Option<&str>,
) -> Result<Outcome, CliError> {
    let mut rows = rows.to_vec();
    rows.sort_by_key(|r| (r.l, r.n));
    let mut columns = vec!["l", "n", "V0min", "V0max", "V0", "E_analytic"];
    if with_oracle {
        columns.extend(["E_numeric", "delta"]);
    }
    columns.extend(["E_published", "rel_error", "error"]);

    let results = parallel_map(&rows, |row| {
        let p = params.with_depth(row.v0)?;
        let qn = QuantumNumbers::new(row.n, row.l);
        let window = v0_window(&p, qn).ok();
        let analytic = energy(&p, qn);
        let numeric = match (&analytic, with_oracle) {
            (Ok(_), true) => {
                let cfg = ShootingConfig::for_params(&p).with_step(h);
                Some(find_eigenvalue(row.n, &p, row.l, PotentialKind::Pekeris, &cfg))
            }
            _ => None,
        };
        Ok::<_, Error>((window, analytic, numeric))
    });

    let mut doc = Document::new("table", params);
    if let Some(name) = preset {
        doc.comments.push(format!("preset: {name}"));
    }
    doc.comments.push("V0 varies per row; other parameters as above".into());
    doc.levels = Table::new(&columns);
    for (row, result) in rows.iter().zip(results) {
        let mut cells: Vec<Cell> = vec![row.l.into(), row.n.into()];
        let (window, analytic, numeric) = result?;
        cells.push(window.map(|w| w.v0_min).into());
        cells.push(window.map(|w| w.v0_max).into());
        cells.push(row.v0.into());
        let e = analytic.as_ref().ok().map(|lv| lv.energy);
        cells.push(e.into());
        let mut errors: Vec<String> = analytic.as_ref().err().map(ToString::to_string).into_iter().collect();
        if with_oracle {
            let num = match numeric {
                Some(Ok(v)) => Some(v),
                Some(Err(err)) => {
                    errors.push(format!("oracle: {err}"));
                    None
                }
                None => None,
            };
            cells.push(num.into());
            cells.push(e.zip(num).map(|(a, b)| (a - b).abs()).into());
        }
        cells.push(row.published.into());
        cells.push(e.zip(row.published).map(|(a, b)| (a / b - 1.0).abs()).into());
        cells.push(if errors.is_empty() {
            Cell::Empty
        } else {
            errors.join("; ").into()
        });
        doc.levels.push(cells);
    }
    Ok(Outcome::ok(doc))
}

pub fn wavefunction_cmd(
    params: &PhysicalParams,
    qn: QuantumNumbers,
    r_max: Option<f64>,
    h: Option<f64>,
) -> Result<Outcome, CliError> {
    let level = energy(params, qn)?;
    let table = normalized_wavefunction(params, qn, r_max, h.unwrap_or(DEFAULT_STEP))?;
    let eta = level.n_prime - level.epsilon;
    let mut doc = Document::new("wavefunction", params);
    doc.comments = vec![
        format!("l={} n={}", qn.l, qn.n),
        format!("C_nl={}", fmt_g(table.norm_constant)),
        format!("epsilon={}", fmt_g(level.epsilon)),
        format!("eta={}", fmt_g(eta)),
        format!("E_nl={} MeV", fmt_g(level.energy)),
        format!(
            "r_max={} fm h={} fm",
            fmt_g(table.grid.r_max()),
            fmt_g(table.grid.spacing)
        ),
    ];
    doc.levels = level_columns();
    doc.levels.push(level_row(params, &level));
    let mut samples = Table::new(&["r", "u"]);
    for (r, u) in table.grid.r_values.iter().zip(&table.u_values) {
        samples.push(vec![(*r).into(), (*u).into()]);
    }
    doc.samples = Some(samples);
    let numbers = |xs: &[f64]| Value::Array(xs.iter().map(|x| json_number(*x)).collect());
    doc.extra.push((
        "wavefunction",
        json!({
            "norm_constant": json_number(table.norm_constant),
            "epsilon": json_number(level.epsilon),
            "eta": json_number(eta),
            "spacing": json_number(table.grid.spacing),
            "r": numbers(&table.grid.r_values),
            "u": numbers(&table.u_values),
        }),
    ));
    Ok(Outcome::ok(doc))
}

pub fn validate_cmd(
    params: &PhysicalParams,
    cases: &[(QuantumNumbers, f64)],
    tol: f64,
    h: f64,
) -> Result<Outcome, CliError> {
    let reports = parallel_map(cases, |(qn, v0)| {
        let p = params.with_depth(*v0)?;
        compare(&p, *qn, &ShootingConfig::for_params(&p).with_step(h))
    });
    let mut doc = Document::new("validate", params);
    doc.comments
        .push(format!("tolerance={} MeV h={} fm", fmt_g(tol), fmt_g(h)));
    doc.levels = Table::new(&[
        "l",
        "n",
        "V0",
        "E_analytic",
        "E_pekeris",
        "agreement",
        "E_exact",
        "pekeris_error",
        "status",
        "error",
    ]);
    let mut exit_code = 0u8;
    for ((qn, v0), report) in cases.iter().zip(reports) {
        let mut cells: Vec<Cell> = vec![qn.l.into(), qn.n.into(), (*v0).into()];
        match report {
            Ok(r) => {
                let pass = r.agreement < tol;
                if !pass {
                    exit_code = 3;
                }
                cells.extend([
                    r.e_analytic.into(),
                    r.e_numeric_pekeris.into(),
                    r.agreement.into(),
                    r.e_numeric_exact.into(),
                    r.pekeris_error.into(),
                    (if pass { "ok" } else { "fail" }).to_string().into(),
                    r.exact_failure.map(|e| format!("exact: {e}")).into(),
                ]);
            }
            Err(e) => {
                let code = library_exit_code(&e);
                exit_code = exit_code.max(code);
                let status = if code == 2 { "no-bound-state" } else { "error" };
                cells.extend([Cell::Empty, Cell::Empty, Cell::Empty, Cell::Empty, Cell::Empty]);
                cells.push(status.to_string().into());
                cells.push(e.to_string().into());
            }
        }
        doc.levels.push(cells);
    }
    Ok(Outcome {
        document: doc,
        exit_code,
        warnings: Vec::new(),
    })
}

/// Runs `f` over `items` on scoped threads; results come back in input order.
fn parallel_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let workers = std::thread::available_parallelism()
        .map_or(1, |n| n.get())
        .min(items.len().max(1));
    let chunk = items.len().div_ceil(workers).max(1);
    std::thread::scope(|scope| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .map(|part| {
                let f = &f;
                scope.spawn(move || part.iter().map(f).collect::<Vec<R>>())
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("worker panicked"))
            .collect()
    })
}
