//! Deterministic evaluation of a parameter grid, optionally in parallel.
//!
//! Every cell is computed independently from immutable inputs and the
//! results are assembled in grid order, so the output is byte-identical
//! for any worker count.

use rayon::prelude::*;

use dqd_core::correlations::{correlation_report, SteeringMode};
use dqd_core::model::{thermal_state, ModelParams};
use dqd_core::teleport::teleport_report;
use dqd_core::thermo::thermo_report;

use crate::config::{Quantity, SweepConfig};
use crate::error::{CliError, Result};

/// One grid point: the parameters and one slot per requested quantity,
/// aligned with the config's canonical quantity order.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub j: f64,
    pub delta: f64,
    pub temperature: f64,
    pub values: Vec<Option<f64>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepOutput {
    pub quantities: Vec<Quantity>,
    pub rows: Vec<SweepRow>,
    /// Diagnostics for cells that degraded to absent, in row order.
    pub warnings: Vec<String>,
}

/// Resolves the worker count: explicit flag first, then the DQD_WORKERS
/// environment variable, then the library default (logical CPUs).
pub fn resolve_workers(flag: Option<usize>) -> Result<Option<usize>> {
    let validate = |n: usize, source: &str| -> Result<Option<usize>> {
        if n == 0 {
            Err(CliError::Validation {
                field: "workers".to_string(),
                message: format!("{source} must be at least 1"),
            })
        } else {
            Ok(Some(n))
        }
    };
    if let Some(n) = flag {
        return validate(n, "--workers");
    }
    match std::env::var("DQD_WORKERS") {
        Ok(text) => match text.trim().parse::<usize>() {
            Ok(n) => validate(n, "DQD_WORKERS"),
            Err(_) => Err(CliError::Validation {
                field: "workers".to_string(),
                message: format!("DQD_WORKERS is not a valid count: \"{text}\""),
            }),
        },
        Err(_) => Ok(None),
    }
}

/// Runs the sweep with the given worker count (None = library default).
/// Rows come back in lexicographic (j, delta, temperature) order. A sweep
/// where every cell failed is an error; partial failures degrade to
/// absent cells plus warnings.
pub fn run_sweep(cfg: &SweepConfig, workers: Option<usize>) -> Result<SweepOutput> {
    let mut points = Vec::new();
    for &j in &cfg.j.points() {
        for &delta in &cfg.delta.points() {
            for &t in &cfg.temperature.points() {
                points.push((j, delta, t));
            }
        }
    }

    let eval = |&(j, delta, t): &(f64, f64, f64)| {
        evaluate_point(j, delta, t, &cfg.quantities, cfg.steering_mode)
    };
    let cells: Vec<(Vec<Option<f64>>, Vec<String>)> = match workers {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .expect("worker pool")
            .install(|| points.par_iter().map(eval).collect()),
        None => points.par_iter().map(eval).collect(),
    };

    let mut rows = Vec::with_capacity(points.len());
    let mut warnings = Vec::new();
    let mut any_value = false;
    for ((j, delta, t), (values, cell_warnings)) in points.into_iter().zip(cells) {
        any_value |= values.iter().any(Option::is_some);
        rows.push(SweepRow {
            j,
            delta,
            temperature: t,
            values,
        });
        warnings.extend(cell_warnings);
    }
    if !any_value {
        return Err(CliError::EmptySweep);
    }
    Ok(SweepOutput {
        quantities: cfg.quantities.clone(),
        rows,
        warnings,
    })
}

/// Computes the requested quantities at one point. Failures turn into
/// absent values with a diagnostic, never a panic: sweeps span parameter
/// regions where some quantities are legitimately undefined.
pub fn evaluate_point(
    j: f64,
    delta: f64,
    temperature: f64,
    quantities: &[Quantity],
    mode: SteeringMode,
) -> (Vec<Option<f64>>, Vec<String>) {
    use Quantity::*;

    let mut values: Vec<Option<f64>> = vec![None; quantities.len()];
    let mut warnings = Vec::new();
    let here = |msg: &str| format!("j={j} delta={delta} temperature={temperature}: {msg}");
    let wants = |q: Quantity| quantities.contains(&q);

    let params = match ModelParams::new(j, delta, temperature) {
        Ok(p) => p,
        Err(e) => {
            warnings.push(here(&format!("{e}")));
            return (values, warnings);
        }
    };

    let set = |values: &mut Vec<Option<f64>>, q: Quantity, v: f64| {
        if let Some(i) = quantities.iter().position(|&x| x == q) {
            // Non-finite results are reported as absent, like any other
            // failed cell, so they cannot corrupt the CSV/JSON output.
            values[i] = v.is_finite().then_some(v);
        }
    };

    let needs_state = [
        Discord,
        Concurrence,
        Steering12,
        Steering21,
        Bell,
        Fidelity,
        FidelityDeviation,
        DetR,
    ]
    .iter()
    .any(|&q| wants(q));
    let rho = needs_state.then(|| thermal_state(params));

    if [Discord, Concurrence, Steering12, Steering21, Bell]
        .iter()
        .any(|&q| wants(q))
    {
        let rho = rho.as_ref().expect("state built for correlations");
        match correlation_report(rho, mode) {
            Ok(r) => {
                set(&mut values, Discord, r.discord);
                set(&mut values, Concurrence, r.concurrence);
                set(&mut values, Steering12, r.steering_one_two);
                set(&mut values, Steering21, r.steering_two_one);
                set(&mut values, Bell, r.bell_b);
            }
            Err(e) => warnings.push(here(&format!("correlations unavailable: {e}"))),
        }
    }

    if [Fidelity, FidelityDeviation, DetR]
        .iter()
        .any(|&q| wants(q))
    {
        let rho = rho.as_ref().expect("state built for teleportation");
        let r = teleport_report(rho);
        set(&mut values, DetR, r.det_r);
        match (r.max_fidelity, r.fidelity_deviation) {
            (Some(f), Some(d)) => {
                set(&mut values, Fidelity, f);
                set(&mut values, FidelityDeviation, d);
            }
            _ => {
                if wants(Fidelity) || wants(FidelityDeviation) {
                    warnings.push(here(&format!(
                        "teleportation fidelity undefined: det R = {} is not negative",
                        r.det_r
                    )));
                }
            }
        }
    }

    if [Work, Efficiency, SGlobal, EnergyDiff, SLocal, WorkLocal]
        .iter()
        .any(|&q| wants(q))
    {
        let r = thermo_report(params);
        set(&mut values, Work, r.work);
        set(&mut values, SGlobal, r.global_entropic);
        set(&mut values, EnergyDiff, r.energy_difference);
        set(&mut values, SLocal, r.local_entropic);
        set(&mut values, WorkLocal, r.local_work);
        match r.efficiency {
            Some(mu) => set(&mut values, Efficiency, mu),
            None => {
                if wants(Efficiency) {
                    warnings.push(here("efficiency undefined: interaction energy vanishes"));
                }
            }
        }
    }

    (values, warnings)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{parse_config, AxisSpec, OutputFormat};

    fn tiny_config(quantities: &str) -> SweepConfig {
        parse_config(&format!(
            r#"{{"j":6, "delta":9, "temperature":{{"min":0.5,"max":2,"steps":4}},
                 "quantities":{quantities}}}"#
        ))
        .unwrap()
    }

    #[test]
    fn rows_are_lexicographic_and_complete() {
        let mut cfg = tiny_config(r#"["concurrence","work"]"#);
        cfg.j = AxisSpec::Range {
            min: 1.0,
            max: 2.0,
            steps: 2,
            log: false,
        };
        let out = run_sweep(&cfg, Some(2)).unwrap();
        assert_eq!(out.rows.len(), 8);
        let mut keys: Vec<(f64, f64, f64)> = out
            .rows
            .iter()
            .map(|r| (r.j, r.delta, r.temperature))
            .collect();
        let original = keys.clone();
        keys.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(keys, original);
        assert!(out.rows.iter().all(|r| r.values.len() == 2));
        assert!(out.warnings.is_empty());
    }

    #[test]
    fn worker_count_does_not_change_the_result() {
        let cfg = tiny_config(r#"["discord","bell","fidelity","work","efficiency"]"#);
        let one = run_sweep(&cfg, Some(1)).unwrap();
        let four = run_sweep(&cfg, Some(4)).unwrap();
        assert_eq!(one, four);
    }

    #[test]
    fn undefined_efficiency_degrades_to_an_absent_cell() {
        let mut cfg = tiny_config(r#"["work","efficiency"]"#);
        cfg.j = AxisSpec::Fixed(0.0);
        let out = run_sweep(&cfg, Some(1)).unwrap();
        for row in &out.rows {
            assert!(row.values[0].is_some(), "work must still compute");
            assert!(row.values[1].is_none(), "efficiency must be absent");
        }
        assert_eq!(out.warnings.len(), out.rows.len());
        assert!(out.warnings[0].contains("efficiency"));
    }

    #[test]
    fn fully_failed_sweep_is_an_error() {
        let mut cfg = tiny_config(r#"["efficiency"]"#);
        cfg.j = AxisSpec::Fixed(0.0);
        match run_sweep(&cfg, Some(1)) {
            Err(CliError::EmptySweep) => {}
            other => panic!("expected EmptySweep, got {other:?}"),
        }
        assert_eq!(CliError::EmptySweep.exit_code(), 1);
    }

    #[test]
    fn single_point_axes_with_two_temperature_steps_give_two_rows() {
        let mut cfg = tiny_config(r#"["bell"]"#);
        cfg.temperature = AxisSpec::Range {
            min: 1.0,
            max: 2.0,
            steps: 2,
            log: false,
        };
        cfg.output_format = OutputFormat::Csv;
        let out = run_sweep(&cfg, Some(1)).unwrap();
        assert_eq!(out.rows.len(), 2);
        assert_eq!(out.rows[0].temperature, 1.0);
        assert_eq!(out.rows[1].temperature, 2.0);
    }
}
