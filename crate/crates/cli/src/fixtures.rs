//! Fixture-based regression checks: canonical parameter points whose
//! blessed values are stored in a JSON file and recomputed on demand.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use dqd_core::correlations::SteeringMode;

use crate::config::Quantity;
use crate::error::{CliError, Result};
use crate::sweep::evaluate_point;

pub const FIXTURE_VERSION: u32 = 1;

/// The checkpoints every fixture file must cover: the correlation-rich
/// cold-to-hot slice at strong couplings, two thermodynamic working
/// points, and the degenerate-efficiency point at zero coupling.
pub const CANONICAL_POINTS: [(f64, f64, f64); 7] = [
    (0.0, 1.0, 1.0),
    (1.0, 1.0, 1.0),
    (1.0, 2.0, 2.0),
    (6.0, 9.0, 0.5),
    (6.0, 9.0, 1.0),
    (6.0, 9.0, 4.0),
    (6.0, 9.0, 8.0),
];

/// Optimizer-backed quantities drift more across environments than the
/// closed-form ones, so they get a wider tolerance.
pub fn tolerance(q: Quantity) -> f64 {
    match q {
        Quantity::Discord => 1e-6,
        _ => 1e-9,
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FixtureFile {
    version: u32,
    steering_mode: String,
    points: Vec<FixturePoint>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FixturePoint {
    j: f64,
    delta: f64,
    temperature: f64,
    values: BTreeMap<String, Option<f64>>,
}

fn mode_from_name(name: &str) -> Result<SteeringMode> {
    match name {
        "oracle" => Ok(SteeringMode::Entropic),
        "paper" => Ok(SteeringMode::ClosedForm),
        other => Err(CliError::Validation {
            field: "steering_mode".to_string(),
            message: format!("fixture file has unknown mode \"{other}\""),
        }),
    }
}

fn compute_point(j: f64, delta: f64, t: f64, mode: SteeringMode) -> BTreeMap<String, Option<f64>> {
    let (values, _warnings) = evaluate_point(j, delta, t, &Quantity::ALL, mode);
    Quantity::ALL
        .iter()
        .zip(values)
        .map(|(q, v)| (q.name().to_string(), v))
        .collect()
}

/// Recomputes every canonical point and writes the fixture file.
pub fn bless(path: &Path, mode: SteeringMode) -> Result<usize> {
    let file = FixtureFile {
        version: FIXTURE_VERSION,
        steering_mode: match mode {
            SteeringMode::Entropic => "oracle".to_string(),
            SteeringMode::ClosedForm => "paper".to_string(),
        },
        points: CANONICAL_POINTS
            .iter()
            .map(|&(j, delta, t)| FixturePoint {
                j,
                delta,
                temperature: t,
                values: compute_point(j, delta, t, mode),
            })
            .collect(),
    };
    let mut text = serde_json::to_string_pretty(&file).expect("fixture serialization");
    text.push('\n');
    fs::write(path, text).map_err(|source| CliError::OutputIo {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(CANONICAL_POINTS.len())
}

/// The outcome of checking one fixture file: a printable report plus the
/// failure count.
#[derive(Debug)]
pub struct CheckReport {
    pub text: String,
    pub failures: usize,
}

/// Recomputes every canonical point and compares against the stored
/// values within per-quantity tolerances. Both sides absent counts as
/// agreement; one-sided absence is a mismatch.
pub fn check(path: &Path) -> Result<CheckReport> {
    let raw = fs::read_to_string(path).map_err(|source| CliError::ConfigIo {
        path: path.to_path_buf(),
        source,
    })?;
    let file: FixtureFile = serde_json::from_str(&raw).map_err(|e| {
        if e.is_syntax() || e.is_eof() {
            CliError::Parse {
                line: e.line(),
                column: e.column(),
                message: e.to_string(),
            }
        } else {
            CliError::Validation {
                field: "fixtures".to_string(),
                message: e.to_string(),
            }
        }
    })?;
    if file.version != FIXTURE_VERSION {
        return Err(CliError::Validation {
            field: "version".to_string(),
            message: format!(
                "fixture version {} is not supported (expected {FIXTURE_VERSION})",
                file.version
            ),
        });
    }
    let mode = mode_from_name(&file.steering_mode)?;

    let mut text = String::new();
    let mut failures = 0;
    for &(j, delta, t) in &CANONICAL_POINTS {
        let key = format!("j={j} delta={delta} temperature={t}");
        let stored = file
            .points
            .iter()
            .find(|p| p.j == j && p.delta == delta && p.temperature == t);
        let Some(stored) = stored else {
            failures += 1;
            let _ = writeln!(text, "{key}: missing fixture");
            continue;
        };
        let fresh = compute_point(j, delta, t, mode);
        let mut point_failures = Vec::new();
        for q in Quantity::ALL {
            let name = q.name();
            let blessed = stored.values.get(name).copied().flatten();
            let got = fresh.get(name).copied().flatten();
            match (blessed, got) {
                (None, None) => {}
                (Some(b), Some(g)) => {
                    let delta_abs = (b - g).abs();
                    if delta_abs > tolerance(q) {
                        point_failures.push(format!(
                            "  {name}: recomputed {g}, blessed {b}, |delta| = {delta_abs:e} \
                             exceeds {:e}",
                            tolerance(q)
                        ));
                    }
                }
                (blessed, got) => {
                    let show = |v: Option<f64>| match v {
                        Some(x) => x.to_string(),
                        None => "absent".to_string(),
                    };
                    point_failures.push(format!(
                        "  {name}: recomputed {}, blessed {}",
                        show(got),
                        show(blessed)
                    ));
                }
            }
        }
        if point_failures.is_empty() {
            let _ = writeln!(text, "{key}: ok");
        } else {
            failures += 1;
            let _ = writeln!(text, "{key}: FAILED");
            for line in point_failures {
                let _ = writeln!(text, "{line}");
            }
        }
    }
    let _ = writeln!(
        text,
        "{} of {} fixture points pass",
        CANONICAL_POINTS.len() - failures,
        CANONICAL_POINTS.len()
    );
    Ok(CheckReport { text, failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use tempfile::tempdir;

    #[test]
    fn blessed_fixtures_pass_their_own_check() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("fixtures.json");
        let n = bless(&path, SteeringMode::Entropic).unwrap();
        assert_eq!(n, 7);
        let report = check(&path).unwrap();
        assert_eq!(report.failures, 0, "{}", report.text);
        assert!(report.text.contains("7 of 7 fixture points pass"));
    }

    #[test]
    fn perturbed_value_is_caught_and_named() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("fixtures.json");
        bless(&path, SteeringMode::Entropic).unwrap();
        let mut doc: serde_json::Value =
            serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
        let target = &mut doc["points"][4]["values"]["concurrence"];
        *target = serde_json::json!(target.as_f64().unwrap() + 1e-3);
        fs::write(&path, serde_json::to_string(&doc).unwrap()).unwrap();
        let report = check(&path).unwrap();
        assert_eq!(report.failures, 1);
        assert!(report.text.contains("concurrence"));
        assert!(report.text.contains("exceeds"));
    }

    #[test]
    fn wrong_parameters_produce_missing_fixture() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("fixtures.json");
        bless(&path, SteeringMode::Entropic).unwrap();
        let mut doc: serde_json::Value =
            serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
        doc["points"][0]["j"] = serde_json::json!(7.0);
        fs::write(&path, serde_json::to_string(&doc).unwrap()).unwrap();
        let report = check(&path).unwrap();
        assert_eq!(report.failures, 1);
        assert!(report.text.contains("missing fixture"));
    }

    #[test]
    fn absence_mismatch_is_a_failure() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("fixtures.json");
        bless(&path, SteeringMode::Entropic).unwrap();
        let mut doc: serde_json::Value =
            serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
        // Point 0 is (j=0, delta=1, T=1) where efficiency is legitimately
        // absent; pretend it had a value.
        doc["points"][0]["values"]["efficiency"] = serde_json::json!(0.5);
        fs::write(&path, serde_json::to_string(&doc).unwrap()).unwrap();
        let report = check(&path).unwrap();
        assert_eq!(report.failures, 1);
        assert!(report.text.contains("efficiency"));
        assert!(report.text.contains("absent"));
    }

    #[test]
    fn unsupported_version_is_rejected() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("fixtures.json");
        bless(&path, SteeringMode::Entropic).unwrap();
        let mut doc: serde_json::Value =
            serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
        doc["version"] = serde_json::json!(2);
        fs::write(&path, serde_json::to_string(&doc).unwrap()).unwrap();
        match check(&path) {
            Err(CliError::Validation { field, .. }) => assert_eq!(field, "version"),
            other => panic!("expected version validation error, got {other:?}"),
        }
    }
}
