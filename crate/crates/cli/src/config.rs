//! Configuration documents: JSON schema, validation, grid expansion.

use std::path::PathBuf;

use serde::Deserialize;
use serde_json::Value;

use dqd_core::correlations::SteeringMode;

use crate::error::{CliError, Result};

/// One parameter axis: pinned to a value or swept over a grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AxisSpec {
    Fixed(f64),
    Range {
        min: f64,
        max: f64,
        steps: usize,
        log: bool,
    },
}

impl AxisSpec {
    /// Expands the axis to its grid points, ascending. Endpoints of a
    /// range are exact regardless of interior rounding.
    pub fn points(&self) -> Vec<f64> {
        match *self {
            AxisSpec::Fixed(v) => vec![v],
            AxisSpec::Range {
                min,
                max,
                steps,
                log,
            } => {
                let n = (steps - 1) as f64;
                let mut out: Vec<f64> = (0..steps)
                    .map(|i| {
                        if log {
                            (min.ln() + (max.ln() - min.ln()) * i as f64 / n).exp()
                        } else {
                            min + (max - min) * i as f64 / n
                        }
                    })
                    .collect();
                out[0] = min;
                out[steps - 1] = max;
                out
            }
        }
    }
}

/// The quantities a sweep can tabulate, in canonical column order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Quantity {
    Discord,
    Concurrence,
    Steering12,
    Steering21,
    Bell,
    Fidelity,
    FidelityDeviation,
    DetR,
    Work,
    Efficiency,
    SGlobal,
    EnergyDiff,
    SLocal,
    WorkLocal,
}

impl Quantity {
    pub const ALL: [Quantity; 14] = [
        Quantity::Discord,
        Quantity::Concurrence,
        Quantity::Steering12,
        Quantity::Steering21,
        Quantity::Bell,
        Quantity::Fidelity,
        Quantity::FidelityDeviation,
        Quantity::DetR,
        Quantity::Work,
        Quantity::Efficiency,
        Quantity::SGlobal,
        Quantity::EnergyDiff,
        Quantity::SLocal,
        Quantity::WorkLocal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Quantity::Discord => "discord",
            Quantity::Concurrence => "concurrence",
            Quantity::Steering12 => "steering12",
            Quantity::Steering21 => "steering21",
            Quantity::Bell => "bell",
            Quantity::Fidelity => "fidelity",
            Quantity::FidelityDeviation => "fidelity_deviation",
            Quantity::DetR => "det_r",
            Quantity::Work => "work",
            Quantity::Efficiency => "efficiency",
            Quantity::SGlobal => "s_global",
            Quantity::EnergyDiff => "energy_diff",
            Quantity::SLocal => "s_local",
            Quantity::WorkLocal => "work_local",
        }
    }

    pub fn from_name(name: &str) -> Option<Quantity> {
        Quantity::ALL.iter().copied().find(|q| q.name() == name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// A validated sweep request: at least one axis may be a range, the
/// temperature axis always is, and the quantity list is deduplicated into
/// canonical order.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub j: AxisSpec,
    pub delta: AxisSpec,
    pub temperature: AxisSpec,
    pub quantities: Vec<Quantity>,
    pub steering_mode: SteeringMode,
    pub output_format: OutputFormat,
    pub plot: Option<PathBuf>,
}

/// A validated single-point request.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointConfig {
    pub j: f64,
    pub delta: f64,
    pub temperature: f64,
    pub steering_mode: SteeringMode,
}

/// Raw document shape; unknown keys are rejected by serde before any
/// field-level validation runs.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    j: Option<Value>,
    delta: Option<Value>,
    temperature: Option<Value>,
    quantities: Option<Vec<String>>,
    steering_mode: Option<String>,
    output_format: Option<String>,
    plot: Option<String>,
}

fn validation(field: &str, message: impl Into<String>) -> CliError {
    CliError::Validation {
        field: field.to_string(),
        message: message.into(),
    }
}

fn parse_raw(text: &str) -> Result<RawConfig> {
    serde_json::from_str::<RawConfig>(text).map_err(|e| {
        if e.is_syntax() || e.is_eof() {
            CliError::Parse {
                line: e.line(),
                column: e.column(),
                message: e.to_string(),
            }
        } else {
            // Unknown fields and type mismatches arrive here; serde's
            // message already names the offender.
            validation("document", e.to_string())
        }
    })
}

fn axis_from_value(field: &str, v: &Value) -> Result<AxisSpec> {
    match v {
        Value::Number(n) => {
            let x = n
                .as_f64()
                .ok_or_else(|| validation(field, "not representable as f64"))?;
            if !x.is_finite() {
                return Err(validation(field, "must be finite"));
            }
            Ok(AxisSpec::Fixed(x))
        }
        Value::Object(map) => {
            for key in map.keys() {
                if !matches!(key.as_str(), "min" | "max" | "steps" | "spacing") {
                    return Err(validation(
                        field,
                        format!("unknown range key `{key}` (expected min, max, steps, spacing)"),
                    ));
                }
            }
            let get_num = |key: &str| -> Result<f64> {
                map.get(key)
                    .ok_or_else(|| validation(field, format!("range is missing `{key}`")))?
                    .as_f64()
                    .ok_or_else(|| validation(field, format!("range `{key}` must be a number")))
            };
            let min = get_num("min")?;
            let max = get_num("max")?;
            let steps = map
                .get("steps")
                .ok_or_else(|| validation(field, "range is missing `steps`"))?
                .as_u64()
                .ok_or_else(|| validation(field, "range `steps` must be a positive integer"))?
                as usize;
            let log = match map.get("spacing").and_then(Value::as_str) {
                None if map.contains_key("spacing") => {
                    return Err(validation(field, "`spacing` must be \"linear\" or \"log\""))
                }
                None => false,
                Some("linear") => false,
                Some("log") => true,
                Some(other) => {
                    return Err(validation(
                        field,
                        format!("`spacing` must be \"linear\" or \"log\", got \"{other}\""),
                    ))
                }
            };
            if !(min.is_finite() && max.is_finite()) {
                return Err(validation(field, "range bounds must be finite"));
            }
            if steps < 2 {
                return Err(validation(field, "range needs steps >= 2"));
            }
            if min >= max {
                return Err(validation(field, "range needs min < max"));
            }
            if log && min <= 0.0 {
                return Err(validation(field, "log spacing needs min > 0"));
            }
            Ok(AxisSpec::Range {
                min,
                max,
                steps,
                log,
            })
        }
        _ => Err(validation(
            field,
            "must be a number or a {min, max, steps} range",
        )),
    }
}

fn required_axis(field: &str, v: &Option<Value>) -> Result<AxisSpec> {
    let v = v
        .as_ref()
        .ok_or_else(|| validation(field, "missing required field"))?;
    axis_from_value(field, v)
}

fn steering_mode_from(raw: &Option<String>) -> Result<SteeringMode> {
    match raw.as_deref() {
        None | Some("oracle") => Ok(SteeringMode::Entropic),
        Some("paper") => Ok(SteeringMode::ClosedForm),
        Some(other) => Err(validation(
            "steering_mode",
            format!("must be \"paper\" or \"oracle\", got \"{other}\""),
        )),
    }
}

fn quantities_from(raw: &Option<Vec<String>>) -> Result<Vec<Quantity>> {
    let names = raw
        .as_ref()
        .ok_or_else(|| validation("quantities", "missing required field"))?;
    if names.is_empty() {
        return Err(validation("quantities", "must list at least one quantity"));
    }
    let mut out = Vec::with_capacity(names.len());
    for name in names {
        let q = Quantity::from_name(name).ok_or_else(|| {
            let valid: Vec<&str> = Quantity::ALL.iter().map(|q| q.name()).collect();
            validation(
                "quantities",
                format!("unknown quantity \"{name}\" (valid: {})", valid.join(", ")),
            )
        })?;
        out.push(q);
    }
    out.sort();
    out.dedup();
    Ok(out)
}

fn temperature_positive(axis: &AxisSpec) -> Result<()> {
    let ok = match *axis {
        AxisSpec::Fixed(v) => v > 0.0,
        AxisSpec::Range { min, .. } => min > 0.0,
    };
    if ok {
        Ok(())
    } else {
        Err(validation("temperature", "must be strictly positive"))
    }
}

/// Parses and validates a sweep configuration. Defaults: steering_mode =
/// oracle, output_format = csv.
pub fn parse_config(text: &str) -> Result<SweepConfig> {
    let raw = parse_raw(text)?;
    let j = required_axis("j", &raw.j)?;
    let delta = required_axis("delta", &raw.delta)?;
    let temperature = required_axis("temperature", &raw.temperature)?;
    temperature_positive(&temperature)?;
    if matches!(temperature, AxisSpec::Fixed(_)) {
        return Err(validation(
            "temperature",
            "a sweep needs a {min, max, steps} temperature range",
        ));
    }
    let quantities = quantities_from(&raw.quantities)?;
    let steering_mode = steering_mode_from(&raw.steering_mode)?;
    let output_format = match raw.output_format.as_deref() {
        None | Some("csv") => OutputFormat::Csv,
        Some("json") => OutputFormat::Json,
        Some(other) => {
            return Err(validation(
                "output_format",
                format!("must be \"csv\" or \"json\", got \"{other}\""),
            ))
        }
    };
    Ok(SweepConfig {
        j,
        delta,
        temperature,
        quantities,
        steering_mode,
        output_format,
        plot: raw.plot.map(PathBuf::from),
    })
}

/// Parses a configuration for the single-point subcommands; every axis
/// must be a fixed value. A quantities list, if present, is ignored.
pub fn parse_point_config(text: &str) -> Result<PointConfig> {
    let raw = parse_raw(text)?;
    let fixed = |field: &str, v: &Option<Value>| -> Result<f64> {
        match required_axis(field, v)? {
            AxisSpec::Fixed(x) => Ok(x),
            AxisSpec::Range { .. } => Err(validation(
                field,
                "single-point commands need a fixed value, not a range",
            )),
        }
    };
    let j = fixed("j", &raw.j)?;
    let delta = fixed("delta", &raw.delta)?;
    let temperature = fixed("temperature", &raw.temperature)?;
    let axis = AxisSpec::Fixed(temperature);
    temperature_positive(&axis)?;
    Ok(PointConfig {
        j,
        delta,
        temperature,
        steering_mode: steering_mode_from(&raw.steering_mode)?,
    })
}
