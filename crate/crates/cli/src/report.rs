//! Human-readable single-point reports for the non-sweep subcommands.
//! Every line is "name = value" so the output stays grep-friendly.

use std::fmt::Write as _;

use dqd_core::correlations::{correlation_report, SteeringMode};
use dqd_core::linalg::hermitian_eigen;
use dqd_core::model::{hamiltonian, ln_partition_function, thermal_state};
use dqd_core::teleport::teleport_report;
use dqd_core::thermo::thermo_report;
use dqd_core::{ModelParams, C64};

use crate::emit::render_value;
use crate::error::Result;

fn render_complex(z: C64) -> String {
    // The thermal states of this model are real; keep the imaginary part
    // only when it is actually there.
    if z.im.abs() <= 1e-15 {
        render_value(z.re)
    } else if z.im < 0.0 {
        format!("{}-{}i", render_value(z.re), render_value(-z.im))
    } else {
        format!("{}+{}i", render_value(z.re), render_value(z.im))
    }
}

fn params_header(p: ModelParams) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "j = {}", render_value(p.j()));
    let _ = writeln!(s, "delta = {}", render_value(p.delta()));
    let _ = writeln!(s, "temperature = {}", render_value(p.temperature()));
    s
}

/// Parameters, spectrum, partition function, and the full Gibbs state.
pub fn state_report(p: ModelParams) -> Result<String> {
    let eig = hermitian_eigen(&hamiltonian(p)).map_err(crate::error::CliError::Compute)?;
    let rho = thermal_state(p);
    let m = rho.matrix();

    let mut s = params_header(p);
    let _ = writeln!(s, "k = {}", render_value(p.k()));
    let _ = writeln!(
        s,
        "ln_partition_function = {}",
        render_value(ln_partition_function(p))
    );
    let energies: Vec<String> = eig.eigenvalues.iter().map(|&e| render_value(e)).collect();
    let _ = writeln!(s, "energies = {}", energies.join(", "));
    for r in 0..4 {
        let row: Vec<String> = (0..4).map(|c| render_complex(m[(r, c)])).collect();
        let _ = writeln!(s, "rho[{r}] = {}", row.join(", "));
    }
    Ok(s)
}

/// Discord, concurrence, both steering directions, and the CHSH pair.
pub fn correlations_report_text(p: ModelParams, mode: SteeringMode) -> Result<String> {
    let rho = thermal_state(p);
    let rep = correlation_report(&rho, mode).map_err(crate::error::CliError::Compute)?;
    let mut s = params_header(p);
    let _ = writeln!(s, "discord = {}", render_value(rep.discord));
    let _ = writeln!(s, "concurrence = {}", render_value(rep.concurrence));
    let _ = writeln!(s, "steering12 = {}", render_value(rep.steering_one_two));
    let _ = writeln!(s, "steering21 = {}", render_value(rep.steering_two_one));
    let _ = writeln!(s, "bell_m = {}", render_value(rep.bell_m));
    let _ = writeln!(s, "bell = {}", render_value(rep.bell_b));
    Ok(s)
}

/// det R and, when the state is useful for teleportation, the fidelity pair.
pub fn teleport_report_text(p: ModelParams) -> String {
    let rho = thermal_state(p);
    let rep = teleport_report(&rho);
    let mut s = params_header(p);
    let _ = writeln!(s, "det_r = {}", render_value(rep.det_r));
    match rep.max_fidelity {
        Some(f) => {
            let _ = writeln!(s, "fidelity = {}", render_value(f));
        }
        None => {
            let _ = writeln!(s, "fidelity = undefined (det R is not negative)");
        }
    }
    match rep.fidelity_deviation {
        Some(d) => {
            let _ = writeln!(s, "fidelity_deviation = {}", render_value(d));
        }
        None => {
            let _ = writeln!(s, "fidelity_deviation = undefined (det R is not negative)");
        }
    }
    let _ = writeln!(s, "useful = {}", rep.useful);
    s
}

/// Work, efficiency, and the entropic decomposition at one point.
pub fn thermo_report_text(p: ModelParams) -> String {
    let rep = thermo_report(p);
    let mut s = params_header(p);
    let _ = writeln!(s, "work = {}", render_value(rep.work));
    match rep.efficiency {
        Some(mu) => {
            let _ = writeln!(s, "efficiency = {}", render_value(mu));
        }
        None => {
            let _ = writeln!(s, "efficiency = undefined (interaction energy vanishes)");
        }
    }
    let _ = writeln!(s, "s_global = {}", render_value(rep.global_entropic));
    let _ = writeln!(s, "energy_diff = {}", render_value(rep.energy_difference));
    let _ = writeln!(s, "s_local = {}", render_value(rep.local_entropic));
    let _ = writeln!(s, "work_local = {}", render_value(rep.local_work));
    let _ = writeln!(
        s,
        "mutual_information_nats = {}",
        render_value(rep.mutual_info_nats)
    );
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(j: f64, d: f64, t: f64) -> ModelParams {
        ModelParams::new(j, d, t).unwrap()
    }

    #[test]
    fn state_report_lists_spectrum_and_unit_trace_rows() {
        let text = state_report(params(6.0, 9.0, 1.0)).unwrap();
        assert!(text.contains("j = 6\n"));
        assert!(text.contains("energies = "));
        assert!(text.contains("rho[0] = "));
        assert!(text.contains("rho[3] = "));
        // The spectrum is +/-J, +/-K in ascending order.
        let energies_line = text.lines().find(|l| l.starts_with("energies = ")).unwrap();
        let vals: Vec<f64> = energies_line["energies = ".len()..]
            .split(", ")
            .map(|v| v.parse().unwrap())
            .collect();
        assert_eq!(vals.len(), 4);
        assert!(vals.windows(2).all(|w| w[0] <= w[1]));
        assert!((vals[0] + params(6.0, 9.0, 1.0).k()).abs() < 1e-9);
    }

    #[test]
    fn thermo_report_marks_undefined_efficiency() {
        let text = thermo_report_text(params(0.0, 1.0, 1.0));
        assert!(text.contains("efficiency = undefined"));
        assert!(text.contains("work = 0\n"));
    }

    #[test]
    fn teleport_report_is_defined_in_the_cold_strong_coupling_regime() {
        let text = teleport_report_text(params(6.0, 9.0, 0.5));
        assert!(text.contains("det_r = -"));
        assert!(text.contains("useful = true"));
        let fidelity_line = text.lines().find(|l| l.starts_with("fidelity = ")).unwrap();
        let f: f64 = fidelity_line["fidelity = ".len()..].parse().unwrap();
        assert!(f > 2.0 / 3.0 && f <= 1.0);
    }

    #[test]
    fn correlations_report_has_all_six_lines() {
        let text = correlations_report_text(params(6.0, 9.0, 1.0), SteeringMode::Entropic).unwrap();
        for key in [
            "discord = ",
            "concurrence = ",
            "steering12 = ",
            "steering21 = ",
            "bell_m = ",
            "bell = ",
        ] {
            assert!(text.contains(key), "missing {key} in {text}");
        }
    }
}
