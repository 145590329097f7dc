//! Thermodynamic quantities of the thermal state: extractable work,
//! ideal efficiency, global and local entropic terms, energy difference,
//! and local work.
//!
//! Entropies in this module use natural logarithms so that the
//! temperature-weighted terms carry energy units. The reference frame is
//! the non-interacting pair: each dot alone thermalizes to the local
//! Gibbs qubit of its bare tunneling Hamiltonian, and every quantity
//! below compares the correlated thermal state against that product.

// Float math on f64 comes from this trait in no_std builds; in test
// builds std is linked and its inherent methods shadow it.
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::linalg::{entropy_unchecked, partial_trace, trace_product, LogBase, Subsystem};
use crate::model::{
    bare_hamiltonians, hamiltonian, ln_partition_function, thermal_state, ModelParams,
};

/// Shared ingredients of the thermodynamic quantities, computed once per
/// parameter point.
struct Pieces {
    temperature: f64,
    /// ln Z1 + ln Z2 - ln Z_S with Z_i the bare local partition
    /// functions 2 cosh(beta Delta) and Z_S the full one.
    ln_z_ratio: f64,
    /// Interaction energy Tr[H rho] - Tr[(H1 + H2) rho].
    interaction_energy: f64,
    /// Entropy of the thermal state, nats.
    s_total: f64,
    /// Entropy of one bare local Gibbs qubit, nats.
    s_local_gibbs: f64,
    /// Summed entropies of the two reduced thermal marginals, nats.
    s_reduced_sum: f64,
}

fn pieces(p: ModelParams) -> Pieces {
    let rho = thermal_state(p);
    let m = rho.matrix();
    let h = hamiltonian(p);
    let (h1, h2, _) = bare_hamiltonians(p);
    let local = &h1 + &h2;
    let interaction_energy = trace_product(&h, m).re - trace_product(&local, m).re;

    // ln Z_i = ln(2 cosh(beta Delta)) kept in a form whose exponents
    // never overflow and which cancels the full ln Z_S exactly when the
    // coupling is switched off.
    let a = p.beta() * p.delta();
    let q = (-2.0 * a).exp();
    let ln_z_local = a + q.ln_1p();
    let ln_z_ratio = 2.0 * ln_z_local - ln_partition_function(p);

    let s_local_gibbs = q.ln_1p() + 2.0 * a * q / (1.0 + q);
    Pieces {
        temperature: p.temperature(),
        ln_z_ratio,
        interaction_energy,
        s_total: entropy_unchecked(m, LogBase::Natural),
        s_local_gibbs,
        s_reduced_sum: entropy_unchecked(&partial_trace(m, Subsystem::First), LogBase::Natural)
            + entropy_unchecked(&partial_trace(m, Subsystem::Second), LogBase::Natural),
    }
}

fn work_of(pc: &Pieces) -> f64 {
    pc.temperature * pc.ln_z_ratio - pc.interaction_energy
}

fn global_entropic_of(pc: &Pieces) -> f64 {
    pc.temperature * (pc.s_total - 2.0 * pc.s_local_gibbs)
}

fn local_entropic_of(pc: &Pieces) -> f64 {
    pc.temperature * (pc.s_reduced_sum - 2.0 * pc.s_local_gibbs)
}

fn mutual_info_of(pc: &Pieces) -> f64 {
    (pc.s_reduced_sum - pc.s_total).max(0.0)
}

fn efficiency_of(pc: &Pieces) -> Result<f64> {
    if pc.interaction_energy.abs() <= 1e-12 {
        return Err(Error::Undefined {
            denominator: pc.interaction_energy,
        });
    }
    Ok(work_of(pc) / -pc.interaction_energy)
}

/// Work extractable from switching the coupling on and letting the pair
/// thermalize: W = T ln(Z1 Z2 / Z_S) - <H12>.
pub fn extractable_work(p: ModelParams) -> f64 {
    work_of(&pieces(p))
}

/// Ideal efficiency mu = W / (-<H12>), at most 1. Fails with `Undefined`
/// when the interaction energy vanishes (no coupling or infinite
/// temperature), where the ratio has no meaning.
pub fn efficiency(p: ModelParams) -> Result<f64> {
    efficiency_of(&pieces(p))
}

/// Global entropic term S_G = T(S(rho) - S(rho_1 x rho_2)) against the
/// product of bare local Gibbs states, in energy units.
pub fn global_entropic_term(p: ModelParams) -> f64 {
    global_entropic_of(&pieces(p))
}

/// Energy difference E = W + S_G.
pub fn energy_difference(p: ModelParams) -> f64 {
    let pc = pieces(p);
    work_of(&pc) + global_entropic_of(&pc)
}

/// Local entropic term S_l = T(S(rho_1^r x rho_2^r) - S(rho_1 x rho_2)):
/// the reduced thermal marginals against the bare local Gibbs states.
pub fn local_entropic_term(p: ModelParams) -> f64 {
    local_entropic_of(&pieces(p))
}

/// Local work W_l = W - T S(1:2), where S(1:2) is the mutual entropy of
/// the thermal state in nats; never exceeds W.
pub fn local_work(p: ModelParams) -> f64 {
    let pc = pieces(p);
    work_of(&pc) - pc.temperature * mutual_info_of(&pc)
}

/// All thermodynamic quantities of one parameter point. An undefined
/// efficiency is reported as an absent value, not a failure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermoReport {
    pub work: f64,
    pub efficiency: Option<f64>,
    pub global_entropic: f64,
    pub energy_difference: f64,
    pub local_entropic: f64,
    pub local_work: f64,
    pub mutual_info_nats: f64,
}

pub fn thermo_report(p: ModelParams) -> ThermoReport {
    let pc = pieces(p);
    let work = work_of(&pc);
    let global_entropic = global_entropic_of(&pc);
    let mutual = mutual_info_of(&pc);
    ThermoReport {
        work,
        efficiency: efficiency_of(&pc).ok(),
        global_entropic,
        energy_difference: work + global_entropic,
        local_entropic: local_entropic_of(&pc),
        local_work: work - pc.temperature * mutual,
        mutual_info_nats: mutual,
    }
}
