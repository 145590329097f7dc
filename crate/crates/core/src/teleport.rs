//! Teleportation figures of merit for a two-qubit resource state.
//!
//! The standard protocol run over a state whose correlation matrix R has
//! negative determinant reaches an average output fidelity of
//! (3 + m1 + m2 + m3)/6, where the m_i are the singular values of R.
//! States with det R >= 0 are outside that regime, so the fidelity
//! quantities are gated on the sign of the determinant. The deviation
//! quantity measures how unevenly the three channels contribute, which
//! bounds the fidelity fluctuation over input states.

// Float math on f64 comes from this trait in no_std builds; in test
// builds std is linked and its inherent methods shadow it.
#[allow(unused_imports)]
use num_traits::Float;

use crate::correlations::bloch_decomposition;
use crate::error::{Error, Result};
use crate::model::DensityMatrix;

/// Determinant of the 3x3 correlation matrix r_jk = Tr(rho s_j x s_k).
pub fn det_r(rho: &DensityMatrix) -> f64 {
    let r = bloch_decomposition(rho).r;
    r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1])
        - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
        + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0])
}

/// Singular values of the correlation matrix, ascending.
fn r_moduli(rho: &DensityMatrix) -> [f64; 3] {
    let bloch = bloch_decomposition(rho);
    let ev = crate::correlations::rtr_eigenvalues(&bloch.r);
    [
        ev[0].max(0.0).sqrt(),
        ev[1].max(0.0).sqrt(),
        ev[2].max(0.0).sqrt(),
    ]
}

/// Average teleportation fidelity from the three channel moduli.
pub fn fidelity_from_moduli(moduli: [f64; 3]) -> f64 {
    (3.0 + moduli[0].abs() + moduli[1].abs() + moduli[2].abs()) / 6.0
}

/// Fidelity deviation from the three channel moduli:
/// sqrt(sum over pairs of squared differences) / (3 sqrt(10)).
pub fn deviation_from_moduli(moduli: [f64; 3]) -> f64 {
    let [a, b, c] = moduli;
    let pairs = (a - b) * (a - b) + (a - c) * (a - c) + (b - c) * (b - c);
    pairs.sqrt() / (3.0 * 10.0_f64.sqrt())
}

/// Average fidelity of standard teleportation through `rho`. Fails with
/// `ValidityDomain` when det R >= 0, where the formula does not apply.
pub fn max_fidelity(rho: &DensityMatrix) -> Result<f64> {
    let det = det_r(rho);
    if det >= 0.0 {
        return Err(Error::ValidityDomain { det_r: det });
    }
    Ok(fidelity_from_moduli(r_moduli(rho)))
}

/// Fidelity deviation of standard teleportation through `rho`, gated on
/// det R < 0 like [`max_fidelity`]. Zero means the fidelity is the same
/// for every input state.
pub fn fidelity_deviation(rho: &DensityMatrix) -> Result<f64> {
    let det = det_r(rho);
    if det >= 0.0 {
        return Err(Error::ValidityDomain { det_r: det });
    }
    Ok(deviation_from_moduli(r_moduli(rho)))
}

/// Teleportation summary of one state. Outside the det R < 0 regime the
/// fidelity quantities are absent and the state is not useful.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TeleportReport {
    pub det_r: f64,
    pub max_fidelity: Option<f64>,
    pub fidelity_deviation: Option<f64>,
    /// True when the state beats the best classical strategy:
    /// det R < 0 and fidelity above 2/3.
    pub useful: bool,
}

pub fn teleport_report(rho: &DensityMatrix) -> TeleportReport {
    let det = det_r(rho);
    if det >= 0.0 {
        return TeleportReport {
            det_r: det,
            max_fidelity: None,
            fidelity_deviation: None,
            useful: false,
        };
    }
    let moduli = r_moduli(rho);
    let fidelity = fidelity_from_moduli(moduli);
    TeleportReport {
        det_r: det,
        max_fidelity: Some(fidelity),
        fidelity_deviation: Some(deviation_from_moduli(moduli)),
        useful: fidelity > 2.0 / 3.0,
    }
}
