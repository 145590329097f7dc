//! Entropic steering along the three Pauli axes.
//!
//! Two evaluation modes are provided. `Entropic` sums the measured
//! conditional entropies H(target | steering dot) over the x, y, z axes
//! directly from the state; the three-axis entropic criterion certifies
//! steering when that sum drops below 2 bits. `ClosedForm` evaluates a
//! literal closed-form expression specialized to the symmetric thermal
//! pattern of this model, normalized so that its maximum value 6 maps to
//! degree 1. The two modes use different scales on purpose and are kept
//! as independent term-by-term implementations.

// Float math on f64 comes from this trait in no_std builds; in test
// builds std is linked and its inherent methods shadow it.
#[allow(unused_imports)]
use num_traits::Float;

use crate::correlations::bloch_decomposition;
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, LogBase};
use crate::model::DensityMatrix;

/// How steering is quantified; see the module docs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SteeringMode {
    /// Literal symmetric-pattern expression, degree (L - 2)/4 clamped at 0.
    ClosedForm,
    /// Measured three-axis conditional entropies, degree (2 - L)/2 clamped at 0.
    Entropic,
}

/// Which dot steers which.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SteeringDirection {
    /// Dot 1 measures, dot 2 is steered.
    OneToTwo,
    /// Dot 2 measures, dot 1 is steered.
    TwoToOne,
}

/// Tolerance for the symmetric-pattern gate of the closed-form mode.
const PATTERN_TOL: f64 = 1e-8;

/// Independent elements of a state matching the symmetric thermal pattern
/// (real entries, equal diagonal pairs, one repeated off-diagonal value).
struct ThermalPattern {
    r11: f64,
    r22: f64,
    r12: f64,
    r14: f64,
    r23: f64,
}

/// Extracts pattern elements, failing with the observed deviation if the
/// state strays from the symmetric thermal pattern by more than 1e-8.
fn thermal_pattern(rho: &DensityMatrix) -> Result<ThermalPattern> {
    let m = rho.matrix();
    let r11 = (m[(0, 0)].re + m[(3, 3)].re) / 2.0;
    let r22 = (m[(1, 1)].re + m[(2, 2)].re) / 2.0;
    let r14 = (m[(0, 3)].re + m[(3, 0)].re) / 2.0;
    let r23 = (m[(1, 2)].re + m[(2, 1)].re) / 2.0;
    let corner_slots = [
        (0, 1),
        (0, 2),
        (1, 0),
        (2, 0),
        (1, 3),
        (3, 1),
        (2, 3),
        (3, 2),
    ];
    let r12 = corner_slots.iter().map(|&(i, j)| m[(i, j)].re).sum::<f64>() / 8.0;
    let expected = ComplexMatrix::from_real_rows(&[
        &[r11, r12, r12, r14],
        &[r12, r22, r23, r12],
        &[r12, r23, r22, r12],
        &[r14, r12, r12, r11],
    ]);
    let deviation = m.max_abs_diff(&expected);
    if deviation > PATTERN_TOL {
        return Err(Error::PatternMismatch { deviation });
    }
    Ok(ThermalPattern {
        r11,
        r22,
        r12,
        r14,
        r23,
    })
}

/// Closed-form steering sum, dot 1 steering dot 2. Each summand is of the
/// form x log2 x with non-positive arguments contributing zero; the term
/// list is kept literal rather than simplified.
fn closed_form_l_one_two(p: &ThermalPattern) -> f64 {
    let lb = LogBase::Two;
    0.5 * (lb.xlog(2.0 * p.r11)
        + lb.xlog(4.0 * p.r11)
        + 2.0 * lb.xlog(4.0 * p.r22)
        + lb.xlog(1.0 - 2.0 * (4.0 * p.r12 - p.r14 - p.r23))
        + 2.0 * lb.xlog(1.0 - 2.0 * (-p.r14 + p.r23))
        + 2.0 * lb.xlog(1.0 + 2.0 * (-p.r14 + p.r23))
        + 2.0 * lb.xlog(1.0 - 2.0 * (p.r14 + p.r23))
        + lb.xlog(1.0 + 2.0 * (4.0 * p.r12 + p.r14 + p.r23)))
}

/// Closed-form steering sum, dot 2 steering dot 1. Identical to the
/// one-to-two list except that the term mixing the corner element with
/// the anti-diagonal pair is absent.
fn closed_form_l_two_one(p: &ThermalPattern) -> f64 {
    let lb = LogBase::Two;
    0.5 * (lb.xlog(2.0 * p.r11)
        + lb.xlog(4.0 * p.r11)
        + 2.0 * lb.xlog(4.0 * p.r22)
        + 2.0 * lb.xlog(1.0 - 2.0 * (-p.r14 + p.r23))
        + 2.0 * lb.xlog(1.0 + 2.0 * (-p.r14 + p.r23))
        + 2.0 * lb.xlog(1.0 - 2.0 * (p.r14 + p.r23))
        + lb.xlog(1.0 + 2.0 * (4.0 * p.r12 + p.r14 + p.r23)))
}

/// Measured three-axis conditional entropy sum for the given direction.
/// For each Pauli axis w the joint outcome distribution is
/// p(a, b) = (1 + a u_w + b v_w + a b r_ww)/4 and the summand is
/// H(joint) - H(steering-dot marginal), all in bits.
fn entropic_l(rho: &DensityMatrix, direction: SteeringDirection) -> f64 {
    let lb = LogBase::Two;
    let bloch = bloch_decomposition(rho);
    let mut total = 0.0;
    for w in 0..3 {
        let (uw, vw, rww) = (bloch.u[w], bloch.v[w], bloch.r[w][w]);
        let mut joint = 0.0;
        for a in [1.0, -1.0] {
            for b in [1.0, -1.0] {
                joint -= lb.xlog(0.25 * (1.0 + a * uw + b * vw + a * b * rww));
            }
        }
        let steer = match direction {
            SteeringDirection::OneToTwo => uw,
            SteeringDirection::TwoToOne => vw,
        };
        let mut marginal = 0.0;
        for a in [1.0, -1.0] {
            marginal -= lb.xlog(0.5 * (1.0 + a * steer));
        }
        total += joint - marginal;
    }
    total
}

/// The raw steering sum L for the given direction and mode. ClosedForm
/// mode fails with `PatternMismatch` on states outside the symmetric
/// thermal pattern.
pub fn steering_l(
    rho: &DensityMatrix,
    direction: SteeringDirection,
    mode: SteeringMode,
) -> Result<f64> {
    match mode {
        SteeringMode::Entropic => Ok(entropic_l(rho, direction)),
        SteeringMode::ClosedForm => {
            let pattern = thermal_pattern(rho)?;
            Ok(match direction {
                SteeringDirection::OneToTwo => closed_form_l_one_two(&pattern),
                SteeringDirection::TwoToOne => closed_form_l_two_one(&pattern),
            })
        }
    }
}

/// Steering degree in [0, 1]: ClosedForm maps L through max(0, (L-2)/4);
/// Entropic maps it through max(0, (2-L)/2), so 1 means maximal steering
/// in both conventions.
pub fn steering_degree(
    rho: &DensityMatrix,
    direction: SteeringDirection,
    mode: SteeringMode,
) -> Result<f64> {
    let l = steering_l(rho, direction, mode)?;
    Ok(match mode {
        SteeringMode::ClosedForm => ((l - 2.0) / 4.0).max(0.0),
        SteeringMode::Entropic => ((2.0 - l) / 2.0).max(0.0),
    })
}
