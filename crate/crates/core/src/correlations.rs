//! Quantum-correlation quantifiers for two-qubit states: the Fano-Bloch
//! decomposition, CHSH/Horodecki nonlocality quantities, Wootters
//! concurrence, entropic steering in both directions, and quantum discord.
//!
//! Information-theoretic quantities here use base-2 logarithms (bits).

mod discord;
mod steering;

pub use discord::{discord_luo, discord_numeric, DiscordOptions};
pub use steering::{steering_degree, steering_l, SteeringDirection, SteeringMode};

use alloc::vec::Vec;

// Float math on f64 comes from this trait in no_std builds; in test
// builds std is linked and its inherent methods shadow it.
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::Result;
use crate::linalg::{
    c64, hermitian_eigen, matrix_function, partial_trace, pauli, trace_product, ComplexMatrix,
    LogBase, Subsystem, AXES,
};
use crate::model::DensityMatrix;

/// Local Bloch vectors `u` (dot 1) and `v` (dot 2) plus the 3x3
/// correlation matrix `r` of a two-qubit state: u_j = Tr(rho s_j x I),
/// v_j = Tr(rho I x s_j), r_jk = Tr(rho s_j x s_k).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochDecomposition {
    pub u: [f64; 3],
    pub v: [f64; 3],
    pub r: [[f64; 3]; 3],
}

impl BlochDecomposition {
    /// Rebuilds the density matrix: (I + u.s x I + I x v.s + r_jk s_j x s_k)/4.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let i2 = ComplexMatrix::identity(2);
        let mut m = ComplexMatrix::identity(4);
        for (a, &axis_a) in AXES.iter().enumerate() {
            let sa = pauli(axis_a);
            m = &m + &sa.kron(&i2).scaled_real(self.u[a]);
            m = &m + &i2.kron(&sa).scaled_real(self.v[a]);
            for (b, &axis_b) in AXES.iter().enumerate() {
                m = &m + &sa.kron(&pauli(axis_b)).scaled_real(self.r[a][b]);
            }
        }
        m.scaled_real(0.25)
    }
}

pub fn bloch_decomposition(rho: &DensityMatrix) -> BlochDecomposition {
    let m = rho.matrix();
    let i2 = ComplexMatrix::identity(2);
    let mut u = [0.0; 3];
    let mut v = [0.0; 3];
    let mut r = [[0.0; 3]; 3];
    for (a, &axis_a) in AXES.iter().enumerate() {
        let sa = pauli(axis_a);
        u[a] = trace_product(m, &sa.kron(&i2)).re;
        v[a] = trace_product(m, &i2.kron(&sa)).re;
        for (b, &axis_b) in AXES.iter().enumerate() {
            r[a][b] = trace_product(m, &sa.kron(&pauli(axis_b))).re;
        }
    }
    BlochDecomposition { u, v, r }
}

/// Ascending eigenvalues of R^T R for a real 3x3 correlation matrix.
pub(crate) fn rtr_eigenvalues(r: &[[f64; 3]; 3]) -> [f64; 3] {
    let mut rtr = ComplexMatrix::zeros(3, 3);
    for a in 0..3 {
        for b in 0..3 {
            let acc: f64 = r.iter().map(|row| row[a] * row[b]).sum();
            rtr[(a, b)] = c64(acc, 0.0);
        }
    }
    let eig = hermitian_eigen(&rtr).expect("R^T R is symmetric by construction");
    [eig.eigenvalues[0], eig.eigenvalues[1], eig.eigenvalues[2]]
}

/// Horodecki quantities: `m` is the sum of the two largest eigenvalues of
/// R^T R (CHSH violated iff m > 1) and `b = sqrt(max(0, m - 1))`, which is
/// 1 at maximal violation.
pub fn chsh_quantities(rho: &DensityMatrix) -> (f64, f64) {
    let b = bloch_decomposition(rho);
    let ev = rtr_eigenvalues(&b.r);
    let m = ev[1] + ev[2];
    (m, (m - 1.0).max(0.0).sqrt())
}

/// Wootters concurrence from the spin-flipped matrix: the eigenvalues of
/// rho (y x y) rho* (y x y) are extracted through the Hermitian product
/// sqrt(rho) rho~ sqrt(rho); C = max(0, sqrt(l1) - sqrt(l2) - sqrt(l3)
/// - sqrt(l4)) with the square roots sorted descending.
pub fn concurrence(rho: &DensityMatrix) -> f64 {
    let m = rho.matrix();
    let y = pauli(crate::linalg::Axis::Y);
    let yy = y.kron(&y);
    let flipped = &(&yy * &m.conjugate()) * &yy;
    let sqrt_rho =
        matrix_function(m, |x| x.max(0.0).sqrt()).expect("validated state has a matrix sqrt");
    let inner = (&(&sqrt_rho * &flipped) * &sqrt_rho).hermitized();
    let eig = hermitian_eigen(&inner).expect("Hermitian by construction");
    // Eigenvalues at roundoff scale are artifacts of the numerically
    // widened support of sqrt(rho); square-rooting them would inject
    // ~1e-8 into the difference below. Genuine contributions sit far
    // above this floor.
    let top_raw = *eig.eigenvalues.last().expect("four eigenvalues");
    let floor = 1e-14f64.max(top_raw * 1e-12);
    let mut lambdas: Vec<f64> = eig
        .eigenvalues
        .iter()
        .map(|&l| if l < floor { 0.0 } else { l.sqrt() })
        .collect();
    let top = lambdas.pop().expect("four eigenvalues");
    let rest: f64 = lambdas.iter().sum();
    (top - rest).max(0.0)
}

/// Base-2 von Neumann entropy without state-validity gating; inputs here
/// are reductions or validated states whose eigenvalues may carry
/// roundoff slightly outside [0, 1].
pub(crate) fn entropy_bits(m: &ComplexMatrix) -> f64 {
    crate::linalg::entropy_unchecked(m, LogBase::Two)
}

/// Quantum mutual information S(rho1) + S(rho2) - S(rho) in bits.
pub fn mutual_information(rho: &DensityMatrix) -> f64 {
    let m = rho.matrix();
    let s1 = entropy_bits(&partial_trace(m, Subsystem::First));
    let s2 = entropy_bits(&partial_trace(m, Subsystem::Second));
    s1 + s2 - entropy_bits(m)
}

/// All correlation quantifiers of one state in one pass.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationReport {
    /// Numerical one-sided quantum discord, bits.
    pub discord: f64,
    pub concurrence: f64,
    /// Steering degree, dot 1 steering dot 2.
    pub steering_one_two: f64,
    /// Steering degree, dot 2 steering dot 1.
    pub steering_two_one: f64,
    pub bell_m: f64,
    pub bell_b: f64,
}

pub fn correlation_report(rho: &DensityMatrix, mode: SteeringMode) -> Result<CorrelationReport> {
    let (bell_m, bell_b) = chsh_quantities(rho);
    Ok(CorrelationReport {
        discord: discord_numeric(rho, DiscordOptions::default()),
        concurrence: concurrence(rho),
        steering_one_two: steering_degree(rho, SteeringDirection::OneToTwo, mode)?,
        steering_two_one: steering_degree(rho, SteeringDirection::TwoToOne, mode)?,
        bell_m,
        bell_b,
    })
}
