//! The coupled-double-quantum-dot pseudospin model: Hamiltonian, its
//! closed-form spectrum, and Gibbs thermal states, with the closed-form
//! matrix elements kept as an independent cross-check of the spectral
//! construction.

// Float math on f64 comes from this trait in no_std builds; in test
// builds std is linked and its inherent methods shadow it.
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::linalg::{
    c64, hermitian_eigen, matrix_function, pauli, Axis, ComplexMatrix, C64, HERMITICITY_TOL,
};

/// Couplings and temperature of the two-dot model, sharing one energy unit
/// (k_B and hbar equal to one): `j` is the Coulomb coupling between dots,
/// `delta` the tunneling amplitude inside each dot.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    j: f64,
    delta: f64,
    temperature: f64,
}

impl ModelParams {
    /// Requires finite `j`, finite `delta >= 0`, finite `temperature > 0`.
    pub fn new(j: f64, delta: f64, temperature: f64) -> Result<Self> {
        if !j.is_finite() {
            return Err(Error::InvalidParams {
                field: "j",
                value: j,
            });
        }
        if !(delta.is_finite() && delta >= 0.0) {
            return Err(Error::InvalidParams {
                field: "delta",
                value: delta,
            });
        }
        if !(temperature.is_finite() && temperature > 0.0) {
            return Err(Error::InvalidParams {
                field: "temperature",
                value: temperature,
            });
        }
        Ok(Self {
            j,
            delta,
            temperature,
        })
    }

    pub fn j(&self) -> f64 {
        self.j
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn temperature(&self) -> f64 {
        self.temperature
    }

    /// Inverse temperature 1/T.
    pub fn beta(&self) -> f64 {
        1.0 / self.temperature
    }

    /// Level-splitting scale sqrt(J^2 + 4 Delta^2).
    pub fn k(&self) -> f64 {
        self.j.hypot(2.0 * self.delta)
    }
}

/// A validated two-qubit density operator.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    m: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates Hermiticity and unit trace to 1e-10 and a spectrum
    /// bounded below by -1e-8.
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        assert!(m.rows() == 4 && m.cols() == 4, "density matrix must be 4x4");
        let deviation = m.hermiticity_deviation();
        if deviation > HERMITICITY_TOL {
            return Err(Error::NotHermitian { deviation });
        }
        let trace_deviation = (m.trace() - c64(1.0, 0.0)).norm();
        let eig = hermitian_eigen(&m)?;
        let min_eigenvalue = eig.eigenvalues[0];
        if trace_deviation > 1e-10 || min_eigenvalue < -1e-8 {
            return Err(Error::NotState {
                trace_deviation,
                min_eigenvalue,
            });
        }
        Ok(Self { m })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.m
    }

    /// Projector onto a pure state; the amplitudes are normalized first.
    pub fn from_pure(amplitudes: [C64; 4]) -> Self {
        let norm_sqr: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        assert!(norm_sqr > 0.0, "zero state vector");
        let m =
            ComplexMatrix::from_fn(4, 4, |i, j| amplitudes[i] * amplitudes[j].conj() / norm_sqr);
        Self { m }
    }

    /// Product state a (x) b of two single-qubit density matrices.
    pub fn from_product(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<Self> {
        assert!(a.rows() == 2 && a.cols() == 2 && b.rows() == 2 && b.cols() == 2);
        Self::new(a.kron(b))
    }

    /// (|00> + |11>)/sqrt(2).
    pub fn bell_phi_plus() -> Self {
        let r = c64(0.5f64.sqrt(), 0.0);
        Self::from_pure([r, c64(0.0, 0.0), c64(0.0, 0.0), r])
    }

    /// (|00> - |11>)/sqrt(2).
    pub fn bell_phi_minus() -> Self {
        let r = 0.5f64.sqrt();
        Self::from_pure([c64(r, 0.0), c64(0.0, 0.0), c64(0.0, 0.0), c64(-r, 0.0)])
    }

    /// (|01> + |10>)/sqrt(2).
    pub fn bell_psi_plus() -> Self {
        let r = c64(0.5f64.sqrt(), 0.0);
        Self::from_pure([c64(0.0, 0.0), r, r, c64(0.0, 0.0)])
    }

    /// (|01> - |10>)/sqrt(2).
    pub fn bell_psi_minus() -> Self {
        let r = 0.5f64.sqrt();
        Self::from_pure([c64(0.0, 0.0), c64(r, 0.0), c64(-r, 0.0), c64(0.0, 0.0)])
    }

    /// I/4.
    pub fn maximally_mixed() -> Self {
        Self {
            m: ComplexMatrix::identity(4).scaled_real(0.25),
        }
    }

    /// (I + c1 x(x)x + c2 y(x)y + c3 z(x)z)/4; fails if the coefficients
    /// leave the physical tetrahedron.
    pub fn bell_diagonal(c1: f64, c2: f64, c3: f64) -> Result<Self> {
        let mut m = ComplexMatrix::identity(4);
        for (axis, c) in [(Axis::X, c1), (Axis::Y, c2), (Axis::Z, c3)] {
            let s = pauli(axis);
            m = &m + &s.kron(&s).scaled_real(c);
        }
        Self::new(m.scaled_real(0.25))
    }

    /// lambda |psi-><psi-| + (1 - lambda) I/4; fails outside the physical
    /// range lambda in [-1/3, 1].
    pub fn werner(lambda: f64) -> Result<Self> {
        let singlet = Self::bell_psi_minus();
        let mixed = ComplexMatrix::identity(4).scaled_real(0.25 * (1.0 - lambda));
        Self::new(&singlet.m.scaled_real(lambda) + &mixed)
    }
}

/// The four energies and eigenvector coefficients of the model Hamiltonian
/// in closed form. `e3` is the ground energy for every parameter choice.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumClosedForm {
    pub e1: f64,
    pub e2: f64,
    pub e3: f64,
    pub e4: f64,
    pub alpha_plus: f64,
    pub alpha_minus: f64,
    pub beta_plus: f64,
    pub beta_minus: f64,
}

impl SpectrumClosedForm {
    /// Energies in presentation order: singlet -J, triplet +J, then the
    /// tunneling-split pair -K, +K.
    pub fn energies(&self) -> [f64; 4] {
        [self.e1, self.e2, self.e3, self.e4]
    }

    pub fn sorted_energies(&self) -> [f64; 4] {
        let mut e = self.energies();
        e.sort_by(f64::total_cmp);
        e
    }

    /// Normalized eigenvector columns in the same order as `energies()`.
    pub fn eigenvectors(&self) -> ComplexMatrix {
        let r = 0.5f64.sqrt();
        let (ap, am, bp, bm) = (
            self.alpha_plus,
            self.alpha_minus,
            self.beta_plus,
            self.beta_minus,
        );
        ComplexMatrix::from_real_rows(&[
            &[0.0, -r, bp, bm],
            &[-r, 0.0, -ap * bp, -am * bm],
            &[r, 0.0, -ap * bp, -am * bm],
            &[0.0, r, bp, bm],
        ])
    }

    /// Amplitudes of the ground state (energy `e3`).
    pub fn ground_state(&self) -> [f64; 4] {
        let b = self.beta_plus;
        let ab = -self.alpha_plus * b;
        [b, ab, ab, b]
    }
}

/// The 4x4 model Hamiltonian in the left/right occupation basis:
/// diagonal (J, -J, -J, J) with the tunneling amplitude on the
/// single-flip positions.
pub fn hamiltonian(p: ModelParams) -> ComplexMatrix {
    let j = p.j();
    let d = p.delta();
    ComplexMatrix::from_real_rows(&[
        &[j, d, d, 0.0],
        &[d, -j, 0.0, d],
        &[d, 0.0, -j, d],
        &[0.0, d, d, j],
    ])
}

/// The three additive pieces: local tunneling of each dot and the Coulomb
/// coupling, (Delta x(x)I, Delta I(x)x, J z(x)z). Their sum equals
/// [`hamiltonian`] exactly.
pub fn bare_hamiltonians(p: ModelParams) -> (ComplexMatrix, ComplexMatrix, ComplexMatrix) {
    let sx = pauli(Axis::X);
    let sz = pauli(Axis::Z);
    let i2 = ComplexMatrix::identity(2);
    let h1 = sx.kron(&i2).scaled_real(p.delta());
    let h2 = i2.kron(&sx).scaled_real(p.delta());
    let h12 = sz.kron(&sz).scaled_real(p.j());
    (h1, h2, h12)
}

/// Closed-form spectrum. Refuses `delta = 0`, where the eigenvector
/// coefficients degenerate; use the generic eigensolver there instead.
pub fn spectrum_closed_form(p: ModelParams) -> Result<SpectrumClosedForm> {
    if p.delta() == 0.0 {
        return Err(Error::DegenerateTunneling);
    }
    let j = p.j();
    let d = p.delta();
    let k = p.k();
    // Cancellation-free evaluation of (J +- K)/(2 Delta); the product of
    // the two coefficients is exactly -1.
    let (alpha_plus, alpha_minus) = if j >= 0.0 {
        let ap = (j + k) / (2.0 * d);
        (ap, -1.0 / ap)
    } else {
        let am = (j - k) / (2.0 * d);
        (-1.0 / am, am)
    };
    let beta_plus = 1.0 / (2.0 * (1.0 + alpha_plus * alpha_plus)).sqrt();
    let beta_minus = 1.0 / (2.0 * (1.0 + alpha_minus * alpha_minus)).sqrt();
    Ok(SpectrumClosedForm {
        e1: -j,
        e2: j,
        e3: -k,
        e4: k,
        alpha_plus,
        alpha_minus,
        beta_plus,
        beta_minus,
    })
}

/// Gibbs state e^{-beta H}/Z through the generic eigensolver. The ground
/// energy is subtracted before exponentiation so low temperatures cannot
/// overflow.
pub fn thermal_state(p: ModelParams) -> DensityMatrix {
    let h = hamiltonian(p);
    let beta = p.beta();
    let e_min = -p.k();
    let boltzmann = matrix_function(&h, |e| (-beta * (e - e_min)).exp())
        .expect("the model Hamiltonian is Hermitian and Gibbs weights are finite");
    let z = boltzmann.trace().re;
    DensityMatrix {
        m: boltzmann.scaled_real(1.0 / z),
    }
}

/// Z = 2 (cosh(beta J) + cosh(beta K)), evaluated in the log domain first
/// so large beta cannot lose precision to intermediate overflow.
pub fn partition_function(p: ModelParams) -> f64 {
    ln_partition_function(p).exp()
}

/// ln Z with every exponential argument non-positive: ln Z = beta K +
/// ln(1 + e^{-2 beta K} + e^{-beta(K - |J|)} + e^{-beta(K + |J|)}).
pub fn ln_partition_function(p: ModelParams) -> f64 {
    let beta = p.beta();
    let k = p.k();
    let aj = p.j().abs();
    let bk = beta * k;
    let rest = (-2.0 * bk).exp() + (-beta * (k - aj)).exp() + (-beta * (k + aj)).exp();
    bk + rest.ln_1p()
}

/// The thermal state assembled from its closed-form matrix elements.
///
/// The element formulas are normalized against the spectral sum
/// e^{-beta H}/Z (the published forms carry sign typos); this function and
/// [`thermal_state`] must agree entrywise, which the test suite enforces.
/// Refuses `delta = 0` like every closed form here.
pub fn thermal_elements_closed_form(p: ModelParams) -> Result<DensityMatrix> {
    let s = spectrum_closed_form(p)?;
    let beta = p.beta();
    let k = p.k();
    let j = p.j();
    // Boltzmann weights rescaled by the inverse ground weight e^{beta K};
    // all exponents are <= 0, so low temperatures stay finite.
    let w1 = (-beta * (k - j)).exp();
    let w2 = (-beta * (k + j)).exp();
    let w3 = 1.0;
    let w4 = (-2.0 * beta * k).exp();
    let z = w1 + w2 + w3 + w4;
    let (ap, am) = (s.alpha_plus, s.alpha_minus);
    let bp2 = s.beta_plus * s.beta_plus;
    let bm2 = s.beta_minus * s.beta_minus;
    let r11 = (0.5 * w2 + bp2 * w3 + bm2 * w4) / z;
    let r22 = (0.5 * w1 + ap * ap * bp2 * w3 + am * am * bm2 * w4) / z;
    let r12 = -(ap * bp2 * w3 + am * bm2 * w4) / z;
    let r14 = (-0.5 * w2 + bp2 * w3 + bm2 * w4) / z;
    let r23 = (-0.5 * w1 + ap * ap * bp2 * w3 + am * am * bm2 * w4) / z;
    let m = ComplexMatrix::from_real_rows(&[
        &[r11, r12, r12, r14],
        &[r12, r22, r23, r12],
        &[r12, r23, r22, r12],
        &[r14, r12, r12, r11],
    ]);
    Ok(DensityMatrix { m })
}
