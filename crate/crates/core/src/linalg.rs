//! Dense complex linear algebra sized for one- and two-qubit problems:
//! matrices, a cyclic Jacobi eigensolver for Hermitian inputs, matrix
//! functions through the spectral decomposition, partial traces, and
//! entropy helpers.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex;

// Float math on f64 comes from this trait in no_std builds; in test
// builds std is linked and its inherent methods shadow it.
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;

/// Shorthand complex constructor, usable in const position.
#[inline]
pub const fn c64(re: f64, im: f64) -> C64 {
    Complex::new(re, im)
}

/// Largest entrywise |A - A^H| tolerated before a matrix is rejected as
/// non-Hermitian.
pub const HERMITICITY_TOL: f64 = 1e-10;

/// Sweep budget for the Jacobi eigensolver.
pub const MAX_JACOBI_SWEEPS: usize = 100;

/// Convergence target for the off-diagonal Frobenius mass, relative to the
/// Frobenius norm of the input.
pub const JACOBI_OFF_TOL: f64 = 1e-14;

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![c64(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c64(1.0, 0.0);
        }
        m
    }

    pub fn from_fn<F: FnMut(usize, usize) -> C64>(rows: usize, cols: usize, mut f: F) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Builds a matrix from row slices; all rows must share one length.
    pub fn from_rows(rows: &[&[C64]]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(nrows, ncols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged rows");
            for (j, &z) in row.iter().enumerate() {
                m[(i, j)] = z;
            }
        }
        m
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(nrows, ncols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged rows");
            for (j, &x) in row.iter().enumerate() {
                m[(i, j)] = c64(x, 0.0);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conjugate(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)].conj())
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> C64 {
        assert!(self.is_square(), "trace of a non-square matrix");
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.rows, other.rows);
        assert_eq!(self.cols, other.cols);
        self.data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest entrywise |A[i][j] - conj(A[j][i])|.
    pub fn hermiticity_deviation(&self) -> f64 {
        assert!(self.is_square(), "hermiticity of a non-square matrix");
        let mut dev: f64 = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    pub fn scaled(&self, z: C64) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)] * z)
    }

    pub fn scaled_real(&self, x: f64) -> Self {
        self.scaled(c64(x, 0.0))
    }

    /// (A + A^H) / 2, the Hermitian part.
    pub fn hermitized(&self) -> Self {
        assert!(self.is_square(), "hermitized of a non-square matrix");
        Self::from_fn(self.rows, self.cols, |i, j| {
            (self[(i, j)] + self[(j, i)].conj()) * 0.5
        })
    }

    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out[(i * other.rows + k, j * other.cols + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        out
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.rows, rhs.rows);
        assert_eq!(self.cols, rhs.cols);
        ComplexMatrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)] + rhs[(i, j)])
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.rows, rhs.rows);
        assert_eq!(self.cols, rhs.cols);
        ComplexMatrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)] - rhs[(i, j)])
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matrix product");
        let mut out = ComplexMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs.data[k * rhs.cols + j];
                }
            }
        }
        out
    }
}

/// Tr(A B) without forming the product.
pub fn trace_product(a: &ComplexMatrix, b: &ComplexMatrix) -> C64 {
    assert_eq!(a.cols(), b.rows());
    assert_eq!(b.cols(), a.rows());
    let mut acc = c64(0.0, 0.0);
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            acc += a[(i, j)] * b[(j, i)];
        }
    }
    acc
}

/// Bloch axis label.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

pub const AXES: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

/// The 2x2 Pauli matrix for an axis.
pub fn pauli(axis: Axis) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(2, 2);
    match axis {
        Axis::X => {
            m[(0, 1)] = c64(1.0, 0.0);
            m[(1, 0)] = c64(1.0, 0.0);
        }
        Axis::Y => {
            m[(0, 1)] = c64(0.0, -1.0);
            m[(1, 0)] = c64(0.0, 1.0);
        }
        Axis::Z => {
            m[(0, 0)] = c64(1.0, 0.0);
            m[(1, 1)] = c64(-1.0, 0.0);
        }
    }
    m
}

/// Spectral decomposition of a Hermitian matrix.
///
/// Column j of `eigenvectors` belongs to `eigenvalues[j]`; eigenvalues are
/// sorted ascending.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

/// Diagonalizes a Hermitian matrix with cyclic complex Jacobi rotations.
///
/// Rejects inputs whose Hermiticity deviation exceeds [`HERMITICITY_TOL`]
/// and reports failure if convergence takes more than
/// [`MAX_JACOBI_SWEEPS`] sweeps. Termination leaves the off-diagonal mass
/// below [`JACOBI_OFF_TOL`] times the input norm; pivots are skipped on a
/// relative threshold against their diagonal pair, which keeps small
/// eigenvalues of graded matrices (such as Gibbs weights at low
/// temperature) accurate in the relative sense, not just the absolute.
pub fn hermitian_eigen(m: &ComplexMatrix) -> Result<HermitianEigen> {
    assert!(m.is_square(), "eigendecomposition of a non-square matrix");
    let deviation = m.hermiticity_deviation();
    if deviation > HERMITICITY_TOL {
        return Err(Error::NotHermitian { deviation });
    }

    let n = m.rows();
    let mut a = m.hermitized();
    let mut v = ComplexMatrix::identity(n);

    let mut sweeps = 0;
    loop {
        if sweeps == MAX_JACOBI_SWEEPS {
            return Err(Error::NoConvergence { sweeps });
        }
        sweeps += 1;
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                rotated |= rotate(&mut a, &mut v, p, q);
            }
        }
        // A rotation-free sweep zeroes every pivot it visits and nothing
        // reintroduces mass afterwards, so the matrix is now diagonal.
        if !rotated {
            break;
        }
    }

    // Sort ascending, keeping the original order among equal eigenvalues.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));

    let eigenvalues: Vec<f64> = order.iter().map(|&k| a[(k, k)].re).collect();
    let mut eigenvectors = ComplexMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        for i in 0..n {
            eigenvectors[(i, dst)] = v[(i, src)];
        }
    }
    fix_column_phases(&mut eigenvectors);

    Ok(HermitianEigen {
        eigenvalues,
        eigenvectors,
    })
}

/// One complex Jacobi rotation zeroing the (p, q) entry of `a`, accumulated
/// into `v`. Returns false when the pivot is negligible relative to its
/// diagonal pair; such entries are dropped outright, a perturbation that is
/// itself below the relative noise floor of the affected eigenvalues.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) -> bool {
    let n = a.rows();
    let b = a[(p, q)];
    let babs = b.norm();
    let floor = f64::EPSILON * (a[(p, p)].re.abs() * a[(q, q)].re.abs()).sqrt();
    if babs <= floor {
        a[(p, q)] = c64(0.0, 0.0);
        a[(q, p)] = c64(0.0, 0.0);
        return false;
    }
    let phase = b / babs;
    let theta = (a[(q, q)].re - a[(p, p)].re) / (2.0 * babs);
    // Smaller-magnitude root of t^2 + 2*theta*t - 1 = 0.
    let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
    let t = sign / (theta.abs() + (1.0 + theta * theta).sqrt());
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = phase * (t * c);

    // A <- A U with U = [[c, s], [-conj(s), c]] on the (p, q) plane.
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * c - akq * s.conj();
        a[(k, q)] = akp * s + akq * c;
    }
    // A <- U^H A.
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * c - aqk * s;
        a[(q, k)] = apk * s.conj() + aqk * c;
    }
    // V <- V U.
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c - vkq * s.conj();
        v[(k, q)] = vkp * s + vkq * c;
    }

    a[(p, q)] = c64(0.0, 0.0);
    a[(q, p)] = c64(0.0, 0.0);
    a[(p, p)] = c64(a[(p, p)].re, 0.0);
    a[(q, q)] = c64(a[(q, q)].re, 0.0);
    true
}

/// Rotates each column's global phase so its first largest-magnitude entry
/// is real and positive. This pins an otherwise arbitrary gauge.
fn fix_column_phases(vectors: &mut ComplexMatrix) {
    let n = vectors.rows();
    for j in 0..vectors.cols() {
        let mut max_abs = 0.0f64;
        for i in 0..n {
            max_abs = max_abs.max(vectors[(i, j)].norm());
        }
        if max_abs == 0.0 {
            continue;
        }
        let mut anchor = c64(1.0, 0.0);
        for i in 0..n {
            let z = vectors[(i, j)];
            if z.norm() >= max_abs * (1.0 - 1e-12) {
                anchor = z;
                break;
            }
        }
        let w = anchor.conj() / anchor.norm();
        for i in 0..n {
            vectors[(i, j)] *= w;
        }
    }
}

/// Applies a real scalar function to a Hermitian matrix through its
/// spectral decomposition: f(A) = V diag(f(lambda)) V^H.
///
/// Fails with [`Error::DomainError`] if `f` returns a non-finite value for
/// any eigenvalue.
pub fn matrix_function<F: Fn(f64) -> f64>(m: &ComplexMatrix, f: F) -> Result<ComplexMatrix> {
    let eig = hermitian_eigen(m)?;
    let n = eig.eigenvalues.len();
    let mut mapped = Vec::with_capacity(n);
    for &lambda in &eig.eigenvalues {
        let y = f(lambda);
        if !y.is_finite() {
            return Err(Error::DomainError { eigenvalue: lambda });
        }
        mapped.push(y);
    }
    let v = &eig.eigenvectors;
    let mut out = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = c64(0.0, 0.0);
            for (k, &fk) in mapped.iter().enumerate() {
                acc += v[(i, k)] * fk * v[(j, k)].conj();
            }
            out[(i, j)] = acc;
        }
    }
    Ok(out.hermitized())
}

/// Which qubit a two-qubit partial trace keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    First,
    Second,
}

/// Reduced 2x2 matrix of a 4x4 two-qubit operator.
pub fn partial_trace(rho: &ComplexMatrix, keep: Subsystem) -> ComplexMatrix {
    assert!(
        rho.rows() == 4 && rho.cols() == 4,
        "partial trace expects a two-qubit matrix"
    );
    let mut out = ComplexMatrix::zeros(2, 2);
    for i in 0..2 {
        for j in 0..2 {
            let mut acc = c64(0.0, 0.0);
            for k in 0..2 {
                acc += match keep {
                    Subsystem::First => rho[(2 * i + k, 2 * j + k)],
                    Subsystem::Second => rho[(2 * k + i, 2 * k + j)],
                };
            }
            out[(i, j)] = acc;
        }
    }
    out
}

/// Logarithm base used by entropy-like quantities: bits or nats.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LogBase {
    Two,
    Natural,
}

impl LogBase {
    pub fn log(self, x: f64) -> f64 {
        match self {
            LogBase::Two => x.log2(),
            LogBase::Natural => x.ln(),
        }
    }

    /// x log x with the continuous extension x log x -> 0 for x <= 0.
    pub fn xlog(self, x: f64) -> f64 {
        if x <= 0.0 {
            0.0
        } else {
            x * self.log(x)
        }
    }
}

/// Von Neumann entropy -Tr(rho log rho) of a density matrix.
///
/// Eigenvalues slightly outside [0, 1] from roundoff are clamped; clearly
/// negative eigenvalues or a trace away from one are rejected.
pub fn von_neumann_entropy(rho: &ComplexMatrix, base: LogBase) -> Result<f64> {
    let eig = hermitian_eigen(rho)?;
    let min_eigenvalue = eig
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    let trace: f64 = eig.eigenvalues.iter().sum();
    let trace_deviation = trace - 1.0;
    if min_eigenvalue < -1e-8 || trace_deviation.abs() > 1e-8 {
        return Err(Error::NotState {
            trace_deviation,
            min_eigenvalue,
        });
    }
    Ok(-eig
        .eigenvalues
        .iter()
        .map(|&lambda| base.xlog(lambda.min(1.0)))
        .sum::<f64>())
}

/// Entropy of a Hermitian matrix without state-validity gating, for
/// internal use on reductions and other by-construction-valid inputs
/// whose eigenvalues may sit slightly outside [0, 1] from roundoff.
pub(crate) fn entropy_unchecked(m: &ComplexMatrix, base: LogBase) -> f64 {
    let eig = hermitian_eigen(m).expect("Hermitian by construction");
    -eig.eigenvalues
        .iter()
        .map(|&lambda| base.xlog(lambda.min(1.0)))
        .sum::<f64>()
}

/// A finite probability distribution validated at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityVector(Vec<f64>);

impl ProbabilityVector {
    /// Accepts entries within roundoff of [0, 1] summing to one within
    /// 1e-10, clamping tiny excursions.
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        let sum: f64 = entries.iter().sum();
        let min_entry = entries.iter().copied().fold(f64::INFINITY, f64::min);
        let max_entry = entries.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let ok = min_entry >= -1e-12 && max_entry <= 1.0 + 1e-12 && (sum - 1.0).abs() <= 1e-10;
        if !ok {
            return Err(Error::InvalidDistribution { sum, min_entry });
        }
        Ok(Self(
            entries.into_iter().map(|p| p.clamp(0.0, 1.0)).collect(),
        ))
    }

    pub fn entropy(&self, base: LogBase) -> f64 {
        -self.0.iter().map(|&p| base.xlog(p)).sum::<f64>()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}
