//! Dense complex state vectors and matrices.
//!
//! Bit ordering: qubit 1 is the most significant bit of an amplitude index and
//! qubit M the least significant, so for three qubits `amps[1]` is the
//! coefficient of `|001⟩`.

use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A single complex amplitude.
pub type ComplexAmp = Complex64;

/// Tolerance used when a state is declared normalized.
pub const NORM_TOL: f64 = 1e-9;

/// Default max-abs tolerance for entry-wise comparisons.
pub const DEFAULT_EQ_TOL: f64 = 1e-10;

pub(crate) fn check_finite(amps: &[ComplexAmp]) -> Result<()> {
    match amps
        .iter()
        .position(|a| !(a.re.is_finite() && a.im.is_finite()))
    {
        Some(index) => Err(Error::NonFinite { index }),
        None => Ok(()),
    }
}

/// Pure state of `num_qubits` qubits stored as `2^num_qubits` amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amps: Vec<ComplexAmp>,
}

impl StateVector {
    pub fn new(num_qubits: usize, amps: Vec<ComplexAmp>) -> Result<Self> {
        if num_qubits == 0 {
            return Err(Error::NoQubits);
        }
        if num_qubits >= usize::BITS as usize || amps.len() != 1usize << num_qubits {
            return Err(Error::BadStateLength {
                num_qubits,
                len: amps.len(),
            });
        }
        check_finite(&amps)?;
        Ok(Self { num_qubits, amps })
    }

    /// Infers the qubit count from the amplitude count.
    pub fn from_amps(amps: Vec<ComplexAmp>) -> Result<Self> {
        let len = amps.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::BadStateLength {
                num_qubits: len.max(1).ilog2() as usize,
                len,
            });
        }
        Self::new(len.trailing_zeros() as usize, amps)
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(num_qubits: usize, index: usize) -> Result<Self> {
        let mut amps = vec![ComplexAmp::new(0.0, 0.0); 1 << num_qubits];
        if index >= amps.len() {
            return Err(Error::LengthMismatch {
                what: "basis index",
                expected: amps.len(),
                actual: index,
            });
        }
        amps[index] = ComplexAmp::new(1.0, 0.0);
        Self::new(num_qubits, amps)
    }

    pub(crate) fn from_raw(num_qubits: usize, amps: Vec<ComplexAmp>) -> Self {
        debug_assert_eq!(amps.len(), 1 << num_qubits);
        Self { num_qubits, amps }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amps(&self) -> &[ComplexAmp] {
        &self.amps
    }

    pub fn into_amps(self) -> Vec<ComplexAmp> {
        self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm_sqr() - 1.0).abs() <= NORM_TOL
    }

    /// Returns the state rescaled to unit norm.
    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 {
            return Err(Error::ZeroNorm("state vector"));
        }
        Ok(self.scaled(ComplexAmp::new(1.0 / n, 0.0)))
    }

    pub fn scaled(&self, c: ComplexAmp) -> Self {
        Self::from_raw(self.num_qubits, self.amps.iter().map(|a| a * c).collect())
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Result<ComplexAmp> {
        self.check_same_size(other)?;
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Kronecker product `self ⊗ other`; `self` occupies the high-order qubits.
    pub fn tensor(&self, other: &StateVector) -> StateVector {
        let amps = self
            .amps
            .iter()
            .flat_map(|a| other.amps.iter().map(move |b| a * b))
            .collect();
        Self::from_raw(self.num_qubits + other.num_qubits, amps)
    }

    pub fn max_abs_diff(&self, other: &StateVector) -> Result<f64> {
        self.check_same_size(other)?;
        Ok(max_abs_diff(&self.amps, &other.amps))
    }

    fn check_same_size(&self, other: &StateVector) -> Result<()> {
        if self.num_qubits != other.num_qubits {
            return Err(Error::LengthMismatch {
                what: "qubit count",
                expected: self.num_qubits,
                actual: other.num_qubits,
            });
        }
        Ok(())
    }
}

pub(crate) fn max_abs_diff(a: &[ComplexAmp], b: &[ComplexAmp]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Row-major dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<ComplexAmp>,
}

impl DenseMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<ComplexAmp>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::BadMatrixShape {
                rows,
                cols,
                len: entries.len(),
            });
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![ComplexAmp::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ComplexAmp::new(1.0, 0.0);
        }
        m
    }

    /// Builds a matrix from real row-major values.
    pub fn from_real(rows: usize, cols: usize, values: &[f64]) -> Result<Self> {
        Self::new(
            rows,
            cols,
            values.iter().map(|&v| ComplexAmp::new(v, 0.0)).collect(),
        )
    }

    pub fn from_2x2(m: [[ComplexAmp; 2]; 2]) -> Self {
        Self {
            rows: 2,
            cols: 2,
            entries: vec![m[0][0], m[0][1], m[1][0], m[1][1]],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[ComplexAmp] {
        &self.entries
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn scaled(&self, c: ComplexAmp) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * c).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)];
            }
        }
        t
    }

    pub fn matmul(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        if self.cols != other.rows {
            return Err(Error::LengthMismatch {
                what: "matrix product inner dimension",
                expected: self.cols,
                actual: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ComplexAmp::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product on a state whose dimension equals `cols`.
    pub fn apply(&self, state: &StateVector) -> Result<StateVector> {
        if self.cols != state.amps().len() || !self.is_square() {
            return Err(Error::LengthMismatch {
                what: "matrix/state dimension",
                expected: self.cols,
                actual: state.amps().len(),
            });
        }
        let amps = self
            .entries
            .chunks_exact(self.cols)
            .map(|row| row.iter().zip(state.amps()).map(|(m, x)| m * x).sum())
            .collect();
        Ok(StateVector::from_raw(state.num_qubits(), amps))
    }

    /// Determinant of a 2×2 matrix.
    pub fn det2(&self) -> Option<ComplexAmp> {
        (self.rows == 2 && self.cols == 2)
            .then(|| self.entries[0] * self.entries[3] - self.entries[1] * self.entries[2])
    }

    pub fn max_abs_diff(&self, other: &DenseMatrix) -> Option<f64> {
        (self.rows == other.rows && self.cols == other.cols)
            .then(|| max_abs_diff(&self.entries, &other.entries))
    }

    pub fn approx_eq(&self, other: &DenseMatrix, tol: f64) -> bool {
        self.max_abs_diff(other).is_some_and(|d| d <= tol)
    }
}

impl Index<(usize, usize)> for DenseMatrix {
    type Output = ComplexAmp;

    fn index(&self, (r, c): (usize, usize)) -> &ComplexAmp {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        &self.entries[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut ComplexAmp {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        &mut self.entries[r * self.cols + c]
    }
}

/// Kronecker product `a ⊗ b`.
pub fn tensor_product(a: &DenseMatrix, b: &DenseMatrix) -> DenseMatrix {
    let rows = a.rows * b.rows;
    let cols = a.cols * b.cols;
    let mut entries = Vec::with_capacity(rows * cols);
    for i1 in 0..a.rows {
        for i2 in 0..b.rows {
            for j1 in 0..a.cols {
                let x = a[(i1, j1)];
                entries.extend((0..b.cols).map(|j2| x * b[(i2, j2)]));
            }
        }
    }
    DenseMatrix {
        rows,
        cols,
        entries,
    }
}

/// Kronecker product of a non-empty sequence, left to right.
pub fn tensor_product_all<'a, I>(factors: I) -> Option<DenseMatrix>
where
    I: IntoIterator<Item = &'a DenseMatrix>,
{
    let mut iter = factors.into_iter();
    let first = iter.next()?.clone();
    Some(iter.fold(first, |acc, m| tensor_product(&acc, m)))
}

/// Applies `factors[0] ⊗ … ⊗ factors[M-1]` to `s` one qubit at a time,
/// without materializing the `2^M × 2^M` product. Every factor must be 2×2.
pub fn apply_kronecker(factors: &[&DenseMatrix], s: &StateVector) -> Result<StateVector> {
    let m = s.num_qubits();
    if factors.len() != m {
        return Err(Error::LengthMismatch {
            what: "factor count",
            expected: m,
            actual: factors.len(),
        });
    }
    if let Some(bad) = factors.iter().find(|f| f.rows != 2 || f.cols != 2) {
        return Err(Error::BadMatrixShape {
            rows: 2,
            cols: 2,
            len: bad.entries.len(),
        });
    }
    let mut amps = s.amps().to_vec();
    for (k, f) in factors.iter().enumerate() {
        let stride = 1usize << (m - 1 - k);
        let [a, b, c, d] = [f.entries[0], f.entries[1], f.entries[2], f.entries[3]];
        for base in (0..amps.len()).step_by(2 * stride) {
            for i in base..base + stride {
                let x0 = amps[i];
                let x1 = amps[i + stride];
                amps[i] = a * x0 + b * x1;
                amps[i + stride] = c * x0 + d * x1;
            }
        }
    }
    Ok(StateVector::from_raw(m, amps))
}

/// Reordering of qubit positions.
///
/// Stored 0-based; output position `k` carries the qubit that sat at input
/// position `perm[k]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QubitPermutation {
    perm: Vec<usize>,
}

impl QubitPermutation {
    /// From 1-based positions, the convention used in reports.
    pub fn from_one_based(perm: &[usize]) -> Result<Self> {
        let zero: Option<Vec<usize>> = perm.iter().map(|&p| p.checked_sub(1)).collect();
        zero.map_or(Err(Error::InvalidPermutation(perm.len())), Self::new)
    }

    pub fn new(perm: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            if p >= perm.len() || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidPermutation(perm.len()));
            }
        }
        Ok(Self { perm })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            perm: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.perm
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.perm.len()];
        for (k, &p) in self.perm.iter().enumerate() {
            inv[p] = k;
        }
        Self { perm: inv }
    }
}

/// Reorders the qubits of `s` according to `p`.
pub fn permute_qubits(s: &StateVector, p: &QubitPermutation) -> Result<StateVector> {
    let m = s.num_qubits();
    if p.len() != m {
        return Err(Error::LengthMismatch {
            what: "permutation length",
            expected: m,
            actual: p.len(),
        });
    }
    let mut out = vec![ComplexAmp::new(0.0, 0.0); s.amps().len()];
    for (old_index, amp) in s.amps().iter().enumerate() {
        let mut new_index = 0usize;
        for (k, &src) in p.as_slice().iter().enumerate() {
            let bit = (old_index >> (m - 1 - src)) & 1;
            new_index |= bit << (m - 1 - k);
        }
        out[new_index] = *amp;
    }
    Ok(StateVector::from_raw(m, out))
}

/// `|⟨a|b⟩|² / (‖a‖²‖b‖²)`.
pub fn fidelity(a: &StateVector, b: &StateVector) -> Result<f64> {
    let na = a.norm_sqr();
    let nb = b.norm_sqr();
    if na == 0.0 || nb == 0.0 {
        return Err(Error::ZeroNorm("fidelity argument"));
    }
    let overlap = a.inner(b)?.norm_sqr();
    Ok((overlap / (na * nb)).clamp(0.0, 1.0))
}
