//! Sub-matrices of the decomposition matrix and their inverses.
//!
//! When Alice's Bell measurement on pair `i` yields `μ`, Bob's qubit of that
//! pair picks up the 2×2 factor `σ_i^μ`. The full map from input amplitudes to
//! Bob's (unnormalized, up to `(1/√2)^N`) register is the Kronecker product of
//! the per-pair factors.
//!
//! The factor depends on which qubit of the pair Bob keeps:
//!
//! ```text
//! BobHoldsFirst:   σ^μ = [[T_μ1 Y1 + T_μ2 Y2,  T_μ3 Y1 + T_μ4 Y2],
//!                         [T_μ1 Y3 + T_μ2 Y4,  T_μ3 Y3 + T_μ4 Y4]]
//! BobHoldsSecond:  same with Y2 and Y3 exchanged
//! ```

use std::fmt;
use std::str::FromStr;

use crate::channel::{bell_transform, pair_determinant, Channel, EntangledPair};
use crate::error::{Error, Result};
use crate::tensor::{tensor_product_all, ComplexAmp, DenseMatrix};

/// Default threshold on `|Y₁Y₄ − Y₂Y₃|` below which a pair counts as singular.
pub const DEFAULT_INV_TOL: f64 = 1e-9;

/// Which qubit of each channel pair stays with Bob.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum PairingConvention {
    /// Bob keeps the first qubit; Alice measures the input with the second.
    BobHoldsFirst,
    /// Bob keeps the second qubit; Alice measures the input with the first.
    #[default]
    BobHoldsSecond,
}

impl PairingConvention {
    pub const ALL: [PairingConvention; 2] = [Self::BobHoldsFirst, Self::BobHoldsSecond];

    pub fn name(self) -> &'static str {
        match self {
            Self::BobHoldsFirst => "bob-holds-first",
            Self::BobHoldsSecond => "bob-holds-second",
        }
    }

    /// Amplitude indices `(a0, b0, a1, b1)` so that row `r` of `σ^μ` is
    /// built from `(Y_{a_r}, Y_{b_r})`.
    fn row_sources(self) -> [[usize; 2]; 2] {
        match self {
            Self::BobHoldsFirst => [[1, 2], [3, 4]],
            Self::BobHoldsSecond => [[1, 3], [2, 4]],
        }
    }
}

impl fmt::Display for PairingConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PairingConvention {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "bob-holds-first" | "first" => Ok(Self::BobHoldsFirst),
            "bob-holds-second" | "second" => Ok(Self::BobHoldsSecond),
            other => Err(format!(
                "unknown convention {other:?} (expected bob-holds-first or bob-holds-second)"
            )),
        }
    }
}

/// Alice's joint Bell result `(α₁, …, α_N)`, each in `1..=4`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BellOutcome {
    alphas: Vec<u8>,
}

impl BellOutcome {
    pub fn new(alphas: Vec<u8>) -> Result<Self> {
        if let Some(&bad) = alphas.iter().find(|a| !(1..=4).contains(*a)) {
            return Err(Error::BellIndexOutOfRange(bad));
        }
        Ok(Self { alphas })
    }

    pub fn alphas(&self) -> &[u8] {
        &self.alphas
    }

    pub fn len(&self) -> usize {
        self.alphas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alphas.is_empty()
    }

    /// Outcome at lexicographic position `index` among the `4^n` outcomes.
    pub fn from_index(n: usize, index: usize) -> Self {
        let alphas = (0..n)
            .map(|k| ((index >> (2 * (n - 1 - k))) & 3) as u8 + 1)
            .collect();
        Self { alphas }
    }

    /// Inverse of [`BellOutcome::from_index`].
    pub fn index(&self) -> usize {
        self.alphas
            .iter()
            .fold(0, |acc, &a| (acc << 2) | (a as usize - 1))
    }

    /// All `4^n` outcomes in lexicographic order.
    pub fn all(n: usize) -> impl ExactSizeIterator<Item = BellOutcome> {
        (0..1usize << (2 * n)).map(move |i| Self::from_index(n, i))
    }
}

impl fmt::Display for BellOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in &self.alphas {
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

/// Accepts `"234"`, `"2,3,4"` or `"2 3 4"`.
impl FromStr for BellOutcome {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let digits: Vec<u8> = s
            .chars()
            .filter(|c| !matches!(c, ',' | ' ' | '(' | ')'))
            .map(|c| c.to_digit(10).map_or(u8::MAX, |d| d as u8))
            .collect();
        Self::new(digits)
    }
}

/// A 2×2 per-pair factor `σ_i^μ` (or its inverse).
#[derive(Debug, Clone, PartialEq)]
pub struct SubMatrix(DenseMatrix);

impl SubMatrix {
    pub fn new(m: [[ComplexAmp; 2]; 2]) -> Self {
        Self(DenseMatrix::from_2x2(m))
    }

    pub fn matrix(&self) -> &DenseMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> DenseMatrix {
        self.0
    }

    pub fn get(&self, r: usize, c: usize) -> ComplexAmp {
        self.0[(r, c)]
    }

    pub fn det(&self) -> ComplexAmp {
        self.0.det2().expect("2x2")
    }

    pub fn transpose(&self) -> Self {
        Self(self.0.transpose())
    }
}

fn check_mu(mu: u8) -> Result<usize> {
    match mu {
        1..=4 => Ok(mu as usize - 1),
        _ => Err(Error::BellIndexOutOfRange(mu)),
    }
}

/// `σ^μ` for one pair under the given convention.
pub fn sub_matrix(p: &EntangledPair, mu: u8, c: PairingConvention) -> Result<SubMatrix> {
    let t = bell_transform().rows()[check_mu(mu)?];
    let entry = |r: usize, col: usize| {
        let [a, b] = c.row_sources()[r];
        t[2 * col] * p.y(a) + t[2 * col + 1] * p.y(b)
    };
    Ok(SubMatrix::new([
        [entry(0, 0), entry(0, 1)],
        [entry(1, 0), entry(1, 1)],
    ]))
}

/// `(σ^μ)⁻¹` by the adjugate formula.
///
/// Fails with [`Error::NotInvertible`] (pair index 1) when
/// `|Y₁Y₄ − Y₂Y₃| ≤ tol`; callers working on a channel remap the index.
pub fn inverse_sub_matrix(
    p: &EntangledPair,
    mu: u8,
    c: PairingConvention,
    tol: f64,
) -> Result<SubMatrix> {
    let s = sub_matrix(p, mu, c)?;
    if pair_determinant(p).norm() <= tol {
        return Err(Error::NotInvertible { pairs: vec![1] });
    }
    // det σ^μ = ±(Y₁Y₄ − Y₂Y₃), so it is nonzero here.
    let inv_det = s.det().inv();
    Ok(SubMatrix::new([
        [s.get(1, 1) * inv_det, -s.get(0, 1) * inv_det],
        [-s.get(1, 0) * inv_det, s.get(0, 0) * inv_det],
    ]))
}

/// Singular values of a 2×2 complex matrix, largest first.
///
/// Uses the eigenvalues of `M†M = [[p, r], [r̄, q]]`; the gap term
/// `((p − q)/2)² + |r|²` is formed directly, so a scaled unitary yields equal
/// singular values to rounding rather than to √ε.
pub fn singular_values_2x2(m: &DenseMatrix) -> (f64, f64) {
    let e = m.entries();
    let (a, b, c, d) = (e[0], e[1], e[2], e[3]);
    let p = a.norm_sqr() + c.norm_sqr();
    let q = b.norm_sqr() + d.norm_sqr();
    let r = a.conj() * b + c.conj() * d;
    let det = m.det2().expect("2x2").norm();
    let half_gap = (0.25 * (p - q) * (p - q) + r.norm_sqr()).sqrt();
    let s_max_sq = 0.5 * (p + q) + half_gap;
    if s_max_sq == 0.0 {
        return (0.0, 0.0);
    }
    let s_max = s_max_sq.sqrt();
    // s_max · s_min = |det|; avoids cancellation in (frob − disc).
    (s_max, det / s_max)
}

/// Result of [`is_proportional_to_unitary`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitaryCheck {
    pub proportional: bool,
    /// Common singular value when `proportional`, the largest otherwise.
    pub scale: f64,
    pub singular_values: (f64, f64),
}

/// True iff both singular values agree within `tol`, i.e. `m = scale · U`.
pub fn is_proportional_to_unitary(m: &SubMatrix, tol: f64) -> UnitaryCheck {
    let (hi, lo) = singular_values_2x2(m.matrix());
    UnitaryCheck {
        proportional: hi - lo <= tol,
        scale: hi,
        singular_values: (hi, lo),
    }
}

/// `σ^{α₁…α_N}` together with its factors.
#[derive(Debug, Clone, PartialEq)]
pub struct DecompositionMatrix {
    matrix: DenseMatrix,
    factors: Vec<SubMatrix>,
    outcome: BellOutcome,
    convention: PairingConvention,
}

impl DecompositionMatrix {
    pub fn matrix(&self) -> &DenseMatrix {
        &self.matrix
    }

    pub fn factors(&self) -> &[SubMatrix] {
        &self.factors
    }

    pub fn outcome(&self) -> &BellOutcome {
        &self.outcome
    }

    pub fn convention(&self) -> PairingConvention {
        self.convention
    }
}

fn check_outcome_len(ch: &Channel, o: &BellOutcome) -> Result<()> {
    if o.len() != ch.len() {
        return Err(Error::LengthMismatch {
            what: "outcome length",
            expected: ch.len(),
            actual: o.len(),
        });
    }
    Ok(())
}

/// Per-pair factors `σ_1^{α₁}, …, σ_N^{α_N}`.
pub fn sub_matrices(ch: &Channel, o: &BellOutcome, c: PairingConvention) -> Result<Vec<SubMatrix>> {
    check_outcome_len(ch, o)?;
    ch.pairs()
        .iter()
        .zip(o.alphas())
        .map(|(p, &mu)| sub_matrix(p, mu, c))
        .collect()
}

/// `σ_1^{α₁} ⊗ … ⊗ σ_N^{α_N}`; the `(1/√2)^N` prefactor is not included.
pub fn decomposition_matrix(
    ch: &Channel,
    o: &BellOutcome,
    c: PairingConvention,
) -> Result<DecompositionMatrix> {
    let factors = sub_matrices(ch, o, c)?;
    let matrix = tensor_product_all(factors.iter().map(SubMatrix::matrix)).expect("N >= 1");
    Ok(DecompositionMatrix {
        matrix,
        factors,
        outcome: o.clone(),
        convention: c,
    })
}

/// 1-based indices of pairs with `|Y₁Y₄ − Y₂Y₃| ≤ tol`.
pub fn singular_pairs(ch: &Channel, tol: f64) -> Vec<usize> {
    ch.pairs()
        .iter()
        .enumerate()
        .filter(|(_, p)| pair_determinant(p).norm() <= tol)
        .map(|(i, _)| i + 1)
        .collect()
}

/// Per-pair inverse factors `(σ_i^{α_i})⁻¹`.
pub fn inverse_sub_matrices(
    ch: &Channel,
    o: &BellOutcome,
    c: PairingConvention,
    tol: f64,
) -> Result<Vec<SubMatrix>> {
    check_outcome_len(ch, o)?;
    let bad = singular_pairs(ch, tol);
    if !bad.is_empty() {
        return Err(Error::NotInvertible { pairs: bad });
    }
    ch.pairs()
        .iter()
        .zip(o.alphas())
        .map(|(p, &mu)| inverse_sub_matrix(p, mu, c, tol))
        .collect()
}

/// `(σ^{α₁…α_N})⁻¹ = (σ_1^{α₁})⁻¹ ⊗ … ⊗ (σ_N^{α_N})⁻¹`.
pub fn inverse_decomposition_matrix(
    ch: &Channel,
    o: &BellOutcome,
    c: PairingConvention,
    tol: f64,
) -> Result<DenseMatrix> {
    let inv = inverse_sub_matrices(ch, o, c, tol)?;
    Ok(tensor_product_all(inv.iter().map(SubMatrix::matrix)).expect("N >= 1"))
}
