//! Channel pairs, the Bell basis and per-pair entanglement diagnostics.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{Error, Result};
use crate::tensor::{check_finite, ComplexAmp, DenseMatrix, StateVector, NORM_TOL};

/// Pairs whose norm deviates from 1 by more than this are rescaled with a warning.
pub const RENORMALIZE_WARN_TOL: f64 = 1e-6;

/// Integer Bell change-of-basis matrix. Row `μ` holds the `|00⟩,|01⟩,|10⟩,|11⟩`
/// coefficients of the μ-th Bell state times √2.
const BELL_ROWS: [[f64; 4]; 4] = [
    [1.0, 0.0, 0.0, 1.0],
    [1.0, 0.0, 0.0, -1.0],
    [0.0, 1.0, 1.0, 0.0],
    [0.0, 1.0, -1.0, 0.0],
];

/// The Bell-basis transformation `T`, without its `1/√2` prefactor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BellTransform {
    t: [[f64; 4]; 4],
}

/// Returns the transformation between the Bell basis and `|00⟩,|01⟩,|10⟩,|11⟩`.
pub fn bell_transform() -> BellTransform {
    BellTransform { t: BELL_ROWS }
}

impl BellTransform {
    pub fn rows(&self) -> &[[f64; 4]; 4] {
        &self.t
    }

    /// `T_{μ1..μ4}` for `μ ∈ 1..=4`.
    pub fn row(&self, mu: u8) -> Result<[f64; 4]> {
        match mu {
            1..=4 => Ok(self.t[mu as usize - 1]),
            _ => Err(Error::BellIndexOutOfRange(mu)),
        }
    }

    pub fn to_matrix(&self) -> DenseMatrix {
        let flat: Vec<f64> = self.t.iter().flatten().copied().collect();
        DenseMatrix::from_real(4, 4, &flat).expect("4x4")
    }

    /// Normalized two-qubit Bell state `φ^μ`.
    pub fn bell_state(&self, mu: u8) -> Result<StateVector> {
        let row = self.row(mu)?;
        let amps = row
            .iter()
            .map(|&v| ComplexAmp::new(v * FRAC_1_SQRT_2, 0.0))
            .collect();
        StateVector::new(2, amps)
    }
}

/// One channel pair `Y₁|00⟩ + Y₂|01⟩ + Y₃|10⟩ + Y₄|11⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntangledPair {
    y: [ComplexAmp; 4],
}

impl EntangledPair {
    pub fn new(y: [ComplexAmp; 4]) -> Result<Self> {
        check_finite(&y)?;
        Ok(Self { y })
    }

    pub fn from_real(y: [f64; 4]) -> Result<Self> {
        Self::new(y.map(|v| ComplexAmp::new(v, 0.0)))
    }

    /// `(1/√2)(|00⟩ + |11⟩)`.
    pub fn maximally_entangled() -> Self {
        Self::from_real([FRAC_1_SQRT_2, 0.0, 0.0, FRAC_1_SQRT_2]).expect("finite")
    }

    /// `cos θ|00⟩ + sin θ|11⟩`.
    pub fn schmidt(theta: f64) -> Result<Self> {
        Self::from_real([theta.cos(), 0.0, 0.0, theta.sin()])
    }

    pub fn amps(&self) -> &[ComplexAmp; 4] {
        &self.y
    }

    /// `Y_j` with the 1-based index used in the formulas.
    pub fn y(&self, j: usize) -> ComplexAmp {
        self.y[j - 1]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.y.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm_sqr() - 1.0).abs() <= NORM_TOL
    }

    pub fn scaled(&self, c: ComplexAmp) -> Self {
        Self {
            y: self.y.map(|a| a * c),
        }
    }

    pub fn to_state(&self) -> StateVector {
        StateVector::new(2, self.y.to_vec()).expect("four finite amplitudes")
    }
}

/// `Y₁Y₄ − Y₂Y₃`. Twice its modulus is the concurrence of a normalized pair.
pub fn pair_determinant(p: &EntangledPair) -> ComplexAmp {
    p.y[0] * p.y[3] - p.y[1] * p.y[2]
}

pub fn concurrence(p: &EntangledPair) -> f64 {
    2.0 * pair_determinant(p).norm()
}

/// A pair rescaled to unit norm, remembering whether the rescale was large
/// enough to report.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidatedPair {
    pub pair: EntangledPair,
    pub warning: bool,
    pub original_norm: f64,
}

/// Rescales `p` to unit norm; flags a warning when `|‖p‖ − 1| > tol`.
pub fn validate_pair(p: &EntangledPair, tol: f64) -> Result<ValidatedPair> {
    let norm = p.norm_sqr().sqrt();
    if norm == 0.0 {
        return Err(Error::ZeroNorm("channel pair"));
    }
    Ok(ValidatedPair {
        pair: p.scaled(ComplexAmp::new(1.0 / norm, 0.0)),
        warning: (norm - 1.0).abs() > tol,
        original_norm: norm,
    })
}

/// Ordered list of channel pairs; pair `i` pairs with input qubit `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct Channel {
    pairs: Vec<EntangledPair>,
}

impl Channel {
    pub fn new(pairs: Vec<EntangledPair>) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::EmptyChannel);
        }
        Ok(Self { pairs })
    }

    /// `n` copies of the same pair.
    pub fn uniform(pair: EntangledPair, n: usize) -> Result<Self> {
        Self::new(vec![pair; n])
    }

    pub fn pairs(&self) -> &[EntangledPair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn is_normalized(&self) -> bool {
        self.pairs.iter().all(EntangledPair::is_normalized)
    }

    /// Normalizes every pair; returns the 1-based indices that raised a warning.
    pub fn validated(&self, tol: f64) -> Result<(Channel, Vec<usize>)> {
        let mut warnings = Vec::new();
        let mut pairs = Vec::with_capacity(self.pairs.len());
        for (i, p) in self.pairs.iter().enumerate() {
            let v = validate_pair(p, tol)?;
            if v.warning {
                warnings.push(i + 1);
            }
            pairs.push(v.pair);
        }
        Ok((Channel { pairs }, warnings))
    }

    pub fn with_pair(&self, index: usize, pair: EntangledPair) -> Result<Self> {
        if index >= self.pairs.len() {
            return Err(Error::LengthMismatch {
                what: "pair index",
                expected: self.pairs.len(),
                actual: index,
            });
        }
        let mut pairs = self.pairs.clone();
        pairs[index] = pair;
        Ok(Self { pairs })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> ComplexAmp {
        ComplexAmp::new(re, 0.0)
    }

    #[test]
    fn bell_rows_match_listed_states() {
        let t = bell_transform();
        assert_eq!(t.row(1).unwrap(), [1., 0., 0., 1.]);
        assert_eq!(t.row(2).unwrap(), [1., 0., 0., -1.]);
        assert_eq!(t.row(3).unwrap(), [0., 1., 1., 0.]);
        assert_eq!(t.row(4).unwrap(), [0., 1., -1., 0.]);
        assert_eq!(t.row(0), Err(Error::BellIndexOutOfRange(0)));
        assert_eq!(t.row(5), Err(Error::BellIndexOutOfRange(5)));
    }

    #[test]
    fn bell_rows_orthogonal() {
        let m = bell_transform().to_matrix();
        let gram = m.matmul(&m.transpose()).unwrap();
        assert_eq!(gram, DenseMatrix::identity(4).scaled(c(2.0)));
    }

    #[test]
    fn bell_states_orthonormal() {
        let t = bell_transform();
        for a in 1..=4 {
            for b in 1..=4 {
                let ip = t
                    .bell_state(a)
                    .unwrap()
                    .inner(&t.bell_state(b).unwrap())
                    .unwrap();
                let want = if a == b { 1.0 } else { 0.0 };
                assert!((ip - c(want)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn determinant_examples() {
        let mes = EntangledPair::maximally_entangled();
        assert!((pair_determinant(&mes) - c(0.5)).norm() < 1e-15);
        let product = EntangledPair::from_real([0.5; 4]).unwrap();
        assert_eq!(pair_determinant(&product), c(0.0));
        let nmes = EntangledPair::from_real([0.8, 0.0, 0.0, 0.6]).unwrap();
        assert!((pair_determinant(&nmes) - c(0.48)).norm() < 1e-15);
        assert!((concurrence(&mes) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn determinant_scales_quadratically() {
        let p = EntangledPair::new([
            ComplexAmp::new(0.3, 0.1),
            ComplexAmp::new(-0.2, 0.5),
            ComplexAmp::new(0.4, -0.3),
            ComplexAmp::new(0.1, 0.2),
        ])
        .unwrap();
        let s = ComplexAmp::new(0.7, -1.3);
        let lhs = pair_determinant(&p.scaled(s));
        let rhs = pair_determinant(&p) * s * s;
        assert!((lhs - rhs).norm() < 1e-15);
    }

    #[test]
    fn validate_rescales_with_warning() {
        let v = validate_pair(&EntangledPair::from_real([1., 0., 0., 1.]).unwrap(), 1e-6).unwrap();
        assert!(v.warning);
        assert!((v.pair.y(1) - c(FRAC_1_SQRT_2)).norm() < 1e-15);
        assert!((v.pair.y(4) - c(FRAC_1_SQRT_2)).norm() < 1e-15);

        let mes = EntangledPair::maximally_entangled();
        let v = validate_pair(&mes, 1e-6).unwrap();
        assert!(!v.warning);
        assert!(v
            .pair
            .amps()
            .iter()
            .zip(mes.amps())
            .all(|(a, b)| (a - b).norm() < 1e-15));

        let zero = EntangledPair::from_real([0.0; 4]).unwrap();
        assert_eq!(
            validate_pair(&zero, 1e-6),
            Err(Error::ZeroNorm("channel pair"))
        );
    }

    #[test]
    fn channel_validation() {
        assert_eq!(Channel::new(vec![]), Err(Error::EmptyChannel));
        let ch = Channel::new(vec![
            EntangledPair::maximally_entangled(),
            EntangledPair::from_real([2., 0., 0., 0.]).unwrap(),
        ])
        .unwrap();
        let (norm, warn) = ch.validated(RENORMALIZE_WARN_TOL).unwrap();
        assert_eq!(warn, vec![2]);
        assert!(norm.is_normalized());
        assert!(EntangledPair::new([c(f64::INFINITY), c(0.), c(0.), c(0.)]).is_err());
    }
}
