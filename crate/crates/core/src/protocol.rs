//! Teleportation semantics built on the decomposition matrices: Bob's
//! collapsed state per outcome, Born probabilities, recovery and sampling.

use std::f64::consts::FRAC_1_SQRT_2;

use rand::distributions::{Distribution, WeightedIndex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::channel::{bell_transform, concurrence, pair_determinant, Channel};
use crate::decomposition::{
    inverse_sub_matrices, is_proportional_to_unitary, singular_pairs, sub_matrices, sub_matrix,
    BellOutcome, PairingConvention, SubMatrix,
};
use crate::error::{Error, Result};
use crate::tensor::{apply_kronecker, fidelity, ComplexAmp, DenseMatrix, StateVector};

/// Largest N accepted by full outcome enumeration (4^N records).
pub const ENUMERATION_CAP: usize = 8;

/// Input state, channel and pairing convention.
#[derive(Debug, Clone, PartialEq)]
pub struct TeleportationInstance {
    input: StateVector,
    channel: Channel,
    convention: PairingConvention,
}

impl TeleportationInstance {
    /// Both `input` and every channel pair must already be normalized.
    pub fn new(
        input: StateVector,
        channel: Channel,
        convention: PairingConvention,
    ) -> Result<Self> {
        if input.num_qubits() != channel.len() {
            return Err(Error::LengthMismatch {
                what: "channel pairs for input qubits",
                expected: input.num_qubits(),
                actual: channel.len(),
            });
        }
        if !input.is_normalized() {
            return Err(Error::NotNormalized {
                what: "input state",
                norm_sqr: input.norm_sqr(),
            });
        }
        if let Some(p) = channel.pairs().iter().find(|p| !p.is_normalized()) {
            return Err(Error::NotNormalized {
                what: "channel pair",
                norm_sqr: p.norm_sqr(),
            });
        }
        Ok(Self {
            input,
            channel,
            convention,
        })
    }

    pub fn input(&self) -> &StateVector {
        &self.input
    }

    pub fn channel(&self) -> &Channel {
        &self.channel
    }

    pub fn convention(&self) -> PairingConvention {
        self.convention
    }

    pub fn num_qubits(&self) -> usize {
        self.input.num_qubits()
    }

    pub fn with_convention(&self, convention: PairingConvention) -> Self {
        Self {
            convention,
            ..self.clone()
        }
    }
}

fn bell_prefactor(n: usize) -> f64 {
    FRAC_1_SQRT_2.powi(n as i32)
}

fn apply_factors(factors: &[SubMatrix], s: &StateVector) -> Result<StateVector> {
    let refs: Vec<&DenseMatrix> = factors.iter().map(SubMatrix::matrix).collect();
    apply_kronecker(&refs, s)
}

/// Bob's unnormalized register `(1/√2)^N σ^{α₁…α_N} x` for outcome `o`.
///
/// Its squared norm is the Born probability of `o`.
pub fn collapsed_state(inst: &TeleportationInstance, o: &BellOutcome) -> Result<StateVector> {
    let factors = sub_matrices(&inst.channel, o, inst.convention)?;
    let s = apply_factors(&factors, &inst.input)?;
    Ok(s.scaled(ComplexAmp::new(bell_prefactor(inst.num_qubits()), 0.0)))
}

pub fn outcome_probability(inst: &TeleportationInstance, o: &BellOutcome) -> Result<f64> {
    Ok(collapsed_state(inst, o)?.norm_sqr())
}

/// Bob's state after applying the inverse decomposition matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Recovery {
    pub state: StateVector,
    pub fidelity: f64,
}

/// Applies `(σ^{α₁})⁻¹ ⊗ … ⊗ (σ^{α_N})⁻¹` to `collapsed`, renormalizes and
/// scores the result against the instance input.
pub fn recover(
    collapsed: &StateVector,
    inst: &TeleportationInstance,
    o: &BellOutcome,
    tol: f64,
) -> Result<Recovery> {
    let inv = inverse_sub_matrices(&inst.channel, o, inst.convention, tol)?;
    let state = apply_factors(&inv, collapsed)?.normalized()?;
    let fidelity = fidelity(&state, &inst.input)?;
    Ok(Recovery { state, fidelity })
}

/// Diagnostics for one channel pair.
#[derive(Debug, Clone, PartialEq)]
pub struct PairDiagnostics {
    /// 1-based.
    pub index: usize,
    pub determinant: ComplexAmp,
    pub concurrence: f64,
    pub invertible: bool,
    pub unitary_proportional: bool,
    /// Shared by all four sub-matrices of the pair, largest first.
    pub singular_values: (f64, f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CriterionReport {
    pub pairs: Vec<PairDiagnostics>,
    /// Every pair satisfies `Y₁Y₄ ≠ Y₂Y₃`.
    pub success: bool,
    /// Every pair's recovery is a scaled unitary.
    pub all_unitary: bool,
}

impl CriterionReport {
    pub fn failing_pairs(&self) -> Vec<usize> {
        self.pairs
            .iter()
            .filter(|p| !p.invertible)
            .map(|p| p.index)
            .collect()
    }

    pub fn min_abs_det(&self) -> f64 {
        self.pairs
            .iter()
            .map(|p| p.determinant.norm())
            .fold(f64::INFINITY, f64::min)
    }

    /// Smallest singular value of any decomposition matrix of the channel.
    ///
    /// The singular values of a Kronecker product are products of the factors'
    /// singular values, and all four sub-matrices of a pair share theirs.
    pub fn min_singular_value(&self) -> f64 {
        self.pairs.iter().map(|p| p.singular_values.1).product()
    }
}

/// Evaluates the invertibility criterion `Y₁Y₄ ≠ Y₂Y₃` on every pair.
///
/// `tol` bounds both `|Y₁Y₄ − Y₂Y₃|` and the singular-value gap used for the
/// unitary check.
pub fn channel_criterion(ch: &Channel, tol: f64) -> CriterionReport {
    let pairs: Vec<PairDiagnostics> = ch
        .pairs()
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let det = pair_determinant(p);
            // σ², σ³, σ⁴ are σ¹ times a Pauli on the right, so σ¹ suffices.
            let s1 = sub_matrix(p, 1, PairingConvention::BobHoldsFirst).expect("mu in range");
            let u = is_proportional_to_unitary(&s1, tol);
            PairDiagnostics {
                index: i + 1,
                determinant: det,
                concurrence: concurrence(p),
                invertible: det.norm() > tol,
                unitary_proportional: u.proportional,
                singular_values: u.singular_values,
            }
        })
        .collect();
    let success = pairs.iter().all(|p| p.invertible);
    let all_unitary = pairs.iter().all(|p| p.unitary_proportional);
    CriterionReport {
        pairs,
        success,
        all_unitary,
    }
}

/// One row of the full outcome table.
#[derive(Debug, Clone, PartialEq)]
pub struct OutcomeRecord {
    pub outcome: BellOutcome,
    pub probability: f64,
    /// Normalized, or the zero vector for a zero-probability outcome.
    pub collapsed: StateVector,
    /// Absent when the outcome has zero probability or recovery is impossible.
    pub recovered_fidelity: Option<f64>,
    pub invertible: bool,
}

pub fn check_enumeration_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::CapExceeded {
            what: "outcome enumeration",
            n,
            cap,
        });
    }
    Ok(())
}

fn outcome_record(inst: &TeleportationInstance, o: BellOutcome, tol: f64) -> Result<OutcomeRecord> {
    let raw = collapsed_state(inst, &o)?;
    let probability = raw.norm_sqr();
    let invertible = singular_pairs(&inst.channel, tol).is_empty();
    let (collapsed, recovered_fidelity) = if probability > 0.0 {
        let fid = if invertible {
            Some(recover(&raw, inst, &o, tol)?.fidelity)
        } else {
            None
        };
        (raw.normalized()?, fid)
    } else {
        (raw, None)
    };
    Ok(OutcomeRecord {
        outcome: o,
        probability,
        collapsed,
        recovered_fidelity,
        invertible,
    })
}

/// All `4^N` outcomes in lexicographic order of `(α₁, …, α_N)`.
///
/// Records are computed in parallel but assembled in order.
pub fn enumerate_outcomes(
    inst: &TeleportationInstance,
    cap: usize,
    tol: f64,
) -> Result<Vec<OutcomeRecord>> {
    let n = inst.num_qubits();
    check_enumeration_cap(n, cap)?;
    (0..1usize << (2 * n))
        .into_par_iter()
        .map(|i| outcome_record(inst, BellOutcome::from_index(n, i), tol))
        .collect()
}

/// Born probabilities of every outcome, lexicographic order.
pub fn outcome_probabilities(inst: &TeleportationInstance, cap: usize) -> Result<Vec<f64>> {
    let n = inst.num_qubits();
    check_enumeration_cap(n, cap)?;
    (0..1usize << (2 * n))
        .into_par_iter()
        .map(|i| outcome_probability(inst, &BellOutcome::from_index(n, i)))
        .collect()
}

/// Draws Alice's measurement result with a ChaCha8 generator seeded by `seed`.
pub fn sample_outcome(inst: &TeleportationInstance, seed: u64) -> Result<BellOutcome> {
    Ok(sample_outcomes(inst, seed, 1)?.pop().expect("one sample"))
}

/// `count` draws from one generator seeded by `seed`.
pub fn sample_outcomes(
    inst: &TeleportationInstance,
    seed: u64,
    count: usize,
) -> Result<Vec<BellOutcome>> {
    let n = inst.num_qubits();
    let probs = outcome_probabilities(inst, ENUMERATION_CAP)?;
    let dist = WeightedIndex::new(&probs).map_err(|_| Error::ZeroNorm("outcome distribution"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..count)
        .map(|_| BellOutcome::from_index(n, dist.sample(&mut rng)))
        .collect())
}

/// `Σ_o |Bell_o⟩ ⊗ collapsed_o` over 3N qubits in measurement order: input
/// qubit and Alice's half of each pair interleaved, then Bob's qubits.
pub fn reconstruct_joint_state(inst: &TeleportationInstance) -> Result<StateVector> {
    let n = inst.num_qubits();
    check_enumeration_cap(n, ENUMERATION_CAP)?;
    let t = bell_transform();
    let bell: Vec<StateVector> = (1..=4).map(|mu| t.bell_state(mu)).collect::<Result<_>>()?;
    let mut acc = vec![ComplexAmp::new(0.0, 0.0); 1 << (3 * n)];
    for o in BellOutcome::all(n) {
        let alice = o.alphas()[1..]
            .iter()
            .fold(bell[o.alphas()[0] as usize - 1].clone(), |s, &a| {
                s.tensor(&bell[a as usize - 1])
            });
        let term = alice.tensor(&collapsed_state(inst, &o)?);
        for (dst, src) in acc.iter_mut().zip(term.amps()) {
            *dst += src;
        }
    }
    StateVector::new(3 * n, acc)
}
