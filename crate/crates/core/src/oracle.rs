//! Brute-force ground truth for the decomposition path.
//!
//! Builds the full `3N`-qubit joint state, moves Bob's qubits to the end and
//! contracts Alice's `2N` qubits against a product of Bell bras taken straight
//! from the Bell transform. Nothing here uses the sub-matrix formulas.

use std::f64::consts::FRAC_1_SQRT_2;

use rayon::prelude::*;

use crate::channel::bell_transform;
use crate::decomposition::{BellOutcome, PairingConvention};
use crate::error::{Error, Result};
use crate::protocol::{collapsed_state, TeleportationInstance};
use crate::tensor::{permute_qubits, ComplexAmp, QubitPermutation, StateVector};

/// Largest N the oracle will expand (`2^{3N}` amplitudes).
pub const ORACLE_CAP: usize = 6;

/// Joint state in construction order: input qubits `1..N`, then the two
/// qubits of pair 1, pair 2, ….
#[derive(Debug, Clone, PartialEq)]
pub struct JointState(StateVector);

impl JointState {
    pub fn state(&self) -> &StateVector {
        &self.0
    }

    pub fn into_state(self) -> StateVector {
        self.0
    }
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::CapExceeded {
            what: "oracle",
            n,
            cap,
        });
    }
    Ok(())
}

/// `input ⊗ pair₁ ⊗ … ⊗ pair_N`.
pub fn joint_state(inst: &TeleportationInstance, cap: usize) -> Result<JointState> {
    check_cap(inst.num_qubits(), cap)?;
    let state = inst
        .channel()
        .pairs()
        .iter()
        .fold(inst.input().clone(), |acc, p| acc.tensor(&p.to_state()));
    Ok(JointState(state))
}

/// Qubit order used for the joint measurement: `input₁, alice₁, input₂,
/// alice₂, …, bob₁, …, bob_N` (0-based construction positions).
pub fn measurement_order(n: usize, convention: PairingConvention) -> QubitPermutation {
    let (alice, bob) = match convention {
        PairingConvention::BobHoldsFirst => (1, 0),
        PairingConvention::BobHoldsSecond => (0, 1),
    };
    let front = (0..n).flat_map(|k| [k, n + 2 * k + alice]);
    let back = (0..n).map(|k| n + 2 * k + bob);
    QubitPermutation::new(front.chain(back).collect()).expect("valid by construction")
}

pub fn rearrange_for_measurement(
    js: &JointState,
    inst: &TeleportationInstance,
) -> Result<StateVector> {
    permute_qubits(
        js.state(),
        &measurement_order(inst.num_qubits(), inst.convention()),
    )
}

/// Amplitudes of `⟨Bell_{α₁}| ⊗ … ⊗ ⟨Bell_{α_N}|` over Alice's `2N` qubits.
fn bell_bra(o: &BellOutcome) -> Vec<ComplexAmp> {
    let t = bell_transform();
    let mut bra = vec![ComplexAmp::new(1.0, 0.0)];
    for &mu in o.alphas() {
        let row = t.row(mu).expect("validated outcome");
        bra = bra
            .iter()
            .flat_map(|a| row.iter().map(move |&v| a * (v * FRAC_1_SQRT_2)))
            .collect();
    }
    // Bell states are real, but keep the bra honest.
    bra.iter().map(|a| a.conj()).collect()
}

/// Contracts the first `2N` qubits of `rs` with the Bell bra for `o` and
/// returns Bob's unnormalized residual.
pub fn bell_project(rs: &StateVector, o: &BellOutcome) -> Result<StateVector> {
    let n = o.len();
    if rs.num_qubits() != 3 * n {
        return Err(Error::LengthMismatch {
            what: "measurement-order qubits for outcome",
            expected: 3 * n,
            actual: rs.num_qubits(),
        });
    }
    let bob_dim = 1usize << n;
    let bra = bell_bra(o);
    let mut residual = vec![ComplexAmp::new(0.0, 0.0); bob_dim];
    for (a, coeff) in bra.iter().enumerate() {
        if coeff.norm_sqr() == 0.0 {
            continue;
        }
        let block = &rs.amps()[a * bob_dim..(a + 1) * bob_dim];
        for (r, x) in residual.iter_mut().zip(block) {
            *r += coeff * x;
        }
    }
    StateVector::new(n, residual)
}

/// Bob's residual for every outcome, lexicographic order.
pub fn oracle_residuals(inst: &TeleportationInstance, cap: usize) -> Result<Vec<StateVector>> {
    let js = joint_state(inst, cap)?;
    let rs = rearrange_for_measurement(&js, inst)?;
    let n = inst.num_qubits();
    (0..1usize << (2 * n))
        .into_par_iter()
        .map(|i| bell_project(&rs, &BellOutcome::from_index(n, i)))
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct CrossCheckReport {
    pub num_outcomes: usize,
    pub max_abs_diff: f64,
    pub worst_outcome: BellOutcome,
    pub tol: f64,
    pub passed: bool,
}

/// Compares every oracle residual with [`collapsed_state`].
pub fn cross_check(inst: &TeleportationInstance, tol: f64) -> Result<CrossCheckReport> {
    cross_check_with(inst, tol, ORACLE_CAP, |o| collapsed_state(inst, o))
}

/// Like [`cross_check`] but against an arbitrary predictor of Bob's residual.
pub fn cross_check_with<F>(
    inst: &TeleportationInstance,
    tol: f64,
    cap: usize,
    predict: F,
) -> Result<CrossCheckReport>
where
    F: Fn(&BellOutcome) -> Result<StateVector> + Sync,
{
    let residuals = oracle_residuals(inst, cap)?;
    let n = inst.num_qubits();
    let diffs: Vec<f64> = residuals
        .par_iter()
        .enumerate()
        .map(|(i, truth)| predict(&BellOutcome::from_index(n, i))?.max_abs_diff(truth))
        .collect::<Result<_>>()?;
    // First maximum wins so the report does not depend on scheduling.
    let (worst, max_abs_diff) =
        diffs.iter().enumerate().fold(
            (0, 0.0f64),
            |(wi, wd), (i, &d)| if d > wd { (i, d) } else { (wi, wd) },
        );
    Ok(CrossCheckReport {
        num_outcomes: diffs.len(),
        max_abs_diff,
        worst_outcome: BellOutcome::from_index(n, worst),
        tol,
        passed: max_abs_diff <= tol,
    })
}
