//! Bell-basis decomposition of N-qubit teleportation through general
//! (non-maximally) entangled two-qubit channel pairs.
//!
//! Alice holds an unknown N-qubit state and one qubit of each of N channel
//! pairs. After her joint Bell measurement with result `(α₁, …, α_N)`, Bob's
//! register is `(1/√2)^N (σ_1^{α₁} ⊗ … ⊗ σ_N^{α_N}) x`, where each 2×2
//! sub-matrix depends only on one pair's amplitudes. The crate builds those
//! sub-matrices and their inverses ([`decomposition`]), drives the protocol
//! ([`protocol`]) and checks every prediction against a brute-force
//! state-vector projection ([`oracle`]).

pub mod channel;
pub mod decomposition;
pub mod error;
pub mod oracle;
pub mod protocol;
pub mod random;
pub mod tensor;

pub use channel::{
    bell_transform, concurrence, pair_determinant, validate_pair, BellTransform, Channel,
    EntangledPair, ValidatedPair, RENORMALIZE_WARN_TOL,
};
pub use decomposition::{
    decomposition_matrix, inverse_decomposition_matrix, inverse_sub_matrix,
    is_proportional_to_unitary, sub_matrix, BellOutcome, DecompositionMatrix, PairingConvention,
    SubMatrix, UnitaryCheck, DEFAULT_INV_TOL,
};
pub use error::{Error, Result};
pub use oracle::{cross_check, CrossCheckReport, JointState, ORACLE_CAP};
pub use protocol::{
    channel_criterion, collapsed_state, enumerate_outcomes, outcome_probability, recover,
    sample_outcome, CriterionReport, OutcomeRecord, Recovery, TeleportationInstance,
    ENUMERATION_CAP,
};
pub use tensor::{
    fidelity, permute_qubits, tensor_product, ComplexAmp, DenseMatrix, QubitPermutation,
    StateVector, DEFAULT_EQ_TOL,
};
