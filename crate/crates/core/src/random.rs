//! Seeded random states and channels.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::channel::{Channel, EntangledPair};
use crate::decomposition::PairingConvention;
use crate::error::Result;
use crate::protocol::TeleportationInstance;
use crate::tensor::{ComplexAmp, StateVector};

fn unit_amps<R: Rng>(rng: &mut R, len: usize) -> Vec<ComplexAmp> {
    loop {
        let v: Vec<ComplexAmp> = (0..len)
            .map(|_| ComplexAmp::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-3 {
            return v.into_iter().map(|a| a / norm).collect();
        }
    }
}

pub fn random_state<R: Rng>(rng: &mut R, num_qubits: usize) -> Result<StateVector> {
    StateVector::new(num_qubits, unit_amps(rng, 1 << num_qubits))
}

pub fn random_pair<R: Rng>(rng: &mut R) -> EntangledPair {
    let amps: [ComplexAmp; 4] = unit_amps(rng, 4).try_into().expect("four amplitudes");
    EntangledPair::new(amps).expect("finite")
}

/// Normalized random input and channel drawn from `ChaCha8Rng::seed_from_u64(seed)`.
pub fn random_instance(
    num_qubits: usize,
    convention: PairingConvention,
    seed: u64,
) -> Result<TeleportationInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let input = random_state(&mut rng, num_qubits)?;
    let pairs = (0..num_qubits).map(|_| random_pair(&mut rng)).collect();
    TeleportationInstance::new(input, Channel::new(pairs)?, convention)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_instances_repeat() {
        let a = random_instance(3, PairingConvention::BobHoldsFirst, 9).unwrap();
        let b = random_instance(3, PairingConvention::BobHoldsFirst, 9).unwrap();
        let c = random_instance(3, PairingConvention::BobHoldsFirst, 10).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert!(a.input().is_normalized() && a.channel().is_normalized());
    }
}
