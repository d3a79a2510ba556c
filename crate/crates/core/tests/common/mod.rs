#![allow(dead_code)]

use belldecomp::{
    Channel, ComplexAmp, EntangledPair, PairingConvention, StateVector, TeleportationInstance,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn c(re: f64, im: f64) -> ComplexAmp {
    ComplexAmp::new(re, im)
}

pub fn random_amps<R: Rng>(rng: &mut R, len: usize) -> Vec<ComplexAmp> {
    let v: Vec<ComplexAmp> = (0..len)
        .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|a| a / norm).collect()
}

pub fn random_pair<R: Rng>(rng: &mut R) -> EntangledPair {
    EntangledPair::new(random_amps(rng, 4).try_into().unwrap()).unwrap()
}

pub fn random_instance(n: usize, conv: PairingConvention, seed: u64) -> TeleportationInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let input = StateVector::new(n, random_amps(&mut rng, 1 << n)).unwrap();
    let pairs = (0..n).map(|_| random_pair(&mut rng)).collect();
    TeleportationInstance::new(input, Channel::new(pairs).unwrap(), conv).unwrap()
}
