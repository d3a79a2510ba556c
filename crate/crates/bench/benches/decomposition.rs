use belldecomp::oracle::{cross_check, oracle_residuals, ORACLE_CAP};
use belldecomp::protocol::{collapsed_state, enumerate_outcomes, ENUMERATION_CAP};
use belldecomp::{
    decomposition_matrix, BellOutcome, Channel, ComplexAmp, EntangledPair, PairingConvention,
    StateVector, TeleportationInstance, DEFAULT_INV_TOL,
};
use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

fn instance(n: usize) -> TeleportationInstance {
    let amps = (0..1usize << n)
        .map(|i| ComplexAmp::new(1.0 + i as f64, 0.5 * i as f64))
        .collect();
    let input = StateVector::new(n, amps).unwrap().normalized().unwrap();
    let pairs = (0..n)
        .map(|k| EntangledPair::schmidt(0.3 + 0.1 * k as f64).unwrap())
        .collect();
    TeleportationInstance::new(
        input,
        Channel::new(pairs).unwrap(),
        PairingConvention::BobHoldsSecond,
    )
    .unwrap()
}

fn bench_collapsed(c: &mut Criterion) {
    let mut group = c.benchmark_group("collapsed_state");
    for n in [2, 4, 6, 8] {
        let inst = instance(n);
        let o = BellOutcome::from_index(n, 0x5a5a & ((1 << (2 * n)) - 1));
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| collapsed_state(black_box(&inst), black_box(&o)).unwrap())
        });
    }
    group.finish();
}

fn bench_dense_matrix(c: &mut Criterion) {
    let mut group = c.benchmark_group("decomposition_matrix");
    for n in [2, 4, 6] {
        let inst = instance(n);
        let o = BellOutcome::from_index(n, 1);
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| decomposition_matrix(inst.channel(), &o, inst.convention()).unwrap())
        });
    }
    group.finish();
}

fn bench_enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_outcomes");
    group.sample_size(10);
    for n in [2, 4, 6] {
        let inst = instance(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| enumerate_outcomes(&inst, ENUMERATION_CAP, DEFAULT_INV_TOL).unwrap())
        });
    }
    group.finish();
}

fn bench_oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle");
    group.sample_size(10);
    for n in [2, 3, 4] {
        let inst = instance(n);
        group.bench_with_input(BenchmarkId::new("residuals", n), &n, |b, _| {
            b.iter(|| oracle_residuals(&inst, ORACLE_CAP).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("cross_check", n), &n, |b, _| {
            b.iter(|| cross_check(&inst, 1e-10).unwrap())
        });
    }
    group.finish();
}

criterion_group!(
    benches,
    bench_collapsed,
    bench_dense_matrix,
    bench_enumeration,
    bench_oracle
);
criterion_main!(benches);
