use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qhyper_bench::{local_unitaries, tensor};
use qhyper_core::hosvd::{hosvd, lu_fingerprint};
use qhyper_core::tensor::multilinear_multiply;

fn multilinear(c: &mut Criterion) {
    let mut group = c.benchmark_group("multilinear_multiply");
    for qubits in [4usize, 8, 12] {
        let h = tensor(qubits);
        let us = local_unitaries(qubits);
        group.bench_with_input(BenchmarkId::from_parameter(qubits), &(us, h), |b, (us, h)| {
            b.iter(|| multilinear_multiply(black_box(us), black_box(h)))
        });
    }
    group.finish();
}

fn decompositions(c: &mut Criterion) {
    let mut group = c.benchmark_group("hosvd");
    for qubits in [4usize, 8, 12] {
        let h = tensor(qubits);
        group.bench_with_input(BenchmarkId::new("full", qubits), &h, |b, h| {
            b.iter(|| hosvd(black_box(h)))
        });
        group.bench_with_input(BenchmarkId::new("fingerprint", qubits), &h, |b, h| {
            b.iter(|| lu_fingerprint(black_box(h)))
        });
    }
    group.finish();
}

criterion_group!(benches, multilinear, decompositions);
criterion_main!(benches);
