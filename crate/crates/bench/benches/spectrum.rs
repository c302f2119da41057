use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use mrey_bench::{deep_potential, default_potential, natural};
use mrey_core::nu::solve_mrey_energy;
use mrey_core::spectrum::{energy, spectrum_table};
use mrey_core::wavefunction::{ode_residual, wave_for};
use mrey_core::ResidualForm;

fn closed_form(c: &mut Criterion) {
    let p = default_potential();
    let k = natural();
    c.bench_function("energy closed form", |b| {
        b.iter(|| energy(black_box(&p), &k, black_box(3), black_box(2)))
    });
    c.bench_function("spectrum table 6x4", |b| {
        b.iter(|| spectrum_table(black_box(&p), &k, 5, 3))
    });
}

fn oracle(c: &mut Criterion) {
    let p = deep_potential();
    let k = natural();
    c.bench_function("energy quantization root", |b| {
        b.iter(|| solve_mrey_energy(black_box(&p), &k, black_box(2), black_box(0)))
    });
}

fn waves(c: &mut Criterion) {
    let p = deep_potential();
    let k = natural();
    c.bench_function("wave build and normalize n=3", |b| {
        b.iter(|| wave_for(black_box(&p), &k, 3, 0))
    });
    let w = wave_for(&p, &k, 3, 0).unwrap();
    c.bench_function("ode residual n=3", |b| {
        b.iter(|| ode_residual(black_box(&w), ResidualForm::Approximated))
    });
}

criterion_group!(benches, closed_form, oracle, waves);
criterion_main!(benches);
