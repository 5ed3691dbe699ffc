use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use galosc_core::fock::build_basis;
use galosc_core::radial::{solve_channel, RadialChannel, RadialGrid};
use galosc_core::spinor::{expand_trace_lagrangian, Symmetry};
use galosc_core::{assemble_and_reduce, assemble_nonminimal, enumerate_levels};
use num_rational::Rational64;

fn reduction(c: &mut Criterion) {
    let mut g = c.benchmark_group("assemble_and_reduce");
    g.sample_size(10);
    for two_s in [1usize, 2, 4] {
        g.bench_with_input(BenchmarkId::from_parameter(two_s), &two_s, |b, &s| {
            b.iter(|| assemble_and_reduce(black_box(s), 6, 1.0, 1.0).unwrap())
        });
    }
    g.bench_function("nonminimal_2s2_half", |b| b.iter(|| assemble_nonminimal(2, black_box(0.5), 6, 1.0, 1.0).unwrap()));
    g.finish();
}

fn report(c: &mut Criterion) {
    let r = assemble_and_reduce(2, 8, 1.0, 1.0).unwrap();
    let mut g = c.benchmark_group("report");
    g.sample_size(10);
    g.bench_function("2s2_nmax8", |b| b.iter(|| r.report().unwrap()));
    g.finish();
}

fn fock(c: &mut Criterion) {
    c.bench_function("fock_basis_nmax12", |b| b.iter(|| build_basis(black_box(12)).unwrap()));
}

fn lagrangian(c: &mut Criterion) {
    c.bench_function("expand_trace_lagrangian_spin1", |b| {
        b.iter(|| expand_trace_lagrangian(black_box(Symmetry::Symmetric), true))
    });
}

fn radial(c: &mut Criterion) {
    let grid = RadialGrid::new(12.0, 2000).unwrap();
    let ch = RadialChannel::new(2, 4, 2, 1.0, 1.0, 1.0).unwrap();
    c.bench_function("radial_channel_3_levels", |b| b.iter(|| solve_channel(black_box(&ch), &grid, 3).unwrap()));
}

fn closed_form(c: &mut Criterion) {
    c.bench_function("enumerate_levels_2s5_e20", |b| {
        b.iter(|| enumerate_levels(black_box(5), Rational64::from_integer(20), 20).unwrap())
    });
}

criterion_group!(benches, reduction, report, fock, lagrangian, radial, closed_form);
criterion_main!(benches);
