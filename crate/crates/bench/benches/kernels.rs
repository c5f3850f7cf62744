use criterion::{black_box, criterion_group, criterion_main, Criterion};
use motzkin_core::algebraics::guess_algebraic_equation;
use motzkin_core::counting::{count_paths_dp, motzkin_sequence};
use motzkin_core::genfunc::solve_series;
use motzkin_core::recurrence::guess_recurrence;
use motzkin_core::{BigInt, WeightSpec};

fn counting(c: &mut Criterion) {
    let spec = WeightSpec::all_ones(3);
    c.bench_function("count_paths_dp rank 3, n = 200", |b| {
        b.iter(|| count_paths_dp(black_box(&spec), 200, 0, 0))
    });
}

fn series(c: &mut Criterion) {
    let mut g = c.benchmark_group("solve_series");
    for rank in [2, 3, 4] {
        let spec = WeightSpec::all_ones(rank);
        g.bench_function(format!("rank {rank}, order 120"), |b| b.iter(|| solve_series(black_box(&spec), 120)));
    }
    g.finish();
}

fn guessing(c: &mut Criterion) {
    let mut g = c.benchmark_group("guess");
    g.sample_size(10);
    let s2 = solve_series(&WeightSpec::all_ones(2), 60).into_a00();
    g.bench_function("algebraic rank 2", |b| b.iter(|| guess_algebraic_equation(black_box(&s2), 4, None, 8)));
    let s3 = solve_series(&WeightSpec::all_ones(3), 60).into_a00();
    g.bench_function("algebraic rank 3", |b| b.iter(|| guess_algebraic_equation(black_box(&s3), 8, None, 8)));
    let terms: Vec<BigInt> = motzkin_sequence(&WeightSpec::all_ones(2), 120)
        .into_iter()
        .map(BigInt::from)
        .collect();
    g.bench_function("recurrence rank 2, K = 8, D = 3", |b| b.iter(|| guess_recurrence(black_box(&terms), 8, 3)));
    g.finish();
}

criterion_group!(benches, counting, series, guessing);
criterion_main!(benches);
