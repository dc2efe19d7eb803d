use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};
use qdt_core::datakit::{parse_conjunction_csv, TABLE1_CSV};
use qdt_core::interference::{sample_interference_magnitude, seeded_stream};
use qdt_core::{
    analyze_disjunction, build_mind_basis, decompose, schmidt_rank, Bipartition, Complex64, DisjunctionInput,
    QuarterLawPrior, StateVector,
};

fn coefficients(n: usize, shift: f64) -> Vec<Complex64> {
    (0..n)
        .map(|k| Complex64::from_polar(1.0 / (n as f64).sqrt(), shift + k as f64 * 0.7))
        .collect()
}

fn bench_decompose(c: &mut Criterion) {
    let a = coefficients(8, 0.0);
    let s = coefficients(8, 1.3);
    c.bench_function("decompose 8 modes", |b| b.iter(|| decompose(black_box(&a), black_box(&s)).unwrap()));
}

fn bench_schmidt(c: &mut Criterion) {
    let basis = Arc::new(
        build_mind_basis([
            ("a", vec!["0", "1", "2", "3"]),
            ("b", vec!["0", "1", "2", "3"]),
            ("c", vec!["0", "1", "2", "3"]),
        ])
        .unwrap(),
    );
    let state = StateVector::from_dense(basis, &coefficients(64, 0.4)).unwrap();
    let cut = Bipartition::single(3, 1).unwrap();
    c.bench_function("schmidt rank 4x16", |b| {
        b.iter(|| schmidt_rank(black_box(&state), &cut, 1e-9).unwrap())
    });
}

fn bench_effects(c: &mut Criterion) {
    let input = DisjunctionInput::new(0.69, 0.59, 0.5, 0.36).unwrap();
    c.bench_function("disjunction analysis", |b| b.iter(|| analyze_disjunction(black_box(&input)).unwrap()));
    c.bench_function("conjunction table parse and analyze", |b| {
        b.iter(|| {
            parse_conjunction_csv(black_box(TABLE1_CSV).as_bytes(), "table1")
                .unwrap()
                .analyze()
                .unwrap()
        })
    });
}

fn bench_sampling(c: &mut Criterion) {
    let prior = QuarterLawPrior::even_mixture();
    c.bench_function("quarter-law sampling 10^5", |b| {
        b.iter(|| sample_interference_magnitude(&mut seeded_stream(42), &prior, black_box(100_000)).unwrap())
    });
}

criterion_group!(benches, bench_decompose, bench_schmidt, bench_effects, bench_sampling);
criterion_main!(benches);
