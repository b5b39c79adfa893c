use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use singulus_bench::{fermat, product_plus_cube, random_cubic};
use singulus_core::oracle::{cross_check, graded_betti, hilbert_fit};

fn hilbert(c: &mut Criterion) {
    let mut g = c.benchmark_group("hilbert_fit");
    for (n, d) in [(2, 4), (3, 3), (3, 4)] {
        let f = fermat(n, d);
        g.bench_with_input(BenchmarkId::new("fermat", format!("n{n}d{d}")), &f, |b, f| {
            b.iter(|| hilbert_fit(f, None).unwrap())
        });
    }
    g.finish();
}

fn betti(c: &mut Criterion) {
    let mut g = c.benchmark_group("graded_betti");
    g.sample_size(10);
    for (n, d) in [(2, 4), (3, 3)] {
        let f = fermat(n, d);
        g.bench_with_input(BenchmarkId::new("fermat", format!("n{n}d{d}")), &f, |b, f| {
            b.iter(|| graded_betti(f, None, &[]).unwrap())
        });
    }
    let f = random_cubic(3, 7);
    g.bench_function("random_cubic_surface", |b| b.iter(|| graded_betti(&f, None, &[]).unwrap()));
    g.finish();
}

fn cross(c: &mut Criterion) {
    let f = product_plus_cube();
    let mut g = c.benchmark_group("cross_check");
    g.sample_size(10);
    g.bench_function("product_plus_cube", |b| b.iter(|| cross_check(&f).unwrap()));
    g.finish();
}

criterion_group!(benches, hilbert, betti, cross);
criterion_main!(benches);
