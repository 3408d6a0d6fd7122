//! Compares the data-parallel code paths against a single-threaded pool.
//! Build with `--no-default-features` to measure the sequential fallback itself.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hypero::arrangement::{validate, CategoryODatum};
use hypero::blockalg::{quotient_by_unbounded, Flavor};
use hypero::dualities::mirror_dim_check;
use hypero::fixtures::{ex2, random_datum};
use hypero::repcat::ext_algebra;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn wide_datum(n: usize) -> CategoryODatum {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    loop {
        let d = random_datum(&mut rng, n, n);
        if d.g_rank() > 0 && d.dim_v() > 1 {
            return d;
        }
    }
}

fn pools() -> Vec<(&'static str, rayon::ThreadPool)> {
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get());
    let mut out = vec![("1-thread", rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap())];
    if threads > 1 {
        out.push(("parallel", rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap()));
    }
    out
}

fn bench_pipeline(c: &mut Criterion) {
    let plumbing = ex2();
    let wide = wide_datum(6);
    let validate_input = wide_datum(8);
    let algebra = quotient_by_unbounded(&wide, Flavor::DeRham).unwrap();
    let mode = if hypero::par::is_parallel() { "rayon" } else { "sequential" };

    let mut group = c.benchmark_group(format!("pipeline/{mode}"));
    group.sample_size(10);
    for (name, pool) in pools() {
        group.bench_with_input(BenchmarkId::new("validate_n8", name), &validate_input, |b, d| {
            b.iter(|| pool.install(|| validate(d)))
        });
        group.bench_with_input(BenchmarkId::new("quotient_n6", name), &wide, |b, d| {
            b.iter(|| pool.install(|| quotient_by_unbounded(d, Flavor::DeRham).unwrap()))
        });
        group.bench_with_input(BenchmarkId::new("ext_n6", name), &algebra, |b, a| {
            b.iter(|| pool.install(|| ext_algebra(a, 16).unwrap()))
        });
        group.bench_with_input(BenchmarkId::new("mirror_plumbing", name), &plumbing, |b, d| {
            b.iter(|| pool.install(|| mirror_dim_check(d, 16).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_pipeline);
criterion_main!(benches);
