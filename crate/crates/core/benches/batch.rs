//! Batch workloads through `parallel::map` against a plain sequential loop.
//! Build with `--no-default-features` to make the library side sequential too.

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use origami_core::algebra::{factor_degree_scan, factor_degrees_mod_p, primes_up_to, QPoly};
use origami_core::cyclic::{circumradius_batch, circumradius_solve};
use origami_core::numerics::{Precision, Real};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn side_lists(count: usize, prec: Precision) -> Vec<Vec<Real>> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.gen_range(3..=8);
        let a: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=20)).collect();
        let max = *a.iter().max().unwrap();
        if 2 * max < a.iter().sum::<i64>() {
            out.push(a.iter().map(|x| Real::from_i64(*x, prec)).collect());
        }
    }
    out
}

fn circumradius(c: &mut Criterion) {
    let prec = Precision::new(50).unwrap();
    let mut group = c.benchmark_group("circumradius");
    group.sample_size(10);
    for count in [16usize, 64] {
        let lists = side_lists(count, prec);
        group.bench_with_input(BenchmarkId::new("parallel", count), &lists, |b, l| b.iter(|| circumradius_batch(black_box(l))));
        group.bench_with_input(BenchmarkId::new("sequential", count), &lists, |b, l| {
            b.iter(|| l.iter().map(|a| circumradius_solve(black_box(a))).collect::<Vec<_>>())
        });
    }
    group.finish();
}

fn prime_scan(c: &mut Criterion) {
    let pd: QPoly = "4x^7+51x^6+160x^5-246x^4-1836x^3-1785x^2+1800x+2160".parse().unwrap();
    let mut group = c.benchmark_group("factor_degree_scan");
    for bound in [200u64, 1000] {
        let primes = primes_up_to(bound);
        group.bench_with_input(BenchmarkId::new("parallel", bound), &primes, |b, p| b.iter(|| factor_degree_scan(black_box(&pd), p)));
        group.bench_with_input(BenchmarkId::new("sequential", bound), &primes, |b, p| {
            b.iter(|| p.iter().map(|q| (*q, factor_degrees_mod_p(black_box(&pd), *q))).collect::<Vec<_>>())
        });
    }
    group.finish();
}

criterion_group!(benches, circumradius, prime_scan);
criterion_main!(benches);
