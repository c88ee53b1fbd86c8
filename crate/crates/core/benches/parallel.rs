//! Sequential vs parallel: the same workloads on a one-thread rayon pool and
//! on the default pool. Build with `--no-default-features` to time the plain
//! iterator fallback instead.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rayon::ThreadPoolBuilder;
use torica_core::cone::Cone;
use torica_core::divisor::{enumerate_mcm_rank_one_candidates, module_generators, ToricVariety};

type Workload = Box<dyn Fn() + Sync>;

fn workloads() -> Vec<(&'static str, Workload)> {
    let tilted =
        Cone::new(3, vec![vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 17], vec![5, 3, 11], vec![2, 7, 13]]).unwrap();
    let s = ToricVariety::steinberg();
    let product = ToricVariety::power_product(2, 1);
    vec![
        ("hilbert_basis", Box::new(move || drop(black_box(tilted.hilbert_basis().unwrap())))),
        (
            "module_generators",
            Box::new(move || {
                let d = s.prime_divisor(0).scale(-7);
                drop(black_box(module_generators(&s, &d).unwrap()));
            }),
        ),
        (
            "mcm_scan",
            Box::new(|| {
                drop(black_box(enumerate_mcm_rank_one_candidates(&ToricVariety::steinberg(), 4, 6, 101).unwrap()))
            }),
        ),
        (
            "product_generators",
            Box::new(move || {
                let d = product.divisor(vec![-3, 0, 0, 0, -3, 0, 0, 0, 0]).unwrap();
                drop(black_box(module_generators(&product, &d).unwrap()));
            }),
        ),
    ]
}

fn sequential_vs_parallel(c: &mut Criterion) {
    let single = ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let default = ThreadPoolBuilder::new().build().unwrap();
    let threads = default.current_num_threads();
    for (name, work) in workloads() {
        let mut group = c.benchmark_group(name);
        group.sample_size(20);
        group.bench_function(BenchmarkId::new("sequential", 1), |b| single.install(|| b.iter(&work)));
        group.bench_function(BenchmarkId::new("parallel", threads), |b| default.install(|| b.iter(&work)));
        group.finish();
    }
}

criterion_group!(benches, sequential_vs_parallel);
criterion_main!(benches);
