use std::hint::black_box;
use std::time::Duration;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use syzex_core::corpus;
use syzex_core::extdim::{bullet, generate_universe, AddCat, BulletOptions, UniverseOptions};
use syzex_core::par::Parallelism;
use syzex_core::simple;

const MODES: [(&str, Parallelism); 2] = [
    ("sequential", Parallelism::Sequential),
    ("parallel", Parallelism::Parallel),
];

fn closure(c: &mut Criterion) {
    let mut g = c.benchmark_group("universe");
    g.sample_size(10).measurement_time(Duration::from_secs(10));
    for (id, d) in [("kron2", 6), ("fivevertex", 8)] {
        let alg = corpus::load(id).unwrap();
        for (name, mode) in MODES {
            let mut opts = UniverseOptions::new(d);
            opts.parallelism = mode;
            g.bench_with_input(BenchmarkId::new(name, format!("{id}/d{d}")), &opts, |b, o| {
                b.iter(|| generate_universe(black_box(&alg), o).unwrap())
            });
        }
    }
    g.finish();
}

fn bullets(c: &mut Criterion) {
    let alg = corpus::load("kron2").unwrap();
    let mut uo = UniverseOptions::new(6);
    uo.rules.mult_bound = 2;
    let u = generate_universe(&alg, &uo).unwrap();
    let s0 = AddCat::generated_by(&alg, [&simple(&alg, 0)]);
    let s1 = AddCat::generated_by(&alg, [&simple(&alg, 1)]);

    let mut g = c.benchmark_group("bullet");
    g.sample_size(10).measurement_time(Duration::from_secs(10));
    for (name, mode) in MODES {
        let mut opts = BulletOptions::with_mult_bound(6);
        opts.parallelism = mode;
        g.bench_function(BenchmarkId::new(name, "kron2/S1.S0"), |b| {
            b.iter(|| bullet(&u, black_box(&s1), &s0, &opts).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, closure, bullets);
criterion_main!(benches);
