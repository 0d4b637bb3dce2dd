use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use unitforce::exec::Execution;
use unitforce::replay::{check_certificate_with, derive_certificate};
use unitforce::witness::{build, plan_derivation, verify_witness_with, BuildOptions};

fn modes(c: &mut Criterion) {
    let mut group = c.benchmark_group("witness");
    group.sample_size(10);
    for (p, q) in [(3u64, 4u64), (5, 1)] {
        let plan = plan_derivation(p, q, &BuildOptions::default().plan).unwrap();
        let g = build(&plan, &BuildOptions::default()).unwrap();
        let cert = derive_certificate(&g).unwrap();
        for exec in [Execution::Sequential, Execution::Parallel] {
            let opts = BuildOptions { exec, ..BuildOptions::default() };
            let id = format!("{p}/{q}/{exec:?}");
            group.bench_with_input(BenchmarkId::new("build", &id), &opts, |b, o| b.iter(|| build(&plan, o).unwrap()));
            group.bench_with_input(BenchmarkId::new("verify", &id), &exec, |b, &e| b.iter(|| verify_witness_with(&g, e)));
            group.bench_with_input(BenchmarkId::new("check", &id), &exec, |b, &e| {
                b.iter(|| check_certificate_with(&g, &cert, e))
            });
        }
    }
    group.finish();
}

criterion_group!(benches, modes);
criterion_main!(benches);
