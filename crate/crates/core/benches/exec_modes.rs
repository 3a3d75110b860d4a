use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use sn_core::exec::Exec;
use sn_core::suite::{run, Suite, SuiteConfig};

fn config(exec: Exec) -> SuiteConfig {
    SuiteConfig {
        dims: vec![3],
        trials: 16,
        suites: vec![Suite::Schouten, Suite::Cartan],
        exec,
        ..SuiteConfig::default()
    }
}

fn suites(c: &mut Criterion) {
    let mut group = c.benchmark_group("suite");
    group.sample_size(10);
    for (name, exec) in [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)] {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| run(&config(exec)).expect("valid config"))
        });
    }
    group.finish();
}

criterion_group!(benches, suites);
criterion_main!(benches);
