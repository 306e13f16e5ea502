use criterion::{criterion_group, criterion_main, Criterion};

use cutquery::config::LabConfig;
use cutquery::harness::{run_suite, Algorithm, Family, InstanceSpec, SuiteOptions};

fn suite(c: &mut Criterion) {
    let specs: Vec<InstanceSpec> = [Family::RandomGnp, Family::PlantedCut, Family::Barbell]
        .into_iter()
        .flat_map(|f| (0..4).map(move |seed| InstanceSpec::new(f, 24, seed)))
        .collect();
    let algos = [Algorithm::Mincut, Algorithm::Maxflow];
    let cfg = LabConfig::default();
    let mut group = c.benchmark_group("run_suite");
    group.sample_size(10);
    for (name, parallel) in [("sequential", false), ("parallel", true)] {
        let opts = SuiteOptions { skip_reference: true, parallel, ..SuiteOptions::default() };
        group.bench_function(name, |b| b.iter(|| run_suite(&specs, &algos, &cfg, &opts).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, suite);
criterion_main!(benches);
