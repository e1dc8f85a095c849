//! Coset analysis and verification on F4, on a single-thread pool versus
//! the default pool.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use coxtwist::cosets::all_cosets;
use coxtwist::twisted::{DiagramAutomorphism, TwistedSubgroup};
use coxtwist::verify::{run_suite, Suite, SuiteConfig, SystemCase};
use coxtwist::{named, CoxeterSystem, DEFAULT_CAP};

fn pools() -> Vec<(String, rayon::ThreadPool)> {
    let default = rayon::ThreadPoolBuilder::new().build().unwrap();
    let threads = default.current_num_threads();
    vec![
        ("sequential".into(), rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap()),
        (format!("parallel-{threads}"), default),
    ]
}

fn bench_cosets(c: &mut Criterion) {
    let sys = CoxeterSystem::build(named::matrix("F4").unwrap(), DEFAULT_CAP).unwrap();
    let theta = DiagramAutomorphism::from_swaps(&sys, &[0, 1, 2, 3], &[(0, 3), (1, 2)]).unwrap();
    let sub = TwistedSubgroup::enumerate(&sys, theta, DEFAULT_CAP).unwrap();
    let mut group = c.benchmark_group("f4_all_cosets");
    for (name, pool) in pools() {
        group.bench_function(BenchmarkId::from_parameter(&name), |b| {
            b.iter(|| pool.install(|| all_cosets(&sub).unwrap()))
        });
    }
    group.finish();
}

fn bench_verify(c: &mut Criterion) {
    let config = SuiteConfig {
        systems: vec![SystemCase::named("F4", &[(0, 3), (1, 2)]).unwrap()],
        suites: vec![Suite::InversionSets, Suite::EqualLengthLift, Suite::StepDichotomy, Suite::BruhatMinimal],
        ..SuiteConfig::default()
    };
    let mut group = c.benchmark_group("f4_verify");
    group.sample_size(10);
    for (name, pool) in pools() {
        group.bench_function(BenchmarkId::from_parameter(&name), |b| {
            b.iter(|| pool.install(|| assert!(run_suite(&config).is_success())))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_cosets, bench_verify);
criterion_main!(benches);
