use std::hint::black_box;
use std::path::Path;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use desred::io::{parse_alphabet, parse_model};
use desred::par::{self, Mode};
use desred::random::{random_system, Limits, RandomSystem};
use desred::reduce::{brute_min_in, reduce_ra};
use desred::transform::build_context;
use desred::verify::attack_equivalent;

fn water_tank() -> (desred::transform::AttackContext, desred::Automaton) {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/water_tank");
    let read = |f: &str| std::fs::read_to_string(dir.join(f)).unwrap();
    let alphabet = parse_alphabet(&read("alphabet.txt")).unwrap();
    let g = parse_model(&read("plant.fsa")).unwrap();
    let s = parse_model(&read("supervisor.fsa")).unwrap();
    let ctx = build_context(&g, &s, &alphabet).unwrap();
    let a = ctx.with_attacker_alphabet(&parse_model(&read("attacker.fsa")).unwrap());
    (ctx, a)
}

fn suite(n: u64) -> Vec<RandomSystem> {
    (0..n)
        .map(|seed| random_system(seed, Limits::default()).unwrap())
        .collect()
}

fn check_one(sys: &RandomSystem) -> bool {
    let r = reduce_ra(&sys.attacker, &sys.context).unwrap();
    attack_equivalent(&sys.attacker, &r.reduced, &sys.context)
        .unwrap()
        .is_equivalent()
}

fn brute_force(c: &mut Criterion) {
    let (ctx, a) = water_tank();
    let mut group = c.benchmark_group("brute_min_water_tank");
    group.sample_size(10);
    for (name, mode) in [("parallel", Mode::Auto), ("sequential", Mode::Sequential)] {
        group.bench_function(name, |b| {
            b.iter(|| {
                brute_min_in(mode, black_box(&a), &ctx, 14)
                    .unwrap()
                    .congruence
                    .len()
            })
        });
    }
    group.finish();
}

fn batch_suite(c: &mut Criterion) {
    let mut group = c.benchmark_group("reduce_and_verify_batch");
    for n in [50u64, 200] {
        let systems = suite(n);
        group.bench_with_input(BenchmarkId::new("parallel", n), &systems, |b, s| {
            b.iter(|| par::map(s.iter().collect(), check_one).into_iter().all(|ok| ok))
        });
        group.bench_with_input(BenchmarkId::new("sequential", n), &systems, |b, s| {
            b.iter(|| {
                par::map_sequential(s.iter().collect(), check_one)
                    .into_iter()
                    .all(|ok| ok)
            })
        });
    }
    group.finish();
}

criterion_group!(benches, brute_force, batch_suite);
criterion_main!(benches);
