use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use quatcg::clebsch::{all_pairs, assemble_mercer_with};
use quatcg::group::BuiltinGroup;
use quatcg::numerics::Tolerances;
use quatcg::par::Execution;
use quatcg::rep::{builtin_irreps, CharacterTable};

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn bench_all_pairs(c: &mut Criterion) {
    let tol = Tolerances::default();
    let mut group = c.benchmark_group("all_pairs");
    group.sample_size(10);
    for which in [BuiltinGroup::Q32, BuiltinGroup::G32_42] {
        let irreps = builtin_irreps(which);
        let table = CharacterTable::from_irreps(&irreps).unwrap();
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, which), &exec, |b, &exec| {
                b.iter(|| black_box(all_pairs(exec, &irreps, &table, &tol)))
            });
        }
    }
    group.finish();
}

fn bench_mercer(c: &mut Criterion) {
    let irreps = builtin_irreps(BuiltinGroup::G32_42);
    let r17 = &irreps[16];
    let mut group = c.benchmark_group("mercer_17x17x17");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(name, |b| {
            b.iter(|| black_box(assemble_mercer_with(exec, r17, r17, r17).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_all_pairs, bench_mercer);
criterion_main!(benches);
