use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ordforge::calculus::Ctx;
use ordforge::fixtures;
use ordforge::samples::toy_w;
use ordforge::search::{build_search_tree, SearchConfig};
use ordforge::welim::w_eliminate;

fn search(c: &mut Criterion) {
    let mut g = c.benchmark_group("search");
    for name in ["one", "chain3", "cycle2"] {
        let ctx = Ctx::new(fixtures::family(name).unwrap());
        for depth in [8, 12] {
            let cfg = SearchConfig::new(depth, 2);
            g.bench_with_input(BenchmarkId::new(name, depth), &cfg, |b, cfg| {
                b.iter(|| build_search_tree(&ctx, cfg).unwrap())
            });
        }
    }
    g.finish();
}

fn elimination(c: &mut Criterion) {
    let toy = toy_w(false, 4).unwrap();
    c.bench_function("weliminate/toy", |b| {
        b.iter(|| w_eliminate(&toy, 6, 4).unwrap())
    });
}

criterion_group!(benches, search, elimination);
criterion_main!(benches);
