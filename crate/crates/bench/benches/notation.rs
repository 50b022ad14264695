use criterion::{black_box, criterion_group, criterion_main, Criterion};
use ordforge::catalog::resolve_system;
use ordforge::enumerate;

fn notation(c: &mut Criterion) {
    for name in ["expX3", "derivX2", "veblen2X2"] {
        let s = resolve_system(name, &[]).unwrap();
        let terms = enumerate(&s, 4, 3).unwrap();
        c.bench_function(&format!("{name}/enumerate-4"), |b| {
            b.iter(|| enumerate(&s, black_box(4), 3).unwrap())
        });
        c.bench_function(&format!("{name}/compare-all-pairs"), |b| {
            b.iter(|| {
                let mut less = 0usize;
                for x in &terms {
                    for y in &terms {
                        less += s.lt(x, y).unwrap() as usize;
                    }
                }
                less
            })
        });
        c.bench_function(&format!("{name}/normalize"), |b| {
            b.iter(|| {
                for x in &terms {
                    black_box(s.normalize(x).unwrap());
                }
            })
        });
    }
}

criterion_group!(benches, notation);
criterion_main!(benches);
