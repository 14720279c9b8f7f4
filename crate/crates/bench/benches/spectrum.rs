use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use crw_bench::{params, SPEEDS};
use crw_core::oracle::{count_in_rectangle, refine_eigenvalue, shoot, steps_for, Rect};
use crw_core::spectrum::{critical_s, dominant, nu_root, spectrum_slice};

fn roots(c: &mut Criterion) {
    let mut group = c.benchmark_group("nu_root");
    for s in SPEEDS {
        let p = params(s);
        for n in [1, 10, 100] {
            group.bench_with_input(BenchmarkId::new(format!("S={s:.3}"), n), &n, |b, &n| {
                b.iter(|| nu_root(&p, black_box(n), 1).unwrap())
            });
        }
    }
    group.finish();
    c.bench_function("critical_s/m=1..20", |b| b.iter(|| (1..=20).map(critical_s).count()));
}

fn slices(c: &mut Criterion) {
    let mut group = c.benchmark_group("spectrum_slice");
    for s in SPEEDS {
        let p = params(s);
        group.bench_with_input(BenchmarkId::new("n_max=30", format!("S={s:.3}")), &p, |b, p| {
            b.iter(|| spectrum_slice(p, 30).unwrap())
        });
    }
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let p = params(0.8);
    let lambda = dominant(&p).lambda;
    let steps = steps_for(&p, lambda);
    c.bench_function("shoot/S=0.8", |b| b.iter(|| shoot(&p, black_box(lambda), steps)));
    c.bench_function("refine/S=0.8", |b| {
        b.iter(|| refine_eigenvalue(&p, black_box(lambda)).unwrap())
    });
    let mut group = c.benchmark_group("winding");
    group.sample_size(10);
    let rect = Rect::new(-6.0, 0.0, -10.0, 10.0);
    group.bench_function("S=0.8", |b| b.iter(|| count_in_rectangle(&p, &rect, 4000).unwrap()));
    group.finish();
}

criterion_group!(benches, roots, slices, oracle);
criterion_main!(benches);
