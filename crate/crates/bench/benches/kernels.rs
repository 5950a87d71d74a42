use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use opeq_bench::{general, hermitian, pd_pair, SIZES};
use opeq_core::linalg::{herm_eig, pinv, svd};
use opeq_core::module_model::{demo, Demo, DEFAULT_GRID};
use opeq_core::{pt_solve, riccati_geomean, RankPolicy, Tolerances};
use std::hint::black_box;

fn decompositions(c: &mut Criterion) {
    let mut g = c.benchmark_group("decompositions");
    for n in SIZES {
        let h = hermitian(n);
        g.bench_with_input(BenchmarkId::new("herm_eig", n), &h, |b, h| b.iter(|| herm_eig(black_box(h), 1e-8)));
        let m = general(n);
        g.bench_with_input(BenchmarkId::new("svd", n), &m, |b, m| b.iter(|| svd(black_box(m))));
        g.bench_with_input(BenchmarkId::new("pinv", n), &m, |b, m| {
            b.iter(|| pinv(black_box(m), RankPolicy::default()))
        });
    }
    g.finish();
}

fn solvers(c: &mut Criterion) {
    let tol = Tolerances::default();
    let mut g = c.benchmark_group("solvers");
    for n in SIZES {
        let (h, k) = pd_pair(n);
        g.bench_with_input(BenchmarkId::new("pt_solve", n), &(h.clone(), k.clone()), |b, (h, k)| {
            b.iter(|| pt_solve(black_box(h), black_box(k), &tol))
        });
        let k_pd = &k + &h;
        g.bench_with_input(BenchmarkId::new("geomean", n), &(h, k_pd), |b, (x, y)| {
            b.iter(|| riccati_geomean(black_box(x), black_box(y), &tol))
        });
    }
    g.finish();
}

fn module_demo(c: &mut Criterion) {
    let tol = Tolerances::default();
    c.bench_function("demo_ex1_1024", |b| b.iter(|| demo(Demo::Ex1, black_box(DEFAULT_GRID), &tol)));
}

criterion_group!(benches, decompositions, solvers, module_demo);
criterion_main!(benches);
