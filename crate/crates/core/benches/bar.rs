use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qcanon_core::barinv::BarTable;
use qcanon_core::canbasis::solve_table;
use qcanon_core::quantumrep::{Cartan, CartanType};
use qcanon_core::Exec;

fn policies() -> Vec<(&'static str, Exec)> {
    let mut v = vec![("sequential", Exec::Sequential)];
    if Exec::parallel_available() {
        v.push(("parallel", Exec::Parallel));
    }
    v
}

fn bar_table(c: &mut Criterion) {
    let mut g = c.benchmark_group("bar_table");
    g.sample_size(10);
    for (ty, n, k) in [(CartanType::C, 3, 4), (CartanType::B, 4, 3)] {
        for (name, exec) in policies() {
            g.bench_with_input(BenchmarkId::new(name, format!("{ty} n={n} k={k}")), &exec, |b, &exec| {
                b.iter(|| BarTable::new(Cartan::new(ty, k), n, n, exec).unwrap())
            });
        }
    }
    g.finish();
}

fn canonical_table(c: &mut Criterion) {
    let mut g = c.benchmark_group("solve_table");
    g.sample_size(10);
    let bar = BarTable::new(Cartan::new(CartanType::C, 4), 3, 3, Exec::default()).unwrap();
    for (name, exec) in policies() {
        g.bench_with_input(BenchmarkId::new(name, "C n=3 k=4"), &exec, |b, &exec| {
            b.iter(|| solve_table(&bar, true, exec).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, bar_table, canonical_table);
criterion_main!(benches);
