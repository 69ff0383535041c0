//! Sequential vs. rayon subset enumeration, plus determinant scaling.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use pivotal::{count_applicable_supports_with, orbit_with, Exec, Graph, SubsetSearch};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_graph(n: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new(0..n);
    let vs = g.vertices().to_vec();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(0.5) {
                g.set_edge(&vs[i], &vs[j], true).unwrap();
            }
        }
    }
    g
}

const MODES: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

fn count_supports(c: &mut Criterion) {
    let mut group = c.benchmark_group("count_applicable_supports");
    group.sample_size(10);
    for n in [12, 16, 20] {
        let g = random_graph(n, n as u64);
        for (name, exec) in MODES {
            let search = SubsetSearch::new(24).with_exec(exec);
            group.bench_with_input(BenchmarkId::new(name, n), &g, |b, g| {
                b.iter(|| count_applicable_supports_with(black_box(g), search).unwrap())
            });
        }
    }
    group.finish();
}

fn orbit(c: &mut Criterion) {
    let mut group = c.benchmark_group("orbit");
    group.sample_size(10);
    for n in [8, 10, 12] {
        let g = random_graph(n, 100 + n as u64);
        for (name, exec) in MODES {
            let search = SubsetSearch::new(12).with_exec(exec);
            group.bench_with_input(BenchmarkId::new(name, n), &g, |b, g| {
                b.iter(|| orbit_with(black_box(g), search).unwrap())
            });
        }
    }
    group.finish();
}

fn determinant(c: &mut Criterion) {
    let mut group = c.benchmark_group("det");
    for n in [64, 256, 1024] {
        let g = random_graph(n, 200 + n as u64);
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| {
            b.iter(|| black_box(g).adjacency().det())
        });
    }
    group.finish();
}

criterion_group!(benches, count_supports, orbit, determinant);
criterion_main!(benches);
