use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand_chacha::rand_core::SeedableRng;
use wreath_bench::{elements, states};
use wreath_core::oracle::oracle_eval;
use wreath_core::samples::random_unitary;
use wreath_core::ComplexMatrix;

fn closed_form_vs_oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("eval");
    for (name, state) in states() {
        for support in [2, 4, 6] {
            let list = elements(&state, support, 16);
            group.bench_with_input(BenchmarkId::new(format!("closed/{name}"), support), &list, |b, list| {
                b.iter(|| list.iter().map(|g| state.eval(black_box(g))).sum::<num_complex::Complex64>())
            });
            if support <= 4 {
                group.bench_with_input(BenchmarkId::new(format!("oracle/{name}"), support), &list, |b, list| {
                    b.iter(|| {
                        list.iter()
                            .map(|g| oracle_eval(&state, black_box(g), support).unwrap())
                            .sum::<num_complex::Complex64>()
                    })
                });
            }
        }
    }
    group.finish();
}

fn jacobi(c: &mut Criterion) {
    let mut group = c.benchmark_group("hermitian_eig");
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
    for n in [4, 16, 48] {
        let u = random_unitary(n, &mut rng);
        let d = ComplexMatrix::diag_real(&(0..n).map(|i| i as f64 / n as f64).collect::<Vec<_>>());
        let h = &(&u * &d) * &u.adjoint();
        let h = ComplexMatrix::from_fn(n, n, |i, j| (h[(i, j)] + h[(j, i)].conj()) * 0.5);
        group.bench_with_input(BenchmarkId::from_parameter(n), &h, |b, h| b.iter(|| h.hermitian_eig().unwrap()));
    }
    group.finish();
}

criterion_group!(benches, closed_form_vs_oracle, jacobi);
criterion_main!(benches);
