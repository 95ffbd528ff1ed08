use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hopf_modes::quadrature::build_grid;
use hopf_modes::sampling::{random_points, ANALYTIC_MARGIN};
use hopf_modes::verify::{basis_modes, curl_eigen_residual, mode_gram, scalar_gram_deviation};
use hopf_modes::Execution;

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn gram_assembly(c: &mut Criterion) {
    let mut g = c.benchmark_group("basis_gram");
    g.sample_size(10);
    for l in [2u32, 4] {
        let grid = build_grid(l);
        let modes = basis_modes(l);
        for (name, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(name, l), &l, |b, _| {
                b.iter(|| mode_gram(&modes, &grid, true, exec).unwrap())
            });
        }
    }
    g.finish();

    let mut g = c.benchmark_group("scalar_gram");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(name, |b| b.iter(|| scalar_gram_deviation(5, exec).unwrap()));
    }
    g.finish();
}

fn batch_residuals(c: &mut Criterion) {
    let pts = random_points(100, 1, ANALYTIC_MARGIN);
    let modes: Vec<_> = (2..=6)
        .flat_map(hopf_modes::mode_families::enumerate_coexact)
        .flatten()
        .collect();
    let mut g = c.benchmark_group("curl_residuals");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(name, |b| {
            b.iter(|| {
                exec.map(&modes, |m| {
                    curl_eigen_residual(m.tag, &m.index, &pts)
                        .unwrap()
                        .relative()
                })
                .into_iter()
                .fold(0.0f64, f64::max)
            })
        });
    }
    g.finish();
}

criterion_group!(benches, gram_assembly, batch_residuals);
criterion_main!(benches);
