use std::hint::black_box;

use casimir_qubit::clifford::{dirac_basis, GammaBasis};
use casimir_qubit::modes::{momentum, Mode, ModeWindow, SlabGeometry};
use casimir_qubit::par;
use casimir_qubit::pseudodensity::{build_rho, product_decomposition, thermal_decompose, von_neumann_entropy};
use casimir_qubit::sum::compensated_sum;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};

fn per_mode(geom: &SlabGeometry, mode: &Mode, basis: &GammaBasis) -> f64 {
    let p = momentum(geom, *mode).unwrap();
    let rho = build_rho(&p, basis).unwrap();
    let t = thermal_decompose(&rho, &p, basis).unwrap();
    let d = product_decomposition(&rho).unwrap();
    von_neumann_entropy(&rho).unwrap().re + t.beta_check + d.residual
}

fn window_modes(w: u32) -> Vec<Mode> {
    let window = ModeWindow::new(w, w, w, w).unwrap();
    (0..window.count()).map(|i| window.mode_at(i)).collect()
}

fn bench_mode_sweep(c: &mut Criterion) {
    let geom = SlabGeometry::unit(1.0);
    let basis = dirac_basis();
    let mut group = c.benchmark_group("mode_sweep");
    group.sample_size(20);
    for w in [2u32, 4] {
        let modes = window_modes(w);
        group.throughput(Throughput::Elements(modes.len() as u64));
        group.bench_with_input(BenchmarkId::new("parallel", modes.len()), &modes, |b, modes| {
            b.iter(|| {
                let v = par::map_ordered(modes, |m| per_mode(&geom, m, &basis));
                black_box(compensated_sum(v))
            })
        });
        group.bench_with_input(BenchmarkId::new("sequential", modes.len()), &modes, |b, modes| {
            b.iter(|| {
                let v = par::map_ordered_seq(modes, |m| per_mode(&geom, m, &basis));
                black_box(compensated_sum(v))
            })
        });
    }
    group.finish();
}

criterion_group!(benches, bench_mode_sweep);
criterion_main!(benches);
