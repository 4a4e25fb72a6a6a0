use criterion::{black_box, criterion_group, criterion_main, Criterion};

use hallsim_bench::quantum_config;
use hallsim_core::constraint_edge::helmholtz_split;
use hallsim_core::dynamics::{
    current_density, step_psi, CurrentTag, LatticeState, PsiStepper, PsiWorkspace, Simulation,
};
use hallsim_core::grid::Grid2D;
use hallsim_core::params::PhysicalParams;
use hallsim_core::quantization::{commutator_residual, SingleModePair};
use hallsim_core::transport::{sweep_conductivities, RegimeThresholds, SweepVariable};

fn bench_sweep(c: &mut Criterion) {
    let p = PhysicalParams::natural(1.0, 1.0, 1.0).unwrap();
    let values: Vec<f64> = (1..=10_000).map(|k| 0.01 * k as f64).collect();
    c.bench_function("drude_sweep_10k", |b| {
        b.iter(|| {
            sweep_conductivities(
                black_box(&p),
                black_box(&values),
                SweepVariable::Field,
                &RegimeThresholds::default(),
            )
            .unwrap()
        })
    });
}

fn bench_psi_step(c: &mut Criterion) {
    let g = Grid2D::new(64, 64, 0.1).unwrap();
    let p = PhysicalParams::natural(1.0, 1.0, 0.0).unwrap();
    let mut s = LatticeState::zeros(g);
    s.set_plane_wave(0.5, 0.0, 1.0, 4);
    s.a1.fill(0.2);
    let dt = 0.1 * g.spacing * g.spacing;
    let mut ws = PsiWorkspace::new(&g);
    c.bench_function("crank_nicolson_step_64", |b| {
        b.iter(|| {
            step_psi(
                black_box(&mut s),
                &p,
                dt,
                PsiStepper::CrankNicolson,
                0.7,
                &mut ws,
            )
            .unwrap()
        })
    });
}

fn bench_current(c: &mut Criterion) {
    let g = Grid2D::new(64, 64, 0.1).unwrap();
    let p = PhysicalParams::natural(1.0, 1.0, 0.0).unwrap();
    let mut s = LatticeState::zeros(g);
    s.set_plane_wave(0.5, -0.2, 1.0, 4);
    s.a1.fill(0.3);
    c.bench_function("current_density_64", |b| {
        b.iter(|| current_density(black_box(&s), &p, CurrentTag::WithGaugeTerm))
    });
}

fn bench_poisson(c: &mut Criterion) {
    let g = Grid2D::new(64, 64, 0.1).unwrap();
    let n = g.n_nodes();
    let a1: Vec<f64> = (0..n).map(|k| ((k % 37) as f64 / 37.0 - 0.5) * 0.2).collect();
    let a2: Vec<f64> = (0..n).map(|k| ((k % 53) as f64 / 53.0 - 0.5) * 0.2).collect();
    c.bench_function("helmholtz_split_64", |b| {
        b.iter(|| helmholtz_split(black_box(&g), black_box(&a1), black_box(&a2)).unwrap())
    });
}

fn bench_commutator(c: &mut Criterion) {
    let pair = SingleModePair::with_spacing(1.0, 1.0, 2.0, 1e-3).unwrap();
    let probe = |a: f64| (-0.5 * (a / 0.35) * (a / 0.35)).exp();
    c.bench_function("commutator_residual_h1e-3", |b| {
        b.iter(|| commutator_residual(black_box(&pair), &[&probe]).unwrap())
    });
}

fn bench_quantum_run(c: &mut Criterion) {
    c.bench_function("quantum_run_32_steps40", |b| {
        b.iter(|| {
            let sim = Simulation::new(quantum_config(32, 40)).unwrap();
            sim.run().unwrap()
        })
    });
}

criterion_group!(
    benches,
    bench_sweep,
    bench_psi_step,
    bench_current,
    bench_poisson,
    bench_commutator,
    bench_quantum_run
);
criterion_main!(benches);
