use std::hint::black_box;
use std::time::Duration;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use h7alg::exactfield::Rat;
use h7alg::exec::Exec;
use h7alg::heisrep::g7_table;
use h7alg::kleinmoduli::{alpha_compose, delta_criterion, random_alpha, sample_parameters, surface_betti, surface_checks, Coeff, Compositions};
use h7alg::polylin::{PolyCtx, PolyRing, Registry};

const POLICIES: [(&str, Exec); 2] = [("seq", Exec::Seq), ("par", Exec::Par)];

fn surface_pipeline(c: &mut Criterion) {
    let g7 = g7_table();
    let ts = sample_parameters(42, 8);
    let mut g = c.benchmark_group("surface_checks_x8");
    g.sample_size(10).measurement_time(Duration::from_secs(20));
    for (name, exec) in POLICIES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| exec.map(&ts, |t| surface_checks(black_box(t), &g7, Exec::Seq).unwrap().all_pass())));
    }
    g.finish();
}

fn koszul_betti(c: &mut Criterion) {
    let t = vec![Rat::one(); 4];
    let mut g = c.benchmark_group("surface_betti_f31_deg8");
    g.sample_size(10).measurement_time(Duration::from_secs(15));
    for (name, exec) in POLICIES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| surface_betti(black_box(&t), Coeff::Prime(31), 8, exec).unwrap().matches_expected));
    }
    g.finish();
}

fn alpha_equivalence(c: &mut Criterion) {
    let u = PolyCtx::<Rat>::new(PolyRing::registry(Registry::U), ());
    let comp = Compositions::new(&PolyCtx::<Rat>::new(PolyRing::registry(Registry::X), ()));
    let alphas = random_alpha(42, 200);
    let mut g = c.benchmark_group("alpha_equivalence_x200");
    g.sample_size(10);
    for (name, exec) in POLICIES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| exec.map(&alphas, |a| alpha_compose(&comp, &u, a).unwrap().is_zero() == delta_criterion(&u, a).unwrap()))
        });
    }
    g.finish();
}

criterion_group!(benches, surface_pipeline, koszul_betti, alpha_equivalence);
criterion_main!(benches);
