use criterion::{criterion_group, criterion_main, Criterion};
use signcirc_core::catalog::{apply_indicator, build, complete_graph};
use signcirc_core::{chi_c, chi_c_with, enumerate_signed, is_colorable, ChiOptions, CliqueParams, EnumSpec};

fn solver(c: &mut Criterion) {
    let t = build("T").unwrap().graph;
    c.bench_function("chi_c T", |b| b.iter(|| chi_c(&t).unwrap()));

    let petersen = build("PETERSEN").unwrap().graph;
    let opts = ChiOptions { q_max: Some(10), ..Default::default() };
    c.bench_function("chi_c petersen q<=10", |b| b.iter(|| chi_c_with(&petersen, &opts).unwrap()));

    let cube = build("CUBE_NEG").unwrap().graph;
    c.bench_function("(22,7) refutation on the cube", |b| {
        b.iter(|| assert!(!is_colorable(&cube, CliqueParams::new(22, 7).unwrap()).unwrap()))
    });

    let ik6 = apply_indicator(&complete_graph(6)).unwrap();
    let mut slow = c.benchmark_group("gadget");
    slow.sample_size(10);
    slow.bench_function("I(K6) not (10,3)-colourable", |b| {
        b.iter(|| assert!(!is_colorable(&ik6, CliqueParams::TEN_THIRDS).unwrap()))
    });
    slow.finish();
}

fn enumeration(c: &mut Criterion) {
    let spec = EnumSpec { max_degree: Some(3), connected: true, ..EnumSpec::simple(7) };
    c.bench_function("subcubic classes up to 7 vertices", |b| b.iter(|| enumerate_signed(&spec).unwrap()));
}

criterion_group!(benches, solver, enumeration);
criterion_main!(benches);
