use criterion::{black_box, criterion_group, criterion_main, Criterion};

use potentia::heatkernel::{spectral_heat_series, KernelPoint};
use potentia::potential::{apply_potential, potential_kernel};
use potentia::regions::{classify, ExponentTuple};
use potentia::{PotentialRequest, Setting, Source, TypeIndex};

fn heat(c: &mut Criterion) {
    let her = Setting::hermite(2);
    let lag = Setting::LaguerreConv(TypeIndex::new(vec![0.7, 1.5]).unwrap());
    let (x, y) = (vec![0.8, 1.3], vec![1.1, 0.4]);
    c.bench_function("heat/mehler d=2", |b| b.iter(|| her.heat(black_box(0.3), &x, &y)));
    c.bench_function("heat/laguerre-conv d=2", |b| b.iter(|| lag.heat(black_box(0.3), &x, &y)));
    let p = KernelPoint::new(0.3, x.clone(), y.clone());
    c.bench_function("heat/series laguerre-conv d=2", |b| {
        b.iter(|| spectral_heat_series(&lag, black_box(&p), 400, 1e-12).unwrap())
    });
}

fn potentials(c: &mut Criterion) {
    let mut g = c.benchmark_group("potential");
    g.sample_size(20);
    for (name, s) in [
        ("hermite d=1", Setting::hermite(1)),
        ("laguerre-conv d=1", Setting::LaguerreConv(TypeIndex::new(vec![0.5]).unwrap())),
        ("dunkl d=1", Setting::Dunkl(TypeIndex::new(vec![0.5]).unwrap())),
    ] {
        let req = PotentialRequest::new(s, 0.4).unwrap();
        g.bench_function(format!("kernel {name}"), |b| {
            b.iter(|| potential_kernel(&req, black_box(&[0.7]), &[1.4]).unwrap())
        });
    }
    let req = PotentialRequest::new(Setting::hermite(1), 0.6).unwrap();
    let f = Source::gaussian(vec![0.5], 0.4);
    g.bench_function("operator hermite d=1 gaussian", |b| b.iter(|| apply_potential(&req, &f, black_box(&[0.3])).unwrap()));
    g.finish();
}

fn regions(c: &mut Criterion) {
    let t = ExponentTuple::new(2, 2.0, 3.0, 0.5).unwrap().weights(0.25, 0.25).alpha(vec![0.5, 1.0]).unwrap();
    c.bench_function("regions/classify laguerre-weighted", |b| {
        b.iter(|| classify("laguerre-weighted", black_box(&t)).unwrap())
    });
}

criterion_group!(benches, heat, potentials, regions);
criterion_main!(benches);
