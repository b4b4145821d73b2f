//! Sequential against parallel execution on the three heavy kernels:
//! codeword enumeration, group closure and the Molien sum.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use cliffweil::codes::named;
use cliffweil::cwg::{default_cap, molien, CliffordWeil};
use cliffweil::gf::FieldCtx;
use cliffweil::par::Exec;
use cliffweil::DEFAULT_CODEWORD_BUDGET;

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn weight_profile(c: &mut Criterion) {
    let q20 = named::q(20).unwrap();
    let mut g = c.benchmark_group("weight_profile_q20");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| black_box(q20.weight_profile(exec, DEFAULT_CODEWORD_BUDGET).unwrap()))
        });
    }
    g.finish();
}

fn closure(c: &mut Criterion) {
    let cw = CliffordWeil::new(FieldCtx::new(2).unwrap()).unwrap();
    let mut g = c.benchmark_group("closure_g2");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| black_box(cw.group(false, default_cap(2), exec).unwrap().order()))
        });
    }
    g.finish();
}

fn molien_series(c: &mut Criterion) {
    let group = CliffordWeil::new(FieldCtx::new(2).unwrap()).unwrap().group(false, default_cap(2), Exec::Parallel).unwrap();
    let mut g = c.benchmark_group("molien_g2_deg40");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| black_box(molien(&group, 40, exec).unwrap())));
    }
    g.finish();
}

criterion_group!(benches, weight_profile, closure, molien_series);
criterion_main!(benches);
