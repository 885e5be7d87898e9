use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use lcpkit::{construct, Algo, BuildParams, Instruments};
use lcpkit_bench::{ab, dna, repetitive, Fixture};

fn bench_fixture(c: &mut Criterion, f: &Fixture, algos: &[Algo]) {
    let mut group = c.benchmark_group(&f.name);
    group.throughput(Throughput::Bytes(f.text.len() as u64));
    group.sample_size(10);
    let params = BuildParams::default();
    for &algo in algos {
        group.bench_with_input(BenchmarkId::from_parameter(algo), &algo, |b, &algo| {
            b.iter(|| {
                let mut ins = Instruments::new();
                construct(algo, &f.text, &f.sa, Some(&f.bwt), &params, &mut ins).unwrap()
            })
        });
    }
    group.finish();
}

fn linear_time(c: &mut Criterion) {
    let fast = [Algo::Kasai, Algo::Phi, Algo::Go, Algo::Go2, Algo::Hybrid];
    bench_fixture(c, &dna(1 << 20, 1), &fast);
    bench_fixture(c, &repetitive(1 << 20, 2), &fast);
}

fn worst_case(c: &mut Criterion) {
    // quadratic for the plain BWT scan
    bench_fixture(c, &ab(4096), &[Algo::Kasai, Algo::Go, Algo::Hybrid]);
}

fn threshold(c: &mut Criterion) {
    let f = repetitive(1 << 18, 3);
    let mut group = c.benchmark_group("hybrid-threshold");
    group.sample_size(10);
    for m in [4u8, 16, 64, 254] {
        let params = BuildParams { m, ..BuildParams::default() };
        group.bench_with_input(BenchmarkId::from_parameter(m), &params, |b, params| {
            b.iter(|| construct(Algo::Hybrid, &f.text, &f.sa, Some(&f.bwt), params, &mut Instruments::new()).unwrap())
        });
    }
    group.finish();
    let _ = &f.lf;
}

criterion_group!(benches, linear_time, worst_case, threshold);
criterion_main!(benches);
