use criterion::{black_box, criterion_group, criterion_main, Criterion};
use iclab_core::explore::{enumerate_closed, random_closed_stream, Filters};
use iclab_core::setsys::intersection_closure;
use iclab_core::{full_report, RawFamily, SubsetMask};

fn enumeration(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate_closed");
    g.sample_size(10);
    g.bench_function("n=4", |b| {
        b.iter(|| enumerate_closed(black_box(4), Filters::default(), |_| {}).unwrap())
    });
    g.bench_function("n=4 preconditions", |b| {
        let filters = Filters {
            preconditions_only: true,
            ..Filters::default()
        };
        b.iter(|| enumerate_closed(black_box(4), filters, |_| {}).unwrap())
    });
    g.finish();
}

fn closure(c: &mut Criterion) {
    let seeds: Vec<SubsetMask> = (0..40u32)
        .map(|k| SubsetMask((k.wrapping_mul(2654435761) >> 8) & 0xfffff | 1 << (k % 20)))
        .collect();
    let mut seeds = seeds;
    seeds.sort_unstable();
    seeds.dedup();
    let raw = RawFamily::new(20, seeds).unwrap();
    c.bench_function("closure n=20, 40 generators", |b| {
        b.iter(|| intersection_closure(black_box(&raw)).unwrap())
    });
}

fn report(c: &mut Criterion) {
    let fams: Vec<_> = (0..32).map(|i| random_closed_stream(10, 6, 7, i).unwrap()).collect();
    c.bench_function("full_report n=10 x32", |b| {
        b.iter(|| {
            fams.iter()
                .map(|f| full_report(black_box(f)).claims.len())
                .sum::<usize>()
        })
    });
}

criterion_group!(benches, enumeration, closure, report);
criterion_main!(benches);
