use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use solenoid_core::groupoid;
use solenoid_core::sft::EventuallyPeriodicWord;
use solenoid_core::torus;
use solenoid_core::{perron_bounds, smith_normal_form, IntMatrix, SftSystem};

fn pseudo_entries(n: usize, spread: i64, seed: u64) -> Vec<i64> {
    let mut s = seed;
    (0..n)
        .map(|_| {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            (s % (2 * spread + 1) as u64) as i64 - spread
        })
        .collect()
}

fn bench_smith(c: &mut Criterion) {
    let m8 = IntMatrix::from_i64(8, 8, &pseudo_entries(64, 20, 0x1234));
    c.bench_function("smith_normal_form_8x8", |b| {
        b.iter(|| smith_normal_form(black_box(&m8)))
    });
    let ones = IntMatrix::from_i64(8, 8, &vec![1; 64]);
    let one_minus_a = IntMatrix::identity(8).sub(&ones);
    c.bench_function("smith_normal_form_cuntz_8", |b| {
        b.iter(|| smith_normal_form(black_box(&one_minus_a)))
    });
}

fn bench_perron(c: &mut Criterion) {
    let golden = IntMatrix::from_rows(&[&[1, 1], &[1, 0]]);
    c.bench_function("perron_bounds_golden_200", |b| {
        b.iter(|| perron_bounds(black_box(&golden), 200))
    });
}

fn bench_groupoid(c: &mut Criterion) {
    let full2 = SftSystem::from_rows(&[&[1, 1], &[1, 1]]).unwrap();
    let anchor = EventuallyPeriodicWord::periodic(vec![0]);
    c.bench_function("groupoid_enumerate_full2_depth8", |b| {
        b.iter(|| groupoid::enumerate(black_box(&full2), 8, black_box(&anchor)))
    });
    let golden = SftSystem::from_rows(&[&[1, 1], &[1, 0]]).unwrap();
    c.bench_function("fock_truncation_golden_8", |b| {
        b.iter(|| groupoid::fock_truncation(black_box(&golden), 8))
    });
}

fn bench_conformal(c: &mut Criterion) {
    c.bench_function("conformal_enum_d2_n50", |b| {
        b.iter(|| torus::enumerate_conformal(2, black_box(50)))
    });
}

criterion_group!(benches, bench_smith, bench_perron, bench_groupoid, bench_conformal);
criterion_main!(benches);
