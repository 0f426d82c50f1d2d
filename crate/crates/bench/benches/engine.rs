use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use lch_core::dga::random::{abc_seed, random_tame_dga};
use lch_core::graded_lines::{block_reorder_oracle, block_reorder_sign, SummandColumn};
use lch_core::ingest::{parse_dga, serialize_dga};
use lch_core::scenario::sweep::{run_sweep, SweepConfig};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn koszul(c: &mut Criterion) {
    let blocks: Vec<(String, usize)> = (0..12).map(|i| (format!("V{i}"), i % 3)).collect();
    let column = SummandColumn::from_dims(&blocks).unwrap();
    let order: Vec<String> = blocks.iter().rev().map(|(l, _)| l.clone()).collect();
    let dims: Vec<usize> = blocks.iter().map(|b| b.1).collect();
    let perm: Vec<usize> = (0..dims.len()).rev().collect();
    c.bench_function("block_reorder_sign/12", |b| {
        b.iter(|| block_reorder_sign(black_box(&column), &order))
    });
    c.bench_function("block_reorder_oracle/12", |b| {
        b.iter(|| block_reorder_oracle(black_box(&dims), &perm))
    });
}

fn dga(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (d, _, _) = random_tame_dga(&mut rng, &abc_seed(), 6);
    c.bench_function("d_squared_report/tame6", |b| {
        b.iter(|| black_box(&d).d_squared_report())
    });
    let text = serialize_dga(&d);
    c.bench_function("parse_dga/tame6", |b| b.iter(|| parse_dga(black_box(&text)).unwrap()));
}

fn sweep(c: &mut Criterion) {
    let cfg = SweepConfig {
        samples: 200,
        conformal_max: 5,
        ..SweepConfig::default()
    };
    let mut g = c.benchmark_group("sweep");
    g.sample_size(10);
    g.bench_function("all_lemmas/200", |b| b.iter(|| run_sweep(black_box(&cfg)).unwrap()));
    g.finish();
}

criterion_group!(benches, koszul, dga, sweep);
criterion_main!(benches);
