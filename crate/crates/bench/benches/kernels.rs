use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use permclass::class::levels_of;
use permclass::families::{increasing_oscillation, twin_oscillation};
use permclass::{decode, encode, infer_dfa, involves, minimal_mergers, rational_gf};
use permclass_bench::{class, oscillation_host, perm};

fn matching(c: &mut Criterion) {
    let host = oscillation_host(20);
    let hit = perm("21436587");
    let miss = perm("321");
    c.bench_function("involves/hit", |b| b.iter(|| involves(black_box(&host), black_box(&hit))));
    c.bench_function("involves/miss", |b| b.iter(|| involves(black_box(&host), black_box(&miss))));
}

fn enumeration(c: &mut Criterion) {
    let two_segments = class(&["321", "3142", "2143"]);
    let av4321 = class(&["4321"]);
    c.bench_function("levels/two-segments-10", |b| b.iter(|| levels_of(&two_segments, 10)));
    c.bench_function("levels/av4321-8", |b| b.iter(|| levels_of(&av4321, 8)));
}

fn periodic(c: &mut Criterion) {
    let twin = twin_oscillation();
    c.bench_function("basis/twin-7", |b| b.iter(|| twin.basis_up_to(7).unwrap()));
}

fn mergers(c: &mut Criterion) {
    let (a, b) = (perm("3142"), perm("2413"));
    c.bench_function("mergers/3142-2413", |bench| bench.iter(|| minimal_mergers(black_box(&a), black_box(&b))));
}

fn automata(c: &mut Criterion) {
    let osc = increasing_oscillation();
    let dfa = infer_dfa(&osc, 8).unwrap();
    c.bench_function("infer-dfa/oscillation-8", |b| b.iter(|| infer_dfa(&osc, 8).unwrap()));
    c.bench_function("rational-gf/oscillation", |b| b.iter(|| rational_gf(black_box(&dfa))));
}

fn encoding(c: &mut Criterion) {
    let g = oscillation_host(40);
    let w = encode(&g);
    c.bench_function("encode/40", |b| b.iter(|| encode(black_box(&g))));
    c.bench_function("decode/40", |b| b.iter(|| decode(black_box(&w))));
}

criterion_group!(benches, matching, enumeration, periodic, mergers, automata, encoding);
criterion_main!(benches);
