use std::path::Path;

use criterion::{criterion_group, criterion_main, Criterion};
use mfiber_core::corpus::{check_corpus, check_corpus_sequential, load_dir};

fn corpus(c: &mut Criterion) {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    let entries = load_dir(&dir).expect("shipped corpus");
    let mut group = c.benchmark_group("corpus check");
    group.sample_size(10);
    // without the `parallel` feature both arms run the same sequential code
    group.bench_function("parallel", |b| b.iter(|| check_corpus(&entries)));
    group.bench_function("sequential", |b| b.iter(|| check_corpus_sequential(&entries)));
    group.finish();
}

criterion_group!(benches, corpus);
criterion_main!(benches);
