use criterion::{criterion_group, criterion_main, Criterion};
use gapvec_core::variety::{segre, veronese};
use gapvec_core::{gap_vector, RankConfig};

fn gap(c: &mut Criterion) {
    let cfg = RankConfig::default();
    let mut g = c.benchmark_group("gap_vector");
    g.sample_size(10);
    for (name, x) in [
        ("veronese_2_3", veronese(2, 3).unwrap()),
        ("veronese_2_4", veronese(2, 4).unwrap()),
        ("segre_2_2", segre(2, 2).unwrap()),
    ] {
        g.bench_function(name, |b| b.iter(|| gap_vector(&x, &cfg).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, gap);
criterion_main!(benches);
