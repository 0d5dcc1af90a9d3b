//! Benchmarks comparing the rayon-backed scans against the sequential
//! fallback on the heavier presets. The toggle is runtime-global, so each
//! group benches the same code path the library users get.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use strata_atlas::affine::AffineWeyl;
use strata_atlas::exec;
use strata_atlas::kottwitz::b_set_via_straight;
use strata_atlas::preset::{self, OrthogonalForm};
use strata_atlas::weyl::WeylGroup;
use strata_atlas::Caps;

fn modes() -> Vec<(&'static str, bool)> {
    if cfg!(feature = "parallel") {
        vec![("parallel", false), ("sequential", true)]
    } else {
        vec![("sequential", true)]
    }
}

fn bench_full_atlas(c: &mut Criterion) {
    let caps = Caps::default();
    let mut group = c.benchmark_group("atlas");
    group.sample_size(10);
    for (name, preset) in [
        (
            "orthogonal-n7",
            preset::orthogonal(7, OrthogonalForm::Split).unwrap(),
        ),
        (
            "orthogonal-n6-split",
            preset::orthogonal(6, OrthogonalForm::Split).unwrap(),
        ),
        ("quaternionic-3x3", preset::quaternionic(&[(3, 3)]).unwrap()),
    ] {
        for (mode, seq) in modes() {
            group.bench_with_input(BenchmarkId::new(name, mode), &seq, |b, &seq| {
                exec::set_sequential(seq);
                b.iter(|| preset.build(&caps).unwrap());
                exec::set_sequential(false);
            });
        }
    }
    group.finish();
}

fn bench_straight_scan(c: &mut Criterion) {
    let caps = Caps::default();
    let p = preset::orthogonal(9, OrthogonalForm::Split).unwrap();
    let weyl = WeylGroup::generate(&p.datum, caps.weyl).unwrap();
    let aff = AffineWeyl::new(weyl).unwrap();
    let mut group = c.benchmark_group("straight-scan-b5");
    group.sample_size(10);
    for (mode, seq) in modes() {
        group.bench_function(mode, |b| {
            exec::set_sequential(seq);
            b.iter(|| b_set_via_straight(&aff, &p.mu, caps.enumeration).unwrap());
            exec::set_sequential(false);
        });
    }
    group.finish();
}

criterion_group!(benches, bench_full_atlas, bench_straight_scan);
criterion_main!(benches);
