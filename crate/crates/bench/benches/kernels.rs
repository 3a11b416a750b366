use criterion::{black_box, criterion_group, criterion_main, Criterion};

use epair_core::character::weyl_denominator_full;
use epair_core::kostant::{freudenthal_character, koszul_n_homology, weyl_character};
use epair_core::weyl::DEFAULT_WEYL_CAP;
use epair_core::zoo::{Catalog, HomologySource};
use epair_core::{PairingKind, PositiveSystem, RootSystem, Series, Weight, WeylSubgroup};

fn weyl_groups(c: &mut Criterion) {
    for (s, r) in [(Series::B, 3), (Series::F, 4)] {
        let rs = RootSystem::new(s, r).unwrap();
        c.bench_function(&format!("weyl group {}", rs.label()), |b| {
            b.iter(|| WeylSubgroup::full(black_box(&rs), DEFAULT_WEYL_CAP).unwrap())
        });
    }
}

fn characters(c: &mut Criterion) {
    let rs = RootSystem::new(Series::G, 2).unwrap();
    let w = WeylSubgroup::full(&rs, DEFAULT_WEYL_CAP).unwrap();
    let lam = Weight::new(vec![3, 3]);
    c.bench_function("weyl character G2 (3,3)", |b| b.iter(|| weyl_character(black_box(&lam), &rs, &w).unwrap()));
    c.bench_function("freudenthal G2 (3,3)", |b| b.iter(|| freudenthal_character(black_box(&lam), &rs).unwrap()));
    let chi = weyl_character(&lam, &rs, &w).unwrap();
    let d = weyl_denominator_full(&rs);
    c.bench_function("ring product D * chi G2 (3,3)", |b| b.iter(|| d.checked_mul(black_box(&chi)).unwrap()));
}

fn koszul(c: &mut Criterion) {
    let mut g = c.benchmark_group("koszul");
    g.sample_size(10);
    for (s, r, lam) in [(Series::A, 2, vec![2, 2]), (Series::B, 2, vec![2, 2]), (Series::G, 2, vec![1, 1])] {
        let rs = RootSystem::new(s, r).unwrap();
        let ps = PositiveSystem::standard(&rs);
        let lam = Weight::new(lam);
        g.bench_function(format!("{} {lam}", rs.label()), |b| {
            b.iter(|| koszul_n_homology(black_box(&lam), &ps, &rs, 2000).unwrap())
        });
    }
    g.finish();
}

fn pairing_sweep(c: &mut Criterion) {
    let rs = RootSystem::new(Series::B, 2).unwrap();
    let cat = Catalog::compact(rs, 3, DEFAULT_WEYL_CAP, HomologySource::Kostant).unwrap();
    let mut g = c.benchmark_group("pairing matrix B2 bound 3");
    g.sample_size(10);
    for kind in PairingKind::ALL {
        g.bench_function(kind.to_string(), |b| b.iter(|| cat.pairing_matrix(black_box(kind)).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, weyl_groups, characters, koszul, pairing_sweep);
criterion_main!(benches);
