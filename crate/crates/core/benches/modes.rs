//! Parallel vs sequential benchmarks for the data-parallel inner loops:
//! reduced-word enumeration, the hook-formula sum, inclusion-exclusion for
//! K-polynomials, and the verification suite. Both modes compute identical
//! values; with the `parallel` feature disabled the Parallel mode degrades
//! to the sequential path.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use weylchar::asympchar::{k_polynomial_mode, MonomialQuotient};
use weylchar::exec::Mode;
use weylchar::rootsys::{
    lowest_in_orbit, positive_roots, reduced_words_mode, CartanDatum, WeightVec, WeylElement,
};
use weylchar::verify::{verify_all, verify_nakada_mode};

const MODES: [(Mode, &str); 2] = [(Mode::Sequential, "seq"), (Mode::Parallel, "par")];

fn bench_reduced_words(c: &mut Criterion) {
    let datum = CartanDatum::from_type("D4").unwrap();
    // the longest element: every positive root inverted
    let mut w0 = WeylElement::identity(4);
    while let Some(i) = (0..4).find(|&i| !w0.sends_simple_negative(i)) {
        w0 = w0.compose(&WeylElement::simple_reflection(&datum, i));
    }
    assert_eq!(w0.length(&datum), positive_roots(&datum).len());
    let mut group = c.benchmark_group("reduced_words_d4_longest");
    for (mode, name) in MODES {
        group.bench_function(name, |b| {
            b.iter(|| black_box(reduced_words_mode(&datum, &w0, mode).len()))
        });
    }
    group.finish();
}

fn bench_hook_sum(c: &mut Criterion) {
    let datum = CartanDatum::from_type("D5").unwrap();
    // spinor node at its lowest weight: the largest case in the suite
    let node = 4;
    let mu = lowest_in_orbit(&datum, &WeightVec::fundamental(&datum, node));
    let mut group = c.benchmark_group("hook_formula_d5_spinor");
    group.sample_size(10);
    for (mode, name) in MODES {
        group.bench_function(name, |b| {
            b.iter(|| black_box(verify_nakada_mode(&datum, node, &mu, mode).unwrap().0))
        });
    }
    group.finish();
}

fn bench_k_polynomial(c: &mut Criterion) {
    // 14 generators: inclusion-exclusion over 2^14 subsets
    let n = 10usize;
    let weights: Vec<WeightVec> = (0..n)
        .map(|j| {
            let mut coords = vec![0i64; 3];
            coords[j % 3] = 1 + (j % 2) as i64;
            coords[(j + 1) % 3] = 1;
            WeightVec::from_integers(&coords)
        })
        .collect();
    let generators: Vec<Vec<u32>> = (0..14)
        .map(|g| (0..n).map(|j| ((g * 7 + j * 3) % 5 == 0) as u32).collect())
        .collect();
    let mq = MonomialQuotient::new(3, weights, generators).unwrap();
    let mut group = c.benchmark_group("k_polynomial_14_generators");
    for (mode, name) in MODES {
        group.bench_function(name, |b| {
            b.iter(|| black_box(k_polynomial_mode(&mq, mode).unwrap()))
        });
    }
    group.finish();
}

fn bench_verify_suite(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_all_rank_3");
    group.sample_size(10);
    for (mode, name) in MODES {
        group.bench_function(name, |b| {
            b.iter(|| {
                let (ok, reports) = verify_all(3, mode).unwrap();
                assert!(ok);
                black_box(reports.len())
            })
        });
    }
    group.finish();
}

criterion_group!(
    benches,
    bench_reduced_words,
    bench_hook_sum,
    bench_k_polynomial,
    bench_verify_suite
);
criterion_main!(benches);
