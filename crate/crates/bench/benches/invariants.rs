use criterion::{black_box, criterion_group, criterion_main, Criterion};
use invtool_bench::{elementary_symmetric, symmetric_q};
use invtool_core::csp::csp_check;
use invtool_core::groth::{verify_omnibus, Theta};
use invtool_core::groups::named::cyclic_scalar;
use invtool_core::homology::{koszul_tor, truncated_minimal_resolution, GradedAlgebraR};
use invtool_core::polyaction::{invariants_up_to, relative_invariants_up_to, BimoduleU};
use invtool_core::series::molien_trivial;
use invtool_core::{CyclotomicField, RationalField};

fn invariants(c: &mut Criterion) {
    let s3 = symmetric_q(3);
    c.bench_function("s3 invariants through degree 12", |b| b.iter(|| invariants_up_to(black_box(&s3), 12).unwrap()));
    c.bench_function("s3 molien expansion to degree 30", |b| {
        b.iter(|| molien_trivial(black_box(&s3)).unwrap().expand(30).unwrap())
    });
}

fn resolutions(c: &mut Criterion) {
    let s3 = symmetric_q(3);
    let u = BimoduleU::natural(&s3).unwrap();
    let m = relative_invariants_up_to(&u, &s3, 10).unwrap();
    let r = GradedAlgebraR::polynomial_from_sparse(&RationalField, m.tower(), &elementary_symmetric(&RationalField, 3)).unwrap();
    let theta = Theta::gamma_only(u.gamma().clone()).unwrap();
    c.bench_function("s3 natural module: syzygy engine", |b| {
        b.iter(|| truncated_minimal_resolution(black_box(&m), &r, Some(&theta)).unwrap())
    });
    c.bench_function("s3 natural module: koszul engine", |b| b.iter(|| koszul_tor(black_box(&m), &r, Some(&theta)).unwrap()));
    let s2 = symmetric_q(2);
    let regular = BimoduleU::regular(&s2).unwrap();
    c.bench_function("s2 regular module omnibus", |b| b.iter(|| verify_omnibus(black_box(&regular), &s2, 10).unwrap()));
}

fn sieving(c: &mut Criterion) {
    let k = CyclotomicField::new(8).unwrap();
    let g = cyclic_scalar(&k, 8, 1).unwrap();
    let gen = g.generator_indices()[0];
    let sub = g.power(gen, 2);
    c.bench_function("cyclic 8 over its index-2 subgroup", |b| b.iter(|| csp_check(black_box(&g), &[sub], gen, 18).unwrap()));
}

criterion_group!(benches, invariants, resolutions, sieving);
criterion_main!(benches);
