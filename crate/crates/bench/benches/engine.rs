use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use ncforms::liecomplex;
use ncforms::qspace::{q_algebra, QMatrix};
use ncforms::quantum::{clebsch_build, clebsch_verify, weyl_algebra, LieData};
use ncforms::{check_local_confluence, differential, poincare_primitive, Scalar, Signature};
use ncforms_bench::{forms, words};

fn normalize(c: &mut Criterion) {
    let mut group = c.benchmark_group("normalize");
    let systems = [weyl_algebra(2), q_algebra(&QMatrix::symbolic(3)), liecomplex::preset("so4").unwrap()];
    for sys in &systems {
        let input = words(sys, 64, 8, 1);
        group.bench_with_input(BenchmarkId::from_parameter(sys.name()), &input, |b, input| {
            b.iter(|| input.iter().map(|w| sys.normalize(black_box(w)).len()).sum::<usize>())
        });
    }
    group.finish();
}

fn free_calculus(c: &mut Criterion) {
    let sig = Signature::free(&[false, true, false]);
    let input = forms(&sig, 64, 2, 2);
    c.bench_function("differential", |b| {
        b.iter(|| input.iter().map(|a| differential(black_box(a), &sig).len()).sum::<usize>())
    });
    let exact: Vec<_> = forms(&sig, 32, 1, 3).iter().map(|a| differential(a, &sig)).collect();
    c.bench_function("poincare", |b| {
        b.iter(|| exact.iter().map(|a| poincare_primitive(black_box(a), &sig, None).unwrap().0.len()).sum::<usize>())
    });
}

fn audits(c: &mut Criterion) {
    let so3 = liecomplex::preset("so3").unwrap();
    c.bench_function("confluence/so3", |b| b.iter(|| check_local_confluence(black_box(&so3), 3).checked));
    let cl = clebsch_build(&LieData::gl(3), &Scalar::sym("k"), None).unwrap();
    c.bench_function("clebsch/gl3", |b| b.iter(|| clebsch_verify(black_box(&cl), false).checked));
}

criterion_group!(benches, normalize, free_calculus, audits);
criterion_main!(benches);
