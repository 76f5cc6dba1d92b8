use criterion::{black_box, criterion_group, criterion_main, Criterion};
use derint_core::kirwan::{cone_projection, hkkn_stratification, morse_equality_check, TorusRepresentation};
use derint_core::linalg::q;
use derint_core::localsys::{covering_decomposition_check, torus_seam_system, SimplicialModel};

fn kirwan(c: &mut Criterion) {
    let cone = vec![vec![1, 0, 1], vec![0, 1, -1], vec![-1, 1, 0], vec![1, 1, 1], vec![0, -1, 2]];
    let target = vec![q(-3), q(1), q(-2)];
    c.bench_function("cone projection rank 3", |b| b.iter(|| cone_projection(black_box(&target), &cone)));
    let rep = TorusRepresentation::new(vec![vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1], vec![1, 1], vec![-1, -1]], vec![1, 2])
        .unwrap();
    c.bench_function("HKKN strata, 6 weights rank 2", |b| b.iter(|| hkkn_stratification(black_box(&rep))));
    c.bench_function("Morse identity to t^20", |b| b.iter(|| morse_equality_check(black_box(&rep), 20)));
}

fn covers(c: &mut Criterion) {
    let torus = SimplicialModel::torus(3);
    let seam = torus_seam_system(3);
    c.bench_function("covering trick on the 3x3 torus", |b| b.iter(|| covering_decomposition_check(black_box(&torus), &seam, 2)));
}

criterion_group!(benches, kirwan, covers);
criterion_main!(benches);
