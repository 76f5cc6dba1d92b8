use criterion::{black_box, criterion_group, criterion_main, Criterion};
use derint_core::koszul::{derived_tensor_dims, moment_tensor_dims, Window};
use derint_core::lagrangian::{build_scenario, compare_with_oracle, LagrangianDescriptor, SymplecticModel};
use derint_core::polyring::{is_regular_sequence, parse_polynomial, GroebnerBasis, MonomialOrder, PolyRing};

fn groebner(c: &mut Criterion) {
    let ring = PolyRing::new(&["x", "y", "z", "w"], MonomialOrder::GRevLex);
    let gens: Vec<_> = ["x*z - y^2", "y*w - z^2", "x*w - y*z"].iter().map(|s| parse_polynomial(&ring, s).unwrap()).collect();
    c.bench_function("buchberger twisted cubic", |b| b.iter(|| GroebnerBasis::buchberger(&ring, black_box(&gens))));
    c.bench_function("regular sequence certificate", |b| {
        let seq: Vec<_> = ["x^2", "y^2", "z^2", "w^2"].iter().map(|s| parse_polynomial(&ring, s).unwrap()).collect();
        b.iter(|| is_regular_sequence(&ring, black_box(&seq)))
    });
}

fn koszul(c: &mut Criterion) {
    let m = SymplecticModel::standard(&["x", "y"], Some(&[vec![1], vec![-1]]));
    let graph = LagrangianDescriptor::GraphPotential(parse_polynomial(m.ring(), "x*y").unwrap());
    let s = build_scenario(&m, &LagrangianDescriptor::ZeroSection, &graph).unwrap();
    let w = Window::new(6, 10);
    c.bench_function("Tor xy window 6,10", |b| b.iter(|| derived_tensor_dims(s.ring(), &s.i_gens, &s.j_gens, black_box(w))));
    c.bench_function("Tate model xy window 6,10", |b| {
        b.iter(|| moment_tensor_dims(s.ring(), &s.i_gens, &s.j_gens, &s.moments, &s.lifts, black_box(w)))
    });
    let plane = SymplecticModel::standard(&["x", "y"], None);
    let hkr = build_scenario(&plane, &LagrangianDescriptor::ZeroSection, &LagrangianDescriptor::ZeroSection).unwrap();
    c.bench_function("oracle comparison HKR plane", |b| b.iter(|| compare_with_oracle(&hkr, black_box(Window::new(4, 10)))));
}

criterion_group!(benches, groebner, koszul);
criterion_main!(benches);
