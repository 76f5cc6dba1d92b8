//! Koszul and Tate dg algebras, bigraded homology of derived tensor products, and the
//! exterior/symmetric predictions they are compared against.

mod complex;
mod dga;
mod predict;
mod table;

pub use complex::{FreeComplex, FreeGen};
pub use dga::{DgPresentation, EvenGen, OddGen, Word};
pub use predict::{sym_two_term_prediction, wedge_hilbert_function, Direction, TwoTermComplex};
pub use table::{BigradedDimsTable, ExtTable, Window};

pub(crate) use dga::subsets;

use crate::linalg::{q, LinalgError, PoincareSeries};
use crate::polyring::{is_regular_sequence, PolyError, PolyRing, Polynomial, QuotientRing};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KoszulError {
    #[error("sequence is not regular: Hilbert numerator {numerator:?}, expected {expected:?}")]
    NotRegular { numerator: Vec<i64>, expected: Vec<i64> },
    #[error("lift of moment generator {index} does not re-expand to it")]
    BadLift { index: usize },
    #[error("moment generator {index} is not in the intersection of the two ideals")]
    MomentNotInIntersection { index: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Fails with `NotRegular` unless the sequence passes the Hilbert-numerator test.
pub fn certify_regular(ring: &PolyRing, gens: &[Polynomial]) -> Result<(), KoszulError> {
    let cert = is_regular_sequence(ring, gens)?;
    if cert.regular {
        Ok(())
    } else {
        Err(KoszulError::NotRegular { numerator: cert.numerator, expected: cert.expected })
    }
}

fn weight_or_zero(ring: &PolyRing, p: &Polynomial) -> Vec<i64> {
    p.torus_weight(ring).unwrap_or_else(|| vec![0; ring.torus_rank()])
}

fn degree_of(ring: &PolyRing, p: &Polynomial) -> Result<i64, KoszulError> {
    p.homogeneous_degree(ring).ok_or_else(|| PolyError::NotHomogeneous(ring.format(p)).into())
}

/// `R[e_1, .., e_n]` with `d(e_i) = g_i`.
pub fn koszul_dg(ring: &PolyRing, gens: &[Polynomial]) -> Result<DgPresentation, KoszulError> {
    certify_regular(ring, gens)?;
    let odd = gens
        .iter()
        .enumerate()
        .map(|(i, g)| {
            Ok(OddGen { name: format!("e{}", i + 1), degree: degree_of(ring, g)?, weight: weight_or_zero(ring, g), d: g.clone() })
        })
        .collect::<Result<_, KoszulError>>()?;
    Ok(DgPresentation { ring: ring.clone(), odd, even: vec![] })
}

fn check_lifts(i_gens: &[Polynomial], moments: &[Polynomial], lifts: &[Vec<Polynomial>]) -> Result<(), KoszulError> {
    if lifts.len() != moments.len() {
        return Err(KoszulError::BadLift { index: lifts.len().min(moments.len()) });
    }
    for (i, (a, c)) in moments.iter().zip(lifts).enumerate() {
        if c.len() != i_gens.len() {
            return Err(KoszulError::BadLift { index: i });
        }
        let sum = c.iter().zip(i_gens).fold(Polynomial::zero(), |acc, (cj, g)| acc.add(&cj.mul(g)));
        if sum != *a {
            return Err(KoszulError::BadLift { index: i });
        }
    }
    Ok(())
}

/// The Koszul algebra of `i_gens` extended by `f_i` (degree -1, `d f_i = a_i`) and
/// `eps_i` (degree -2, `d eps_i = sum_j c_ij e_j - f_i`).
pub fn tate_moment_extension(
    ring: &PolyRing,
    i_gens: &[Polynomial],
    moments: &[Polynomial],
    lifts: &[Vec<Polynomial>],
) -> Result<DgPresentation, KoszulError> {
    check_lifts(i_gens, moments, lifts)?;
    let mut dga = koszul_dg(ring, i_gens)?;
    let n = i_gens.len();
    let l = moments.len();
    for (i, a) in moments.iter().enumerate() {
        let degree = degree_of(ring, a)?;
        let weight = weight_or_zero(ring, a);
        dga.odd.push(OddGen { name: format!("f{}", i + 1), degree, weight: weight.clone(), d: a.clone() });
        let mut d = lifts[i].clone();
        d.extend((0..l).map(|t| if t == i { ring.constant(q(-1)) } else { Polynomial::zero() }));
        dga.even.push(EvenGen { name: format!("eps{}", i + 1), degree, weight, d });
    }
    debug_assert_eq!(dga.odd.len(), n + l);
    if let Some(&i) = dga.square_zero_failures(None).first() {
        return Err(KoszulError::BadLift { index: i });
    }
    Ok(dga)
}

/// The model `R/J[e, eps]` of `R/I ⊗ R/J` over the Koszul algebra on the moment
/// generators, with `d(e_j) = g_j` and `d(eps_i) = sum_j c_ij e_j`.
pub fn tate_tensor_model(
    ring: &PolyRing,
    i_gens: &[Polynomial],
    j_gens: &[Polynomial],
    moments: &[Polynomial],
    lifts: &[Vec<Polynomial>],
) -> Result<(DgPresentation, QuotientRing), KoszulError> {
    let full = tate_moment_extension(ring, i_gens, moments, lifts)?;
    let base = QuotientRing::new(ring, j_gens);
    for (i, a) in moments.iter().enumerate() {
        if !base.is_zero(a) {
            return Err(KoszulError::MomentNotInIntersection { index: i });
        }
    }
    let n = i_gens.len();
    let mut dga = koszul_dg(ring, i_gens)?;
    dga.even = full
        .even
        .iter()
        .map(|g| EvenGen { name: g.name.clone(), degree: g.degree, weight: g.weight.clone(), d: g.d[..n].to_vec() })
        .collect();
    debug_assert!(dga.square_zero_failures(Some(&base)).is_empty());
    Ok((dga, base))
}

/// Homology of a dg presentation tensored down to `base`, per bidegree of the window.
pub fn dims_over(dga: &DgPresentation, base: &QuotientRing, window: Window) -> Result<BigradedDimsTable, KoszulError> {
    let fc = dga.free_complex(window.homological + 1);
    let mut table = BigradedDimsTable::zeros(window);
    for d in 0..=window.internal {
        for (c, v) in fc.cohomology(base, -(window.homological as i64)..=0, d, None)? {
            table.set(c, d, v);
        }
    }
    Ok(table)
}

/// `H^{-k}(Koszul(I) ⊗ R/J)` per bidegree.
pub fn derived_tensor_dims(
    ring: &PolyRing,
    i_gens: &[Polynomial],
    j_gens: &[Polynomial],
    window: Window,
) -> Result<BigradedDimsTable, KoszulError> {
    let dga = koszul_dg(ring, i_gens)?;
    let base = QuotientRing::new(ring, j_gens);
    dims_over(&dga, &base, window)
}

/// Homology of the Tate model `R/I ⊗_{R[f]} R/J` per bidegree.
pub fn moment_tensor_dims(
    ring: &PolyRing,
    i_gens: &[Polynomial],
    j_gens: &[Polynomial],
    moments: &[Polynomial],
    lifts: &[Vec<Polynomial>],
    window: Window,
) -> Result<BigradedDimsTable, KoszulError> {
    let (dga, base) = tate_tensor_model(ring, i_gens, j_gens, moments, lifts)?;
    dims_over(&dga, &base, window)
}

/// A free module over the intersection ring, given by its Hilbert series and generator degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExcessModule {
    pub base_series: PoincareSeries,
    pub generator_degrees: Vec<i64>,
}

impl ExcessModule {
    pub fn rank(&self) -> usize {
        self.generator_degrees.len()
    }
}

/// Graded dims of `∧^k` of the excess module in internal degrees `0..=window.internal`.
pub fn wedge_excess_prediction(excess: &ExcessModule, k: usize, window: Window) -> Vec<usize> {
    wedge_hilbert_function(&excess.base_series, &excess.generator_degrees, k, window.internal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{parse_polynomial, MonomialOrder};

    fn ring(names: &[&str]) -> PolyRing {
        PolyRing::new(names, MonomialOrder::GRevLex)
    }

    fn polys(r: &PolyRing, src: &[&str]) -> Vec<Polynomial> {
        src.iter().map(|s| parse_polynomial(r, s).unwrap()).collect()
    }

    fn ones(n: usize) -> Vec<usize> {
        vec![1; n]
    }

    #[test]
    fn koszul_generators() {
        let r = ring(&["x", "y"]);
        let dga = koszul_dg(&r, &polys(&r, &["x^2", "y^3"])).unwrap();
        assert_eq!(dga.odd.iter().map(|g| g.degree).collect::<Vec<_>>(), vec![2, 3]);
        assert!(matches!(koszul_dg(&r, &polys(&r, &["x", "x*y"])), Err(KoszulError::NotRegular { .. })));
    }

    #[test]
    fn tate_extension_differential() {
        let r = ring(&["x", "y", "w_x", "w_y"]);
        let i = polys(&r, &["w_x", "w_y"]);
        let a = polys(&r, &["x*w_x - y*w_y"]);
        let lifts = vec![polys(&r, &["x", "-y"])];
        let dga = tate_moment_extension(&r, &i, &a, &lifts).unwrap();
        assert_eq!(dga.odd.len(), 3);
        assert_eq!(dga.even[0].d, polys(&r, &["x", "-y", "-1"]));
        assert!(dga.square_zero_failures(None).is_empty());
        let bad = vec![polys(&r, &["x", "y"])];
        assert_eq!(tate_moment_extension(&r, &i, &a, &bad), Err(KoszulError::BadLift { index: 0 }));
        let empty = tate_moment_extension(&r, &i, &[], &[]).unwrap();
        assert_eq!(empty, koszul_dg(&r, &i).unwrap());
    }

    #[test]
    fn tautological_lift() {
        let r = ring(&["x"]);
        let x = polys(&r, &["x"]);
        let dga = tate_moment_extension(&r, &x, &x, &[polys(&r, &["1"])]).unwrap();
        assert_eq!(dga.even[0].d, polys(&r, &["1", "-1"]));
    }

    #[test]
    fn diagonal_self_intersection() {
        let r = ring(&["x", "y"]);
        let i = polys(&r, &["x - y"]);
        let t = derived_tensor_dims(&r, &i, &i, Window::new(2, 5)).unwrap();
        assert_eq!(t.row(0), ones(6));
        assert_eq!(t.row(-1), vec![0, 1, 1, 1, 1, 1]);
        assert_eq!(t.row(-2), vec![0; 6]);
    }

    #[test]
    fn transverse_conormals() {
        let r = ring(&["x", "y", "w_x", "w_y"]);
        let t =
            derived_tensor_dims(&r, &polys(&r, &["x", "w_y"]), &polys(&r, &["y", "w_x"]), Window::new(3, 4)).unwrap();
        assert_eq!(t.row(0), vec![1, 0, 0, 0, 0]);
        for k in 1..=3 {
            assert_eq!(t.row(-k), vec![0; 5]);
        }
    }

    #[test]
    fn zero_section_against_graph_of_square() {
        let r = ring(&["x", "y", "w_x", "w_y"]);
        let i = polys(&r, &["w_x", "w_y"]);
        let j = polys(&r, &["w_x - 2*x", "w_y"]);
        let t = derived_tensor_dims(&r, &i, &j, Window::new(2, 4)).unwrap();
        assert_eq!(t.row(0), ones(5));
        assert_eq!(t.row(-1), vec![0, 1, 1, 1, 1]);
        assert_eq!(t.row(-2), vec![0; 5]);
        // Tor symmetry.
        assert_eq!(derived_tensor_dims(&r, &j, &i, Window::new(2, 4)).unwrap(), t);
        // Empty moment list.
        assert_eq!(moment_tensor_dims(&r, &i, &j, &[], &[], Window::new(2, 4)).unwrap(), t);
    }

    #[test]
    fn excess_wedge() {
        let e = ExcessModule { base_series: PoincareSeries::new(vec![1], vec![1]), generator_degrees: vec![1] };
        let w = Window::new(2, 4);
        assert_eq!(wedge_excess_prediction(&e, 0, w), ones(5));
        assert_eq!(wedge_excess_prediction(&e, 1, w), vec![0, 1, 1, 1, 1]);
        assert_eq!(wedge_excess_prediction(&e, 2, w), vec![0; 5]);
    }

    fn gen(label: &str, degree: i64) -> FreeGen {
        FreeGen { label: label.into(), degree, weight: vec![] }
    }

    #[test]
    fn two_term_predictions() {
        let r = ring(&["y"]);
        let base = QuotientRing::new(&r, &polys(&r, &["y"]));
        let w = Window::new(6, 8);
        // Only a symmetric generator of internal degree 2.
        let sym_only = TwoTermComplex { wedge: vec![], sym: vec![gen("g", 2)], map: vec![vec![]], direction: Direction::SymToWedge };
        let t = sym_two_term_prediction(&base, &sym_only, w).unwrap();
        for k in 0..=6i64 {
            let expected: Vec<usize> = (0..=8).map(|d| usize::from(k % 2 == 0 && d == k)).collect();
            assert_eq!(t.row(-k), expected, "row {k}");
        }
        // Zero map between rank-one pieces: Künneth product.
        let both = TwoTermComplex {
            wedge: vec![gen("e", 1)],
            sym: vec![gen("g", 2)],
            map: vec![vec![Polynomial::zero()]],
            direction: Direction::SymToWedge,
        };
        let t = sym_two_term_prediction(&base, &both, w).unwrap();
        for k in 0..=6i64 {
            let expected: Vec<usize> = (0..=8).map(|d| usize::from(d == k)).collect();
            assert_eq!(t.row(-k), expected, "row {k}");
        }
        // Isomorphism: everything but degree 0 cancels.
        let iso = TwoTermComplex {
            wedge: vec![gen("e", 2)],
            sym: vec![gen("g", 2)],
            map: vec![vec![r.constant(q(1))]],
            direction: Direction::SymToWedge,
        };
        let t = sym_two_term_prediction(&base, &iso, w).unwrap();
        assert_eq!(t.cells().filter(|(_, v)| *v > 0).collect::<Vec<_>>(), vec![((0, 0), 1)]);
    }

    #[test]
    fn moment_model_matches_sym_prediction_for_xy() {
        let r = ring(&["x", "y", "w_x", "w_y"]);
        let i = polys(&r, &["w_x", "w_y"]);
        let j = polys(&r, &["w_x - y", "w_y - x"]);
        let a = polys(&r, &["x*w_x - y*w_y"]);
        let lifts = vec![polys(&r, &["x", "-y"])];
        let w = Window::new(6, 6);
        let direct = moment_tensor_dims(&r, &i, &j, &a, &lifts, w).unwrap();
        // B is the origin and every I generator is transverse, so E is zero and
        // only the symmetric algebra on one degree-2 generator survives.
        let base = QuotientRing::new(&r, &polys(&r, &["x", "y", "w_x", "w_y"]));
        let data = TwoTermComplex { wedge: vec![], sym: vec![gen("eps", 2)], map: vec![vec![]], direction: Direction::SymToWedge };
        let predicted = sym_two_term_prediction(&base, &data, w).unwrap();
        assert_eq!(direct.mismatches(&predicted), vec![]);
        assert_eq!(direct.get(-6, 6), 1);
    }
}
