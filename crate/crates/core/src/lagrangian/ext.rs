use super::{IntersectionScenario, LagrangianError};
use crate::koszul::{koszul_dg, subsets, tate_tensor_model, BigradedDimsTable, Direction, ExtTable, FreeGen, TwoTermComplex, Window};

/// Total degrees `0..=max_total` and an inclusive internal-degree range.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExtWindow {
    pub max_total: i64,
    pub internal: (i64, i64),
}

impl ExtWindow {
    /// The cells reachable from a Tor window by `Ext^j_δ = Tor_{n-j, δ+D}`.
    pub fn dual_to(s: &IntersectionScenario, tor: Window) -> Self {
        let d = s.first_degree_sum();
        ExtWindow { max_total: s.model.n() as i64, internal: (-d, tor.internal - d) }
    }

    /// Total degrees up to `max_total`, internal degrees low enough for every
    /// symmetric power that fits.
    pub fn equivariant(s: &IntersectionScenario, max_total: i64, internal_hi: i64) -> Self {
        let step = s
            .moment_characters()
            .iter()
            .chain(&s.excess_characters())
            .map(|c| c.degree)
            .max()
            .unwrap_or(0)
            .max(s.model.symplectic_degree());
        let twist = s.twist_difference().map(|c| c.degree.abs()).unwrap_or(0);
        ExtWindow { max_total, internal: (-(s.first_degree_sum() + max_total * step + twist), internal_hi) }
    }
}

/// `Ext^p = ∧^{p-m} E ⊗ det N_{B/C_2}`, counted from the Hilbert function of `B`.
pub fn closed_form_ext_dims(s: &IntersectionScenario, w: ExtWindow) -> ExtTable {
    let base = s.intersection_ring();
    let degs: Vec<i64> = s.excess_characters().iter().map(|c| c.degree).collect();
    let mut table = ExtTable::zeros(w.max_total, w.internal, s.det_normal.degree);
    for p in 0..=w.max_total {
        let k = p - s.m as i64;
        if k < 0 || k as usize > degs.len() {
            continue;
        }
        for sub in subsets(degs.len(), k as usize) {
            let shift: i64 = sub.iter().map(|&i| degs[i]).sum::<i64>() - s.det_normal.degree;
            for d in w.internal.0..=w.internal.1 {
                table.add(p, d, base.basis(d + shift).len());
            }
        }
    }
    table
}

/// Reindexes a Tor table by `Ext^j_δ = Tor_{n-j, δ+D}`.
pub fn ext_from_tor(tor: &BigradedDimsTable, n: usize, degree_sum: i64, w: ExtWindow, twist_shift: i64) -> ExtTable {
    assert!(tor.window.homological >= n, "Tor window must reach homological degree {n}");
    assert!(w.internal.1 + degree_sum <= tor.window.internal && w.internal.0 + degree_sum >= 0, "Tor window too small");
    let mut table = ExtTable::zeros(w.max_total, w.internal, twist_shift);
    for j in 0..=w.max_total.min(n as i64) {
        for d in w.internal.0..=w.internal.1 {
            table.set(j, d, tor.get(j - n as i64, d + degree_sum));
        }
    }
    table
}

/// `H^*(Hom_R(Koszul(I), R/J))` per bidegree.
pub fn direct_ext_dims(s: &IntersectionScenario, w: ExtWindow) -> Result<ExtTable, LagrangianError> {
    let dga = koszul_dg(s.ring(), &s.i_gens)?;
    let base = crate::polyring::QuotientRing::new(s.ring(), &s.j_gens);
    let fc = dga.free_complex(w.max_total as usize + 1).dual();
    let mut table = ExtTable::zeros(w.max_total, w.internal, s.det_normal.degree);
    for d in w.internal.0..=w.internal.1 {
        for (c, v) in fc.cohomology(&base, 0..=w.max_total, d, None).map_err(crate::koszul::KoszulError::from)? {
            table.set(c, d, v);
        }
    }
    Ok(table)
}

/// Weight-zero part of `⊕_s H^j(∧^s[E → g^∨ ⊗ O_B]) ⊗ det N_{B/C_2} ⊗ F_1^∨ ⊗ F_2` in total
/// degree `m + s + j`.
pub fn equivariant_ext_dims(s: &IntersectionScenario, w: ExtWindow) -> Result<ExtTable, LagrangianError> {
    let rank = s.ring().torus_rank();
    let twist = &s.det_normal + &s.twist_difference()?;
    let base = s.intersection_ring();
    let wedge: Vec<FreeGen> = s
        .excess_characters()
        .iter()
        .enumerate()
        .map(|(t, c)| FreeGen { label: format!("E{}", t + 1), degree: -c.degree, weight: c.weight.iter().map(|x| -x).collect() })
        .collect();
    let sym: Vec<FreeGen> = s
        .moment_characters()
        .iter()
        .enumerate()
        .map(|(i, c)| FreeGen { label: format!("xi{}", i + 1), degree: -c.degree, weight: vec![0; rank] })
        .collect();
    let map = (0..wedge.len()).map(|t| (0..sym.len()).map(|i| s.excess_lifts[i][t].clone()).collect()).collect();
    let data = TwoTermComplex { wedge, sym, map, direction: Direction::WedgeToSym };
    let zero = vec![0; rank];
    let mut table = ExtTable::zeros(w.max_total, w.internal, twist.degree);
    let m = s.m as i64;
    for p in 0..=(w.max_total - m).max(-1) {
        let piece = data.piece(p as usize, rank).twisted(twist.degree, &twist.weight);
        for d in w.internal.0..=w.internal.1 {
            let h = piece.cohomology(&base, 0..=p, d, Some(&zero)).map_err(crate::koszul::KoszulError::from)?;
            for (j, v) in h {
                table.add(m + p + j, d, v);
            }
        }
    }
    Ok(table)
}

/// Weight-zero cohomology of `Hom_{R/J}` of the Tate tensor model into `R/J`, twisted by `F_1^∨ ⊗ F_2`.
pub fn direct_equivariant_ext_dims(s: &IntersectionScenario, w: ExtWindow) -> Result<ExtTable, LagrangianError> {
    let tw = s.twist_difference()?;
    let (dga, base) = tate_tensor_model(s.ring(), &s.i_gens, &s.j_gens, &s.moments, &s.lifts)?;
    let fc = dga.free_complex(w.max_total as usize + 1).dual().twisted(tw.degree, &tw.weight);
    let zero = vec![0; s.ring().torus_rank()];
    let mut table = ExtTable::zeros(w.max_total, w.internal, s.det_normal.degree + tw.degree);
    for d in w.internal.0..=w.internal.1 {
        for (c, v) in fc.cohomology(&base, 0..=w.max_total, d, Some(&zero)).map_err(crate::koszul::KoszulError::from)? {
            table.set(c, d, v);
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::koszul::derived_tensor_dims;
    use crate::lagrangian::{build_scenario, LagrangianDescriptor, SymplecticModel, Twist};
    use crate::polyring::parse_polynomial;

    fn scenario(weights: Option<&[Vec<i64>]>, second: &str) -> IntersectionScenario {
        let m = SymplecticModel::standard(&["x", "y"], weights);
        let l2 = match second {
            "zero" => LagrangianDescriptor::ZeroSection,
            f => LagrangianDescriptor::GraphPotential(parse_polynomial(m.ring(), f).unwrap()),
        };
        build_scenario(&m, &LagrangianDescriptor::ZeroSection, &l2).unwrap()
    }

    #[test]
    fn transverse_conormal_closed_form() {
        let m = SymplecticModel::standard(&["x", "y"], None);
        let s = build_scenario(&m, &LagrangianDescriptor::Conormal(vec![0]), &LagrangianDescriptor::Conormal(vec![1])).unwrap();
        let w = ExtWindow { max_total: 2, internal: (-2, 4) };
        let t = closed_form_ext_dims(&s, w);
        assert_eq!(t.untwisted_cells(), vec![((2, 0), 1)]);
        assert_eq!(direct_ext_dims(&s, w).unwrap(), t);
    }

    #[test]
    fn square_closed_form_matches_duality_and_direct() {
        let s = scenario(None, "x^2");
        let tw = Window::new(2, 8);
        let w = ExtWindow::dual_to(&s, tw);
        let tor = derived_tensor_dims(s.ring(), &s.i_gens, &s.j_gens, tw).unwrap();
        let closed = closed_form_ext_dims(&s, w);
        assert_eq!(closed.mismatches(&ext_from_tor(&tor, 2, s.first_degree_sum(), w, s.det_normal.degree)), vec![]);
        assert_eq!(closed.mismatches(&direct_ext_dims(&s, w).unwrap()), vec![]);
        assert_eq!(closed.total_dim(0), 0);
        assert_eq!(closed.row(1), vec![0, 1, 1, 1, 1, 1, 1, 1, 1]);
    }

    #[test]
    fn equivariant_xy_is_classifying_space() {
        let s = scenario(Some(&[vec![1], vec![-1]]), "x*y");
        let w = ExtWindow::equivariant(&s, 9, 4);
        let closed = equivariant_ext_dims(&s, w).unwrap();
        let dims: Vec<usize> = (0..=9).map(|p| closed.total_dim(p)).collect();
        assert_eq!(dims, vec![0, 0, 1, 0, 1, 0, 1, 0, 1, 0]);
        assert_eq!(closed.mismatches(&direct_equivariant_ext_dims(&s, w).unwrap()), vec![]);
    }

    #[test]
    fn equivariant_zero_section_self() {
        let s = scenario(Some(&[vec![1], vec![-1]]), "zero");
        let w = ExtWindow::equivariant(&s, 3, 6);
        let closed = equivariant_ext_dims(&s, w).unwrap();
        let row0: Vec<usize> = (0..=6).map(|d| closed.get(0, d)).collect();
        assert_eq!(row0, vec![1, 0, 1, 0, 1, 0, 1]);
        assert_eq!(closed.mismatches(&direct_equivariant_ext_dims(&s, w).unwrap()), vec![]);
    }

    #[test]
    fn rank_zero_reduces_to_closed_form() {
        let s = scenario(None, "x^2");
        let w = ExtWindow { max_total: 2, internal: (-2, 5) };
        assert_eq!(equivariant_ext_dims(&s, w).unwrap(), closed_form_ext_dims(&s, w));
    }

    #[test]
    fn odd_half_canonical() {
        let m = SymplecticModel::standard(&["x"], Some(&[vec![1]]));
        let s = build_scenario(&m, &LagrangianDescriptor::ZeroSection, &LagrangianDescriptor::ZeroSection)
            .unwrap()
            .with_twists(Twist::HalfCanonical, Twist::Trivial);
        let w = ExtWindow { max_total: 2, internal: (-4, 2) };
        assert!(matches!(equivariant_ext_dims(&s, w), Err(LagrangianError::OddCanonicalCharacter(_))));
    }
}
