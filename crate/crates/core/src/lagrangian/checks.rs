use super::ext::{closed_form_ext_dims, direct_equivariant_ext_dims, direct_ext_dims, equivariant_ext_dims, ext_from_tor, ExtWindow};
use super::{build_scenario, Character, IntersectionScenario, LagrangianDescriptor, LagrangianError};
use crate::koszul::{
    derived_tensor_dims, moment_tensor_dims, subsets, sym_two_term_prediction, wedge_excess_prediction, BigradedDimsTable,
    Direction, ExtTable, FreeGen, TwoTermComplex, Window,
};
use crate::linalg::q;
use crate::polyring::{GroebnerBasis, Polynomial};

/// Summands of the canonical identity and their total.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalCertificate {
    pub summands: Vec<(String, Character)>,
    pub total: Character,
}

/// `K_{C_1}^∨ + K_{C_2} + 2·det N_{B/C_2} + m·χ(ω) = 0` in the bookkeeping group.
///
/// The last summand accounts for `ω` having nonzero internal degree in a graded model;
/// it vanishes when `ω` is invariant.
pub fn canonical_char_check(s: &IntersectionScenario) -> Result<CanonicalCertificate, LagrangianError> {
    let rank = s.ring().torus_rank();
    let omega = Character { degree: s.m as i64 * s.model.symplectic_degree(), weight: vec![0; rank] };
    let summands = vec![
        ("K_C1^dual".to_string(), -&s.canonical_first),
        ("K_C2".to_string(), s.canonical_second.clone()),
        ("det(N_B/C2)^2".to_string(), s.det_normal.scale(2)),
        ("omega^m".to_string(), omega),
    ];
    let total = summands.iter().fold(Character::zero(rank), |acc, (_, c)| &acc + c);
    if !total.is_zero() {
        return Err(LagrangianError::CheckFailed(total));
    }
    Ok(CanonicalCertificate { summands, total })
}

/// Hessian rank of a graph's 1-form along its zero locus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HessianCertificate {
    pub rank: usize,
    pub codim: usize,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    /// The witnessing minor, reduced modulo the zero locus.
    pub minor: String,
    /// Whether the minor is a nonzero constant, so that it trivializes `det(N)^2`.
    pub unit: bool,
}

fn determinant(m: &[Vec<Polynomial>]) -> Polynomial {
    match m.len() {
        0 => Polynomial::monomial(crate::polyring::Monomial(vec![]), q(1)),
        1 => m[0][0].clone(),
        n => (0..n).fold(Polynomial::zero(), |acc, c| {
            if m[0][c].is_zero() {
                return acc;
            }
            let minor: Vec<Vec<Polynomial>> =
                m[1..].iter().map(|row| row.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, p)| p.clone()).collect()).collect();
            let term = m[0][c].mul(&determinant(&minor));
            if c % 2 == 0 {
                acc.add(&term)
            } else {
                acc.sub(&term)
            }
        }),
    }
}

/// Symbolic rank of the Hessian of the second Lagrangian's 1-form modulo its zero locus.
pub fn hessian_torsion_check(s: &IntersectionScenario) -> Result<HessianCertificate, LagrangianError> {
    let model = &s.model;
    let eta = s.second.form(model).ok_or(LagrangianError::NotAGraph)?;
    let zero_locus = if s.first == LagrangianDescriptor::ZeroSection {
        s.clone()
    } else {
        build_scenario(model, &LagrangianDescriptor::ZeroSection, &s.second)?
    };
    let n = model.n();
    let codim = n - zero_locus.dim_b;
    let gb = GroebnerBasis::buchberger(model.ring(), &zero_locus.b_gens);
    let nvars = model.ring().nvars();
    let hess: Vec<Vec<Polynomial>> = (0..n).map(|i| (0..n).map(|j| eta[i].derivative(j)).collect()).collect();
    for k in (1..=n).rev() {
        for rows in subsets(n, k) {
            for cols in subsets(n, k) {
                let sub: Vec<Vec<Polynomial>> = rows.iter().map(|&i| cols.iter().map(|&j| hess[i][j].clone()).collect()).collect();
                let minor = gb.reduce(&determinant(&sub));
                if minor.is_zero() {
                    continue;
                }
                if k != codim {
                    return Err(LagrangianError::DegenerateHessian { rank: k, codim });
                }
                let unit = minor.is_constant() && !minor.constant_term(nvars).eq(&q(0));
                return Ok(HessianCertificate { rank: k, codim, rows, cols, minor: model.ring().format(&minor), unit });
            }
        }
    }
    if codim == 0 {
        return Ok(HessianCertificate { rank: 0, codim, rows: vec![], cols: vec![], minor: "1".into(), unit: true });
    }
    Err(LagrangianError::DegenerateHessian { rank: 0, codim })
}

/// One table-against-table comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub name: String,
    pub cells: usize,
    pub mismatches: Vec<String>,
}

impl Comparison {
    fn tables(name: &str, left: &ExtTable, right: &ExtTable) -> Self {
        Comparison {
            name: name.into(),
            cells: left.cells().count(),
            mismatches: left.mismatches(right).into_iter().map(|((t, d), a, b)| format!("({t},{d}): {a} vs {b}")).collect(),
        }
    }

    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Oracle tables and their comparisons for one scenario.
#[derive(Clone, Debug)]
pub struct OracleReport {
    pub tor: BigradedDimsTable,
    pub moment: Option<BigradedDimsTable>,
    pub ext: ExtTable,
    pub ext_swapped: ExtTable,
    pub equivariant: Option<ExtTable>,
    pub comparisons: Vec<Comparison>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.comparisons.iter().all(Comparison::passed)
    }
}

/// Two-term data `[g -> E^∨]` over the intersection ring.
pub fn moment_two_term(s: &IntersectionScenario) -> TwoTermComplex {
    let wedge = s
        .excess_characters()
        .into_iter()
        .enumerate()
        .map(|(t, c)| FreeGen { label: format!("e{}", t + 1), degree: c.degree, weight: c.weight })
        .collect();
    let sym = s
        .moment_characters()
        .into_iter()
        .enumerate()
        .map(|(i, c)| FreeGen { label: format!("eps{}", i + 1), degree: c.degree, weight: c.weight })
        .collect();
    TwoTermComplex { wedge, sym, map: s.excess_lifts.clone(), direction: Direction::SymToWedge }
}

fn ext_checks(s: &IntersectionScenario, window: Window, tag: &str) -> Result<(ExtTable, Vec<Comparison>), LagrangianError> {
    let n = s.model.n();
    let tor_window = Window::new(window.homological.max(n), window.internal);
    let w = ExtWindow::dual_to(s, tor_window);
    let tor = derived_tensor_dims(s.ring(), &s.i_gens, &s.j_gens, tor_window)?;
    let closed = closed_form_ext_dims(s, w);
    let dual = ext_from_tor(&tor, n, s.first_degree_sum(), w, s.det_normal.degree);
    let direct = direct_ext_dims(s, w)?;
    let out = vec![
        Comparison::tables(&format!("ext closed form vs Tor reindexed ({tag})"), &closed, &dual),
        Comparison::tables(&format!("ext closed form vs direct Hom ({tag})"), &closed, &direct),
    ];
    Ok((closed, out))
}

/// Runs every available prediction against direct homology inside the window.
pub fn compare_with_oracle(s: &IntersectionScenario, window: Window) -> Result<OracleReport, LagrangianError> {
    let mut comparisons = vec![];
    let tor = derived_tensor_dims(s.ring(), &s.i_gens, &s.j_gens, window)?;
    let excess = s.excess_module();
    let mut bad = vec![];
    for k in 0..=window.homological {
        let predicted = wedge_excess_prediction(&excess, k, window);
        for (d, (a, b)) in tor.row(-(k as i64)).iter().zip(&predicted).enumerate() {
            if a != b {
                bad.push(format!("(-{k},{d}): {a} vs {b}"));
            }
        }
    }
    comparisons.push(Comparison { name: "Tor vs wedge of excess".into(), cells: tor.cells().count(), mismatches: bad });

    let mut moment = None;
    if !s.moments.is_empty() {
        let direct = moment_tensor_dims(s.ring(), &s.i_gens, &s.j_gens, &s.moments, &s.lifts, window)?;
        let predicted = sym_two_term_prediction(&s.intersection_ring(), &moment_two_term(s), window)
            .map_err(crate::koszul::KoszulError::from)?;
        comparisons.push(Comparison {
            name: "Tate model vs Sym of two-term complex".into(),
            cells: direct.cells().count(),
            mismatches: direct.mismatches(&predicted).into_iter().map(|((k, d), a, b)| format!("({k},{d}): {a} vs {b}")).collect(),
        });
        moment = Some(direct);
    }

    let (ext, mut cmp) = ext_checks(s, window, "C1 -> C2")?;
    comparisons.append(&mut cmp);
    let swapped = s.swapped()?;
    let (ext_swapped, mut cmp) = ext_checks(&swapped, window, "C2 -> C1")?;
    comparisons.append(&mut cmp);

    let mut equivariant = None;
    if s.equivariant {
        let w = ExtWindow::equivariant(s, window.homological as i64, window.internal);
        let closed = equivariant_ext_dims(s, w)?;
        let direct = direct_equivariant_ext_dims(s, w)?;
        comparisons.push(Comparison::tables("equivariant Ext closed form vs direct", &closed, &direct));
        equivariant = Some(closed);
    }
    Ok(OracleReport { tor, moment, ext, ext_swapped, equivariant, comparisons })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lagrangian::SymplecticModel;
    use crate::polyring::parse_polynomial;

    fn graph(m: &SymplecticModel, f: &str) -> LagrangianDescriptor {
        LagrangianDescriptor::GraphPotential(parse_polynomial(m.ring(), f).unwrap())
    }

    #[test]
    fn canonical_identity_examples() {
        let m = SymplecticModel::standard(&["x", "y"], Some(&[vec![1], vec![-1]]));
        let z = LagrangianDescriptor::ZeroSection;
        let own = build_scenario(&m, &z, &z).unwrap();
        let cert = canonical_char_check(&own).unwrap();
        assert!(cert.summands[2..].iter().all(|(_, c)| c.is_zero()));
        let xy = build_scenario(&m, &z, &graph(&m, "x*y")).unwrap();
        assert!(canonical_char_check(&xy).is_ok());
        let con = build_scenario(&m, &LagrangianDescriptor::Conormal(vec![0]), &LagrangianDescriptor::Conormal(vec![1])).unwrap();
        assert!(canonical_char_check(&con).is_ok());
    }

    #[test]
    fn hessians() {
        let m = SymplecticModel::standard(&["x", "y"], None);
        let z = LagrangianDescriptor::ZeroSection;
        let sq = hessian_torsion_check(&build_scenario(&m, &z, &graph(&m, "x^2")).unwrap()).unwrap();
        assert_eq!((sq.rank, sq.codim, sq.minor.as_str(), sq.unit), (1, 1, "2", true));
        let xy = hessian_torsion_check(&build_scenario(&m, &z, &graph(&m, "x*y")).unwrap()).unwrap();
        assert_eq!((xy.rank, xy.codim, xy.minor.as_str()), (2, 2, "-1"));
        assert!(matches!(hessian_torsion_check(&build_scenario(&m, &z, &z).unwrap()), Err(LagrangianError::NotAGraph)));
    }

    #[test]
    fn oracle_agrees_on_small_scenarios() {
        let m = SymplecticModel::standard(&["x", "y"], Some(&[vec![1], vec![-1]]));
        let z = LagrangianDescriptor::ZeroSection;
        for l2 in [graph(&m, "x*y"), z.clone()] {
            let s = build_scenario(&m, &z, &l2).unwrap();
            let r = compare_with_oracle(&s, Window::new(4, 5)).unwrap();
            assert!(r.passed(), "{:?}", r.comparisons);
        }
    }
}
