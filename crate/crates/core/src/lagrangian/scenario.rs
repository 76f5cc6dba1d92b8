use super::{moment_value, validate_lagrangian, Character, LagrangianDescriptor, LagrangianError, SymplecticModel};
use crate::koszul::ExcessModule;
use crate::linalg::{format_rational, SparseMatrix, Q};
use crate::polyring::{is_regular_sequence, lift_coefficients, GroebnerBasis, PolyRing, Polynomial, QuotientRing};

/// Line-bundle twist applied to one of the two structure sheaves.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum Twist {
    #[default]
    Trivial,
    Character(Character),
    /// A square root of the canonical bundle of that Lagrangian.
    HalfCanonical,
}

/// Two validated Lagrangians and everything derived from their intersection `B`.
#[derive(Clone, Debug)]
pub struct IntersectionScenario {
    pub model: SymplecticModel,
    pub first: LagrangianDescriptor,
    pub second: LagrangianDescriptor,
    pub i_gens: Vec<Polynomial>,
    pub j_gens: Vec<Polynomial>,
    /// Generators of the first ideal that cut `B` out of the second Lagrangian.
    pub transverse: Vec<Polynomial>,
    /// The remaining generators, adjusted to lie in both ideals.
    pub excess: Vec<Polynomial>,
    /// `j_gens ++ transverse`.
    pub b_gens: Vec<Polynomial>,
    pub dim_b: usize,
    /// `codim(B, C_2)`.
    pub m: usize,
    pub excess_rank: usize,
    pub moment_level: Vec<Q>,
    /// Nonzero moment components.
    pub moments: Vec<Polynomial>,
    /// Coefficients of each moment component on `i_gens`.
    pub lifts: Vec<Vec<Polynomial>>,
    /// Coefficients on `excess` after lifting onto `transverse ++ excess`, reduced modulo `B`.
    pub excess_lifts: Vec<Vec<Polynomial>>,
    pub det_normal: Character,
    pub canonical_first: Character,
    pub canonical_second: Character,
    pub twists: (Twist, Twist),
    pub equivariant: bool,
}

fn degree(ring: &PolyRing, p: &Polynomial) -> i64 {
    p.homogeneous_degree(ring).expect("validated generators are homogeneous")
}

fn character_of(ring: &PolyRing, p: &Polynomial) -> Character {
    Character {
        degree: degree(ring, p),
        weight: p.torus_weight(ring).unwrap_or_else(|| vec![0; ring.torus_rank()]),
    }
}

fn sum_characters(ring: &PolyRing, ps: &[Polynomial]) -> Character {
    ps.iter().fold(Character::zero(ring.torus_rank()), |acc, p| &acc + &character_of(ring, p))
}

/// `K_C = K_X|_C ⊗ det N_{C/X}` for a complete intersection.
fn canonical(ring: &PolyRing, gens: &[Polynomial]) -> Character {
    let total = Character { degree: ring.degrees().iter().map(|&d| d as i64).sum(), weight: column_sums(ring) };
    &total - &sum_characters(ring, gens)
}

fn column_sums(ring: &PolyRing) -> Vec<i64> {
    (0..ring.torus_rank()).map(|k| ring.weights().iter().map(|w| w[k]).sum()).collect()
}

/// Splits the first ideal's generators into transverse and excess parts relative to `j_gens`.
fn adapted_generators(
    ring: &PolyRing,
    i_gens: &[Polynomial],
    j_gens: &[Polynomial],
) -> Result<(Vec<Polynomial>, Vec<Polynomial>), LagrangianError> {
    let mut order: Vec<usize> = (0..i_gens.len()).collect();
    order.sort_by_key(|&i| degree(ring, &i_gens[i]));
    let mut transverse: Vec<Polynomial> = vec![];
    let mut excess = vec![];
    for i in order {
        let g = &i_gens[i];
        let mut basis: Vec<Polynomial> = j_gens.to_vec();
        basis.extend(transverse.iter().cloned());
        if !GroebnerBasis::buchberger(ring, &basis).contains(g) {
            transverse.push(g.clone());
            continue;
        }
        let coeffs = lift_coefficients(ring, g, &basis)?;
        let t_part = coeffs[j_gens.len()..]
            .iter()
            .zip(&transverse)
            .fold(Polynomial::zero(), |acc, (c, t)| acc.add(&c.mul(t)));
        excess.push(g.sub(&t_part));
    }
    Ok((transverse, excess))
}

/// Regularity plus independence of linear parts at the cone vertex.
fn clean_certificate(ring: &PolyRing, b_gens: &[Polynomial]) -> Result<(), LagrangianError> {
    let cert = is_regular_sequence(ring, b_gens)?;
    if !cert.regular {
        return Err(LagrangianError::IntersectionNotClean(format!(
            "B generators are not a regular sequence (numerator {:?}, expected {:?})",
            cert.numerator, cert.expected
        )));
    }
    let jac = SparseMatrix::from_dense(b_gens.iter().map(|g| g.linear_part(ring.nvars())).collect());
    if jac.rank() != b_gens.len() {
        return Err(LagrangianError::IntersectionNotClean(format!(
            "Jacobian at the vertex has rank {} < {} (B is singular)",
            jac.rank(),
            b_gens.len()
        )));
    }
    Ok(())
}

/// Validates both Lagrangians and derives `B`, the excess data, moments and characters.
pub fn build_scenario(
    model: &SymplecticModel,
    first: &LagrangianDescriptor,
    second: &LagrangianDescriptor,
) -> Result<IntersectionScenario, LagrangianError> {
    let ring = model.ring();
    let i_gens = validate_lagrangian(model, first)?;
    let j_gens = validate_lagrangian(model, second)?;
    let equivariant = ring.torus_rank() > 0;
    let mut moment_level = vec![];
    if equivariant {
        for g in i_gens.iter().chain(&j_gens) {
            if g.torus_weight(ring).is_none() {
                return Err(LagrangianError::NotEquivariant(ring.format(g)));
            }
        }
        let (a, b) = (moment_value(model, first)?, moment_value(model, second)?);
        if a != b {
            let show = |v: &[Q]| v.iter().map(format_rational).collect::<Vec<_>>().join(",");
            return Err(LagrangianError::MomentMismatch(show(&a), show(&b)));
        }
        moment_level = a;
    }
    let (transverse, excess) = adapted_generators(ring, &i_gens, &j_gens)?;
    let mut b_gens = j_gens.clone();
    b_gens.extend(transverse.iter().cloned());
    clean_certificate(ring, &b_gens)?;
    let n = model.n();
    let dim_b = 2 * n - b_gens.len();
    let excess_rank = excess.len();
    if excess_rank != dim_b {
        return Err(LagrangianError::ExcessRankMismatch { excess: excess_rank, dim_b });
    }
    let moments: Vec<Polynomial> = model.moment_components().into_iter().filter(|p| !p.is_zero()).collect();
    let lifts = moments.iter().map(|a| lift_coefficients(ring, a, &i_gens)).collect::<Result<Vec<_>, _>>()?;
    let adapted: Vec<Polynomial> = transverse.iter().chain(&excess).cloned().collect();
    let b_gb = GroebnerBasis::buchberger(ring, &b_gens);
    let excess_lifts = moments
        .iter()
        .map(|a| {
            let c = lift_coefficients(ring, a, &adapted)?;
            Ok(c[transverse.len()..].iter().map(|p| b_gb.reduce(p)).collect())
        })
        .collect::<Result<Vec<_>, LagrangianError>>()?;
    Ok(IntersectionScenario {
        model: model.clone(),
        first: first.clone(),
        second: second.clone(),
        det_normal: -&sum_characters(ring, &transverse),
        canonical_first: canonical(ring, &i_gens),
        canonical_second: canonical(ring, &j_gens),
        m: transverse.len(),
        i_gens,
        j_gens,
        transverse,
        excess,
        b_gens,
        dim_b,
        excess_rank,
        moment_level,
        moments,
        lifts,
        excess_lifts,
        twists: (Twist::Trivial, Twist::Trivial),
        equivariant,
    })
}

impl IntersectionScenario {
    pub fn ring(&self) -> &PolyRing {
        self.model.ring()
    }

    pub fn with_twists(mut self, first: Twist, second: Twist) -> Self {
        self.twists = (first, second);
        self
    }

    /// The same pair with the roles of the two Lagrangians exchanged.
    pub fn swapped(&self) -> Result<Self, LagrangianError> {
        Ok(build_scenario(&self.model, &self.second, &self.first)?.with_twists(self.twists.1.clone(), self.twists.0.clone()))
    }

    pub fn intersection_ring(&self) -> QuotientRing {
        QuotientRing::new(self.ring(), &self.b_gens)
    }

    /// `E^∨`, free over the intersection ring on the excess generators.
    pub fn excess_module(&self) -> ExcessModule {
        ExcessModule {
            base_series: self.intersection_ring().hilbert_series(),
            generator_degrees: self.excess.iter().map(|g| degree(self.ring(), g)).collect(),
        }
    }

    /// Sum of internal degrees of the first ideal's generators.
    pub fn first_degree_sum(&self) -> i64 {
        self.i_gens.iter().map(|g| degree(self.ring(), g)).sum()
    }

    pub fn excess_characters(&self) -> Vec<Character> {
        self.excess.iter().map(|g| character_of(self.ring(), g)).collect()
    }

    pub fn moment_characters(&self) -> Vec<Character> {
        self.moments.iter().map(|g| character_of(self.ring(), g)).collect()
    }

    fn twist_character(&self, t: &Twist, canonical: &Character) -> Result<Character, LagrangianError> {
        match t {
            Twist::Trivial => Ok(Character::zero(self.ring().torus_rank())),
            Twist::Character(c) => Ok(c.clone()),
            Twist::HalfCanonical => canonical.half().ok_or_else(|| LagrangianError::OddCanonicalCharacter(canonical.clone())),
        }
    }

    /// `χ(F_2) − χ(F_1)`.
    pub fn twist_difference(&self) -> Result<Character, LagrangianError> {
        let f1 = self.twist_character(&self.twists.0, &self.canonical_first)?;
        let f2 = self.twist_character(&self.twists.1, &self.canonical_second)?;
        Ok(&f2 - &f1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_polynomial;

    fn poly(m: &SymplecticModel, s: &str) -> Polynomial {
        parse_polynomial(m.ring(), s).unwrap()
    }

    #[test]
    fn self_intersection() {
        let m = SymplecticModel::standard(&["x", "y"], None);
        let s = build_scenario(&m, &LagrangianDescriptor::ZeroSection, &LagrangianDescriptor::ZeroSection).unwrap();
        assert_eq!((s.m, s.dim_b, s.excess_rank), (0, 2, 2));
    }

    #[test]
    fn transverse_conormals() {
        let m = SymplecticModel::standard(&["x", "y"], None);
        let s = build_scenario(&m, &LagrangianDescriptor::Conormal(vec![0]), &LagrangianDescriptor::Conormal(vec![1])).unwrap();
        assert_eq!((s.m, s.dim_b, s.excess_rank), (2, 0, 0));
    }

    #[test]
    fn morse_bott_square() {
        let m = SymplecticModel::standard(&["x", "y"], None);
        let g = LagrangianDescriptor::GraphPotential(poly(&m, "x^2"));
        let s = build_scenario(&m, &LagrangianDescriptor::ZeroSection, &g).unwrap();
        assert_eq!((s.m, s.dim_b, s.excess_rank), (1, 1, 1));
        assert_eq!(s.transverse, vec![poly(&m, "w_x")]);
        assert_eq!(s.excess, vec![poly(&m, "w_y")]);
        let gb = GroebnerBasis::buchberger(m.ring(), &s.b_gens);
        for v in ["x", "w_x", "w_y"] {
            assert!(gb.contains(&poly(&m, v)));
        }
        assert_eq!(s.det_normal, Character { degree: -1, weight: vec![] });
    }

    #[test]
    fn cubic_fails_clean_gate() {
        let names = vec!["x".to_string(), "y".to_string()];
        let m = SymplecticModel::cotangent(&names, &[1, 1], 3, None).unwrap();
        let g = LagrangianDescriptor::GraphPotential(poly(&m, "x^3"));
        let err = build_scenario(&m, &LagrangianDescriptor::ZeroSection, &g).unwrap_err();
        assert!(matches!(err, LagrangianError::IntersectionNotClean(_)), "{err}");
    }

    #[test]
    fn equivariant_xy() {
        let m = SymplecticModel::standard(&["x", "y"], Some(&[vec![1], vec![-1]]));
        let g = LagrangianDescriptor::GraphPotential(poly(&m, "x*y"));
        let s = build_scenario(&m, &LagrangianDescriptor::ZeroSection, &g).unwrap();
        assert_eq!(s.moments, vec![poly(&m, "x*w_x - y*w_y")]);
        assert_eq!(s.lifts, vec![vec![poly(&m, "x"), poly(&m, "-y")]]);
        assert_eq!((s.m, s.dim_b), (2, 0));
        assert!(s.excess_lifts[0].is_empty());
    }
}
