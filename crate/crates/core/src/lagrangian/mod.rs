//! Cotangent-type symplectic models, Lagrangian descriptors, intersection scenarios and
//! the Ext/Tor predictions checked against direct homology.

mod checks;
mod ext;
mod scenario;

pub use checks::{
    canonical_char_check, compare_with_oracle, hessian_torsion_check, moment_two_term, CanonicalCertificate, Comparison, HessianCertificate,
    OracleReport,
};
pub use ext::{
    closed_form_ext_dims, direct_equivariant_ext_dims, direct_ext_dims, equivariant_ext_dims, ext_from_tor, ExtWindow,
};
pub use scenario::{build_scenario, IntersectionScenario, Twist};

use crate::koszul::KoszulError;
use crate::linalg::{q, SparseMatrix, Q};
use crate::polyring::{is_regular_sequence, GroebnerBasis, MonomialOrder, PolyError, PolyRing, Polynomial};
use num_traits::Zero;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LagrangianError {
    #[error("not isotropic: bracket {0} is not in the ideal")]
    NotIsotropic(String),
    #[error("wrong dimension: expected {expected}, found {found}")]
    WrongDimension { expected: usize, found: usize },
    #[error("1-form is not closed: d/d{0} of component {1} differs from d/d{1} of component {0}")]
    NotClosedForm(String, String),
    #[error("descriptor ideal is not generated by a regular sequence")]
    NotRegular,
    #[error("moment component {component} reduces to {residue}, not a constant")]
    NonConstantMoment { component: usize, residue: String },
    #[error("moment values differ: {0} vs {1}")]
    MomentMismatch(String, String),
    #[error("intersection is not clean: {0}")]
    IntersectionNotClean(String),
    #[error("excess rank {excess} differs from dim B = {dim_b}")]
    ExcessRankMismatch { excess: usize, dim_b: usize },
    #[error("generator {0} is not homogeneous for the torus weights")]
    NotEquivariant(String),
    #[error("half-canonical twist requested but K = {0} is not divisible by 2")]
    OddCanonicalCharacter(Character),
    #[error("Hessian has rank {rank} but the zero locus has codimension {codim}")]
    DegenerateHessian { rank: usize, codim: usize },
    #[error("second Lagrangian is not a graph")]
    NotAGraph,
    #[error("canonical identity fails with residual {0}")]
    CheckFailed(Character),
    #[error("invalid model or descriptor: {0}")]
    Invalid(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Koszul(#[from] KoszulError),
}

/// An element of the bookkeeping group `Z × Z^r`: internal degree and torus character.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Character {
    pub degree: i64,
    pub weight: Vec<i64>,
}

impl Character {
    pub fn zero(rank: usize) -> Self {
        Character { degree: 0, weight: vec![0; rank] }
    }

    pub fn is_zero(&self) -> bool {
        self.degree == 0 && self.weight.iter().all(|&w| w == 0)
    }

    pub fn scale(&self, k: i64) -> Self {
        Character { degree: k * self.degree, weight: self.weight.iter().map(|w| k * w).collect() }
    }

    /// Exact half, when every component is even.
    pub fn half(&self) -> Option<Self> {
        if self.degree % 2 != 0 || self.weight.iter().any(|w| w % 2 != 0) {
            return None;
        }
        Some(Character { degree: self.degree / 2, weight: self.weight.iter().map(|w| w / 2).collect() })
    }
}

impl Add for &Character {
    type Output = Character;
    fn add(self, rhs: &Character) -> Character {
        Character { degree: self.degree + rhs.degree, weight: self.weight.iter().zip(&rhs.weight).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &Character {
    type Output = Character;
    fn sub(self, rhs: &Character) -> Character {
        self + &(-rhs)
    }
}

impl Neg for &Character {
    type Output = Character;
    fn neg(self) -> Character {
        self.scale(-1)
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.weight.is_empty() {
            write!(f, "({})", self.degree)
        } else {
            let w: Vec<String> = self.weight.iter().map(|x| x.to_string()).collect();
            write!(f, "({}; {})", self.degree, w.join(","))
        }
    }
}

/// `T^∨` of a graded affine space: coordinates `z_i`, fibre coordinates `w_i`, and
/// `ω = Σ dz_i ∧ dw_i` of internal degree `symplectic_degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticModel {
    ring: PolyRing,
    n: usize,
    symplectic_degree: i64,
    linearization: Option<Vec<i64>>,
}

impl SymplecticModel {
    /// Fibre coordinate of `z` is named `w_z`, has degree `symplectic_degree - deg z`
    /// and the opposite torus weight.
    pub fn cotangent(
        base: &[String],
        base_degrees: &[u32],
        symplectic_degree: u32,
        base_weights: Option<&[Vec<i64>]>,
    ) -> Result<Self, LagrangianError> {
        let n = base.len();
        if base_degrees.len() != n || base_weights.is_some_and(|w| w.len() != n) {
            return Err(LagrangianError::Invalid("base data lengths differ".into()));
        }
        let mut names = base.to_vec();
        names.extend(base.iter().map(|z| format!("w_{z}")));
        let mut degrees = base_degrees.to_vec();
        for &d in base_degrees {
            if d >= symplectic_degree {
                return Err(LagrangianError::Invalid(format!(
                    "symplectic degree {symplectic_degree} leaves no positive fibre degree over a degree-{d} coordinate"
                )));
            }
            degrees.push(symplectic_degree - d);
        }
        let weights = match base_weights {
            Some(w) => w.iter().cloned().chain(w.iter().map(|v| v.iter().map(|x| -x).collect())).collect(),
            None => vec![vec![]; 2 * n],
        };
        let ring = PolyRing::with_data(names, degrees, weights, MonomialOrder::GRevLex)?;
        Ok(SymplecticModel { ring, n, symplectic_degree: symplectic_degree as i64, linearization: None })
    }

    /// Plane-like model with all coordinates of degree 1 and `ω` of degree 2.
    pub fn standard(base: &[&str], base_weights: Option<&[Vec<i64>]>) -> Self {
        let names: Vec<String> = base.iter().map(|s| s.to_string()).collect();
        Self::cotangent(&names, &vec![1; base.len()], 2, base_weights).expect("standard model")
    }

    pub fn with_linearization(mut self, chi: Vec<i64>) -> Self {
        self.linearization = Some(chi);
        self
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    /// Half the dimension.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn symplectic_degree(&self) -> i64 {
        self.symplectic_degree
    }

    pub fn linearization(&self) -> Option<&[i64]> {
        self.linearization.as_deref()
    }

    pub fn torus_rank(&self) -> usize {
        self.ring.torus_rank()
    }

    pub fn z(&self, i: usize) -> Polynomial {
        self.ring.var(i)
    }

    pub fn w(&self, i: usize) -> Polynomial {
        self.ring.var(self.n + i)
    }

    /// `ω(u, v)` for coordinate vectors ordered `(z_1.., w_1..)`.
    pub fn pairing(&self, u: &[Q], v: &[Q]) -> Q {
        let n = self.n;
        (0..n).fold(Q::zero(), |acc, i| acc + &u[i] * &v[n + i] - &u[n + i] * &v[i])
    }

    /// `{f, g} = Σ ∂f/∂z_i ∂g/∂w_i − ∂f/∂w_i ∂g/∂z_i`.
    pub fn poisson(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        let n = self.n;
        (0..n).fold(Polynomial::zero(), |acc, i| {
            acc.add(&f.derivative(i).mul(&g.derivative(n + i))).sub(&f.derivative(n + i).mul(&g.derivative(i)))
        })
    }

    /// Components `μ_k = Σ_i wt_k(z_i) z_i w_i` of the moment map.
    pub fn moment_components(&self) -> Vec<Polynomial> {
        (0..self.torus_rank())
            .map(|k| {
                (0..self.n).fold(Polynomial::zero(), |acc, i| {
                    acc.add(&self.z(i).mul(&self.w(i)).scale(&q(self.ring.weights()[i][k])))
                })
            })
            .collect()
    }

    fn base_only(&self, p: &Polynomial) -> bool {
        p.terms.keys().all(|m| m.0[self.n..].iter().all(|&e| e == 0))
    }
}

/// A Lagrangian in a cotangent model.
#[derive(Clone, Debug, PartialEq)]
pub enum LagrangianDescriptor {
    ZeroSection,
    /// Graph of `d f` for a potential on the base.
    GraphPotential(Polynomial),
    /// Graph of the 1-form `Σ η_i dz_i`.
    GraphForm(Vec<Polynomial>),
    /// Conormal of the coordinate subspace `{z_i = 0 : i ∈ S}`.
    Conormal(Vec<usize>),
    /// Span of the given vectors in coordinates `(z_1.., w_1..)`.
    Linear(Vec<Vec<Q>>),
}

impl LagrangianDescriptor {
    /// Components of the 1-form for graph descriptors.
    pub fn form(&self, model: &SymplecticModel) -> Option<Vec<Polynomial>> {
        match self {
            LagrangianDescriptor::GraphPotential(f) => Some((0..model.n).map(|i| f.derivative(i)).collect()),
            LagrangianDescriptor::GraphForm(eta) => Some(eta.clone()),
            _ => None,
        }
    }

    /// Defining ideal generators, without validation.
    pub fn generators(&self, model: &SymplecticModel) -> Result<Vec<Polynomial>, LagrangianError> {
        let n = model.n;
        Ok(match self {
            LagrangianDescriptor::ZeroSection => (0..n).map(|i| model.w(i)).collect(),
            LagrangianDescriptor::GraphPotential(_) | LagrangianDescriptor::GraphForm(_) => {
                let eta = self.form(model).unwrap();
                if eta.len() != n {
                    return Err(LagrangianError::WrongDimension { expected: n, found: eta.len() });
                }
                (0..n).map(|i| model.w(i).sub(&eta[i])).collect()
            }
            LagrangianDescriptor::Conormal(s) => {
                if let Some(&bad) = s.iter().find(|&&i| i >= n) {
                    return Err(LagrangianError::Invalid(format!("conormal index {bad} out of range")));
                }
                (0..n).map(|i| if s.contains(&i) { model.z(i) } else { model.w(i) }).collect()
            }
            LagrangianDescriptor::Linear(basis) => basis
                .iter()
                .map(|v| {
                    // ω(v, ·) as a linear form.
                    (0..n).fold(Polynomial::zero(), |acc, i| {
                        acc.add(&model.w(i).scale(&v[i])).sub(&model.z(i).scale(&v[n + i]))
                    })
                })
                .collect(),
        })
    }
}

/// Checks isotropy, dimension, closedness and regularity; returns the ideal generators.
pub fn validate_lagrangian(model: &SymplecticModel, l: &LagrangianDescriptor) -> Result<Vec<Polynomial>, LagrangianError> {
    let n = model.n;
    let ring = &model.ring;
    match l {
        LagrangianDescriptor::Linear(basis) => {
            if basis.iter().any(|v| v.len() != 2 * n) {
                return Err(LagrangianError::Invalid(format!("basis vectors must have length {}", 2 * n)));
            }
            for (a, u) in basis.iter().enumerate() {
                for v in &basis[a + 1..] {
                    if !model.pairing(u, v).is_zero() {
                        return Err(LagrangianError::NotIsotropic(format!("ω({u:?}, {v:?})")));
                    }
                }
            }
            let rank = SparseMatrix::from_dense(basis.clone()).rank();
            if rank != n || basis.len() != n {
                return Err(LagrangianError::WrongDimension { expected: n, found: rank });
            }
        }
        LagrangianDescriptor::GraphPotential(_) | LagrangianDescriptor::GraphForm(_) => {
            let eta = l.form(model).unwrap();
            if eta.len() != n {
                return Err(LagrangianError::WrongDimension { expected: n, found: eta.len() });
            }
            if let Some(bad) = eta.iter().find(|p| !model.base_only(p)) {
                return Err(LagrangianError::Invalid(format!("1-form component {} involves fibre coordinates", ring.format(bad))));
            }
            for i in 0..n {
                for j in i + 1..n {
                    if eta[i].derivative(j) != eta[j].derivative(i) {
                        let names = ring.names();
                        return Err(LagrangianError::NotClosedForm(names[i].clone(), names[j].clone()));
                    }
                }
            }
        }
        _ => {}
    }
    let gens = l.generators(model)?;
    if gens.len() != n {
        return Err(LagrangianError::WrongDimension { expected: n, found: gens.len() });
    }
    for g in &gens {
        if !g.is_homogeneous(ring) {
            return Err(PolyError::NotHomogeneous(ring.format(g)).into());
        }
    }
    if !is_regular_sequence(ring, &gens)?.regular {
        return Err(LagrangianError::NotRegular);
    }
    let gb = GroebnerBasis::buchberger(ring, &gens);
    for (i, f) in gens.iter().enumerate() {
        for g in &gens[i + 1..] {
            if !gb.contains(&model.poisson(f, g)) {
                return Err(LagrangianError::NotIsotropic(format!("{{{}, {}}}", ring.format(f), ring.format(g))));
            }
        }
    }
    Ok(gens)
}

/// The constant value of each moment component on `l`.
pub fn moment_value(model: &SymplecticModel, l: &LagrangianDescriptor) -> Result<Vec<Q>, LagrangianError> {
    let gens = validate_lagrangian(model, l)?;
    let gb = GroebnerBasis::buchberger(&model.ring, &gens);
    model
        .moment_components()
        .iter()
        .enumerate()
        .map(|(k, mu)| {
            let r = gb.reduce(mu);
            if r.is_constant() {
                Ok(r.constant_term(model.ring.nvars()))
            } else {
                Err(LagrangianError::NonConstantMoment { component: k, residue: model.ring.format(&r) })
            }
        })
        .collect()
}
