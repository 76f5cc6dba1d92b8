//! Graded polynomial rings over Q with Gröbner bases and Hilbert series.

mod groebner;
mod hilbert;
mod parse;
mod quotient;

pub use groebner::{divide, lift_coefficients, minimal_generators, normal_form, GroebnerBasis};
pub use hilbert::{hilbert_series, is_regular_sequence, RegularityCertificate};
pub use parse::parse_polynomial;
pub use quotient::QuotientRing;

use crate::linalg::{format_rational, q, Q};
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("element is not in the ideal")]
    NotInIdeal,
    #[error("polynomial is not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
    #[error("ring definition: {0}")]
    BadRing(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonomialOrder {
    Lex,
    /// Weighted degree, ties broken lexicographically.
    GrLex,
    /// Weighted degree, ties broken by reverse lexicographic order.
    GRevLex,
}

/// Exponent vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn mul(&self, rhs: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, rhs: &Monomial) -> bool {
        self.0.iter().zip(&rhs.0).all(|(a, b)| a <= b)
    }

    /// `rhs / self`, assuming divisibility.
    pub fn quotient_of(&self, rhs: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&rhs.0).map(|(a, b)| b - a).collect())
    }

    pub fn lcm(&self, rhs: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&rhs.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, rhs: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&rhs.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn coprime(&self, rhs: &Monomial) -> bool {
        self.0.iter().zip(&rhs.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Ordinary (unweighted) total degree.
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }
}

/// Variables with positive internal degrees, optional torus weights, and a monomial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing {
    names: Vec<String>,
    degrees: Vec<u32>,
    weights: Vec<Vec<i64>>,
    torus_rank: usize,
    order: MonomialOrder,
}

impl PolyRing {
    /// Standard-graded ring with no torus action.
    pub fn new(names: &[&str], order: MonomialOrder) -> Self {
        let n = names.len();
        Self::with_data(names.iter().map(|s| s.to_string()).collect(), vec![1; n], vec![vec![]; n], order)
            .expect("valid ring")
    }

    pub fn with_degrees(names: &[&str], degrees: &[u32], order: MonomialOrder) -> Result<Self, PolyError> {
        let n = names.len();
        Self::with_data(names.iter().map(|s| s.to_string()).collect(), degrees.to_vec(), vec![vec![]; n], order)
    }

    pub fn with_data(
        names: Vec<String>,
        degrees: Vec<u32>,
        weights: Vec<Vec<i64>>,
        order: MonomialOrder,
    ) -> Result<Self, PolyError> {
        if names.len() != degrees.len() || names.len() != weights.len() {
            return Err(PolyError::BadRing("names, degrees and weights differ in length".into()));
        }
        if degrees.contains(&0) {
            return Err(PolyError::BadRing("internal degrees must be positive".into()));
        }
        let torus_rank = weights.first().map_or(0, Vec::len);
        if weights.iter().any(|w| w.len() != torus_rank) {
            return Err(PolyError::BadRing("torus weights have inconsistent rank".into()));
        }
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(PolyError::BadRing(format!("duplicate variable {a}")));
            }
        }
        Ok(PolyRing { names, degrees, weights, torus_rank, order })
    }

    pub fn with_order(&self, order: MonomialOrder) -> Self {
        PolyRing { order, ..self.clone() }
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn weights(&self) -> &[Vec<i64>] {
        &self.weights
    }

    pub fn torus_rank(&self) -> usize {
        self.torus_rank
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial::monomial(Monomial::var(self.nvars(), i), q(1))
    }

    /// The variable with the given name; panics if absent.
    pub fn v(&self, name: &str) -> Polynomial {
        self.var(self.index_of(name).unwrap_or_else(|| panic!("no variable {name}")))
    }

    pub fn constant(&self, c: Q) -> Polynomial {
        Polynomial::monomial(Monomial::one(self.nvars()), c)
    }

    pub fn degree_of(&self, m: &Monomial) -> i64 {
        m.0.iter().zip(&self.degrees).map(|(&e, &d)| e as i64 * d as i64).sum()
    }

    pub fn weight_of(&self, m: &Monomial) -> Vec<i64> {
        let mut w = vec![0; self.torus_rank];
        for (e, wi) in m.0.iter().zip(&self.weights) {
            for (acc, x) in w.iter_mut().zip(wi) {
                *acc += *e as i64 * x;
            }
        }
        w
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.order {
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::GrLex => self.degree_of(a).cmp(&self.degree_of(b)).then_with(|| a.0.cmp(&b.0)),
            MonomialOrder::GRevLex => self.degree_of(a).cmp(&self.degree_of(b)).then_with(|| {
                for (x, y) in a.0.iter().zip(&b.0).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }),
        }
    }

    /// All monomials of weighted degree exactly `d`, in increasing exponent order.
    pub fn monomials_of_degree(&self, d: i64) -> Vec<Monomial> {
        let mut out = vec![];
        if d < 0 {
            return out;
        }
        let mut cur = vec![0u32; self.nvars()];
        self.enumerate(0, d, &mut cur, &mut out);
        out.sort();
        out
    }

    fn enumerate(&self, i: usize, left: i64, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == self.nvars() {
            if left == 0 {
                out.push(Monomial(cur.clone()));
            }
            return;
        }
        let d = self.degrees[i] as i64;
        let mut e = 0;
        while e * d <= left {
            cur[i] = e as u32;
            self.enumerate(i + 1, left - e * d, cur, out);
            e += 1;
        }
        cur[i] = 0;
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let parts: Vec<String> = m
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { self.names[i].clone() } else { format!("{}^{}", self.names[i], e) })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    pub fn format(&self, p: &Polynomial) -> String {
        if p.is_zero() {
            return "0".into();
        }
        let mut terms: Vec<(&Monomial, &Q)> = p.terms.iter().collect();
        terms.sort_by(|a, b| self.cmp(b.0, a.0));
        let mut out = String::new();
        for (i, (m, c)) in terms.into_iter().enumerate() {
            let neg = c < &Q::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                out.push_str(&format_rational(&mag));
            } else if mag.is_one() {
                out.push_str(&self.format_monomial(m));
            } else {
                out.push_str(&format!("{}*{}", format_rational(&mag), self.format_monomial(m)));
            }
        }
        out
    }
}

/// A polynomial with rational coefficients; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Polynomial {
    pub terms: BTreeMap<Monomial, Q>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: BTreeMap::new() }
    }

    pub fn monomial(m: Monomial, c: Q) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }

    pub fn scale(&self, s: &Q) -> Polynomial {
        if s.is_zero() {
            return Self::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect() }
    }

    pub fn mul_term(&self, m: &Monomial, s: &Q) -> Polynomial {
        if s.is_zero() {
            return Self::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(k, c)| (k.mul(m), c * s)).collect() }
    }

    pub fn mul(&self, rhs: &Polynomial) -> Polynomial {
        let mut out = Self::zero();
        for (m, c) in &rhs.terms {
            for (k, d) in &self.terms {
                out.add_term(k.mul(m), c * d);
            }
        }
        out
    }

    pub fn pow(&self, e: u32, nvars: usize) -> Polynomial {
        let mut out = Polynomial::monomial(Monomial::one(nvars), q(1));
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Partial derivative in variable `i`.
    pub fn derivative(&self, i: usize) -> Polynomial {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e > 0 {
                let mut k = m.clone();
                k.0[i] -= 1;
                out.add_term(k, c * q(e as i64));
            }
        }
        out
    }

    /// Leading monomial and coefficient in the ring's order.
    pub fn leading(&self, ring: &PolyRing) -> Option<(&Monomial, &Q)> {
        self.terms.iter().max_by(|a, b| ring.cmp(a.0, b.0))
    }

    pub fn leading_monomial(&self, ring: &PolyRing) -> Option<Monomial> {
        self.leading(ring).map(|(m, _)| m.clone())
    }

    pub fn monic(&self, ring: &PolyRing) -> Polynomial {
        match self.leading(ring) {
            Some((_, c)) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    /// Weighted degree if homogeneous (the zero polynomial has none).
    pub fn homogeneous_degree(&self, ring: &PolyRing) -> Option<i64> {
        let mut it = self.terms.keys().map(|m| ring.degree_of(m));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self, ring: &PolyRing) -> bool {
        self.is_zero() || self.homogeneous_degree(ring).is_some()
    }

    /// Torus weight if every term has the same weight.
    pub fn torus_weight(&self, ring: &PolyRing) -> Option<Vec<i64>> {
        let mut it = self.terms.keys().map(|m| ring.weight_of(m));
        let first = it.next()?;
        it.all(|w| w == first).then_some(first)
    }

    /// Part of the given weighted degree.
    pub fn component(&self, ring: &PolyRing, d: i64) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().filter(|(m, _)| ring.degree_of(m) == d).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    pub fn constant_term(&self, nvars: usize) -> Q {
        self.coeff(&Monomial::one(nvars))
    }

    /// Coefficients of the variables in the ordinary-degree-one part.
    pub fn linear_part(&self, nvars: usize) -> Vec<Q> {
        (0..nvars).map(|i| self.coeff(&Monomial::var(nvars, i))).collect()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }
}
