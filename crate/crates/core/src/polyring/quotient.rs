use super::{hilbert_series, GroebnerBasis, Monomial, PolyRing, Polynomial};
use crate::linalg::PoincareSeries;
use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

/// `R / I` with cached standard-monomial bases and normal forms.
#[derive(Debug)]
pub struct QuotientRing {
    gb: GroebnerBasis,
    bases: RefCell<HashMap<i64, Rc<Vec<Monomial>>>>,
    normal_forms: RefCell<HashMap<Monomial, Polynomial>>,
}

impl QuotientRing {
    pub fn new(ring: &PolyRing, gens: &[Polynomial]) -> Self {
        Self::from_basis(GroebnerBasis::buchberger(ring, gens))
    }

    pub fn from_basis(gb: GroebnerBasis) -> Self {
        QuotientRing { gb, bases: RefCell::default(), normal_forms: RefCell::default() }
    }

    pub fn ring(&self) -> &PolyRing {
        self.gb.ring()
    }

    pub fn groebner(&self) -> &GroebnerBasis {
        &self.gb
    }

    /// Standard monomials of weighted degree `d`, sorted.
    pub fn basis(&self, d: i64) -> Rc<Vec<Monomial>> {
        if let Some(b) = self.bases.borrow().get(&d) {
            return b.clone();
        }
        let b: Rc<Vec<Monomial>> = Rc::new(
            self.ring().monomials_of_degree(d).into_iter().filter(|m| self.gb.is_standard(m)).collect(),
        );
        self.bases.borrow_mut().insert(d, b.clone());
        b
    }

    fn monomial_normal_form(&self, m: &Monomial) -> Polynomial {
        if let Some(p) = self.normal_forms.borrow().get(m) {
            return p.clone();
        }
        let p = self.gb.reduce(&Polynomial::monomial(m.clone(), crate::linalg::q(1)));
        self.normal_forms.borrow_mut().insert(m.clone(), p.clone());
        p
    }

    /// Normal form, computed term by term from cached monomial normal forms.
    pub fn reduce(&self, p: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &p.terms {
            if self.gb.is_standard(m) {
                out.add_term(m.clone(), c.clone());
            } else {
                for (k, v) in &self.monomial_normal_form(m).terms {
                    out.add_term(k.clone(), v * c);
                }
            }
        }
        out
    }

    pub fn is_zero(&self, p: &Polynomial) -> bool {
        self.reduce(p).is_zero()
    }

    pub fn hilbert_series(&self) -> PoincareSeries {
        hilbert_series(&self.gb)
    }
}
