use super::{Monomial, PolyError, PolyRing, Polynomial};
use crate::linalg::Q;
use num_traits::One;

/// A reduced Gröbner basis that remembers how each element is built from the input generators.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: PolyRing,
    generators: Vec<Polynomial>,
    elements: Vec<Polynomial>,
    leading: Vec<Monomial>,
    /// `elements[k] = sum_j cofactors[k][j] * generators[j]`.
    cofactors: Vec<Vec<Polynomial>>,
}

struct Tracked {
    poly: Polynomial,
    cof: Vec<Polynomial>,
}

impl Tracked {
    /// `self - c * m * other`.
    fn sub_multiple(&mut self, c: &Q, m: &Monomial, other: &Tracked) {
        self.poly = self.poly.sub(&other.poly.mul_term(m, c));
        for (a, b) in self.cof.iter_mut().zip(&other.cof) {
            *a = a.sub(&b.mul_term(m, c));
        }
    }

    fn scale(&mut self, s: &Q) {
        self.poly = self.poly.scale(s);
        for a in self.cof.iter_mut() {
            *a = a.scale(s);
        }
    }
}

/// Fully reduces `t` by `basis` (skipping `skip`), tracking cofactors.
fn reduce_tracked(ring: &PolyRing, t: &mut Tracked, basis: &[Tracked], lms: &[Monomial], skip: Option<usize>) {
    let mut rest = Polynomial::zero();
    loop {
        let Some((lm, lc)) = t.poly.leading(ring).map(|(m, c)| (m.clone(), c.clone())) else {
            break;
        };
        let hit = lms.iter().enumerate().find(|(k, l)| Some(*k) != skip && l.divides(&lm)).map(|(k, _)| k);
        match hit {
            Some(k) => {
                let lc_b = basis[k].poly.coeff(&lms[k]);
                let c = lc / lc_b;
                let m = lms[k].quotient_of(&lm);
                t.sub_multiple(&c, &m, &basis[k]);
            }
            None => {
                t.poly.terms.remove(&lm);
                rest.add_term(lm, lc);
            }
        }
    }
    t.poly = rest;
}

impl GroebnerBasis {
    /// Buchberger's algorithm with the normal selection strategy: the pair with the
    /// smallest lcm is processed first, ties broken by pair index.
    pub fn buchberger(ring: &PolyRing, gens: &[Polynomial]) -> Self {
        let ngen = gens.len();
        let unit = |j: usize| -> Vec<Polynomial> {
            (0..ngen)
                .map(|i| if i == j { Polynomial::monomial(Monomial::one(ring.nvars()), Q::one()) } else { Polynomial::zero() })
                .collect()
        };
        let mut basis: Vec<Tracked> = vec![];
        let mut lms: Vec<Monomial> = vec![];
        for (j, g) in gens.iter().enumerate() {
            if g.is_zero() {
                continue;
            }
            let mut t = Tracked { poly: g.clone(), cof: unit(j) };
            let lc = t.poly.leading(ring).unwrap().1.clone();
            t.scale(&lc.recip());
            lms.push(t.poly.leading_monomial(ring).unwrap());
            basis.push(t);
        }
        let mut pairs: Vec<(usize, usize)> = vec![];
        for j in 0..basis.len() {
            for i in 0..j {
                pairs.push((i, j));
            }
        }
        while !pairs.is_empty() {
            let best = (0..pairs.len())
                .min_by(|&a, &b| {
                    let (i, j) = pairs[a];
                    let (k, l) = pairs[b];
                    ring.cmp(&lms[i].lcm(&lms[j]), &lms[k].lcm(&lms[l])).then((i, j).cmp(&(k, l)))
                })
                .unwrap();
            let (i, j) = pairs.swap_remove(best);
            if lms[i].coprime(&lms[j]) {
                continue;
            }
            let l = lms[i].lcm(&lms[j]);
            // Chain criterion: skip if some k has lm_k | lcm and both (i,k), (j,k) are already handled.
            let chain = (0..basis.len()).any(|k| {
                k != i
                    && k != j
                    && lms[k].divides(&l)
                    && !pairs.contains(&(i.min(k), i.max(k)))
                    && !pairs.contains(&(j.min(k), j.max(k)))
            });
            if chain {
                continue;
            }
            let mut s = Tracked { poly: basis[i].poly.mul_term(&lms[i].quotient_of(&l), &Q::one()), cof: vec![] };
            s.cof = basis[i].cof.iter().map(|c| c.mul_term(&lms[i].quotient_of(&l), &Q::one())).collect();
            s.sub_multiple(&Q::one(), &lms[j].quotient_of(&l), &basis[j]);
            reduce_tracked(ring, &mut s, &basis, &lms, None);
            if s.poly.is_zero() {
                continue;
            }
            let lc = s.poly.leading(ring).unwrap().1.clone();
            s.scale(&lc.recip());
            let new = basis.len();
            lms.push(s.poly.leading_monomial(ring).unwrap());
            basis.push(s);
            for k in 0..new {
                pairs.push((k, new));
            }
        }
        // Minimise: drop elements whose leading monomial is a multiple of another's.
        let keep: Vec<usize> = (0..basis.len())
            .filter(|&a| {
                !(0..basis.len()).any(|b| b != a && lms[b].divides(&lms[a]) && (lms[b] != lms[a] || b < a))
            })
            .collect();
        let mut kept: Vec<Tracked> = vec![];
        let mut kept_lms: Vec<Monomial> = vec![];
        for &a in &keep {
            kept.push(Tracked { poly: basis[a].poly.clone(), cof: basis[a].cof.clone() });
            kept_lms.push(lms[a].clone());
        }
        // Interreduce the tails.
        for a in 0..kept.len() {
            let mut t = Tracked { poly: kept[a].poly.clone(), cof: kept[a].cof.clone() };
            let lm = kept_lms[a].clone();
            let lc = t.poly.coeff(&lm);
            let head = Tracked {
                poly: Polynomial::monomial(lm.clone(), lc),
                cof: vec![Polynomial::zero(); ngen],
            };
            // Reduce only the tail: temporarily remove the head.
            t.poly = t.poly.sub(&head.poly);
            reduce_tracked(ring, &mut t, &kept, &kept_lms, Some(a));
            t.poly = t.poly.add(&head.poly);
            kept[a] = t;
        }
        let mut order: Vec<usize> = (0..kept.len()).collect();
        order.sort_by(|&a, &b| ring.cmp(&kept_lms[a], &kept_lms[b]));
        let mut elements = vec![];
        let mut leading = vec![];
        let mut cofactors = vec![];
        for a in order {
            elements.push(kept[a].poly.clone());
            leading.push(kept_lms[a].clone());
            cofactors.push(kept[a].cof.clone());
        }
        GroebnerBasis { ring: ring.clone(), generators: gens.to_vec(), elements, leading, cofactors }
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn leading_monomials(&self) -> &[Monomial] {
        &self.leading
    }

    pub fn cofactors(&self) -> &[Vec<Polynomial>] {
        &self.cofactors
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.leading.iter().any(Monomial::is_one)
    }

    pub fn reduce(&self, p: &Polynomial) -> Polynomial {
        divide(&self.ring, p, &self.elements).1
    }

    pub fn contains(&self, p: &Polynomial) -> bool {
        self.reduce(p).is_zero()
    }

    /// True if no leading monomial divides `m`.
    pub fn is_standard(&self, m: &Monomial) -> bool {
        !self.leading.iter().any(|l| l.divides(m))
    }
}

/// Multivariate division: `f = sum q_k * by_k + r`, with no term of `r` divisible by
/// any leading monomial of `by`.
pub fn divide(ring: &PolyRing, f: &Polynomial, by: &[Polynomial]) -> (Vec<Polynomial>, Polynomial) {
    let heads: Vec<Option<(Monomial, Q)>> =
        by.iter().map(|b| b.leading(ring).map(|(m, c)| (m.clone(), c.clone()))).collect();
    let mut quotients = vec![Polynomial::zero(); by.len()];
    let mut p = f.clone();
    let mut rem = Polynomial::zero();
    while let Some((lm, lc)) = p.leading(ring).map(|(m, c)| (m.clone(), c.clone())) {
        let hit = heads.iter().position(|h| h.as_ref().is_some_and(|(m, _)| m.divides(&lm)));
        match hit {
            Some(k) => {
                let (hm, hc) = heads[k].as_ref().unwrap();
                let c = &lc / hc;
                let m = hm.quotient_of(&lm);
                p = p.sub(&by[k].mul_term(&m, &c));
                quotients[k].add_term(m, c);
            }
            None => {
                p.terms.remove(&lm);
                rem.add_term(lm, lc);
            }
        }
    }
    (quotients, rem)
}

/// Normal form of `f` modulo the ideal generated by `gens`.
pub fn normal_form(ring: &PolyRing, f: &Polynomial, gens: &[Polynomial]) -> Polynomial {
    GroebnerBasis::buchberger(ring, gens).reduce(f)
}

/// Coefficients `c` with `sum c_j * gens_j = a`, via division by a Gröbner basis with
/// quotient tracking. Homogeneous inputs give homogeneous coefficients.
pub fn lift_coefficients(ring: &PolyRing, a: &Polynomial, gens: &[Polynomial]) -> Result<Vec<Polynomial>, PolyError> {
    let gb = GroebnerBasis::buchberger(ring, gens);
    lift_with(&gb, a)
}

pub(crate) fn lift_with(gb: &GroebnerBasis, a: &Polynomial) -> Result<Vec<Polynomial>, PolyError> {
    let ring = gb.ring();
    let gens = gb.generators();
    let (quot, rem) = divide(ring, a, gb.elements());
    if !rem.is_zero() {
        return Err(PolyError::NotInIdeal);
    }
    let mut coeffs = vec![Polynomial::zero(); gens.len()];
    for (qk, cof) in quot.iter().zip(gb.cofactors()) {
        if qk.is_zero() {
            continue;
        }
        for (cj, fj) in coeffs.iter_mut().zip(cof) {
            *cj = cj.add(&qk.mul(fj));
        }
    }
    if let Some(da) = a.homogeneous_degree(ring) {
        if gens.iter().all(|g| g.is_homogeneous(ring)) {
            for (cj, g) in coeffs.iter_mut().zip(gens) {
                *cj = match g.homogeneous_degree(ring) {
                    Some(dg) => cj.component(ring, da - dg),
                    None => Polynomial::zero(),
                };
            }
        }
    }
    let back = coeffs.iter().zip(gens).fold(Polynomial::zero(), |acc, (c, g)| acc.add(&c.mul(g)));
    assert_eq!(&back, a, "lift does not re-expand");
    Ok(coeffs)
}

/// A minimal homogeneous generating set, chosen greedily in order of degree.
pub fn minimal_generators(ring: &PolyRing, gens: &[Polynomial]) -> Result<Vec<Polynomial>, PolyError> {
    let mut idx: Vec<usize> = (0..gens.len()).filter(|&i| !gens[i].is_zero()).collect();
    for &i in &idx {
        if !gens[i].is_homogeneous(ring) {
            return Err(PolyError::NotHomogeneous(ring.format(&gens[i])));
        }
    }
    idx.sort_by_key(|&i| gens[i].homogeneous_degree(ring).unwrap());
    let mut kept: Vec<Polynomial> = vec![];
    for i in idx {
        let inside = !kept.is_empty() && GroebnerBasis::buchberger(ring, &kept).contains(&gens[i]);
        if !inside {
            kept.push(gens[i].clone());
        }
    }
    Ok(kept)
}

impl PartialEq for GroebnerBasis {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.elements == other.elements
    }
}
