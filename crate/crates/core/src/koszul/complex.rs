use crate::linalg::{homology_dims, FiniteComplex, LinalgError, SparseMatrix, Q};
use crate::polyring::{Monomial, Polynomial, QuotientRing};
use std::collections::{BTreeMap, HashMap};
use std::ops::RangeInclusive;

/// Generator of a graded free module: internal degree and torus weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeGen {
    pub label: String,
    pub degree: i64,
    pub weight: Vec<i64>,
}

/// A cochain complex of graded free modules over a quotient ring.
///
/// Only the listed degrees exist; anything outside is zero, so callers that
/// truncate an infinite complex must include one degree past their window.
#[derive(Clone, Debug, Default)]
pub struct FreeComplex {
    pub terms: BTreeMap<i64, Vec<FreeGen>>,
    /// `maps[c]` lists `(source, target, p)`: generator `source` of degree `c`
    /// contributes `p * target` in degree `c + 1`.
    pub maps: BTreeMap<i64, Vec<(usize, usize, Polynomial)>>,
}

type Block = (Vec<(usize, Monomial)>, HashMap<(usize, Monomial), usize>);

impl FreeComplex {
    /// `Hom(-, base)`: degrees, internal degrees and weights negate; maps transpose.
    pub fn dual(&self) -> FreeComplex {
        let terms = self
            .terms
            .iter()
            .map(|(&c, gens)| {
                let dual = gens
                    .iter()
                    .map(|g| FreeGen {
                        label: format!("{}*", g.label),
                        degree: -g.degree,
                        weight: g.weight.iter().map(|w| -w).collect(),
                    })
                    .collect();
                (-c, dual)
            })
            .collect();
        let maps = self
            .maps
            .iter()
            .map(|(&c, entries)| (-c - 1, entries.iter().map(|(s, t, p)| (*t, *s, p.clone())).collect()))
            .collect();
        FreeComplex { terms, maps }
    }

    /// Shifts every internal degree and torus weight of the generators.
    pub fn twisted(&self, degree: i64, weight: &[i64]) -> FreeComplex {
        let terms = self
            .terms
            .iter()
            .map(|(&c, gens)| {
                let tw = gens
                    .iter()
                    .map(|g| FreeGen {
                        label: g.label.clone(),
                        degree: g.degree + degree,
                        weight: g.weight.iter().zip(weight).map(|(a, b)| a + b).collect(),
                    })
                    .collect();
                (c, tw)
            })
            .collect();
        FreeComplex { terms, maps: self.maps.clone() }
    }

    fn block(&self, base: &QuotientRing, c: i64, delta: i64, weight: Option<&[i64]>) -> Block {
        let mut list = vec![];
        let mut index = HashMap::new();
        let ring = base.ring();
        if let Some(gens) = self.terms.get(&c) {
            for (gi, g) in gens.iter().enumerate() {
                for m in base.basis(delta - g.degree).iter() {
                    if let Some(w) = weight {
                        let mw = ring.weight_of(m);
                        if mw.iter().zip(&g.weight).zip(w).any(|((a, b), t)| a + b != *t) {
                            continue;
                        }
                    }
                    index.insert((gi, m.clone()), list.len());
                    list.push((gi, m.clone()));
                }
            }
        }
        (list, index)
    }

    fn matrix(&self, base: &QuotientRing, c: i64, src: &Block, tgt: &Block) -> SparseMatrix<Q> {
        let mut triples = vec![];
        if let Some(entries) = self.maps.get(&c) {
            let mut by_source: HashMap<usize, Vec<(usize, &Polynomial)>> = HashMap::new();
            for (s, t, p) in entries {
                by_source.entry(*s).or_default().push((*t, p));
            }
            for (col, (gi, m)) in src.0.iter().enumerate() {
                let Some(images) = by_source.get(gi) else { continue };
                for (t, p) in images {
                    let prod = base.reduce(&p.mul_term(m, &crate::linalg::q(1)));
                    for (mono, coef) in &prod.terms {
                        match tgt.1.get(&(*t, mono.clone())) {
                            Some(&row) => triples.push((row, col, coef.clone())),
                            None => panic!("differential leaves the target block; inhomogeneous or weight-breaking entry"),
                        }
                    }
                }
            }
        }
        SparseMatrix::from_triples(tgt.0.len(), src.0.len(), triples)
    }

    /// Cohomology dimensions in internal degree `delta` for each degree in `degrees`,
    /// optionally restricted to one torus weight.
    pub fn cohomology(
        &self,
        base: &QuotientRing,
        degrees: RangeInclusive<i64>,
        delta: i64,
        weight: Option<&[i64]>,
    ) -> Result<BTreeMap<i64, usize>, LinalgError> {
        let lo = *degrees.start() - 1;
        let hi = *degrees.end() + 1;
        let blocks: Vec<Block> = (lo..=hi).map(|c| self.block(base, c, delta, weight)).collect();
        let mats: Vec<SparseMatrix<Q>> =
            (lo..hi).map(|c| self.matrix(base, c, &blocks[(c - lo) as usize], &blocks[(c - lo + 1) as usize])).collect();
        let dims = blocks.iter().map(|b| b.0.len()).collect();
        let complex = FiniteComplex::new(lo, dims, mats)?;
        let h = homology_dims(&complex)?;
        Ok(degrees.map(|c| (c, h[(c - lo) as usize])).collect())
    }

    /// Dimension of the term itself in the given bidegree.
    pub fn term_dim(&self, base: &QuotientRing, c: i64, delta: i64, weight: Option<&[i64]>) -> usize {
        self.block(base, c, delta, weight).0.len()
    }
}
