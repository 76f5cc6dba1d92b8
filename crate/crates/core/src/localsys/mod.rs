//! Rank-one local systems with root-of-unity monodromy on finite simplicial complexes,
//! their cyclic covers, and the splitting of the cover's cohomology.

use crate::linalg::{homology_dims, Cyclotomic, Field, FiniteComplex, LinalgError, SparseMatrix};
use num_integer::Integer;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LocalSysError {
    #[error("monodromy is not a cocycle on simplex {0:?}")]
    NotACocycle(Vec<usize>),
    #[error("local system of order {order} does not trivialize on a {n}-fold cover")]
    OrderMismatch { order: u32, n: u32 },
    #[error("invalid simplicial data: {0}")]
    Invalid(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A finite simplicial complex on vertices `0..vertices`, closed under faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialModel {
    vertices: usize,
    /// `simplices[k]` lists the `k`-simplices as strictly increasing vertex tuples, sorted.
    simplices: Vec<Vec<Vec<usize>>>,
}

impl SimplicialModel {
    /// The closure of the given facets.
    pub fn from_facets(vertices: usize, facets: &[Vec<usize>]) -> Result<Self, LocalSysError> {
        let mut by_dim: Vec<BTreeSet<Vec<usize>>> = vec![(0..vertices).map(|v| vec![v]).collect()];
        for f in facets {
            let mut s = f.clone();
            s.sort_unstable();
            s.dedup();
            if s.len() != f.len() || s.is_empty() {
                return Err(LocalSysError::Invalid(format!("facet {f:?} repeats a vertex or is empty")));
            }
            if let Some(&v) = s.iter().find(|&&v| v >= vertices) {
                return Err(LocalSysError::Invalid(format!("vertex {v} out of range")));
            }
            let k = s.len() - 1;
            if k > 3 {
                return Err(LocalSysError::Invalid("simplices above dimension 3 are not supported".into()));
            }
            for mask in 1u32..(1 << s.len()) {
                let face: Vec<usize> = s.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect();
                let d = face.len() - 1;
                while by_dim.len() <= d {
                    by_dim.push(BTreeSet::new());
                }
                by_dim[d].insert(face);
            }
        }
        Ok(SimplicialModel { vertices, simplices: by_dim.into_iter().map(|s| s.into_iter().collect()).collect() })
    }

    pub fn point() -> Self {
        Self::from_facets(1, &[]).unwrap()
    }

    /// Boundary of a polygon with `m ≥ 3` vertices.
    pub fn circle(m: usize) -> Self {
        assert!(m >= 3);
        let edges: Vec<Vec<usize>> = (0..m).map(|i| vec![i, (i + 1) % m]).collect();
        Self::from_facets(m, &edges).unwrap()
    }

    /// The `m × m` grid triangulation of the torus; vertex `(i, j)` is `m*i + j`.
    pub fn torus(m: usize) -> Self {
        assert!(m >= 3);
        let v = |i: usize, j: usize| m * (i % m) + j % m;
        let mut facets = vec![];
        for i in 0..m {
            for j in 0..m {
                facets.push(vec![v(i, j), v(i + 1, j), v(i + 1, j + 1)]);
                facets.push(vec![v(i, j), v(i, j + 1), v(i + 1, j + 1)]);
            }
        }
        Self::from_facets(m * m, &facets).unwrap()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn dimension(&self) -> usize {
        self.simplices.iter().rposition(|s| !s.is_empty()).unwrap_or(0)
    }

    pub fn simplices(&self, k: usize) -> &[Vec<usize>] {
        self.simplices.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices.iter().enumerate().map(|(k, s)| if k % 2 == 0 { s.len() as i64 } else { -(s.len() as i64) }).sum()
    }

    /// Number of connected components.
    pub fn components(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.vertices).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for e in self.simplices(1) {
            let (a, b) = (find(&mut parent, e[0]), find(&mut parent, e[1]));
            parent[a] = b;
        }
        (0..self.vertices).filter(|&v| find(&mut parent, v) == v).count()
    }
}

/// Edge exponents `a(u, v)` of `ζ_order`, stored for `u < v`; `a(v, u) = -a(u, v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonodromyData {
    pub order: u32,
    exponents: BTreeMap<(usize, usize), i64>,
}

impl MonodromyData {
    pub fn trivial(order: u32) -> Self {
        MonodromyData { order, exponents: BTreeMap::new() }
    }

    /// Exponents for ordered pairs; missing edges carry `0`.
    pub fn new(order: u32, edges: &[((usize, usize), i64)]) -> Self {
        let mut exponents = BTreeMap::new();
        for &((u, v), a) in edges {
            let (key, val) = if u < v { ((u, v), a) } else { ((v, u), -a) };
            exponents.insert(key, val.rem_euclid(order as i64));
        }
        MonodromyData { order, exponents }
    }

    pub fn exponent(&self, u: usize, v: usize) -> i64 {
        let n = self.order as i64;
        if u == v {
            0
        } else if u < v {
            self.exponents.get(&(u, v)).copied().unwrap_or(0)
        } else {
            (-self.exponents.get(&(v, u)).copied().unwrap_or(0)).rem_euclid(n)
        }
    }

    /// The `k`-th tensor power.
    pub fn power(&self, k: i64) -> Self {
        let n = self.order as i64;
        MonodromyData { order: self.order, exponents: self.exponents.iter().map(|(&e, &a)| (e, (a * k).rem_euclid(n))).collect() }
    }

    /// Gauge transform by a 0-cochain: `a'(u, v) = a(u, v) + g(u) - g(v)`.
    pub fn gauge(&self, k: &SimplicialModel, g: &[i64]) -> Self {
        let edges: Vec<((usize, usize), i64)> =
            k.simplices(1).iter().map(|e| ((e[0], e[1]), self.exponent(e[0], e[1]) + g[e[0]] - g[e[1]])).collect();
        Self::new(self.order, &edges)
    }

    /// Smallest `N` with every exponent times `N` divisible by the order.
    pub fn exact_order(&self) -> u32 {
        let n = self.order as i64;
        self.exponents.values().fold(1i64, |acc, &a| acc.lcm(&(n / a.gcd(&n)))) as u32
    }

    /// The same system written with `ζ_n`, when its exact order divides `n`.
    pub fn reexpress(&self, n: u32) -> Result<Self, LocalSysError> {
        let exact = self.exact_order();
        if !n.is_multiple_of(exact) {
            return Err(LocalSysError::OrderMismatch { order: exact, n });
        }
        let down = (self.order / exact) as i64;
        let up = (n / exact) as i64;
        Ok(MonodromyData { order: n, exponents: self.exponents.iter().map(|(&e, &a)| (e, (a / down * up).rem_euclid(n as i64))).collect() })
    }

    fn check(&self, k: &SimplicialModel) -> Result<(), LocalSysError> {
        for &(u, v) in self.exponents.keys() {
            if !k.simplices(1).contains(&vec![u, v]) {
                return Err(LocalSysError::Invalid(format!("monodromy on non-edge ({u},{v})")));
            }
        }
        let n = self.order as i64;
        for t in k.simplices(2) {
            let (a, b, c) = (t[0], t[1], t[2]);
            if (self.exponent(a, b) + self.exponent(b, c) - self.exponent(a, c)).rem_euclid(n) != 0 {
                return Err(LocalSysError::NotACocycle(t.clone()));
            }
        }
        Ok(())
    }
}

/// The twisted cochain complex with `(δφ)(v_0..v_{k+1}) = ρ(v_0,v_1) φ(v_1..) + Σ_{i≥1} (-1)^i φ(..v̂_i..)`.
pub fn twisted_complex(k: &SimplicialModel, l: &MonodromyData) -> Result<FiniteComplex<Cyclotomic>, LocalSysError> {
    l.check(k)?;
    let n = l.order;
    let top = k.dimension();
    let dims: Vec<usize> = (0..=top).map(|d| k.simplices(d).len()).collect();
    let mut diffs = vec![];
    for d in 0..top {
        let index: HashMap<&Vec<usize>, usize> = k.simplices(d).iter().enumerate().map(|(i, s)| (s, i)).collect();
        let mut triples = vec![];
        for (row, s) in k.simplices(d + 1).iter().enumerate() {
            for i in 0..s.len() {
                let mut face = s.clone();
                face.remove(i);
                let col = index[&face];
                let coef = if i == 0 {
                    Cyclotomic::root_power(n, l.exponent(s[0], s[1]))
                } else if i % 2 == 0 {
                    Cyclotomic::one(n)
                } else {
                    Cyclotomic::one(n).negated()
                };
                triples.push((row, col, coef));
            }
        }
        diffs.push(SparseMatrix::from_triples(dims[d + 1], dims[d], triples));
    }
    Ok(FiniteComplex::new(0, dims, diffs)?)
}

/// Dimensions of `H^k(K, L)` over `Q(ζ_n)`.
pub fn twisted_cohomology(k: &SimplicialModel, l: &MonodromyData) -> Result<Vec<usize>, LocalSysError> {
    Ok(homology_dims(&twisted_complex(k, l)?)?)
}

/// An `n`-fold cyclic cover: vertex `(v, s)` is `n*v + s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicCover {
    pub complex: SimplicialModel,
    pub sheets: u32,
}

impl CyclicCover {
    /// Base vertex and sheet of a cover vertex.
    pub fn deck_label(&self, v: usize) -> (usize, u32) {
        (v / self.sheets as usize, (v % self.sheets as usize) as u32)
    }

    /// The deck generator `(v, s) -> (v, s + 1)`.
    pub fn deck_shift(&self, v: usize) -> usize {
        let (b, s) = self.deck_label(v);
        b * self.sheets as usize + ((s + 1) % self.sheets) as usize
    }
}

/// Lifts every simplex `(v_0 < .. < v_q)` on sheet `s` to `{(v_i, s + a(v_0, v_i))}`.
pub fn cyclic_cover(k: &SimplicialModel, l: &MonodromyData, n: u32) -> Result<CyclicCover, LocalSysError> {
    l.check(k)?;
    let l = l.reexpress(n)?;
    let nn = n as usize;
    let mut facets = vec![];
    for d in 1..=k.dimension() {
        for s in k.simplices(d) {
            for sheet in 0..n as i64 {
                facets.push(
                    s.iter().map(|&v| nn * v + (sheet + l.exponent(s[0], v)).rem_euclid(n as i64) as usize).collect::<Vec<_>>(),
                );
            }
        }
    }
    Ok(CyclicCover { complex: SimplicialModel::from_facets(nn * k.vertex_count(), &facets)?, sheets: n })
}

/// Both sides of `H(cover) = ⊕_k H(K, L^k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoveringReport {
    pub cover: Vec<usize>,
    pub summands: Vec<Vec<usize>>,
    pub sum: Vec<usize>,
    pub euler_cover: i64,
    pub euler_base: i64,
}

impl CoveringReport {
    pub fn passed(&self) -> bool {
        self.cover == self.sum && self.euler_cover == self.sheets() as i64 * self.euler_base
    }

    pub fn sheets(&self) -> usize {
        self.summands.len()
    }
}

pub fn covering_decomposition_check(k: &SimplicialModel, l: &MonodromyData, n: u32) -> Result<CoveringReport, LocalSysError> {
    let cover = cyclic_cover(k, l, n)?;
    let cover_dims = twisted_cohomology(&cover.complex, &MonodromyData::trivial(1))?;
    let ln = l.reexpress(n)?;
    let summands = (0..n as i64).map(|j| twisted_cohomology(k, &ln.power(j))).collect::<Result<Vec<_>, _>>()?;
    let len = cover_dims.len().max(summands.iter().map(Vec::len).max().unwrap_or(0));
    let mut sum = vec![0; len];
    for s in &summands {
        for (a, b) in sum.iter_mut().zip(s) {
            *a += b;
        }
    }
    let mut cover_padded = cover_dims;
    cover_padded.resize(len, 0);
    Ok(CoveringReport {
        cover: cover_padded,
        summands,
        sum,
        euler_cover: cover.complex.euler_characteristic(),
        euler_base: k.euler_characteristic(),
    })
}

/// Order-2 system on the `m × m` torus that flips sign across the seam between rows `m-1` and `0`.
pub fn torus_seam_system(m: usize) -> MonodromyData {
    let k = SimplicialModel::torus(m);
    let edges: Vec<((usize, usize), i64)> = k
        .simplices(1)
        .iter()
        .filter(|e| {
            let (a, b) = (e[0] / m, e[1] / m);
            a.min(b) == 0 && a.max(b) == m - 1
        })
        .map(|e| ((e[0], e[1]), 1))
        .collect();
    MonodromyData::new(2, &edges)
}
