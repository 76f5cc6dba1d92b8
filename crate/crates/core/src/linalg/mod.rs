//! Exact sparse linear algebra, finite complexes and Poincaré series.

mod field;
mod series;

pub use field::{cyclotomic_polynomial, format_rational, q, Cyclotomic, Field, Q};
pub use series::{series_truncate, PoincareSeries};

use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("d∘d ≠ 0 at degree {degree}")]
    NotAComplex { degree: i64 },
    #[error("shape mismatch: {0}")]
    Shape(String),
}

/// Row-major sparse matrix; each row keeps its nonzero entries sorted by column.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<F: Field> {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, F)>>,
}

impl<F: Field> SparseMatrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, data: vec![Vec::new(); rows] }
    }

    /// Builds from `(row, col, value)` triples; repeated positions are summed.
    pub fn from_triples(rows: usize, cols: usize, triples: impl IntoIterator<Item = (usize, usize, F)>) -> Self {
        let mut acc: Vec<BTreeMap<usize, F>> = vec![BTreeMap::new(); rows];
        for (r, c, v) in triples {
            assert!(r < rows && c < cols, "entry ({r},{c}) outside {rows}x{cols}");
            match acc[r].get_mut(&c) {
                Some(x) => *x = x.plus(&v),
                None => {
                    acc[r].insert(c, v);
                }
            }
        }
        let data = acc
            .into_iter()
            .map(|row| row.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        SparseMatrix { rows, cols, data }
    }

    pub fn from_dense(dense: Vec<Vec<F>>) -> Self {
        let rows = dense.len();
        let cols = dense.first().map_or(0, Vec::len);
        let triples = dense
            .into_iter()
            .enumerate()
            .flat_map(|(r, row)| row.into_iter().enumerate().map(move |(c, v)| (r, c, v)));
        Self::from_triples(rows, cols, triples)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[(usize, F)] {
        &self.data[r]
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&F> {
        self.data[r].binary_search_by_key(&c, |(k, _)| *k).ok().map(|i| &self.data[r][i].1)
    }

    pub fn transpose(&self) -> Self {
        let triples = self
            .data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (*c, r, v.clone())));
        Self::from_triples(self.cols, self.rows, triples)
    }

    /// Product `self * rhs`.
    pub fn mul(&self, rhs: &Self) -> Result<Self, LinalgError> {
        if self.cols != rhs.rows {
            return Err(LinalgError::Shape(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut triples = Vec::new();
        for (r, row) in self.data.iter().enumerate() {
            for (k, a) in row {
                for (c, b) in &rhs.data[*k] {
                    triples.push((r, *c, a.times(b)));
                }
            }
        }
        Ok(Self::from_triples(self.rows, rhs.cols, triples))
    }

    /// Rank by exact Gaussian elimination.
    ///
    /// Rows are consumed in order; each surviving row pivots on its first nonzero
    /// column after reduction against earlier pivots.
    pub fn rank(&self) -> usize {
        self.echelon().len()
    }

    pub fn kernel_dim(&self) -> usize {
        self.cols - self.rank()
    }

    /// Pivot rows keyed by pivot column, each normalised to leading coefficient one.
    fn echelon(&self) -> BTreeMap<usize, Vec<(usize, F)>> {
        let mut pivots: BTreeMap<usize, Vec<(usize, F)>> = BTreeMap::new();
        for row in &self.data {
            let mut cur = row.clone();
            let mut start = 0;
            loop {
                let Some(pos) = cur[start..].iter().position(|(c, _)| pivots.contains_key(c)) else {
                    break;
                };
                let idx = start + pos;
                let (col, coef) = cur[idx].clone();
                cur = axpy(&cur, &coef.negated(), &pivots[&col]);
                start = cur.partition_point(|(c, _)| *c <= col);
            }
            if let Some((lead, lc)) = cur.first().cloned() {
                let inv = lc.inverse();
                let normed = cur.into_iter().map(|(c, v)| (c, v.times(&inv))).collect();
                pivots.insert(lead, normed);
            }
        }
        pivots
    }

    /// Solves `self * x = b`, returning one solution (free variables zero) when it exists.
    pub fn solve(&self, b: &[F], zero: &F) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows);
        // The right-hand side is appended as column `cols`.
        let aug_rows: Vec<Vec<(usize, F)>> = self
            .data
            .iter()
            .zip(b)
            .map(|(row, bi)| {
                let mut r = row.clone();
                if !bi.is_zero() {
                    r.push((self.cols, bi.clone()));
                }
                r
            })
            .collect();
        let aug = SparseMatrix { rows: self.rows, cols: self.cols + 1, data: aug_rows };
        let piv = aug.echelon();
        if piv.contains_key(&self.cols) {
            return None;
        }
        let mut x: Vec<F> = vec![zero.clone(); self.cols];
        for (&col, row) in piv.iter().rev() {
            let mut val = zero.clone();
            for (c, v) in row.iter().skip(1) {
                if *c == self.cols {
                    val = val.plus(v);
                } else {
                    val = val.minus(&v.times(&x[*c]));
                }
            }
            x[col] = val;
        }
        Some(x)
    }
}

/// `a + s * b` for sorted sparse rows.
fn axpy<F: Field>(a: &[(usize, F)], s: &F, b: &[(usize, F)]) -> Vec<(usize, F)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, s.times(&b[j].1)));
            j += 1;
        } else {
            let v = a[i].1.plus(&s.times(&b[j].1));
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// A bounded cochain complex `C^lo -> C^{lo+1} -> ...`.
///
/// `differentials[i]` maps `C^{lo+i}` to `C^{lo+i+1}` and has shape
/// `dims[i+1] x dims[i]`.
#[derive(Clone, Debug)]
pub struct FiniteComplex<F: Field> {
    pub lowest_degree: i64,
    pub dims: Vec<usize>,
    pub differentials: Vec<SparseMatrix<F>>,
}

impl<F: Field> FiniteComplex<F> {
    pub fn new(lowest_degree: i64, dims: Vec<usize>, differentials: Vec<SparseMatrix<F>>) -> Result<Self, LinalgError> {
        if !dims.is_empty() && differentials.len() + 1 != dims.len() {
            return Err(LinalgError::Shape(format!(
                "{} terms need {} differentials, got {}",
                dims.len(),
                dims.len() - 1,
                differentials.len()
            )));
        }
        for (i, d) in differentials.iter().enumerate() {
            if d.cols() != dims[i] || d.rows() != dims[i + 1] {
                return Err(LinalgError::Shape(format!(
                    "differential at degree {} is {}x{}, expected {}x{}",
                    lowest_degree + i as i64,
                    d.rows(),
                    d.cols(),
                    dims[i + 1],
                    dims[i]
                )));
            }
        }
        Ok(FiniteComplex { lowest_degree, dims, differentials })
    }
}

/// Cohomology dimensions of each term, after checking `d∘d = 0`.
pub fn homology_dims<F: Field>(complex: &FiniteComplex<F>) -> Result<Vec<usize>, LinalgError> {
    let ds = &complex.differentials;
    for i in 1..ds.len() {
        if ds[i].rows() > 0 && ds[i - 1].cols() > 0 && !ds[i].mul(&ds[i - 1])?.is_zero() {
            return Err(LinalgError::NotAComplex { degree: complex.lowest_degree + i as i64 - 1 });
        }
    }
    let ranks: Vec<usize> = ds.iter().map(SparseMatrix::rank).collect();
    Ok(complex
        .dims
        .iter()
        .enumerate()
        .map(|(i, &dim)| {
            let out = if i < ranks.len() { ranks[i] } else { 0 };
            let inc = if i > 0 { ranks[i - 1] } else { 0 };
            dim - out - inc
        })
        .collect())
}
