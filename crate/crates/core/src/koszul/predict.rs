use super::complex::{FreeComplex, FreeGen};
use super::dga::{compositions, subsets};
use super::table::{BigradedDimsTable, Window};
use crate::linalg::{q, LinalgError, PoincareSeries};
use crate::polyring::{Polynomial, QuotientRing};

/// Which way the two-term map points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// `Sym(g[2]) ⊗ ∧(E^∨[1])` with `eps_i -> sum map[i][t] e_t`, lowering the symmetric degree.
    SymToWedge,
    /// `∧(E) ⊗ Sym(g^∨[-1])` with `e_t -> sum map[t][i] xi_i`, lowering the exterior degree.
    WedgeToSym,
}

/// A map between two free modules over a base ring, assembled into Koszul-type
/// complexes `∧^{p-j}(wedge) ⊗ Sym^j(sym)`.
#[derive(Clone, Debug)]
pub struct TwoTermComplex {
    pub wedge: Vec<FreeGen>,
    pub sym: Vec<FreeGen>,
    /// Indexed `[sym][wedge]` for `SymToWedge` and `[wedge][sym]` for `WedgeToSym`.
    pub map: Vec<Vec<Polynomial>>,
    pub direction: Direction,
}

impl TwoTermComplex {
    fn gen_for(&self, s: &[usize], beta: &[u32], weight_rank: usize) -> FreeGen {
        let mut degree = 0;
        let mut weight = vec![0; weight_rank];
        let mut label = vec![];
        for &t in s {
            degree += self.wedge[t].degree;
            for (a, b) in weight.iter_mut().zip(&self.wedge[t].weight) {
                *a += b;
            }
            label.push(self.wedge[t].label.clone());
        }
        for (i, &e) in beta.iter().enumerate() {
            degree += e as i64 * self.sym[i].degree;
            for (a, b) in weight.iter_mut().zip(&self.sym[i].weight) {
                *a += e as i64 * b;
            }
            if e > 0 {
                label.push(if e == 1 { self.sym[i].label.clone() } else { format!("{}^{}", self.sym[i].label, e) });
            }
        }
        FreeGen { label: if label.is_empty() { "1".into() } else { label.join("·") }, degree, weight }
    }

    /// The complex `⊕_j ∧^{p-j} ⊗ Sym^j`. For `SymToWedge` the summand with symmetric
    /// degree `j` sits in cohomological degree `-(p + j)`; for `WedgeToSym` in degree `j`.
    pub fn piece(&self, p: usize, weight_rank: usize) -> FreeComplex {
        let nw = self.wedge.len();
        let ns = self.sym.len();
        let place = |j: usize| -> i64 {
            match self.direction {
                Direction::SymToWedge => -((p + j) as i64),
                Direction::WedgeToSym => j as i64,
            }
        };
        let mut words: Vec<Vec<(Vec<usize>, Vec<u32>)>> = vec![];
        let mut fc = FreeComplex::default();
        for j in 0..=p {
            let mut ws = vec![];
            if p - j <= nw {
                for beta in compositions(j as u32, ns) {
                    for s in subsets(nw, p - j) {
                        ws.push((s, beta.clone()));
                    }
                }
            }
            fc.terms.insert(place(j), ws.iter().map(|(s, b)| self.gen_for(s, b, weight_rank)).collect());
            words.push(ws);
        }
        let find = |j: usize, s: &[usize], b: &[u32]| -> usize {
            words[j].iter().position(|(x, y)| x == s && y == b).expect("word present")
        };
        for j in 0..=p {
            let mut entries = vec![];
            for (src, (s, beta)) in words[j].iter().enumerate() {
                match self.direction {
                    Direction::SymToWedge => {
                        if j == 0 {
                            continue;
                        }
                        let outer = if s.len() % 2 == 0 { 1 } else { -1 };
                        for i in 0..ns {
                            if beta[i] == 0 {
                                continue;
                            }
                            let mut lowered = beta.clone();
                            lowered[i] -= 1;
                            for t in 0..nw {
                                let coef = &self.map[i][t];
                                if coef.is_zero() || s.contains(&t) {
                                    continue;
                                }
                                let pos = s.partition_point(|&x| x < t);
                                let moves = s.len() - pos;
                                let mut grown = s.clone();
                                grown.insert(pos, t);
                                let sign = outer * if moves % 2 == 0 { 1 } else { -1 } * beta[i] as i64;
                                let tgt = find(j - 1, &grown, &lowered);
                                entries.push((src, tgt, coef.scale(&q(sign))));
                            }
                        }
                    }
                    Direction::WedgeToSym => {
                        if j == p {
                            continue;
                        }
                        for (pos, &t) in s.iter().enumerate() {
                            let sign = if pos % 2 == 0 { 1 } else { -1 };
                            let mut shrunk = s.clone();
                            shrunk.remove(pos);
                            for i in 0..ns {
                                let coef = &self.map[t][i];
                                if coef.is_zero() {
                                    continue;
                                }
                                let mut raised = beta.clone();
                                raised[i] += 1;
                                let tgt = find(j + 1, &shrunk, &raised);
                                entries.push((src, tgt, coef.scale(&q(sign))));
                            }
                        }
                    }
                }
            }
            if !entries.is_empty() {
                fc.maps.insert(place(j), entries);
            }
        }
        fc
    }
}

/// Homology of `Sym_base([sym -> wedge][1])`, assembled from its pieces `Sym^p`.
pub fn sym_two_term_prediction(
    base: &QuotientRing,
    data: &TwoTermComplex,
    window: Window,
) -> Result<BigradedDimsTable, LinalgError> {
    assert_eq!(data.direction, Direction::SymToWedge);
    let rank = base.ring().torus_rank();
    let mut table = BigradedDimsTable::zeros(window);
    let kmax = window.homological;
    for p in 0..=kmax {
        let piece = data.piece(p, rank);
        // Degrees -(p + j) for j = 0..=p; only those inside the window matter.
        let lo = -((2 * p).min(kmax) as i64);
        let hi = -(p as i64);
        if lo > hi {
            continue;
        }
        for d in 0..=window.internal {
            let h = piece.cohomology(base, lo..=hi, d, None)?;
            for (c, v) in h {
                table.add(c, d, v);
            }
        }
    }
    Ok(table)
}

/// The graded pieces of `∧^k` of a free module of the given generator degrees over a base
/// with known Hilbert series, for internal degrees `0..=internal`.
pub fn wedge_hilbert_function(base_series: &PoincareSeries, generator_degrees: &[i64], k: usize, internal: i64) -> Vec<usize> {
    let hf = base_series.truncate(internal.max(0) as usize);
    let mut out = vec![0usize; internal.max(0) as usize + 1];
    for s in subsets(generator_degrees.len(), k) {
        let shift: i64 = s.iter().map(|&i| generator_degrees[i]).sum();
        for d in 0..=internal {
            let e = d - shift;
            if e >= 0 {
                out[d as usize] += hf[e as usize] as usize;
            }
        }
    }
    out
}
