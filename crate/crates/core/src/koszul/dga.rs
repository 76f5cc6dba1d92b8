use super::complex::{FreeComplex, FreeGen};
use crate::polyring::{PolyRing, Polynomial, QuotientRing};
use crate::linalg::q;

/// Exterior generator in homological degree -1 with `d(e) = value`.
#[derive(Clone, Debug, PartialEq)]
pub struct OddGen {
    pub name: String,
    pub degree: i64,
    pub weight: Vec<i64>,
    pub d: Polynomial,
}

/// Polynomial generator in homological degree -2 with `d(eps) = sum_t d[t] * odd_t`.
#[derive(Clone, Debug, PartialEq)]
pub struct EvenGen {
    pub name: String,
    pub degree: i64,
    pub weight: Vec<i64>,
    pub d: Vec<Polynomial>,
}

/// A semi-free graded-commutative dg algebra `R[odd, even]` over a polynomial ring.
#[derive(Clone, Debug, PartialEq)]
pub struct DgPresentation {
    pub ring: PolyRing,
    pub odd: Vec<OddGen>,
    pub even: Vec<EvenGen>,
}

/// Basis word `e_S eps^alpha` of the free module underlying a presentation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    /// Sorted indices of odd generators.
    pub odd: Vec<usize>,
    /// Exponents of even generators.
    pub even: Vec<u32>,
}

impl Word {
    pub fn homological_degree(&self) -> i64 {
        -(self.odd.len() as i64) - 2 * self.even.iter().map(|&e| e as i64).sum::<i64>()
    }
}

/// Exponent vectors of total size `n` over `k` slots, in lexicographic order.
pub(crate) fn compositions(n: u32, k: usize) -> Vec<Vec<u32>> {
    if k == 0 {
        return if n == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = vec![];
    for first in (0..=n).rev() {
        for mut rest in compositions(n - first, k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Subsets of `0..n` of size `k`, lexicographic.
pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = vec![];
    if k <= n {
        go(0, n, k, &mut vec![], &mut out);
    }
    out
}

impl DgPresentation {
    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    /// All words of homological degree `-k`, in canonical order.
    pub fn words(&self, k: usize) -> Vec<Word> {
        let mut out = vec![];
        for j in 0..=k / 2 {
            let odd_count = k - 2 * j;
            if odd_count > self.odd.len() {
                continue;
            }
            for even in compositions(j as u32, self.even.len()) {
                for odd in subsets(self.odd.len(), odd_count) {
                    out.push(Word { odd, even: even.clone() });
                }
            }
        }
        out
    }

    pub fn word_degree(&self, w: &Word) -> i64 {
        w.odd.iter().map(|&i| self.odd[i].degree).sum::<i64>()
            + w.even.iter().zip(&self.even).map(|(&e, g)| e as i64 * g.degree).sum::<i64>()
    }

    pub fn word_weight(&self, w: &Word) -> Vec<i64> {
        let mut out = vec![0; self.ring.torus_rank()];
        for &i in &w.odd {
            for (a, b) in out.iter_mut().zip(&self.odd[i].weight) {
                *a += b;
            }
        }
        for (&e, g) in w.even.iter().zip(&self.even) {
            for (a, b) in out.iter_mut().zip(&g.weight) {
                *a += e as i64 * b;
            }
        }
        out
    }

    pub fn word_label(&self, w: &Word) -> String {
        let mut parts: Vec<String> = w.odd.iter().map(|&i| self.odd[i].name.clone()).collect();
        for (&e, g) in w.even.iter().zip(&self.even) {
            match e {
                0 => {}
                1 => parts.push(g.name.clone()),
                _ => parts.push(format!("{}^{}", g.name, e)),
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("·")
        }
    }

    /// Differential of a basis word as a combination of words with polynomial coefficients.
    pub fn differential(&self, w: &Word) -> Vec<(Word, Polynomial)> {
        let mut out: Vec<(Word, Polynomial)> = vec![];
        let mut push = |word: Word, p: Polynomial| {
            if p.is_zero() {
                return;
            }
            if let Some(slot) = out.iter_mut().find(|(x, _)| *x == word) {
                slot.1 = slot.1.add(&p);
            } else {
                out.push((word, p));
            }
        };
        // Leibniz on the exterior part.
        for (pos, &s) in w.odd.iter().enumerate() {
            let sign = if pos % 2 == 0 { 1 } else { -1 };
            let mut rest = w.odd.clone();
            rest.remove(pos);
            push(Word { odd: rest, even: w.even.clone() }, self.odd[s].d.scale(&q(sign)));
        }
        // Then the polynomial part, past |S| odd factors.
        let outer = if w.odd.len().is_multiple_of(2) { 1 } else { -1 };
        for (j, &a) in w.even.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let mut lowered = w.even.clone();
            lowered[j] -= 1;
            for (t, coef) in self.even[j].d.iter().enumerate() {
                if coef.is_zero() {
                    continue;
                }
                // e_S * e_t: move e_t to its sorted slot from the right end.
                if w.odd.contains(&t) {
                    continue;
                }
                let pos = w.odd.partition_point(|&x| x < t);
                let moves = w.odd.len() - pos;
                let mut odd = w.odd.clone();
                odd.insert(pos, t);
                let sign = outer * if moves.is_multiple_of(2) { 1 } else { -1 } * a as i64;
                push(Word { odd, even: lowered.clone() }, coef.scale(&q(sign)));
            }
        }
        out
    }

    /// The underlying free complex in homological degrees `0..=k_max`
    /// (cohomological `-k_max..=0`).
    pub fn free_complex(&self, k_max: usize) -> FreeComplex {
        let mut fc = FreeComplex::default();
        let mut index: Vec<std::collections::HashMap<Word, usize>> = vec![];
        for k in 0..=k_max {
            let words = self.words(k);
            let gens = words
                .iter()
                .map(|w| FreeGen { label: self.word_label(w), degree: self.word_degree(w), weight: self.word_weight(w) })
                .collect();
            index.push(words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect());
            fc.terms.insert(-(k as i64), gens);
        }
        for k in 1..=k_max {
            let mut entries = vec![];
            for (w, &src) in &index[k] {
                for (target, p) in self.differential(w) {
                    let tgt = index[k - 1][&target];
                    entries.push((src, tgt, p));
                }
            }
            entries.sort_by_key(|a| (a.0, a.1));
            fc.maps.insert(-(k as i64), entries);
        }
        fc
    }

    /// Checks `d∘d = 0` on generators, exactly in `R` or modulo `base`.
    /// Returns the indices of even generators where it fails.
    pub fn square_zero_failures(&self, base: Option<&QuotientRing>) -> Vec<usize> {
        let mut bad = vec![];
        for (j, g) in self.even.iter().enumerate() {
            let mut acc = Polynomial::zero();
            for (t, coef) in g.d.iter().enumerate() {
                acc = acc.add(&coef.mul(&self.odd[t].d));
            }
            let zero = match base {
                Some(b) => b.is_zero(&acc),
                None => acc.is_zero(),
            };
            if !zero {
                bad.push(j);
            }
        }
        bad
    }
}
