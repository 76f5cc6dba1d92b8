//! Linear torus actions: semistable loci, HKKN strata from exact cone projections,
//! equivariant Poincaré series and Atiyah–Bott certificates.

use crate::linalg::{format_rational, q, PoincareSeries, SparseMatrix, Q};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KirwanError {
    #[error("invalid representation: {0}")]
    Invalid(String),
    #[error("certificate failed: normal directions {0:?} pair non-negatively with beta")]
    CertificateFailed(Vec<usize>),
}

/// Weights of a diagonal torus action on `C^N` with a linearization character.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusRepresentation {
    rank: usize,
    weights: Vec<Vec<i64>>,
    chi: Vec<i64>,
    names: Vec<String>,
}

impl TorusRepresentation {
    pub fn new(weights: Vec<Vec<i64>>, chi: Vec<i64>) -> Result<Self, KirwanError> {
        let names = (1..=weights.len()).map(|i| format!("z_{i}")).collect();
        Self::with_names(weights, chi, names)
    }

    pub fn with_names(weights: Vec<Vec<i64>>, chi: Vec<i64>, names: Vec<String>) -> Result<Self, KirwanError> {
        let rank = chi.len();
        if rank == 0 {
            return Err(KirwanError::Invalid("torus rank must be at least 1".into()));
        }
        if weights.is_empty() || weights.len() > 12 {
            return Err(KirwanError::Invalid("between 1 and 12 weights are supported".into()));
        }
        if weights.iter().any(|w| w.len() != rank) {
            return Err(KirwanError::Invalid(format!("every weight needs {rank} components")));
        }
        if names.len() != weights.len() {
            return Err(KirwanError::Invalid("one name per weight".into()));
        }
        Ok(TorusRepresentation { rank, weights, chi, names })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn weights(&self) -> &[Vec<i64>] {
        &self.weights
    }

    pub fn chi(&self) -> &[i64] {
        &self.chi
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    fn pairing(&self, i: usize, beta: &[Q]) -> Q {
        dot_int(&self.weights[i], beta)
    }
}

fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

fn dot_int(a: &[i64], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + q(*x) * y)
}

fn subsets_up_to(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    let mut frontier = vec![vec![]];
    for _ in 0..k {
        let mut next = vec![];
        for s in &frontier {
            let start = s.last().map_or(0, |&x: &usize| x + 1);
            for i in start..n {
                let mut t: Vec<usize> = s.clone();
                t.push(i);
                next.push(t);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Nearest point to `target` in `{β : ⟨w, β⟩ ≥ 0 for every w in cone}`.
///
/// Every face is cut out by an independent set of at most `r` active constraints, and
/// the optimum is the orthogonal projection onto the span of its face, so the feasible
/// candidate closest to the target is exact.
pub fn cone_projection(target: &[Q], cone: &[Vec<i64>]) -> Vec<Q> {
    let r = target.len();
    let mut best: Option<(Q, Vec<Q>)> = None;
    for active in subsets_up_to(cone.len(), r) {
        let rows: Vec<Vec<Q>> = active.iter().map(|&i| cone[i].iter().map(|&x| q(x)).collect()).collect();
        if !rows.is_empty() && SparseMatrix::from_dense(rows.clone()).rank() != rows.len() {
            continue;
        }
        // β = t - A^T λ with A A^T λ = A t.
        let gram: Vec<Vec<Q>> = rows.iter().map(|a| rows.iter().map(|b| dot(a, b)).collect()).collect();
        let rhs: Vec<Q> = rows.iter().map(|a| dot(a, target)).collect();
        let lambda = if rows.is_empty() {
            vec![]
        } else {
            SparseMatrix::from_dense(gram).solve(&rhs, &Q::zero()).expect("independent rows give an invertible Gram matrix")
        };
        let mut beta = target.to_vec();
        for (l, a) in lambda.iter().zip(&rows) {
            for (b, x) in beta.iter_mut().zip(a) {
                *b -= l * x;
            }
        }
        if cone.iter().any(|w| dot_int(w, &beta).is_negative()) {
            continue;
        }
        let diff: Vec<Q> = target.iter().zip(&beta).map(|(a, b)| a - b).collect();
        let dist = dot(&diff, &diff);
        if best.as_ref().is_none_or(|(d, _)| dist < *d) {
            best = Some((dist, beta));
        }
    }
    best.expect("the origin is always feasible").1
}

/// `cone_projection(-χ, {w_i : i ∈ support})`; zero exactly on semistable supports.
pub fn optimal_destabilizer(rep: &TorusRepresentation, support: &[usize]) -> Vec<Q> {
    let target: Vec<Q> = rep.chi.iter().map(|&c| q(-c)).collect();
    let cone: Vec<Vec<i64>> = support.iter().map(|&i| rep.weights[i].clone()).collect();
    cone_projection(&target, &cone)
}

fn is_zero_vec(v: &[Q]) -> bool {
    v.iter().all(Zero::is_zero)
}

fn all_supports(n: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n).map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect()).collect()
}

/// Minimal semistable supports and a readable union-of-charts description.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemistableLocus {
    pub minimal_supports: Vec<Vec<usize>>,
    pub description: String,
}

pub fn semistable_locus(rep: &TorusRepresentation) -> SemistableLocus {
    let n = rep.weights.len();
    let semistable: Vec<Vec<usize>> =
        all_supports(n).into_iter().filter(|s| is_zero_vec(&optimal_destabilizer(rep, s))).collect();
    let mut minimal: Vec<Vec<usize>> = semistable
        .iter()
        .filter(|s| !semistable.iter().any(|t| t.len() < s.len() && t.iter().all(|i| s.contains(i))))
        .cloned()
        .collect();
    minimal.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    let description = if minimal.is_empty() {
        "empty".to_string()
    } else if minimal == [Vec::<usize>::new()] {
        "everything".to_string()
    } else {
        minimal
            .iter()
            .map(|s| format!("{{{}}}", s.iter().map(|&i| format!("{} ≠ 0", rep.names[i])).collect::<Vec<_>>().join(", ")))
            .collect::<Vec<_>>()
            .join(" ∪ ")
    };
    SemistableLocus { minimal_supports: minimal, description }
}

/// Scales a nonzero rational vector to its primitive integer representative.
pub fn primitive(beta: &[Q]) -> Vec<i64> {
    let lcm = beta.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = beta.iter().map(|x| (x * Q::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    ints.iter().map(|x| i64::try_from(x / &g).expect("small weights")).collect()
}

/// One HKKN stratum of the unstable locus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HkknStratum {
    pub beta: Vec<Q>,
    pub primitive: Vec<i64>,
    /// Coordinates with `⟨w_i, β⟩ = 0`.
    pub fixed: Vec<usize>,
    /// `#{i : ⟨w_i, β⟩ < 0}`.
    pub codim: usize,
    pub supports: Vec<Vec<usize>>,
}

impl HkknStratum {
    pub fn beta_string(&self) -> String {
        format!("({})", self.beta.iter().map(format_rational).collect::<Vec<_>>().join(","))
    }
}

pub fn hkkn_stratification(rep: &TorusRepresentation) -> Vec<HkknStratum> {
    let mut groups: BTreeMap<Vec<i64>, (Vec<Q>, Vec<Vec<usize>>)> = BTreeMap::new();
    for s in all_supports(rep.weights.len()) {
        let beta = optimal_destabilizer(rep, &s);
        if is_zero_vec(&beta) {
            continue;
        }
        let entry = groups.entry(primitive(&beta)).or_insert_with(|| (beta.clone(), vec![]));
        assert_eq!(entry.0, beta, "destabilizers on one ray must coincide");
        entry.1.push(s);
    }
    let mut strata: Vec<HkknStratum> = groups
        .into_iter()
        .map(|(prim, (beta, supports))| {
            let pairings: Vec<Q> = (0..rep.weights.len()).map(|i| rep.pairing(i, &beta)).collect();
            HkknStratum {
                fixed: (0..pairings.len()).filter(|&i| pairings[i].is_zero()).collect(),
                codim: pairings.iter().filter(|p| p.is_negative()).count(),
                primitive: prim,
                beta,
                supports,
            }
        })
        .collect();
    strata.sort_by(|a, b| (dot(&a.beta, &a.beta), &a.primitive).cmp(&(dot(&b.beta, &b.beta), &b.primitive)));
    strata
}

/// Equivariant series of the points of `C^W` whose optimal destabilizer is `b`.
fn open_piece(rep: &TorusRepresentation, w: &[usize], b: &[Q], depth: usize) -> PoincareSeries {
    assert!(depth <= rep.weights.len() + 1, "stratification recursion does not terminate");
    let full = optimal_destabilizer(rep, w);
    assert_eq!(full, b, "generic point of the fixed locus must have the stratum's destabilizer");
    let mut others: BTreeMap<Vec<i64>, Vec<Q>> = BTreeMap::new();
    for s in all_supports(w.len()) {
        let sub: Vec<usize> = s.iter().map(|&i| w[i]).collect();
        let beta = optimal_destabilizer(rep, &sub);
        if beta != b {
            let key = if is_zero_vec(&beta) { vec![] } else { primitive(&beta) };
            others.insert(key, beta);
        }
    }
    let mut series = PoincareSeries::torus_classifying(rep.rank);
    for beta in others.values() {
        let codim = w.iter().filter(|&&i| rep.pairing(i, beta).is_negative()).count();
        let fixed: Vec<usize> = w.iter().copied().filter(|&i| rep.pairing(i, beta).is_zero()).collect();
        assert!(fixed.len() < w.len(), "a lower stratum must lose a coordinate");
        series = series.sub(&open_piece(rep, &fixed, beta, depth + 1).shift(2 * codim));
    }
    series.reduced()
}

/// `P_G(S_β)`, computed on the β-fixed part of the stratum.
pub fn stratum_poincare_series(rep: &TorusRepresentation, stratum: &HkknStratum) -> PoincareSeries {
    open_piece(rep, &stratum.fixed, &stratum.beta, 0)
}

/// `P_G(M) = P_G(M^ss) + Σ_β t^{2 r_β} P_G(S_β)`, with `P_G(M^ss)` solved for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorseReport {
    pub truncation: usize,
    pub total: Vec<i64>,
    pub strata: Vec<(String, usize, PoincareSeries)>,
    pub residual: PoincareSeries,
    pub residual_coefficients: Vec<i64>,
    /// The semistable piece computed bottom-up from the supports with zero destabilizer.
    pub semistable: PoincareSeries,
}

impl MorseReport {
    pub fn identity_holds(&self) -> bool {
        self.residual_coefficients == self.semistable.truncate(self.truncation)
    }

    pub fn nonnegative(&self) -> bool {
        self.residual_coefficients.iter().all(|&c| c >= 0)
    }

    pub fn matches(&self, known: &PoincareSeries) -> bool {
        self.residual_coefficients == known.truncate(self.truncation)
    }
}

pub fn morse_equality_check(rep: &TorusRepresentation, truncation: usize) -> MorseReport {
    let total = PoincareSeries::torus_classifying(rep.rank);
    let strata: Vec<(String, usize, PoincareSeries)> = hkkn_stratification(rep)
        .iter()
        .map(|s| (s.beta_string(), s.codim, stratum_poincare_series(rep, s)))
        .collect();
    let residual = strata.iter().fold(total.clone(), |acc, (_, r, p)| acc.sub(&p.shift(2 * r))).reduced();
    let all: Vec<usize> = (0..rep.weights.len()).collect();
    let zero = vec![Q::zero(); rep.rank];
    let semistable = if is_zero_vec(&optimal_destabilizer(rep, &all)) {
        open_piece(rep, &all, &zero, 0)
    } else {
        PoincareSeries::zero()
    };
    MorseReport {
        truncation,
        total: total.truncate(truncation),
        residual_coefficients: residual.truncate(truncation),
        strata,
        residual,
        semistable,
    }
}

/// Negativity of the normal weights of a stratum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtiyahBottCertificate {
    pub beta: String,
    pub normal: Vec<(usize, Q)>,
}

impl fmt::Display for AtiyahBottCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.normal.iter().map(|(i, p)| format!("<w_{}, β> = {}", i + 1, format_rational(p))).collect();
        write!(f, "β = {}: {}; Euler class is not a zero divisor", self.beta, parts.join(", "))
    }
}

/// Normal directions are the coordinates no assigned support uses; each must pair
/// strictly negatively with β and there must be exactly `r_β` of them.
pub fn atiyah_bott_certificate(rep: &TorusRepresentation, stratum: &HkknStratum) -> Result<AtiyahBottCertificate, KirwanError> {
    let used: Vec<bool> = (0..rep.weights.len()).map(|i| stratum.supports.iter().any(|s| s.contains(&i))).collect();
    let normal: Vec<(usize, Q)> =
        (0..rep.weights.len()).filter(|&i| !used[i]).map(|i| (i, rep.pairing(i, &stratum.beta))).collect();
    let bad: Vec<usize> = normal.iter().filter(|(_, p)| !p.is_negative()).map(|(i, _)| *i).collect();
    if !bad.is_empty() || normal.len() != stratum.codim {
        let mut all = bad;
        if normal.len() != stratum.codim {
            all.extend((0..rep.weights.len()).filter(|&i| rep.pairing(i, &stratum.beta).is_negative() && used[i]));
        }
        return Err(KirwanError::CertificateFailed(all));
    }
    Ok(AtiyahBottCertificate { beta: stratum.beta_string(), normal })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn qs(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| q(x)).collect()
    }

    fn line() -> TorusRepresentation {
        TorusRepresentation::new(vec![vec![1], vec![-1]], vec![1]).unwrap()
    }

    #[test]
    fn projections() {
        assert_eq!(cone_projection(&qs(&[2, 3]), &[vec![1, 0]]), qs(&[2, 3]));
        assert_eq!(cone_projection(&qs(&[-1]), &[vec![-1]]), qs(&[-1]));
        assert_eq!(cone_projection(&qs(&[-1, -1]), &[vec![1, 0]]), qs(&[0, -1]));
        // Projection onto a ray of the cone {β1 ≥ 0, β2 - β1 ≥ 0}.
        let p = cone_projection(&qs(&[-1, -3]), &[vec![1, 0], vec![-1, 1]]);
        assert_eq!(p, qs(&[0, 0]));
    }

    #[test]
    fn destabilizers() {
        let r = line();
        assert_eq!(optimal_destabilizer(&r, &[0]), qs(&[0]));
        assert_eq!(optimal_destabilizer(&r, &[1]), qs(&[-1]));
        assert_eq!(optimal_destabilizer(&r, &[]), qs(&[-1]));
    }

    #[test]
    fn semistable_loci() {
        assert_eq!(semistable_locus(&line()).description, "{z_1 ≠ 0}");
        let names = ["z_1", "z_2", "w_1", "w_2"].iter().map(|s| s.to_string()).collect();
        let cot = TorusRepresentation::with_names(vec![vec![1], vec![-1], vec![-1], vec![1]], vec![1], names).unwrap();
        assert_eq!(semistable_locus(&cot).description, "{z_1 ≠ 0} ∪ {w_2 ≠ 0}");
        let trivial = TorusRepresentation::new(vec![vec![1], vec![-1]], vec![0]).unwrap();
        assert_eq!(semistable_locus(&trivial).minimal_supports, vec![Vec::<usize>::new()]);
        assert!(hkkn_stratification(&trivial).is_empty());
    }

    #[test]
    fn strata_and_series() {
        let s = hkkn_stratification(&line());
        assert_eq!(s.len(), 1);
        assert_eq!((s[0].beta.clone(), s[0].codim), (qs(&[-1]), 1));
        assert_eq!(s[0].supports, vec![vec![], vec![1]]);
        assert_eq!(stratum_poincare_series(&line(), &s[0]), PoincareSeries::torus_classifying(1));
        let m = morse_equality_check(&line(), 20);
        assert!(m.matches(&PoincareSeries::one()) && m.identity_holds());

        let p1 = TorusRepresentation::new(vec![vec![1], vec![1]], vec![1]).unwrap();
        let s = hkkn_stratification(&p1);
        assert_eq!((s.len(), s[0].codim), (1, 2));
        let m = morse_equality_check(&p1, 20);
        assert!(m.matches(&PoincareSeries::polynomial(vec![1, 0, 1])));

        let plane = TorusRepresentation::new(vec![vec![1, 0], vec![0, 1]], vec![1, 1]).unwrap();
        let s = hkkn_stratification(&plane);
        assert_eq!(s.iter().map(|x| x.codim).collect::<Vec<_>>(), vec![1, 1, 2]);
        let series: Vec<PoincareSeries> = s.iter().map(|x| stratum_poincare_series(&plane, x)).collect();
        assert_eq!(series[0], PoincareSeries::torus_classifying(1));
        assert_eq!(series[2], PoincareSeries::torus_classifying(2));
        let m = morse_equality_check(&plane, 20);
        assert!(m.matches(&PoincareSeries::one()) && m.nonnegative());
        for st in &s {
            assert!(atiyah_bott_certificate(&plane, st).is_ok());
        }
    }

    #[test]
    fn trivial_character_residual() {
        let r = TorusRepresentation::new(vec![vec![1, 0], vec![0, 1]], vec![0, 0]).unwrap();
        let m = morse_equality_check(&r, 10);
        assert!(m.matches(&PoincareSeries::torus_classifying(2)));
    }

    fn rep_strategy() -> impl Strategy<Value = TorusRepresentation> {
        (1usize..=2)
            .prop_flat_map(|r| {
                (
                    proptest::collection::vec(proptest::collection::vec(-2i64..=2, r), 1..=4),
                    proptest::collection::vec(-2i64..=2, r),
                )
            })
            .prop_map(|(w, c)| TorusRepresentation::new(w, c).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn projection_is_optimal(t in proptest::collection::vec(-4i64..=4, 2), cone in proptest::collection::vec(proptest::collection::vec(-2i64..=2, 2), 0..4), probes in proptest::collection::vec(proptest::collection::vec(-3i64..=3, 2), 8)) {
            let t = qs(&t);
            let b = cone_projection(&t, &cone);
            for w in &cone {
                prop_assert!(!dot_int(w, &b).is_negative());
            }
            let diff: Vec<Q> = t.iter().zip(&b).map(|(x, y)| x - y).collect();
            prop_assert!(dot(&diff, &b).is_zero());
            // Variational inequality against sampled cone points.
            for p in probes {
                let x = qs(&p);
                if cone.iter().all(|w| !dot_int(w, &x).is_negative()) {
                    let dx: Vec<Q> = x.iter().zip(&b).map(|(u, v)| u - v).collect();
                    prop_assert!(!dot(&diff, &dx).is_positive());
                }
            }
        }

        #[test]
        fn strata_partition_unstable_supports(rep in rep_strategy()) {
            let strata = hkkn_stratification(&rep);
            let mut seen = vec![];
            for s in &strata {
                prop_assert!(!s.supports.is_empty());
                prop_assert_eq!(s.codim, (0..rep.weights().len()).filter(|&i| rep.pairing(i, &s.beta).is_negative()).count());
                seen.extend(s.supports.iter().cloned());
                prop_assert!(atiyah_bott_certificate(&rep, s).is_ok());
            }
            seen.sort();
            let mut unstable: Vec<Vec<usize>> = all_supports(rep.weights().len())
                .into_iter()
                .filter(|s| !is_zero_vec(&optimal_destabilizer(&rep, s)))
                .collect();
            unstable.sort();
            prop_assert_eq!(seen, unstable);
            let m = morse_equality_check(&rep, 12);
            prop_assert!(m.nonnegative());
            prop_assert!(m.identity_holds());
        }

        #[test]
        fn scaling_chi_preserves_strata(rep in rep_strategy(), k in 2i64..4) {
            let scaled = TorusRepresentation::new(rep.weights().to_vec(), rep.chi().iter().map(|c| c * k).collect()).unwrap();
            prop_assert_eq!(semistable_locus(&rep), semistable_locus(&scaled));
            let a: Vec<_> = hkkn_stratification(&rep).into_iter().map(|s| (s.primitive, s.codim, s.supports)).collect();
            let b: Vec<_> = hkkn_stratification(&scaled).into_iter().map(|s| (s.primitive, s.codim, s.supports)).collect();
            prop_assert_eq!(a, b);
        }
    }
}
