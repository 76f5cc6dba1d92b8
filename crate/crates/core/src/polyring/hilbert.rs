use super::{GroebnerBasis, Monomial, PolyError, PolyRing, Polynomial};
use crate::linalg::PoincareSeries;

/// Hilbert series of `R/I` read off the leading-term ideal of a Gröbner basis of a
/// homogeneous ideal, over the denominator `prod (1 - t^{deg x_i})`.
pub fn hilbert_series(gb: &GroebnerBasis) -> PoincareSeries {
    let ring = gb.ring();
    let num = monomial_numerator(ring, gb.leading_monomials().to_vec());
    PoincareSeries::new(num, ring.degrees().to_vec())
}

fn minimise(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort();
    gens.dedup();
    let keep: Vec<bool> = (0..gens.len())
        .map(|a| !(0..gens.len()).any(|b| b != a && gens[b].divides(&gens[a])))
        .collect();
    gens.into_iter().zip(keep).filter(|(_, k)| *k).map(|(g, _)| g).collect()
}

/// Numerator of the Hilbert series of `R / <gens>` for a monomial ideal.
fn monomial_numerator(ring: &PolyRing, gens: Vec<Monomial>) -> Vec<i64> {
    let gens = minimise(gens);
    if gens.iter().any(Monomial::is_one) {
        return vec![];
    }
    let pairwise_coprime = gens.iter().enumerate().all(|(i, a)| gens[i + 1..].iter().all(|b| a.coprime(b)));
    if pairwise_coprime {
        return gens.iter().fold(vec![1], |acc, m| mul(&acc, &one_minus(ring.degree_of(m) as usize)));
    }
    // N(I) = N(I') - t^{deg m} N(I' : m), with I = I' + <m>.
    let mut rest = gens;
    let m = rest.pop().unwrap();
    let colon: Vec<Monomial> = rest.iter().map(|g| g.gcd(&m).quotient_of(g)).collect();
    let a = monomial_numerator(ring, rest);
    let b = monomial_numerator(ring, colon);
    let shift = ring.degree_of(&m) as usize;
    let mut out = a;
    if out.len() < b.len() + shift {
        out.resize(b.len() + shift, 0);
    }
    for (i, v) in b.iter().enumerate() {
        out[i + shift] -= v;
    }
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

fn one_minus(e: usize) -> Vec<i64> {
    let mut v = vec![0; e + 1];
    v[0] += 1;
    v[e] -= 1;
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Evidence for or against regularity of a homogeneous sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularityCertificate {
    pub regular: bool,
    /// Hilbert numerator of `R / <seq>`.
    pub numerator: Vec<i64>,
    /// `prod (1 - t^{deg g_i})`.
    pub expected: Vec<i64>,
}

/// A homogeneous sequence of positive-degree elements is regular exactly when the
/// Hilbert numerator of the quotient equals `prod (1 - t^{deg g_i})`.
pub fn is_regular_sequence(ring: &PolyRing, seq: &[Polynomial]) -> Result<RegularityCertificate, PolyError> {
    let mut degs = vec![];
    for g in seq {
        if g.is_zero() {
            degs.push(None);
            continue;
        }
        match g.homogeneous_degree(ring) {
            Some(d) => degs.push(Some(d)),
            None => return Err(PolyError::NotHomogeneous(ring.format(g))),
        }
    }
    let gb = GroebnerBasis::buchberger(ring, seq);
    let numerator = hilbert_series(&gb).numerator;
    if degs.iter().any(|d| !matches!(d, Some(e) if *e > 0)) {
        return Ok(RegularityCertificate { regular: false, numerator, expected: vec![] });
    }
    let expected = degs.iter().fold(vec![1], |acc, d| mul(&acc, &one_minus(d.unwrap() as usize)));
    Ok(RegularityCertificate { regular: numerator == expected, numerator, expected })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{parse_polynomial, MonomialOrder};
    use proptest::prelude::*;

    fn polys(r: &PolyRing, src: &[&str]) -> Vec<Polynomial> {
        src.iter().map(|s| parse_polynomial(r, s).unwrap()).collect()
    }

    fn hn(r: &PolyRing, src: &[&str]) -> Vec<i64> {
        hilbert_series(&GroebnerBasis::buchberger(r, &polys(r, src))).numerator
    }

    #[test]
    fn numerators() {
        let r = PolyRing::new(&["x", "y"], MonomialOrder::GRevLex);
        assert_eq!(hn(&r, &[]), vec![1]);
        // (1 - t^2)(1 - t^3) = 1 - t^2 - t^3 + t^5
        assert_eq!(hn(&r, &["x^2", "y^3"]), vec![1, 0, -1, -1, 0, 1]);
        assert_eq!(hn(&r, &["x*y"]), vec![1, 0, -1]);
        assert_eq!(hn(&r, &["1"]), Vec::<i64>::new());
    }

    #[test]
    fn regularity() {
        let r = PolyRing::new(&["x", "y"], MonomialOrder::GRevLex);
        let reg = |s: &[&str]| is_regular_sequence(&r, &polys(&r, s)).unwrap().regular;
        assert!(reg(&["x", "y"]));
        assert!(!reg(&["x", "x*y"]));
        assert!(reg(&["x + y", "x - y"]));
        assert!(!reg(&["x", "0"]));
        assert!(is_regular_sequence(&r, &polys(&r, &["x + y^2"])).is_err());
    }

    /// Oracle: count standard monomials of R / <monomials> by brute force.
    fn brute_hilbert(r: &PolyRing, gens: &[Monomial], upto: i64) -> Vec<i64> {
        (0..=upto)
            .map(|d| r.monomials_of_degree(d).iter().filter(|m| !gens.iter().any(|g| g.divides(m))).count() as i64)
            .collect()
    }

    proptest! {
        #[test]
        fn monomial_numerator_matches_counting(exps in proptest::collection::vec((0u32..3, 0u32..3, 0u32..3), 0..5)) {
            let r = PolyRing::with_degrees(&["x", "y", "z"], &[1, 2, 1], MonomialOrder::GRevLex).unwrap();
            let gens: Vec<Monomial> = exps.iter().map(|&(a, b, c)| Monomial(vec![a, b, c])).collect();
            let series = PoincareSeries::new(monomial_numerator(&r, gens.clone()), r.degrees().to_vec());
            prop_assert_eq!(series.truncate(8), brute_hilbert(&r, &gens, 8));
        }

        #[test]
        fn hilbert_series_is_order_independent(a in -2i64..3, b in -2i64..3, c in -2i64..3) {
            let r = PolyRing::new(&["x", "y", "z"], MonomialOrder::GRevLex);
            let src = format!("x^2 + ({a})*y*z, x*y + ({b})*z^2, y^2 + ({c})*x*z");
            let gens: Vec<Polynomial> = src.split(',').map(|s| parse_polynomial(&r, s).unwrap()).collect();
            let mut series = vec![];
            for order in [MonomialOrder::Lex, MonomialOrder::GrLex, MonomialOrder::GRevLex] {
                let ro = r.with_order(order);
                series.push(hilbert_series(&GroebnerBasis::buchberger(&ro, &gens)).truncate(10));
            }
            prop_assert_eq!(&series[0], &series[1]);
            prop_assert_eq!(&series[1], &series[2]);
        }

        #[test]
        fn regularity_is_permutation_invariant(a in -2i64..3, b in -2i64..3, perm in 0usize..6) {
            let r = PolyRing::new(&["x", "y", "z"], MonomialOrder::GRevLex);
            let src = [format!("x + ({a})*y"), format!("y*z + ({b})*x^2"), "z^2".to_string()];
            let gens: Vec<Polynomial> = src.iter().map(|s| parse_polynomial(&r, s).unwrap()).collect();
            let orders = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
            let permuted: Vec<Polynomial> = orders[perm].iter().map(|&i| gens[i].clone()).collect();
            prop_assert_eq!(
                is_regular_sequence(&r, &gens).unwrap().regular,
                is_regular_sequence(&r, &permuted).unwrap().regular
            );
        }
    }
}
