//! Exact scalar fields: the rationals and cyclotomic fields.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

/// Rational numbers.
pub type Q = BigRational;

/// Shorthand for an integer rational.
pub fn q(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

/// Arithmetic needed by exact elimination.
pub trait Field: Clone + PartialEq + fmt::Debug {
    fn is_zero(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;
    /// Multiplicative inverse; panics on zero.
    fn inverse(&self) -> Self;
}

impl Field for Q {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Self {
        assert!(!Zero::is_zero(self), "inverse of zero");
        self.recip()
    }
}

/// Integer coefficients of the n-th cyclotomic polynomial, constant term first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    assert!(n >= 1);
    // x^n - 1 divided by every Phi_d with d | n, d < n.
    let mut num: Vec<BigInt> = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = exact_monic_div(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

/// Cached rational coefficients of Phi_n.
fn phi_rational(n: u32) -> Arc<Vec<Q>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<Q>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&n) {
        return v.clone();
    }
    let v: Arc<Vec<Q>> = Arc::new(cyclotomic_polynomial(n).into_iter().map(Q::from_integer).collect());
    cache.lock().unwrap().insert(n, v.clone());
    v
}

fn exact_monic_div(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let da = a.len() - 1;
    let mut quo = vec![BigInt::zero(); da - db + 1];
    for i in (0..=da - db).rev() {
        let c = rem[i + db].clone();
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[i + j] -= &c * bj;
        }
        quo[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quo
}

/// An element of Q(zeta_n), stored as a polynomial in zeta reduced modulo Phi_n.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    n: u32,
    coeffs: Vec<Q>,
}

impl Cyclotomic {
    fn degree_of(n: u32) -> usize {
        phi_rational(n).len() - 1
    }

    pub fn zero(n: u32) -> Self {
        Cyclotomic { n, coeffs: vec![Q::zero(); Self::degree_of(n)] }
    }

    pub fn from_rational(n: u32, v: Q) -> Self {
        let mut z = Self::zero(n);
        z.coeffs[0] = v;
        z
    }

    pub fn one(n: u32) -> Self {
        Self::from_rational(n, Q::one())
    }

    /// zeta_n^k for any integer k.
    pub fn root_power(n: u32, k: i64) -> Self {
        let e = k.rem_euclid(n as i64) as usize;
        let mut raw = vec![Q::zero(); e + 1];
        raw[e] = Q::one();
        Self::reduce(n, raw)
    }

    pub fn order(&self) -> u32 {
        self.n
    }

    pub fn coefficients(&self) -> &[Q] {
        &self.coeffs
    }

    /// The rational value, if the element lies in Q.
    pub fn as_rational(&self) -> Option<Q> {
        if self.coeffs.iter().skip(1).all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn reduce(n: u32, mut raw: Vec<Q>) -> Self {
        let phi = phi_rational(n);
        let d = phi.len() - 1;
        while raw.len() > d {
            let top = raw.pop().unwrap();
            if Zero::is_zero(&top) {
                continue;
            }
            let shift = raw.len() - d;
            for (j, pj) in phi.iter().take(d).enumerate() {
                raw[shift + j] -= &top * pj;
            }
        }
        raw.resize(d, Q::zero());
        Cyclotomic { n, coeffs: raw }
    }

    fn check(&self, rhs: &Self) {
        assert_eq!(self.n, rhs.n, "mixed cyclotomic orders");
    }
}

fn poly_trim(p: &mut Vec<Q>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn poly_divmod(a: &[Q], b: &[Q]) -> (Vec<Q>, Vec<Q>) {
    let mut rem = a.to_vec();
    poly_trim(&mut rem);
    let db = b.len() - 1;
    if rem.len() < b.len() {
        return (vec![], rem);
    }
    let mut quo = vec![Q::zero(); rem.len() - db];
    let lead_inv = b[db].recip();
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = rem.last().unwrap() * &lead_inv;
        for (j, bj) in b.iter().enumerate() {
            rem[shift + j] -= &c * bj;
        }
        quo[shift] = c;
        rem.pop();
        poly_trim(&mut rem);
    }
    (quo, rem)
}

fn poly_mul(a: &[Q], b: &[Q]) -> Vec<Q> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if Zero::is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut out = vec![Q::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    poly_trim(&mut out);
    out
}

impl Field for Cyclotomic {
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self.check(rhs);
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect();
        Cyclotomic { n: self.n, coeffs }
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.check(rhs);
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect();
        Cyclotomic { n: self.n, coeffs }
    }
    fn times(&self, rhs: &Self) -> Self {
        self.check(rhs);
        Self::reduce(self.n, poly_mul(&self.coeffs, &rhs.coeffs))
    }
    fn negated(&self) -> Self {
        Cyclotomic { n: self.n, coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }
    fn inverse(&self) -> Self {
        assert!(!Field::is_zero(self), "inverse of zero");
        // Extended Euclid: s * a + t * phi = 1.
        let phi = phi_rational(self.n).as_ref().clone();
        let mut a = self.coeffs.clone();
        poly_trim(&mut a);
        let (mut r0, mut r1) = (phi, a);
        let (mut s0, mut s1) = (vec![], vec![Q::one()]);
        while !r1.is_empty() {
            let (quo, rem) = poly_divmod(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&quo, &s1));
            r0 = std::mem::replace(&mut r1, rem);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r0 is a nonzero constant since Phi_n is irreducible.
        let c = r0[0].recip();
        let scaled = s0.iter().map(|x| x * &c).collect();
        Self::reduce(self.n, scaled)
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = vec![];
        for (i, c) in self.coeffs.iter().enumerate() {
            if Zero::is_zero(c) {
                continue;
            }
            let body = match i {
                0 => format!("{}", c),
                1 => format!("{}*z", c),
                _ => format!("{}*z^{}", c, i),
            };
            terms.push(body);
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// Render a rational as `p/q`, or `p` when integral.
pub fn format_rational(v: &Q) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        let sign = if v.is_negative() { "-" } else { "" };
        format!("{}{}/{}", sign, v.numer().abs(), v.denom())
    }
}
