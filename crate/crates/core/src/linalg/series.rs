use std::collections::BTreeMap;
use std::fmt;

/// A rational function `N(t) / prod (1 - t^e)` with integer numerator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoincareSeries {
    /// Numerator coefficients, constant term first.
    pub numerator: Vec<i64>,
    /// Exponents `e` of the denominator factors `(1 - t^e)`, sorted.
    pub denominator: Vec<u32>,
}

impl PoincareSeries {
    pub fn new(numerator: Vec<i64>, mut denominator: Vec<u32>) -> Self {
        assert!(denominator.iter().all(|&e| e > 0), "denominator factors need positive exponents");
        denominator.sort_unstable();
        let mut s = PoincareSeries { numerator, denominator };
        s.trim();
        s
    }

    pub fn polynomial(coeffs: Vec<i64>) -> Self {
        Self::new(coeffs, vec![])
    }

    pub fn one() -> Self {
        Self::polynomial(vec![1])
    }

    pub fn zero() -> Self {
        Self::polynomial(vec![])
    }

    /// `1 / (1 - t^2)^r`, the series of the classifying space of a rank-r torus.
    pub fn torus_classifying(rank: usize) -> Self {
        Self::new(vec![1], vec![2; rank])
    }

    fn trim(&mut self) {
        while self.numerator.last() == Some(&0) {
            self.numerator.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_empty()
    }

    /// Coefficients of `t^0 .. t^n`.
    pub fn truncate(&self, n: usize) -> Vec<i64> {
        series_truncate(&self.numerator, &self.denominator, n)
    }

    fn factor_counts(&self) -> BTreeMap<u32, usize> {
        let mut m = BTreeMap::new();
        for &e in &self.denominator {
            *m.entry(e).or_insert(0) += 1;
        }
        m
    }

    /// Rewrites the numerator over a larger denominator.
    fn lift_to(&self, target: &BTreeMap<u32, usize>) -> Vec<i64> {
        let have = self.factor_counts();
        let mut num = self.numerator.clone();
        for (&e, &k) in target {
            let missing = k - have.get(&e).copied().unwrap_or(0);
            for _ in 0..missing {
                num = poly_mul(&num, &one_minus(e));
            }
        }
        num
    }

    fn common(a: &Self, b: &Self) -> BTreeMap<u32, usize> {
        let mut m = a.factor_counts();
        for (e, k) in b.factor_counts() {
            let slot = m.entry(e).or_insert(0);
            *slot = (*slot).max(k);
        }
        m
    }

    fn from_counts(num: Vec<i64>, counts: &BTreeMap<u32, usize>) -> Self {
        let den = counts.iter().flat_map(|(&e, &k)| std::iter::repeat_n(e, k)).collect();
        Self::new(num, den).reduced()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let c = Self::common(self, rhs);
        Self::from_counts(poly_add(&self.lift_to(&c), &rhs.lift_to(&c), 1), &c)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let c = Self::common(self, rhs);
        Self::from_counts(poly_add(&self.lift_to(&c), &rhs.lift_to(&c), -1), &c)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut den = self.denominator.clone();
        den.extend(&rhs.denominator);
        Self::new(poly_mul(&self.numerator, &rhs.numerator), den).reduced()
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut num = vec![0; k];
        num.extend(&self.numerator);
        Self::new(num, self.denominator.clone())
    }

    /// Cancels denominator factors that divide the numerator exactly.
    pub fn reduced(mut self) -> Self {
        if self.is_zero() {
            self.denominator.clear();
            return self;
        }
        let mut i = 0;
        while i < self.denominator.len() {
            let e = self.denominator[i];
            if let Some(q) = poly_div_exact(&self.numerator, &one_minus(e)) {
                self.numerator = q;
                self.denominator.remove(i);
            } else {
                i += 1;
            }
        }
        self.trim();
        self
    }

    /// Exact equality as rational functions.
    pub fn same_function(&self, rhs: &Self) -> bool {
        self.sub(rhs).is_zero()
    }
}

impl fmt::Display for PoincareSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = format_poly(&self.numerator);
        if self.denominator.is_empty() {
            return write!(f, "{num}");
        }
        let mut den = vec![];
        for (e, k) in self.factor_counts() {
            let base = if e == 1 { "(1-t)".to_string() } else { format!("(1-t^{e})") };
            den.push(if k == 1 { base } else { format!("{base}^{k}") });
        }
        write!(f, "({num})/{}", den.join(""))
    }
}

fn format_poly(p: &[i64]) -> String {
    let mut out = String::new();
    for (i, &c) in p.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let sign = if c < 0 { "-" } else if out.is_empty() { "" } else { "+" };
        let mag = c.unsigned_abs();
        let body = match (i, mag) {
            (0, m) => m.to_string(),
            (1, 1) => "t".to_string(),
            (1, m) => format!("{m}t"),
            (k, 1) => format!("t^{k}"),
            (k, m) => format!("{m}t^{k}"),
        };
        out.push_str(sign);
        out.push_str(&body);
    }
    if out.is_empty() {
        "0".to_string()
    } else {
        out
    }
}

fn one_minus(e: u32) -> Vec<i64> {
    let mut v = vec![0; e as usize + 1];
    v[0] = 1;
    v[e as usize] = -1;
    v
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add(a: &[i64], b: &[i64], sign: i64) -> Vec<i64> {
    let mut out = vec![0i64; a.len().max(b.len())];
    for (i, &x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, &y) in b.iter().enumerate() {
        out[i] += sign * y;
    }
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

/// Quotient `a / b` when `b` (with constant term 1) divides `a`.
fn poly_div_exact(a: &[i64], b: &[i64]) -> Option<Vec<i64>> {
    let mut a = a.to_vec();
    while a.last() == Some(&0) {
        a.pop();
    }
    let db = b.len() - 1;
    if a.len() <= db {
        return if a.is_empty() { Some(vec![]) } else { None };
    }
    let lb = b[db];
    let mut quo = vec![0i64; a.len() - db];
    for i in (0..quo.len()).rev() {
        let c = a[i + db];
        if c % lb != 0 {
            return None;
        }
        let qc = c / lb;
        for (j, &bj) in b.iter().enumerate() {
            a[i + j] -= qc * bj;
        }
        quo[i] = qc;
    }
    if a.iter().all(|&x| x == 0) {
        Some(quo)
    } else {
        None
    }
}

/// First `n + 1` coefficients of `numerator / prod (1 - t^e)`.
pub fn series_truncate(numerator: &[i64], denominator: &[u32], n: usize) -> Vec<i64> {
    let mut c = vec![0i64; n + 1];
    for (i, &v) in numerator.iter().enumerate().take(n + 1) {
        c[i] = v;
    }
    for &e in denominator {
        let e = e as usize;
        for i in e..=n {
            c[i] += c[i - e];
        }
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncation_examples() {
        assert_eq!(series_truncate(&[1], &[2], 6), vec![1, 0, 1, 0, 1, 0, 1]);
        assert_eq!(series_truncate(&[1, 0, 0, 0, -1], &[2], 4), vec![1, 0, 1, 0, 0]);
        assert_eq!(series_truncate(&[1], &[], 3), vec![1, 0, 0, 0]);
    }

    #[test]
    fn arithmetic() {
        let p = PoincareSeries::torus_classifying(1);
        let strata = p.shift(2);
        let residual = p.sub(&strata);
        assert_eq!(residual, PoincareSeries::one());
        let r2 = p.sub(&p.shift(4));
        assert_eq!(r2, PoincareSeries::polynomial(vec![1, 0, 1]));
        assert!(p.add(&p).same_function(&PoincareSeries::new(vec![2], vec![2])));
        assert_eq!(p.mul(&p).truncate(4), vec![1, 0, 2, 0, 3]);
    }

    #[test]
    fn display() {
        assert_eq!(PoincareSeries::torus_classifying(2).to_string(), "(1)/(1-t^2)^2");
        assert_eq!(PoincareSeries::polynomial(vec![1, 0, 1]).to_string(), "1+t^2");
    }
}
