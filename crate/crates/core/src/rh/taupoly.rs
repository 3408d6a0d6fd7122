use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use crate::coeffring::{monomial_degree, Monomial, Poly};
use crate::linalg::{Rational, TauScalar};

/// Polynomial with coefficients in `Q[tau, tau^-1]`.
#[derive(Clone, PartialEq, Eq)]
pub struct TauPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, TauScalar>,
}

impl TauPoly {
    pub fn zero(nvars: usize) -> Self {
        TauPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: TauScalar) -> Self {
        let mut p = TauPoly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        TauPoly::constant(nvars, TauScalar::one())
    }

    pub fn from_poly(p: &Poly) -> Self {
        let mut out = TauPoly::zero(p.nvars());
        for (m, c) in p.terms() {
            out.add_term(m.clone(), TauScalar::constant(c.clone()));
        }
        out
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &TauScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &[u32]) -> TauScalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: Monomial, c: TauScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &TauPoly) -> TauPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &TauPoly) -> TauPoly {
        self.add(&other.scale(&TauScalar::constant(Rational::from(-1))))
    }

    pub fn scale(&self, c: &TauScalar) -> TauPoly {
        let mut out = TauPoly::zero(self.nvars);
        for (m, x) in &self.terms {
            out.add_term(m.clone(), x * c);
        }
        out
    }

    /// Product with terms of degree `>= bound` dropped.
    pub fn mul_trunc(&self, other: &TauPoly, bound: usize) -> TauPoly {
        let mut out = TauPoly::zero(self.nvars);
        for (a, x) in &self.terms {
            let da = monomial_degree(a);
            for (b, y) in &other.terms {
                if da + monomial_degree(b) >= bound {
                    continue;
                }
                out.add_term(a.iter().zip(b).map(|(p, q)| p + q).collect(), x * y);
            }
        }
        out
    }

    pub fn pow_trunc(&self, e: u32, bound: usize) -> TauPoly {
        let mut out = TauPoly::one(self.nvars).truncate(bound);
        for _ in 0..e {
            out = out.mul_trunc(self, bound);
        }
        out
    }

    pub fn truncate(&self, bound: usize) -> TauPoly {
        TauPoly {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(m, _)| monomial_degree(m) < bound).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// `sum_n coeffs[n] * self^n`; `self` must have no constant term.
    pub fn compose_series(&self, coeffs: &[TauScalar], bound: usize) -> TauPoly {
        debug_assert!(self.coeff(&vec![0; self.nvars]).is_zero());
        let mut out = TauPoly::zero(self.nvars);
        let mut power = TauPoly::one(self.nvars);
        for c in coeffs.iter().take(bound + 1) {
            out = out.add(&power.scale(c));
            power = power.mul_trunc(self, bound);
        }
        out.truncate(bound)
    }

    /// Inverse of `c (1 + u)` with `c` a unit and `u` without constant term,
    /// by the Neumann series.
    pub fn inverse(&self, bound: usize) -> Option<TauPoly> {
        let c = self.coeff(&vec![0; self.nvars]);
        let cinv = c.inverse()?;
        let u = self.scale(&cinv).sub(&TauPoly::one(self.nvars));
        let alternating: Vec<TauScalar> =
            (0..=bound).map(|n| TauScalar::constant(Rational::from(if n % 2 == 0 { 1 } else { -1 }))).collect();
        Some(u.compose_series(&alternating, bound).scale(&cinv))
    }

    /// Substitutes `images[i]` for the i-th variable.
    pub fn substitute(&self, images: &[TauPoly], bound: usize) -> TauPoly {
        assert_eq!(images.len(), self.nvars);
        let target = images.first().map_or(0, |p| p.nvars);
        let mut out = TauPoly::zero(target);
        for (m, c) in &self.terms {
            let mut t = TauPoly::constant(target, c.clone()).truncate(bound);
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    t = t.mul_trunc(&images[i].pow_trunc(e, bound), bound);
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// The rational polynomial multiplying `tau^e`.
    pub fn tau_component(&self, e: i64) -> Poly {
        let mut p = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            p.add_term(m.clone(), c.coeff(e));
        }
        p
    }

    /// Exponents of `tau` that occur.
    pub fn tau_exponents(&self) -> Vec<i64> {
        let mut es: Vec<i64> = self.terms.values().flat_map(|c| c.terms().map(|(e, _)| e).collect::<Vec<_>>()).collect();
        es.sort_unstable();
        es.dedup();
        es
    }
}

impl fmt::Display for TauPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let vars: Vec<String> = m
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| if e == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, e) })
                    .collect();
                if vars.is_empty() {
                    format!("[{c}]")
                } else {
                    format!("[{c}]*{}", vars.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for TauPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Exact determinant over `Q[tau, tau^-1]` by evaluation at integer points and
/// interpolation.
pub fn laurent_det(m: &[Vec<TauScalar>]) -> TauScalar {
    let n = m.len();
    if n == 0 {
        return TauScalar::one();
    }
    let mut shift = 0i64;
    let mut degree = 0i64;
    let mut rows: Vec<Vec<TauScalar>> = Vec::with_capacity(n);
    for row in m {
        let es: Vec<i64> = row.iter().flat_map(|c| c.terms().map(|(e, _)| e).collect::<Vec<_>>()).collect();
        let (Some(&lo), Some(&hi)) = (es.iter().min(), es.iter().max()) else {
            return TauScalar::zero();
        };
        shift += lo;
        degree += hi - lo;
        rows.push(row.iter().map(|c| c.shift(-lo)).collect());
    }
    let points: Vec<Rational> = (1..=degree + 1).map(Rational::from).collect();
    let values: Vec<Rational> = points
        .iter()
        .map(|x| {
            let mat = crate::linalg::RatMatrix::from_fn(n, n, |i, j| eval(&rows[i][j], x));
            mat.det()
        })
        .collect();
    let coeffs = interpolate(&points, &values);
    let mut out = TauScalar::zero();
    for (e, c) in coeffs.into_iter().enumerate() {
        out = &out + &TauScalar::monomial(c, e as i64 + shift);
    }
    out
}

fn eval(c: &TauScalar, x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for (e, a) in c.terms() {
        let mut p = Rational::one();
        for _ in 0..e {
            p *= x;
        }
        acc += a * &p;
    }
    acc
}

/// Coefficients of the polynomial through `(points[i], values[i])` (Newton form).
fn interpolate(points: &[Rational], values: &[Rational]) -> Vec<Rational> {
    let n = points.len();
    let mut dd = values.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&points[i] - &points[i - j]);
        }
    }
    // expand sum dd[j] prod_{i<j} (x - points[i])
    let mut coeffs = vec![Rational::zero(); n];
    let mut basis = vec![Rational::one()];
    for j in 0..n {
        for (k, b) in basis.iter().enumerate() {
            coeffs[k] += &dd[j] * b;
        }
        let mut next = vec![Rational::zero(); basis.len() + 1];
        for (k, b) in basis.iter().enumerate() {
            next[k + 1] += b;
            next[k] -= &points[j] * b;
        }
        basis = next;
    }
    coeffs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(c: i64, e: i64) -> TauScalar {
        TauScalar::monomial(Rational::from(c), e)
    }

    #[test]
    fn determinant_of_laurent_matrix() {
        let m = vec![vec![t(1, 0), t(3, 2)], vec![t(0, 0), t(-2, 1)]];
        assert_eq!(laurent_det(&m), t(-2, 1));
        let m = vec![vec![&t(1, 0) + &t(1, 1), t(1, -1)], vec![t(1, 1), t(1, 0)]];
        // (1 + tau) - 1 = tau
        assert_eq!(laurent_det(&m), t(1, 1));
    }

    #[test]
    fn neumann_inverse() {
        let x = TauPoly::from_poly(&Poly::var(1, 0));
        let p = TauPoly::constant(1, t(-1, 1)).add(&x.scale(&t(3, 2)));
        let inv = p.inverse(5).unwrap();
        assert_eq!(p.mul_trunc(&inv, 5), TauPoly::one(1));
    }
}
