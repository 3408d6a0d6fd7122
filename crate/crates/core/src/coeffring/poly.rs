use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use crate::linalg::Rational;

pub type Monomial = Vec<u32>;

pub fn monomial_degree(m: &[u32]) -> usize {
    m.iter().map(|&e| e as usize).sum()
}

/// All exponent vectors in `nvars` variables of total degree `deg`, in
/// lexicographically decreasing order.
pub fn monomials_of_degree(nvars: usize, deg: usize) -> Vec<Monomial> {
    fn rec(i: usize, left: usize, cur: &mut Monomial, out: &mut Vec<Monomial>) {
        if i + 1 == cur.len() {
            cur[i] = left as u32;
            out.push(cur.clone());
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e as u32;
            rec(i + 1, left - e, cur, out);
        }
    }
    if nvars == 0 {
        return if deg == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    rec(0, deg, &mut vec![0; nvars], &mut out);
    out
}

/// Sparse polynomial with rational coefficients in a fixed number of variables.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Poly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, Rational::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = vec![0; nvars];
        m[i] = 1;
        Poly::monomial(m, Rational::one())
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut p = Poly::zero(m.len());
        p.add_term(m, c);
        p
    }

    /// `sum_i coeffs[i] x_i`.
    pub fn linear(coeffs: &[Rational]) -> Self {
        let n = coeffs.len();
        let mut p = Poly::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            let mut m = vec![0; n];
            m[i] = 1;
            p.add_term(m, c.clone());
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &[u32]) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        debug_assert_eq!(m.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Largest total degree of a term; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| monomial_degree(m)).max()
    }

    /// Smallest total degree of a term; `None` for zero.
    pub fn order(&self) -> Option<usize> {
        self.terms.keys().map(|m| monomial_degree(m)).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree() == self.order()
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> Poly {
        self.scale(&Rational::from(-1))
    }

    /// Product with all terms of degree `>= bound` dropped (no truncation if `None`).
    pub fn mul_trunc(&self, other: &Poly, bound: Option<usize>) -> Poly {
        assert_eq!(self.nvars, other.nvars);
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (a, x) in &self.terms {
            let da = monomial_degree(a);
            for (b, y) in &other.terms {
                if bound.is_some_and(|n| da + monomial_degree(b) >= n) {
                    continue;
                }
                let m: Monomial = a.iter().zip(b).map(|(p, q)| p + q).collect();
                *acc.entry(m).or_insert_with(Rational::zero) += x * y;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Poly { nvars: self.nvars, terms: acc }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.mul_trunc(other, None)
    }

    pub fn pow_trunc(&self, e: u32, bound: Option<usize>) -> Poly {
        let mut out = Poly::one(self.nvars).truncate(bound);
        for _ in 0..e {
            out = out.mul_trunc(self, bound);
        }
        out
    }

    pub fn truncate(&self, bound: Option<usize>) -> Poly {
        match bound {
            None => self.clone(),
            Some(n) => Poly {
                nvars: self.nvars,
                terms: self.terms.iter().filter(|(m, _)| monomial_degree(m) < n).map(|(m, c)| (m.clone(), c.clone())).collect(),
            },
        }
    }

    /// Substitutes `images[i]` for the i-th variable, truncating below `bound`.
    pub fn substitute(&self, images: &[Poly], bound: Option<usize>) -> Poly {
        assert_eq!(images.len(), self.nvars);
        let target = images.first().map_or(0, |p| p.nvars);
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone()).truncate(bound);
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    t = t.mul_trunc(&images[i].pow_trunc(e, bound), bound);
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// Part of total degree exactly `deg`.
    pub fn homogeneous_part(&self, deg: usize) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(m, _)| monomial_degree(m) == deg).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let vars: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, e) })
                .collect();
            if vars.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{c}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Generalized binomial series `(1 + x)^e` truncated below `bound`, as coefficients.
pub fn binomial_series(e: i64, bound: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(bound);
    let mut c = Rational::one();
    for k in 0..bound {
        out.push(c.clone());
        c = &c * &Rational::from(e - k as i64) / Rational::from(k as i64 + 1);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_enumeration() {
        assert_eq!(monomials_of_degree(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(monomials_of_degree(3, 3).len(), 10);
        assert_eq!(monomials_of_degree(0, 0), vec![Vec::<u32>::new()]);
        assert!(monomials_of_degree(0, 1).is_empty());
    }

    #[test]
    fn arithmetic() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let s = x.add(&y);
        let sq = s.mul(&s);
        assert_eq!(sq.coeff(&[1, 1]), Rational::from(2));
        assert_eq!(sq.truncate(Some(2)), Poly::zero(2));
        assert!(sq.is_homogeneous());
        assert!(s.sub(&s).is_zero());
        let sub = sq.substitute(&[Poly::var(1, 0), Poly::var(1, 0).neg()], None);
        assert!(sub.is_zero());
    }

    #[test]
    fn binomial() {
        let s = binomial_series(-1, 4);
        let v: Vec<i64> = s.iter().map(|x| x.to_i64().unwrap()).collect();
        assert_eq!(v, vec![1, -1, 1, -1]);
        let s = binomial_series(2, 4);
        let v: Vec<i64> = s.iter().map(|x| x.to_i64().unwrap()).collect();
        assert_eq!(v, vec![1, 2, 1, 0]);
    }
}
