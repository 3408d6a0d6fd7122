use std::collections::BTreeMap;

use super::poly::{binomial_series, Poly};
use super::quotient::FiniteQuotient;
use crate::arrangement::CategoryODatum;
use crate::error::{Error, Result};
use crate::linalg::{quotient_coordinates, Rational};

/// Exact arithmetic in `Q[Z^n / g_Z]`. Classes are written in coordinates of
/// `Z^d` through the projection `p` (d x n), so `m_i` is column `i` of `p`.
#[derive(Clone, Debug)]
pub struct LatticeGroupAlgebra {
    pub n: usize,
    pub rank: usize,
    /// Row `j` holds the j-th coordinate of the classes of `e_1..e_n`.
    pub projection: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentElement {
    pub terms: BTreeMap<Vec<i64>, Rational>,
}

impl LatticeGroupAlgebra {
    pub fn new(datum: &CategoryODatum) -> Self {
        let n = datum.n;
        if datum.g_rank() == 0 {
            let projection = (0..n).map(|j| (0..n).map(|i| (i == j) as i64).collect()).collect();
            return LatticeGroupAlgebra { n, rank: n, projection };
        }
        let (p, _) = quotient_coordinates(&datum.g_basis).expect("saturated lattice");
        let projection: Vec<Vec<i64>> = (0..p.rows())
            .map(|j| (0..n).map(|i| i64::try_from(p.get(j, i)).expect("small coordinates")).collect())
            .collect();
        LatticeGroupAlgebra { n, rank: projection.len(), projection }
    }

    pub fn class_of(&self, v: &[i64]) -> Vec<i64> {
        self.projection.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn one(&self) -> LaurentElement {
        LaurentElement::monomial(vec![0; self.rank], Rational::one())
    }

    /// The class `m_i` of the i-th basis vector.
    pub fn m(&self, i: usize) -> LaurentElement {
        let mut e = vec![0; self.n];
        e[i] = 1;
        LaurentElement::monomial(self.class_of(&e), Rational::one())
    }

    /// `1 - m_i`.
    pub fn one_minus_m(&self, i: usize) -> LaurentElement {
        self.one().sub(&self.m(i))
    }

    /// Image in the local chart `z_j = 1 + w_j`, truncated below `bound`.
    pub fn to_local(&self, x: &LaurentElement, bound: usize) -> Poly {
        let mut out = Poly::zero(self.rank);
        for (exp, c) in &x.terms {
            let mut t = Poly::constant(self.rank, c.clone()).truncate(Some(bound));
            for (j, &e) in exp.iter().enumerate() {
                t = t.mul_trunc(&chart_power(self.rank, j, e, bound), Some(bound));
            }
            out = out.add(&t);
        }
        out
    }
}

/// `(1 + w_j)^e` truncated below `bound`.
fn chart_power(nvars: usize, j: usize, e: i64, bound: usize) -> Poly {
    let mut p = Poly::zero(nvars);
    for (k, c) in binomial_series(e, bound).into_iter().enumerate() {
        let mut m = vec![0; nvars];
        m[j] = k as u32;
        p.add_term(m, c);
    }
    p
}

impl LaurentElement {
    pub fn monomial(exp: Vec<i64>, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentElement { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &other.terms {
            *out.terms.entry(k.clone()).or_insert_with(Rational::zero) += v;
        }
        out.terms.retain(|_, v| !v.is_zero());
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Rational::from(-1)))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = LaurentElement { terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect() };
        out.terms.retain(|_, v| !v.is_zero());
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = LaurentElement::default();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let k: Vec<i64> = a.iter().zip(b).map(|(p, q)| p + q).collect();
                *out.terms.entry(k).or_insert_with(Rational::zero) += x * y;
            }
        }
        out.terms.retain(|_, v| !v.is_zero());
        out
    }
}

/// The local ring of `Q[Z^n / g_Z]` at the identity. Computations happen in the
/// chart `w_j = z_j - 1` on the quotient torus; the presentation in the variables
/// `y_i = m_i - 1` is available through [`LocalBettiRing::relations_y`].
#[derive(Clone, Debug)]
pub struct LocalBettiRing {
    pub group: LatticeGroupAlgebra,
    g_rows: Vec<Vec<i64>>,
}

impl LocalBettiRing {
    pub fn new(datum: &CategoryODatum) -> Self {
        let g_rows = datum
            .g_basis
            .row_vecs()
            .into_iter()
            .map(|r| r.iter().map(|x| i64::try_from(x).expect("small entries")).collect())
            .collect();
        LocalBettiRing { group: LatticeGroupAlgebra::new(datum), g_rows }
    }

    pub fn n(&self) -> usize {
        self.group.n
    }

    /// Number of chart variables.
    pub fn nvars(&self) -> usize {
        self.group.rank
    }

    /// `y_i = m_i - 1` in the chart, truncated below `bound`.
    pub fn y(&self, i: usize, bound: usize) -> Poly {
        let m = self.group.m(i);
        self.group.to_local(&m.sub(&self.group.one()), bound)
    }

    /// Chart images of `y_1..y_n`.
    pub fn y_images(&self, bound: usize) -> Vec<Poly> {
        (0..self.n()).map(|i| self.y(i, bound)).collect()
    }

    /// `prod_i (1 - m_i)^{e_i}` in the chart.
    pub fn one_minus_m_monomial(&self, exps: &[u8], bound: usize) -> Poly {
        let mut p = Poly::one(self.nvars()).truncate(Some(bound));
        for (i, &e) in exps.iter().enumerate() {
            if e > 0 {
                p = p.mul_trunc(&self.y(i, bound).neg().pow_trunc(e as u32, Some(bound)), Some(bound));
            }
        }
        p
    }

    /// Lattice relations `prod_{a_i>0} (1+y_i)^{a_i} - prod_{a_i<0} (1+y_i)^{-a_i}`
    /// in the variables `y_1..y_n`, one per basis vector of `g_Z`.
    pub fn relations_y(&self) -> Vec<Poly> {
        let n = self.n();
        self.g_rows
            .iter()
            .map(|a| {
                let mut pos = Poly::one(n);
                let mut neg = Poly::one(n);
                for (i, &ai) in a.iter().enumerate() {
                    let base = Poly::one(n).add(&Poly::var(n, i));
                    if ai > 0 {
                        pos = pos.mul(&base.pow_trunc(ai as u32, None));
                    } else if ai < 0 {
                        neg = neg.mul(&base.pow_trunc((-ai) as u32, None));
                    }
                }
                pos.sub(&neg)
            })
            .collect()
    }
}

/// A local quotient with the truncation order at which its dimension stabilized.
#[derive(Clone, Debug)]
pub struct LocalQuotient {
    pub quotient: FiniteQuotient,
    /// Dimensions at truncation orders `bound` and `bound + 1` agree.
    pub certificate: usize,
}

/// Dimension of the local ring modulo `generators` (polynomials in `y_1..y_n`),
/// found by raising the adic truncation order until two consecutive orders agree.
pub fn betti_local_quotient_basis(ring: &LocalBettiRing, generators: &[Poly], cap: usize) -> Result<LocalQuotient> {
    let build = |bound: usize| {
        let ys = ring.y_images(bound);
        let gens: Vec<Poly> = generators.iter().map(|g| g.substitute(&ys, Some(bound))).collect();
        FiniteQuotient::new(ring.nvars(), &gens, bound)
    };
    chart_stabilize(build, cap)
}

/// Same as [`betti_local_quotient_basis`] with generators already in the chart.
pub fn betti_local_quotient_chart(ring: &LocalBettiRing, generators: impl Fn(usize) -> Vec<Poly>, cap: usize) -> Result<LocalQuotient> {
    chart_stabilize(|bound| FiniteQuotient::new(ring.nvars(), &generators(bound), bound), cap)
}

fn chart_stabilize(build: impl Fn(usize) -> FiniteQuotient, cap: usize) -> Result<LocalQuotient> {
    let mut prev = build(1);
    for bound in 2..=cap.max(2) {
        let next = build(bound);
        if next.dim() == prev.dim() {
            return Ok(LocalQuotient { quotient: prev, certificate: bound - 1 });
        }
        prev = next;
    }
    Err(Error::NoStabilization { cap })
}

/// Dimension of `Q[y] / (relations + generators + <y>^bound)`; the
/// presentation-level counterpart of the chart computation.
pub fn y_presentation_dim(ring: &LocalBettiRing, generators: &[Poly], bound: usize) -> usize {
    let mut gens = ring.relations_y();
    gens.extend(generators.iter().cloned());
    FiniteQuotient::new(ring.n(), &gens, bound).dim()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{ex0, ex1, ex2};

    #[test]
    fn ex1_diagonal_block() {
        let r = LocalBettiRing::new(&ex1());
        let y1y2 = Poly::var(2, 0).mul(&Poly::var(2, 1));
        let q = betti_local_quotient_basis(&r, &[y1y2.clone()], 8).unwrap();
        assert_eq!(q.quotient.dim(), 2);
        assert_eq!(y_presentation_dim(&r, &[y1y2], 6), 2);
    }

    #[test]
    fn ex0_block() {
        let r = LocalBettiRing::new(&ex0());
        let q = betti_local_quotient_basis(&r, &[Poly::var(1, 0)], 4).unwrap();
        assert_eq!(q.quotient.dim(), 1);
        assert!(matches!(betti_local_quotient_basis(&r, &[], 4), Err(Error::NoStabilization { cap: 4 })));
    }

    #[test]
    fn relations_vanish_at_identity() {
        let r = LocalBettiRing::new(&ex2());
        for rel in r.relations_y() {
            assert!(rel.coeff(&[0, 0, 0]).is_zero());
        }
        // the chart images satisfy the relations
        let ys = r.y_images(6);
        for rel in r.relations_y() {
            assert!(rel.substitute(&ys, Some(6)).is_zero());
        }
    }

    #[test]
    fn laurent_arithmetic() {
        let g = LatticeGroupAlgebra::new(&ex1());
        // m_1 m_2 = 1 since (1,1) is in g
        assert_eq!(g.m(0).mul(&g.m(1)), g.one());
        let x = g.one_minus_m(0);
        let local = g.to_local(&x, 4);
        assert_eq!(local.order(), Some(1));
    }
}
