use std::collections::HashMap;

use super::poly::{monomial_degree, monomials_of_degree, Monomial, Poly};
use crate::linalg::{EchelonBasis, Rational};

/// A finite-dimensional quotient `Q[x_1..x_k] / (I + <x>^bound)` with a fixed
/// monomial basis. Higher-degree monomials are preferred as pivots, so the
/// basis consists of monomials of lowest possible degree.
#[derive(Clone, Debug)]
pub struct FiniteQuotient {
    nvars: usize,
    bound: usize,
    columns: Vec<Monomial>,
    column_of: HashMap<Monomial, usize>,
    ideal: EchelonBasis,
    /// Basis monomials as columns, sorted by (degree, monomial).
    basis: Vec<usize>,
    basis_of: HashMap<usize, usize>,
}

impl FiniteQuotient {
    pub fn new(nvars: usize, generators: &[Poly], bound: usize) -> Self {
        let mut columns = Vec::new();
        for deg in (0..bound).rev() {
            columns.extend(monomials_of_degree(nvars, deg));
        }
        let column_of: HashMap<Monomial, usize> = columns.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut ideal = EchelonBasis::new(columns.len());
        'gens: for g in generators {
            let g = g.truncate(Some(bound));
            let Some(ord) = g.order() else { continue };
            for deg in 0..bound.saturating_sub(ord) {
                for mu in monomials_of_degree(nvars, deg) {
                    if ideal.is_full() {
                        break 'gens;
                    }
                    let prod = g.mul_trunc(&Poly::monomial(mu, Rational::one()), Some(bound));
                    let sparse: Vec<(usize, Rational)> = prod.terms().map(|(m, c)| (column_of[m], c.clone())).collect();
                    ideal.insert_sparse(&sparse);
                }
            }
        }
        let mut basis = ideal.free_columns();
        basis.sort_by(|a, b| monomial_degree(&columns[*a]).cmp(&monomial_degree(&columns[*b])).then(columns[*b].cmp(&columns[*a])));
        let basis_of = basis.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        FiniteQuotient { nvars, bound, columns, column_of, ideal, basis, basis_of }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_monomials(&self) -> Vec<Monomial> {
        self.basis.iter().map(|&c| self.columns[c].clone()).collect()
    }

    pub fn basis_degrees(&self) -> Vec<usize> {
        self.basis.iter().map(|&c| monomial_degree(&self.columns[c])).collect()
    }

    /// Number of basis monomials of each polynomial degree.
    pub fn hilbert(&self) -> Vec<usize> {
        let mut h = Vec::new();
        for d in self.basis_degrees() {
            if h.len() <= d {
                h.resize(d + 1, 0);
            }
            h[d] += 1;
        }
        h
    }

    /// Coordinates of the class of `p` in the monomial basis.
    pub fn normal_form(&self, p: &Poly) -> Vec<Rational> {
        let sparse: Vec<(usize, Rational)> =
            p.terms().filter(|(m, _)| monomial_degree(m) < self.bound).map(|(m, c)| (self.column_of[m], c.clone())).collect();
        if self.basis.is_empty() {
            return Vec::new();
        }
        let full = self.ideal.reduce_sparse(&sparse);
        self.basis.iter().map(|&c| full[c].clone()).collect()
    }

    pub fn contains(&self, p: &Poly) -> bool {
        self.normal_form(p).iter().all(Rational::is_zero)
    }

    /// The polynomial `sum_i v_i b_i` over the basis monomials.
    pub fn lift(&self, v: &[Rational]) -> Poly {
        let mut p = Poly::zero(self.nvars);
        for (i, c) in v.iter().enumerate() {
            p.add_term(self.columns[self.basis[i]].clone(), c.clone());
        }
        p
    }

    pub fn basis_poly(&self, i: usize) -> Poly {
        Poly::monomial(self.columns[self.basis[i]].clone(), Rational::one())
    }

    /// Index of a basis monomial.
    pub fn basis_index(&self, m: &[u32]) -> Option<usize> {
        self.column_of.get(m).and_then(|c| self.basis_of.get(c)).copied()
    }

    /// Normal form of `p * q`.
    pub fn mul_poly(&self, p: &Poly, q: &Poly) -> Vec<Rational> {
        self.normal_form(&p.mul_trunc(q, Some(self.bound)))
    }

    pub fn mul(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        self.mul_poly(&self.lift(a), &self.lift(b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubic_truncation() {
        let x = Poly::var(1, 0);
        let q = FiniteQuotient::new(1, &[x.pow_trunc(3, None)], 5);
        assert_eq!(q.dim(), 3);
        assert_eq!(q.hilbert(), vec![1, 1, 1]);
        assert_eq!(q.basis_monomials(), vec![vec![0], vec![1], vec![2]]);
        let x2 = q.mul_poly(&x, &x);
        assert_eq!(x2, vec![Rational::zero(), Rational::zero(), Rational::one()]);
        assert!(q.contains(&x.pow_trunc(4, None)));
    }

    #[test]
    fn nonhomogeneous_generator() {
        // x - x^2 is x times a unit, so the local quotient is Q[x]/(x)
        let x = Poly::var(1, 0);
        let g = x.sub(&x.mul(&x));
        let q = FiniteQuotient::new(1, &[g], 6);
        assert_eq!(q.dim(), 1);
    }

    #[test]
    fn unit_ideal() {
        let q = FiniteQuotient::new(2, &[Poly::one(2)], 3);
        assert_eq!(q.dim(), 0);
    }
}
