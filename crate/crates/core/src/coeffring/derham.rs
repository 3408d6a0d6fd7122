use super::poly::{monomials_of_degree, Poly};
use super::quotient::FiniteQuotient;
use crate::arrangement::CategoryODatum;
use crate::error::{Error, Result};
use crate::linalg::{rref, EchelonBasis, RatMatrix, Rational};

/// `Q[d_1..d_n]` modulo the linear forms coming from `g`, presented as a
/// polynomial ring in the free variables of the row-reduced relations.
/// Each `d_i` has cohomological degree 2.
#[derive(Clone, Debug)]
pub struct DeRhamRing {
    pub n: usize,
    /// Indices `i` whose `d_i` survive as ring variables.
    pub free: Vec<usize>,
    /// `dbar[i]` is the image of `d_i`, a linear form in the free variables.
    dbar: Vec<Poly>,
}

impl DeRhamRing {
    pub fn new(datum: &CategoryODatum) -> Self {
        let n = datum.n;
        let g = RatMatrix::from_int(&datum.g_basis);
        let (r, pivots, rk) = if g.rows() == 0 { (g.clone(), Vec::new(), 0) } else { rref(&g) };
        let pivots = &pivots[..rk];
        let free: Vec<usize> = (0..n).filter(|i| !pivots.contains(i)).collect();
        let f = free.len();
        let mut dbar = vec![Poly::zero(f); n];
        for (j, &i) in free.iter().enumerate() {
            dbar[i] = Poly::var(f, j);
        }
        for (row, &p) in pivots.iter().enumerate() {
            let coeffs: Vec<Rational> = free.iter().map(|&j| -r.get(row, j)).collect();
            dbar[p] = Poly::linear(&coeffs);
        }
        DeRhamRing { n, free, dbar }
    }

    pub fn nvars(&self) -> usize {
        self.free.len()
    }

    pub fn dbar(&self, i: usize) -> &Poly {
        &self.dbar[i]
    }

    /// `prod_i dbar_i^{e_i}`.
    pub fn dbar_monomial(&self, exps: &[u8]) -> Poly {
        let mut p = Poly::one(self.nvars());
        for (i, &e) in exps.iter().enumerate() {
            if e > 0 {
                p = p.mul(&self.dbar[i].pow_trunc(e as u32, None));
            }
        }
        p
    }
}

/// Normal form of a polynomial in `d_1..d_n` in the free variables.
pub fn dr_reduce(ring: &DeRhamRing, p: &Poly) -> Poly {
    p.substitute(&ring.dbar, None)
}

/// Computes `R / (generators)` degree by degree and stops at the first degree
/// whose graded piece vanishes. Generators must be homogeneous.
pub fn finite_quotient_basis(ring: &DeRhamRing, generators: &[Poly], cap: usize) -> Result<FiniteQuotient> {
    let nv = ring.nvars();
    let gens: Vec<&Poly> = generators.iter().filter(|g| !g.is_zero()).collect();
    debug_assert!(gens.iter().all(|g| g.is_homogeneous()));
    let mut top = None;
    for deg in 0..=cap {
        let monos = monomials_of_degree(nv, deg);
        if monos.is_empty() {
            top = Some(deg);
            break;
        }
        let index: std::collections::HashMap<&Vec<u32>, usize> = monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut ech = EchelonBasis::new(monos.len());
        'fill: for g in &gens {
            let gd = g.degree().unwrap();
            if gd > deg {
                continue;
            }
            for mu in monomials_of_degree(nv, deg - gd) {
                if ech.is_full() {
                    break 'fill;
                }
                let prod = g.mul(&Poly::monomial(mu, Rational::one()));
                let sparse: Vec<(usize, Rational)> = prod.terms().map(|(m, c)| (index[m], c.clone())).collect();
                ech.insert_sparse(&sparse);
            }
        }
        if ech.is_full() {
            top = Some(deg);
            break;
        }
    }
    let bound = top.ok_or(Error::NonTerminating { cap })?;
    let owned: Vec<Poly> = gens.into_iter().cloned().collect();
    Ok(FiniteQuotient::new(nv, &owned, bound))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{ex0, ex1, ex2};

    #[test]
    fn reductions() {
        let r = DeRhamRing::new(&ex1());
        assert_eq!(r.nvars(), 1);
        assert!(dr_reduce(&r, &Poly::var(2, 0).add(&Poly::var(2, 1))).is_zero());
        let r = DeRhamRing::new(&ex2());
        assert_eq!(r.nvars(), 1);
        let d = Poly::var(1, 0);
        for i in 0..3 {
            assert_eq!(dr_reduce(&r, &Poly::var(3, i)), d);
        }
        let r = DeRhamRing::new(&ex0());
        assert_eq!(dr_reduce(&r, &Poly::var(1, 0)), Poly::var(1, 0));
    }

    #[test]
    fn quotients() {
        let r = DeRhamRing::new(&ex2());
        let q = finite_quotient_basis(&r, &[r.dbar_monomial(&[1, 1, 1])], 12).unwrap();
        assert_eq!(q.dim(), 3);
        assert_eq!(q.hilbert(), vec![1, 1, 1]);
        let r = DeRhamRing::new(&ex1());
        let q = finite_quotient_basis(&r, &[r.dbar(1).clone()], 8).unwrap();
        assert_eq!(q.dim(), 1);
        let q = finite_quotient_basis(&r, &[Poly::one(1)], 8).unwrap();
        assert_eq!(q.dim(), 0);
        assert_eq!(finite_quotient_basis(&r, &[], 8).unwrap_err(), Error::NonTerminating { cap: 8 });
    }

    #[test]
    fn reduction_is_multiplicative() {
        let r = DeRhamRing::new(&ex2());
        let x = Poly::var(3, 0).add(&Poly::var(3, 2).scale(&Rational::from(3)));
        let y = Poly::var(3, 1).sub(&Poly::var(3, 0));
        let lhs = dr_reduce(&r, &x.mul(&y));
        let rhs = dr_reduce(&r, &x).mul(&dr_reduce(&r, &y));
        assert_eq!(lhs, rhs);
    }
}
