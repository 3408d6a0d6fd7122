use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{BlockAlgebra, Flavor};
use crate::coeffring::{monomials_of_degree, Monomial, Poly};
use crate::linalg::{EchelonBasis, Rational};
use crate::par;
use crate::sign::{theta, SignVector};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tor0Defect {
    pub left: SignVector,
    pub right: SignVector,
    /// Internal degree (path length plus twice the polynomial degree).
    pub degree: usize,
    pub tensor_dim: usize,
    pub ideal_dim: usize,
    pub kernel_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tor0Report {
    pub idempotent: Vec<SignVector>,
    pub degree_bound: usize,
    pub degrees_checked: usize,
    pub defects: Vec<Tor0Defect>,
}

impl Tor0Report {
    pub fn is_iso(&self) -> bool {
        self.defects.is_empty()
    }
}

/// Compares `Ae ⊗_{eAe} eA` with `AeA` block by block and degree by degree.
///
/// In block `(alpha, beta)` the tensor product is the R-module generated by
/// symbols `[gamma] = p(alpha, gamma) ⊗ p(gamma, beta)` for `gamma` in `e`, subject to
/// `c^{theta(alpha, gamma, gamma')} [gamma'] = c^{theta(gamma, gamma', beta)} [gamma]`,
/// and the multiplication map sends `[gamma]` to `c^{theta(alpha, gamma, beta)} p(alpha, beta)`.
/// The Betti flavor is checked through its de Rham model.
pub fn tor0_stratifying_check(alg: &BlockAlgebra, e: &[SignVector], degree_bound: usize) -> Tor0Report {
    let dr = if alg.flavor == Flavor::DeRham {
        alg.clone()
    } else {
        BlockAlgebra { flavor: Flavor::DeRham, ..alg.clone() }
    };
    let mut es: Vec<SignVector> = e.iter().copied().filter(|g| dr.feasible.contains(g)).collect();
    es.sort();
    es.dedup();
    let pairs: Vec<(SignVector, SignVector)> = dr.feasible.iter().flat_map(|&a| dr.feasible.iter().map(move |&b| (a, b))).collect();
    let results = par::map(&pairs, |&(a, b)| block_check(&dr, &es, a, b, degree_bound));
    let degrees_checked = results.iter().map(|r| r.0).sum();
    let defects = results.into_iter().flat_map(|r| r.1).collect();
    Tor0Report { idempotent: es, degree_bound, degrees_checked, defects }
}

fn block_check(alg: &BlockAlgebra, es: &[SignVector], a: SignVector, b: SignVector, bound: usize) -> (usize, Vec<Tor0Defect>) {
    let ring = &alg.derham;
    let nv = ring.nvars();
    let base = a.distance(&b);
    if base > bound {
        return (0, Vec::new());
    }
    let shift: Vec<usize> = es.iter().map(|g| theta(&a, g, &b).iter().map(|&x| x as usize).sum()).collect();
    let images: Vec<Poly> = es.iter().map(|g| ring.dbar_monomial(&theta(&a, g, &b))).collect();
    let weight = |t: &[u8]| t.iter().map(|&x| x as usize).sum::<usize>();
    // c^{theta(a,g,h)} [h] - c^{theta(g,h,b)} [g], homogeneous of polynomial degree `deg`
    let mut relations: Vec<Relation> = Vec::new();
    for (i, g) in es.iter().enumerate() {
        for (j, h) in es.iter().enumerate() {
            if i == j {
                continue;
            }
            let (t1, t2) = (theta(&a, g, h), theta(g, h, &b));
            let deg = weight(&t1) + shift[j];
            debug_assert_eq!(deg, weight(&t2) + shift[i]);
            relations.push(Relation { lhs: (j, ring.dbar_monomial(&t1)), rhs: (i, ring.dbar_monomial(&t2)), deg });
        }
    }
    let mut defects = Vec::new();
    let mut checked = 0;
    for k in 0..=(bound - base) / 2 {
        checked += 1;
        // coordinates: (gamma index, monomial of degree k - shift)
        let mut cols: HashMap<(usize, Monomial), usize> = HashMap::new();
        for (gi, &s) in shift.iter().enumerate() {
            if s <= k {
                for m in monomials_of_degree(nv, k - s) {
                    let c = cols.len();
                    cols.insert((gi, m), c);
                }
            }
        }
        let mut rel = EchelonBasis::new(cols.len());
        for r in &relations {
            insert_relation(&mut rel, &cols, nv, k, r);
        }
        let tensor_dim = cols.len() - rel.rank();
        let monos = monomials_of_degree(nv, k);
        let index: HashMap<&Monomial, usize> = monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut img = EchelonBasis::new(monos.len());
        for ((gi, m), _) in cols.iter() {
            let p = images[*gi].mul(&Poly::monomial(m.clone(), Rational::one()));
            let sparse: Vec<(usize, Rational)> = p.terms().map(|(mm, c)| (index[mm], c.clone())).collect();
            img.insert_sparse(&sparse);
        }
        let ideal_dim = img.rank();
        if tensor_dim != ideal_dim {
            defects.push(Tor0Defect { left: a, right: b, degree: base + 2 * k, tensor_dim, ideal_dim, kernel_dim: tensor_dim - ideal_dim });
        }
    }
    (checked, defects)
}

struct Relation {
    lhs: (usize, Poly),
    rhs: (usize, Poly),
    deg: usize,
}

/// Inserts all monomial multiples of a relation that land in polynomial degree `k`.
fn insert_relation(rel: &mut EchelonBasis, cols: &HashMap<(usize, Monomial), usize>, nv: usize, k: usize, r: &Relation) {
    if r.deg > k {
        return;
    }
    for mu in monomials_of_degree(nv, k - r.deg) {
        let m = Poly::monomial(mu, Rational::one());
        let mut v: Vec<(usize, Rational)> = Vec::new();
        for (mm, x) in r.lhs.1.mul(&m).terms() {
            v.push((cols[&(r.lhs.0, mm.clone())], x.clone()));
        }
        for (mm, x) in r.rhs.1.mul(&m).terms() {
            v.push((cols[&(r.rhs.0, mm.clone())], -x));
        }
        rel.insert_sparse(&v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{ex0, ex1, ex2};

    fn sv(s: &str) -> SignVector {
        s.parse().unwrap()
    }

    #[test]
    fn unbounded_idempotent_is_stratifying() {
        for d in [ex0(), ex1(), ex2()] {
            let a = BlockAlgebra::build(&d, Flavor::DeRham).unwrap();
            let e = a.unbounded_feasible();
            let r = tor0_stratifying_check(&a, &e, 8);
            assert!(r.is_iso(), "{:?}", r.defects);
        }
    }

    #[test]
    fn all_noncompact_on_ex1_has_defect() {
        let a = BlockAlgebra::build(&ex1(), Flavor::DeRham).unwrap();
        let r = tor0_stratifying_check(&a, &[sv("-+"), sv("+-")], 8);
        assert!(!r.is_iso());
        assert!(r.defects.iter().any(|d| d.left == sv("++") && d.right == sv("++")));
    }

    #[test]
    fn zero_idempotent() {
        let a = BlockAlgebra::build(&ex1(), Flavor::DeRham).unwrap();
        assert!(tor0_stratifying_check(&a, &[], 8).is_iso());
    }
}
