use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{BlockAlgebra, Flavor};
use crate::arrangement::CategoryODatum;
use crate::chamber_order::build_order_tables;
use crate::coeffring::{betti_local_quotient_chart, default_cap, finite_quotient_basis, FiniteQuotient, Monomial, Poly};
use crate::error::{Error, Result};
use crate::linalg::Rational;
use crate::par;
use crate::qpoly::{QMatrix, QPoly};
use crate::sign::{theta, SignVector};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisElement {
    pub left: usize,
    pub right: usize,
    /// Coefficient-ring monomial multiplying the minimal path.
    pub monomial: Monomial,
    /// Path length plus twice the polynomial degree.
    pub degree: usize,
}

/// A finite-dimensional algebra with a basis adapted to the idempotents `e_label`.
/// Every basis element lies in a single block `e_left A e_right`, and products are
/// stored as sparse structure constants.
#[derive(Clone, Debug)]
pub struct FiniteDimAlgebra {
    pub flavor: Flavor,
    /// Whether `degree` is a grading (true) or only a filtration (false).
    pub graded: bool,
    pub labels: Vec<SignVector>,
    pub basis: Vec<BasisElement>,
    blocks: Vec<Vec<Vec<usize>>>,
    products: HashMap<(usize, usize), Vec<(usize, Rational)>>,
}

#[derive(Serialize, Deserialize)]
struct AlgebraJson {
    flavor: Flavor,
    graded: bool,
    labels: Vec<SignVector>,
    basis: Vec<BasisElement>,
    structure_constants: Vec<(usize, usize, usize, Rational)>,
}

impl FiniteDimAlgebra {
    pub fn from_parts(
        flavor: Flavor,
        graded: bool,
        labels: Vec<SignVector>,
        basis: Vec<BasisElement>,
        products: HashMap<(usize, usize), Vec<(usize, Rational)>>,
    ) -> Self {
        let k = labels.len();
        let mut blocks = vec![vec![Vec::new(); k]; k];
        for (i, b) in basis.iter().enumerate() {
            blocks[b.left][b.right].push(i);
        }
        FiniteDimAlgebra { flavor, graded, labels, basis, blocks, products }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn num_labels(&self) -> usize {
        self.labels.len()
    }

    pub fn label_index(&self, a: &SignVector) -> Option<usize> {
        self.labels.iter().position(|l| l == a)
    }

    /// Basis indices of `e_a A e_b`.
    pub fn block(&self, a: usize, b: usize) -> &[usize] {
        &self.blocks[a][b]
    }

    /// Basis index of the idempotent `e_a`.
    pub fn idempotent(&self, a: usize) -> usize {
        *self.blocks[a][a]
            .iter()
            .find(|&&i| self.basis[i].degree == 0 && self.basis[i].monomial.iter().all(|&e| e == 0))
            .expect("idempotent in basis")
    }

    /// Structure constants of `b_i b_j` (empty when the product vanishes).
    pub fn product(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        self.products.get(&(i, j)).map_or(&[], |v| v.as_slice())
    }

    pub fn mul(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim()];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            let r = self.basis[i].right;
            for c in 0..self.num_labels() {
                for &j in self.block(r, c) {
                    if y[j].is_zero() {
                        continue;
                    }
                    let s = xi * &y[j];
                    for (k, v) in self.product(i, j) {
                        out[*k] += &s * v;
                    }
                }
            }
        }
        out
    }

    pub fn unit_vector(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim()];
        v[i] = Rational::one();
        v
    }

    pub fn max_degree(&self) -> usize {
        self.basis.iter().map(|b| b.degree).max().unwrap_or(0)
    }

    /// Exhaustive check of `(b_i b_j) b_k = b_i (b_j b_k)`.
    pub fn is_associative(&self) -> bool {
        let k = self.num_labels();
        let triples: Vec<(usize, usize)> = (0..self.dim()).flat_map(|i| (0..k).map(move |c| (i, c))).collect();
        par::map(&triples, |&(i, c)| {
            let r = self.basis[i].right;
            for &j in self.block(r, c) {
                let ij = self.mul(&self.unit_vector(i), &self.unit_vector(j));
                for d in 0..k {
                    for &l in self.block(c, d) {
                        let lhs = self.mul(&ij, &self.unit_vector(l));
                        let jl = self.mul(&self.unit_vector(j), &self.unit_vector(l));
                        let rhs = self.mul(&self.unit_vector(i), &jl);
                        if lhs != rhs {
                            return false;
                        }
                    }
                }
            }
            true
        })
        .into_iter()
        .all(|x| x)
    }

    /// Every structure constant respects degrees.
    pub fn is_homogeneous(&self) -> bool {
        self.products.iter().all(|((i, j), out)| {
            out.iter().all(|(k, _)| self.basis[*k].degree == self.basis[*i].degree + self.basis[*j].degree)
        })
    }

    /// The idempotents sum to the unit: `e_a b = b` for `b` in row `a`, and `e_a b = 0` otherwise.
    pub fn has_unit(&self) -> bool {
        let k = self.num_labels();
        (0..k).all(|a| {
            let e = self.idempotent(a);
            (0..self.dim()).all(|i| {
                let b = &self.basis[i];
                let l = self.product(e, i);
                let r = self.product(i, e);
                let left_ok = if b.left == a { l == [(i, Rational::one())] } else { l.is_empty() };
                let right_ok = if b.right == a { r == [(i, Rational::one())] } else { r.is_empty() };
                left_ok && right_ok
            })
        })
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let mut sc: Vec<(usize, usize, usize, Rational)> = self
            .products
            .iter()
            .flat_map(|((i, j), v)| v.iter().map(move |(k, c)| (*i, *j, *k, c.clone())))
            .collect();
        sc.sort_by(|a, b| (a.0, a.1, a.2).cmp(&(b.0, b.1, b.2)));
        let raw = AlgebraJson {
            flavor: self.flavor,
            graded: self.graded,
            labels: self.labels.clone(),
            basis: self.basis.clone(),
            structure_constants: sc,
        };
        serde_json::to_value(raw).expect("algebra serializes")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("algebra serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: AlgebraJson = serde_json::from_str(s).map_err(|e| Error::Input(e.to_string()))?;
        let k = raw.labels.len();
        let d = raw.basis.len();
        if raw.basis.iter().any(|b| b.left >= k || b.right >= k) {
            return Err(Error::Input("basis element refers to an unknown label".into()));
        }
        let mut products: HashMap<(usize, usize), Vec<(usize, Rational)>> = HashMap::new();
        for (i, j, l, c) in raw.structure_constants {
            if i >= d || j >= d || l >= d {
                return Err(Error::Input("structure constant index out of range".into()));
            }
            products.entry((i, j)).or_default().push((l, c));
        }
        for v in products.values_mut() {
            v.sort_by_key(|x| x.0);
        }
        Ok(FiniteDimAlgebra::from_parts(raw.flavor, raw.graded, raw.labels, raw.basis, products))
    }

    /// The corner `e A e` for `e` the sum of idempotents of `keep` (label indices).
    pub fn corner(&self, keep: &[usize]) -> FiniteDimAlgebra {
        let new_label: HashMap<usize, usize> = keep.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let old: Vec<usize> =
            (0..self.dim()).filter(|&i| new_label.contains_key(&self.basis[i].left) && new_label.contains_key(&self.basis[i].right)).collect();
        let new_index: HashMap<usize, usize> = old.iter().enumerate().map(|(i, &o)| (o, i)).collect();
        let basis = old
            .iter()
            .map(|&o| {
                let b = &self.basis[o];
                BasisElement { left: new_label[&b.left], right: new_label[&b.right], monomial: b.monomial.clone(), degree: b.degree }
            })
            .collect();
        let mut products = HashMap::new();
        for (&(i, j), v) in &self.products {
            if let (Some(&ni), Some(&nj)) = (new_index.get(&i), new_index.get(&j)) {
                products.insert((ni, nj), v.iter().map(|(k, c)| (new_index[k], c.clone())).collect());
            }
        }
        FiniteDimAlgebra::from_parts(self.flavor, self.graded, keep.iter().map(|&a| self.labels[a]).collect(), basis, products)
    }
}

/// `C[a][b] = dim e_a A e_b`.
pub fn cartan_matrix(alg: &FiniteDimAlgebra) -> Vec<Vec<usize>> {
    let k = alg.num_labels();
    (0..k).map(|a| (0..k).map(|b| alg.block(a, b).len()).collect()).collect()
}

/// Graded dimensions of the blocks.
pub fn hilbert_matrix(alg: &FiniteDimAlgebra) -> QMatrix {
    let k = alg.num_labels();
    (0..k)
        .map(|a| (0..k).map(|b| QPoly::from_degrees(alg.block(a, b).iter().map(|&i| alg.basis[i].degree))).collect())
        .collect()
}

pub fn quotient_by_unbounded(datum: &CategoryODatum, flavor: Flavor) -> Result<FiniteDimAlgebra> {
    quotient_by_unbounded_with_cap(datum, flavor, default_cap(datum.n))
}

struct BlockQuotient {
    a: usize,
    b: usize,
    quotient: FiniteQuotient,
}

/// `A(t,m) = A(t,-) / A(t,-) e A(t,-)` for `e` the sum of idempotents of
/// unbounded feasible chambers. By centrality of the coefficient ring, the
/// `(alpha, beta)` block of the ideal is generated by `c^{theta(alpha, gamma, beta)}`
/// for unbounded `gamma`.
pub fn quotient_by_unbounded_with_cap(datum: &CategoryODatum, flavor: Flavor, cap: usize) -> Result<FiniteDimAlgebra> {
    let alg = BlockAlgebra::build(datum, flavor)?;
    let tables = build_order_tables(datum)?;
    let labels = tables.labels();
    let unbounded = alg.unbounded_feasible();
    let k = labels.len();
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|a| (0..k).map(move |b| (a, b))).collect();

    let quotients = par::try_map(&pairs, |&(a, b)| -> Result<BlockQuotient> {
        let (la, lb) = (labels[a], labels[b]);
        let thetas: Vec<Vec<u8>> = unbounded.iter().map(|g| theta(&la, g, &lb)).collect();
        let quotient = match flavor {
            Flavor::DeRham => {
                let gens: Vec<Poly> = thetas.iter().map(|t| alg.derham.dbar_monomial(t)).collect();
                finite_quotient_basis(&alg.derham, &gens, cap)?
            }
            Flavor::Betti => {
                let ring = &alg.betti;
                betti_local_quotient_chart(ring, |bound| thetas.iter().map(|t| ring.one_minus_m_monomial(t, bound)).collect(), cap)?
                    .quotient
            }
        };
        Ok(BlockQuotient { a, b, quotient })
    })?;

    let mut basis = Vec::new();
    let mut offsets = vec![vec![0usize; k]; k];
    let mut qs: Vec<Vec<Option<&FiniteQuotient>>> = vec![vec![None; k]; k];
    for bq in &quotients {
        offsets[bq.a][bq.b] = basis.len();
        qs[bq.a][bq.b] = Some(&bq.quotient);
        let path = labels[bq.a].distance(&labels[bq.b]);
        for (m, deg) in bq.quotient.basis_monomials().into_iter().zip(bq.quotient.basis_degrees()) {
            basis.push(BasisElement { left: bq.a, right: bq.b, monomial: m, degree: path + 2 * deg });
        }
    }

    let dim = basis.len();
    let rows = par::map_range(dim, |i| {
        let bi = &basis[i];
        let mut row = Vec::new();
        for (j, bj) in basis.iter().enumerate() {
            if bj.left != bi.right {
                continue;
            }
            let (a, b, c) = (bi.left, bi.right, bj.right);
            let target = qs[a][c].expect("block");
            if target.dim() == 0 {
                continue;
            }
            let t = theta(&labels[a], &labels[b], &labels[c]);
            let coeff = match flavor {
                Flavor::DeRham => alg.derham.dbar_monomial(&t),
                Flavor::Betti => alg.betti.one_minus_m_monomial(&t, target.bound()),
            };
            let mono = Poly::monomial(bi.monomial.iter().zip(&bj.monomial).map(|(x, y)| x + y).collect(), Rational::one());
            let nf = target.mul_poly(&mono, &coeff);
            let out: Vec<(usize, Rational)> =
                nf.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(l, v)| (offsets[a][c] + l, v)).collect();
            if !out.is_empty() {
                row.push(((i, j), out));
            }
        }
        row
    });
    let products: HashMap<(usize, usize), Vec<(usize, Rational)>> = rows.into_iter().flatten().collect();
    Ok(FiniteDimAlgebra::from_parts(flavor, flavor == Flavor::DeRham, labels, basis, products))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{ex0, ex1, ex2};

    #[test]
    fn ex1_quotient() {
        let a = quotient_by_unbounded(&ex1(), Flavor::DeRham).unwrap();
        assert_eq!(a.dim(), 5);
        // labels in the order (-,+), (+,+)
        assert_eq!(cartan_matrix(&a), vec![vec![2, 1], vec![1, 1]]);
        let h = hilbert_matrix(&a);
        assert_eq!(h[0][0].to_string(), "1+q^2");
        assert_eq!(h[0][1].to_string(), "q");
        assert_eq!(h[1][1].to_string(), "1");
        assert!(a.is_associative());
        assert!(a.is_homogeneous());
        assert!(a.has_unit());
    }

    #[test]
    fn ex2_quotient() {
        let a = quotient_by_unbounded(&ex2(), Flavor::DeRham).unwrap();
        assert_eq!(a.dim(), 14);
        assert_eq!(cartan_matrix(&a), vec![vec![3, 2, 1], vec![2, 2, 1], vec![1, 1, 1]]);
        assert_eq!(hilbert_matrix(&a)[0][0].to_string(), "1+q^2+q^4");
        assert!(a.is_associative());
        assert_eq!(quotient_by_unbounded(&ex0(), Flavor::DeRham).unwrap().dim(), 1);
    }

    #[test]
    fn betti_matches_de_rham() {
        for d in [ex0(), ex1(), ex2()] {
            let a = quotient_by_unbounded(&d, Flavor::DeRham).unwrap();
            let b = quotient_by_unbounded(&d, Flavor::Betti).unwrap();
            assert_eq!(cartan_matrix(&a), cartan_matrix(&b));
            assert!(b.is_associative());
            assert!(b.has_unit());
        }
    }

    #[test]
    fn json_roundtrip() {
        let a = quotient_by_unbounded(&ex1(), Flavor::DeRham).unwrap();
        let b = FiniteDimAlgebra::from_json(&a.to_json()).unwrap();
        assert_eq!(b.dim(), 5);
        assert_eq!(b.to_json_value(), a.to_json_value());
        assert!(b.is_associative());
    }
}
