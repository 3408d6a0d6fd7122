use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{BlockAlgebra, Flavor};
use crate::coeffring::{monomials_of_degree, Monomial, Poly};
use crate::linalg::{EchelonBasis, Rational};
use crate::par;
use crate::sign::{theta, SignVector};

/// Truncated bigraded homology of the Drinfeld quotient `A<h_gamma : gamma in e>`,
/// `d h_gamma = e_gamma`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DgHomology {
    pub idempotent: Vec<SignVector>,
    pub hdeg_bound: usize,
    pub internal_bound: usize,
    /// `chains[k][D]`: dimension of the chains with `k` letters `h` in internal degree `D`.
    pub chains: Vec<Vec<usize>>,
    /// `homology[k][D]`: dimension of `H_{-k}` in internal degree `D`, summed over blocks.
    pub homology: Vec<Vec<usize>>,
    pub d_squared_zero: bool,
    /// Graded dimensions of `H_0` per block, indexed by internal degree.
    pub h0_blocks: Vec<(SignVector, SignVector, Vec<usize>)>,
    /// Graded dimensions of the naive quotient `A / AeA` per block.
    pub naive_blocks: Vec<(SignVector, SignVector, Vec<usize>)>,
}

impl DgHomology {
    pub fn h0_matches_naive_quotient(&self) -> bool {
        self.h0_blocks == self.naive_blocks
    }

    /// First bidegree `(k, D)` with `k >= 1` carrying nonzero homology.
    pub fn first_higher_class(&self) -> Option<(usize, usize)> {
        for (k, row) in self.homology.iter().enumerate().skip(1) {
            if let Some(d) = row.iter().position(|&x| x > 0) {
                return Some((k, d));
            }
        }
        None
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
struct Chain {
    gammas: Vec<usize>,
    monomials: Vec<Monomial>,
}

struct Block<'a> {
    alg: &'a BlockAlgebra,
    es: &'a [SignVector],
    a: SignVector,
    b: SignVector,
}

impl Block<'_> {
    fn vertex(&self, gammas: &[usize], j: usize) -> SignVector {
        if j == 0 {
            self.a
        } else if j == gammas.len() + 1 {
            self.b
        } else {
            self.es[gammas[j - 1]]
        }
    }

    fn chains(&self, k: usize, degree: usize) -> Vec<Chain> {
        let nv = self.alg.derham.nvars();
        let mut out = Vec::new();
        let ne = self.es.len();
        if k > 0 && ne == 0 {
            return out;
        }
        let count = ne.pow(k as u32);
        for code in 0..count {
            let mut gammas = Vec::with_capacity(k);
            let mut c = code;
            for _ in 0..k {
                gammas.push(c % ne);
                c /= ne;
            }
            let base: usize = (0..=k).map(|j| self.vertex(&gammas, j).distance(&self.vertex(&gammas, j + 1))).sum();
            if base > degree || (degree - base) % 2 == 1 {
                continue;
            }
            let r = (degree - base) / 2;
            for parts in compositions(r, k + 1) {
                let mut acc: Vec<Vec<Monomial>> = vec![Vec::new()];
                for &p in &parts {
                    let ms = monomials_of_degree(nv, p);
                    acc = acc.into_iter().flat_map(|pre| ms.iter().map(move |m| [pre.clone(), vec![m.clone()]].concat())).collect();
                }
                for monomials in acc {
                    out.push(Chain { gammas: gammas.clone(), monomials });
                }
            }
        }
        out
    }

    /// `d` of a chain, as a sparse combination of chains with one fewer `h`.
    fn differential(&self, x: &Chain) -> Vec<(Chain, Rational)> {
        let k = x.gammas.len();
        let mut out: HashMap<Chain, Rational> = HashMap::new();
        for j in 1..=k {
            let sign = if j % 2 == 1 { Rational::one() } else { Rational::from(-1) };
            let (u, v, w) = (self.vertex(&x.gammas, j - 1), self.vertex(&x.gammas, j), self.vertex(&x.gammas, j + 1));
            let coeff = self.alg.derham.dbar_monomial(&theta(&u, &v, &w));
            let merged = Poly::monomial(x.monomials[j - 1].iter().zip(&x.monomials[j]).map(|(p, q)| p + q).collect(), Rational::one());
            let prod = merged.mul(&coeff);
            let mut gammas = x.gammas.clone();
            gammas.remove(j - 1);
            for (m, c) in prod.terms() {
                let mut monomials = x.monomials.clone();
                monomials.remove(j);
                monomials[j - 1] = m.clone();
                *out.entry(Chain { gammas: gammas.clone(), monomials }).or_insert_with(Rational::zero) += &sign * c;
            }
        }
        out.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }
}

/// Compositions of `total` into `parts` nonnegative parts.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    (0..=total)
        .flat_map(|first| compositions(total - first, parts - 1).into_iter().map(move |rest| [vec![first], rest].concat()))
        .collect()
}

fn rank_of_images(images: &[Vec<(Chain, Rational)>], target: &HashMap<Chain, usize>) -> usize {
    let mut ech = EchelonBasis::new(target.len());
    for img in images {
        let sparse: Vec<(usize, Rational)> = img.iter().map(|(c, x)| (target[c], x.clone())).collect();
        ech.insert_sparse(&sparse);
        if ech.is_full() {
            break;
        }
    }
    ech.rank()
}

struct BlockResult {
    a: SignVector,
    b: SignVector,
    chains: Vec<Vec<usize>>,
    homology: Vec<Vec<usize>>,
    d_squared_zero: bool,
    naive: Vec<usize>,
}

fn block_homology(blk: &Block<'_>, hdeg_bound: usize, internal_bound: usize) -> BlockResult {
    let kmax = hdeg_bound + 1;
    let mut chains = vec![vec![0; internal_bound + 1]; hdeg_bound + 1];
    let mut homology = vec![vec![0; internal_bound + 1]; hdeg_bound + 1];
    let mut d_squared_zero = true;
    for deg in 0..=internal_bound {
        let bases: Vec<Vec<Chain>> = (0..=kmax).map(|k| blk.chains(k, deg)).collect();
        let index: Vec<HashMap<Chain, usize>> =
            bases.iter().map(|b| b.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect()).collect();
        // rank[k] = rank of d: C_{-k} -> C_{-k+1}
        let mut rank = vec![0; kmax + 1];
        for k in 1..=kmax {
            let images: Vec<Vec<(Chain, Rational)>> = bases[k].iter().map(|x| blk.differential(x)).collect();
            rank[k] = rank_of_images(&images, &index[k - 1]);
            if k >= 2 {
                for img in &images {
                    let mut acc: HashMap<Chain, Rational> = HashMap::new();
                    for (c, x) in img {
                        for (c2, y) in blk.differential(c) {
                            *acc.entry(c2).or_insert_with(Rational::zero) += x * &y;
                        }
                    }
                    if acc.values().any(|v| !v.is_zero()) {
                        d_squared_zero = false;
                    }
                }
            }
        }
        for k in 0..=hdeg_bound {
            chains[k][deg] = bases[k].len();
            homology[k][deg] = bases[k].len() - rank[k] - rank[k + 1];
        }
    }
    let naive = naive_quotient_dims(blk, internal_bound);
    BlockResult { a: blk.a, b: blk.b, chains, homology, d_squared_zero, naive }
}

/// Graded dimensions of the `(a, b)` block of `A / AeA`.
fn naive_quotient_dims(blk: &Block<'_>, internal_bound: usize) -> Vec<usize> {
    let ring = &blk.alg.derham;
    let nv = ring.nvars();
    let base = blk.a.distance(&blk.b);
    let gens: Vec<Poly> = blk.es.iter().map(|g| ring.dbar_monomial(&theta(&blk.a, g, &blk.b))).collect();
    let mut out = vec![0; internal_bound + 1];
    for (deg, slot) in out.iter_mut().enumerate() {
        if deg < base || (deg - base) % 2 == 1 {
            continue;
        }
        let k = (deg - base) / 2;
        let monos = monomials_of_degree(nv, k);
        let index: HashMap<&Monomial, usize> = monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut ech = EchelonBasis::new(monos.len());
        for g in &gens {
            let gd = g.degree().unwrap_or(0);
            if g.is_zero() || gd > k {
                continue;
            }
            for mu in monomials_of_degree(nv, k - gd) {
                let p = g.mul(&Poly::monomial(mu, Rational::one()));
                let sparse: Vec<(usize, Rational)> = p.terms().map(|(m, c)| (index[m], c.clone())).collect();
                ech.insert_sparse(&sparse);
            }
        }
        *slot = monos.len() - ech.rank();
    }
    out
}

/// Homology of the Drinfeld quotient of the de Rham algebra by `e`, in
/// homological degrees `0..=hdeg_bound` and internal degrees `0..=internal_bound`.
///
/// Chains with `k` letters are `a_0 h a_1 h ... h a_k` with `a_j` running over
/// the monomial basis of the blocks between consecutive idempotents, and
/// `d` replaces the j-th `h` by `e` with sign `(-1)^(j-1)`.
pub fn derived_quotient_homology(alg: &BlockAlgebra, e: &[SignVector], hdeg_bound: usize, internal_bound: usize) -> DgHomology {
    let dr = if alg.flavor == Flavor::DeRham { alg.clone() } else { BlockAlgebra { flavor: Flavor::DeRham, ..alg.clone() } };
    let mut es: Vec<SignVector> = e.iter().copied().filter(|g| dr.feasible.contains(g)).collect();
    es.sort();
    es.dedup();
    let pairs: Vec<(SignVector, SignVector)> = dr.feasible.iter().flat_map(|&a| dr.feasible.iter().map(move |&b| (a, b))).collect();
    let results = par::map(&pairs, |&(a, b)| block_homology(&Block { alg: &dr, es: &es, a, b }, hdeg_bound, internal_bound));
    let mut chains = vec![vec![0; internal_bound + 1]; hdeg_bound + 1];
    let mut homology = vec![vec![0; internal_bound + 1]; hdeg_bound + 1];
    let mut d_squared_zero = true;
    let mut h0_blocks = Vec::new();
    let mut naive_blocks = Vec::new();
    for r in results {
        for k in 0..=hdeg_bound {
            for d in 0..=internal_bound {
                chains[k][d] += r.chains[k][d];
                homology[k][d] += r.homology[k][d];
            }
        }
        d_squared_zero &= r.d_squared_zero;
        h0_blocks.push((r.a, r.b, r.homology[0].clone()));
        naive_blocks.push((r.a, r.b, r.naive));
    }
    DgHomology { idempotent: es, hdeg_bound, internal_bound, chains, homology, d_squared_zero, h0_blocks, naive_blocks }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blockalg::{cartan_matrix, quotient_by_unbounded};
    use crate::fixtures::ex1;

    fn sv(s: &str) -> SignVector {
        s.parse().unwrap()
    }

    #[test]
    fn h0_is_naive_quotient() {
        let a = BlockAlgebra::build(&ex1(), Flavor::DeRham).unwrap();
        let h = derived_quotient_homology(&a, &[sv("+-")], 1, 6);
        assert!(h.d_squared_zero);
        assert!(h.h0_matches_naive_quotient());
        let fin = quotient_by_unbounded(&ex1(), Flavor::DeRham).unwrap();
        let total: usize = cartan_matrix(&fin).iter().flatten().sum();
        assert_eq!(h.homology[0].iter().sum::<usize>(), total);
    }

    #[test]
    fn idempotent_is_a_boundary() {
        let a = BlockAlgebra::build(&ex1(), Flavor::DeRham).unwrap();
        let h = derived_quotient_homology(&a, &[sv("+-")], 1, 2);
        let e_block = h.h0_blocks.iter().find(|(x, y, _)| *x == sv("+-") && *y == sv("+-")).unwrap();
        assert!(e_block.2.iter().all(|&x| x == 0));
    }

    #[test]
    fn both_rays_give_higher_homology() {
        let a = BlockAlgebra::build(&ex1(), Flavor::DeRham).unwrap();
        let h = derived_quotient_homology(&a, &[sv("-+"), sv("+-")], 2, 6);
        assert!(h.d_squared_zero);
        assert!(h.h0_matches_naive_quotient());
        let (k, d) = h.first_higher_class().expect("higher class");
        assert_eq!(k, 1);
        assert!(d <= 6);
    }
}
