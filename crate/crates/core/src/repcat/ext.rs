use serde::{Deserialize, Serialize};

use super::{minimal_projective_resolution, simple, GradedModule, Resolution};
use crate::blockalg::{hilbert_matrix, FiniteDimAlgebra};
use crate::error::Result;
use crate::linalg::{rank, solve, RatMatrix, Rational};
use crate::par;
use crate::qpoly::{qmat_map, qmat_mul, qmat_transpose, QMatrix, QPoly};
use crate::sign::SignVector;

/// Yoneda products `Ext^1(S_a, S_g) x Ext^1(S_g, S_d) -> Ext^2(S_a, S_d)` summed over `g`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct YonedaBlock {
    pub from: SignVector,
    pub to: SignVector,
    pub ext2_dim: usize,
    pub product_rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtAlgebra {
    pub labels: Vec<SignVector>,
    /// `dims[a][b] = sum_k dim Ext^k(S_a, S_b) q^k`.
    pub dims: QMatrix,
    /// Graded Betti numbers: for each simple, the (label, internal degree) of the summands of `P_k`.
    pub betti: Vec<Vec<Vec<(SignVector, usize)>>>,
    pub global_dimension: usize,
    pub yoneda: Vec<YonedaBlock>,
}

impl ExtAlgebra {
    /// Degree-two Ext is spanned by products of degree-one classes.
    pub fn generated_in_degree_one_through_two(&self) -> bool {
        self.yoneda.iter().all(|y| y.ext2_dim == y.product_rank)
    }
}

pub fn simple_resolutions(alg: &FiniteDimAlgebra, length_bound: usize) -> Result<Vec<Resolution>> {
    let idx: Vec<usize> = (0..alg.num_labels()).collect();
    par::try_map(&idx, |&a| {
        let s = simple(alg, &alg.labels[a])?;
        minimal_projective_resolution(alg, &s, length_bound)
    })
}

pub fn ext_algebra(alg: &FiniteDimAlgebra, length_bound: usize) -> Result<ExtAlgebra> {
    let res = simple_resolutions(alg, length_bound)?;
    Ok(ext_from_resolutions(alg, &res))
}

fn ext_from_resolutions(alg: &FiniteDimAlgebra, res: &[Resolution]) -> ExtAlgebra {
    let k = alg.num_labels();
    let mut dims = vec![vec![QPoly::zero(); k]; k];
    for (a, r) in res.iter().enumerate() {
        for step in 0..=r.length() {
            for &(l, _) in r.summands(step) {
                dims[a][l] = &dims[a][l] + &QPoly::monomial(1, step);
            }
        }
    }
    let betti = res.iter().map(|r| r.betti_table(alg).terms).collect();
    let global_dimension = res.iter().map(|r| r.length()).max().unwrap_or(0);
    let yoneda = yoneda_products(alg, res);
    ExtAlgebra { labels: alg.labels.clone(), dims, betti, global_dimension, yoneda }
}

/// Degree-one generators of `P_1(S_g)` of label `d`, as vectors over the algebra basis.
fn degree_one_generators(alg: &FiniteDimAlgebra, r: &Resolution, d: usize) -> Vec<Vec<Rational>> {
    if r.length() < 1 {
        return Vec::new();
    }
    let step = &r.steps[1];
    let f0 = &r.steps[0].free;
    step.free
        .summands
        .iter()
        .zip(&step.boundary)
        .filter(|((l, deg), _)| *l == d && *deg == 1)
        .map(|(_, v)| {
            let mut out = vec![Rational::zero(); alg.dim()];
            for (k, x) in v.iter().enumerate() {
                if !x.is_zero() {
                    out[f0.basis[k].1] = x.clone();
                }
            }
            out
        })
        .collect()
}

fn yoneda_products(alg: &FiniteDimAlgebra, res: &[Resolution]) -> Vec<YonedaBlock> {
    let k = alg.num_labels();
    let mut out = Vec::new();
    for (a, r) in res.iter().enumerate() {
        if r.length() < 2 {
            for d in 0..k {
                let ext2 = if r.length() >= 2 { r.summands(2).iter().filter(|s| s.0 == d).count() } else { 0 };
                out.push(YonedaBlock { from: alg.labels[a], to: alg.labels[d], ext2_dim: ext2, product_rank: 0 });
            }
            continue;
        }
        let p1 = &r.steps[1];
        let p2 = &r.steps[2];
        for d in 0..k {
            let targets: Vec<usize> = (0..p2.free.summands.len()).filter(|&g| p2.free.summands[g].0 == d).collect();
            let mut rows: Vec<Vec<Rational>> = Vec::new();
            for (g1, &(gamma, _)) in p1.free.summands.iter().enumerate() {
                let hs = degree_one_generators(alg, &res[gamma], d);
                if hs.is_empty() {
                    continue;
                }
                let support: Vec<usize> = alg.block(gamma, d).iter().copied().filter(|&i| alg.basis[i].degree == 1).collect();
                let hmat = RatMatrix::from_fn(support.len(), hs.len(), |r, c| hs[c][support[r]].clone());
                // coefficient of each h in the linear part of the (g1, g2) entry of the boundary
                let mut per_h: Vec<Vec<Rational>> = vec![Vec::new(); hs.len()];
                for &g2 in &targets {
                    let bd = &p2.boundary[g2];
                    let x: Vec<Rational> = support
                        .iter()
                        .map(|&i| p1.free.index_of(g1, i).map_or_else(Rational::zero, |ix| bd[ix].clone()))
                        .collect();
                    let c = solve(&hmat, &x).expect("linear part lies in the span of degree-one generators");
                    for (h, ch) in c.into_iter().enumerate() {
                        per_h[h].push(ch);
                    }
                }
                rows.extend(per_h);
            }
            let product_rank = if rows.is_empty() || targets.is_empty() {
                0
            } else {
                rank(&RatMatrix::from_rows(rows, targets.len()))
            };
            out.push(YonedaBlock { from: alg.labels[a], to: alg.labels[d], ext2_dim: targets.len(), product_rank });
        }
    }
    out
}

/// Ungraded `dim Ext^k(M, N)` for `k = 0..=length(res)`, from `Hom(P_*, N)`.
pub fn ext_between(alg: &FiniteDimAlgebra, res: &Resolution, n: &GradedModule) -> Vec<usize> {
    let len = res.length();
    // cochain space C^k = ⊕_g N e_{label g}
    let parts: Vec<Vec<Vec<usize>>> =
        res.steps.iter().map(|s| s.free.summands.iter().map(|&(l, _)| n.label_part(alg, l)).collect()).collect();
    let cdim: Vec<usize> = parts.iter().map(|p| p.iter().map(|x| x.len()).sum()).collect();
    // delta_k: C^k -> C^{k+1}, (f o d)(g') = sum_{g,i} x_{g,i} f(g) b_i
    let mut ranks = vec![0; len + 2];
    for k in 0..len {
        let src = &res.steps[k];
        let tgt = &res.steps[k + 1];
        let mut offs = Vec::new();
        let mut o = 0;
        for p in &parts[k + 1] {
            offs.push(o);
            o += p.len();
        }
        let mut cols: Vec<Vec<Rational>> = Vec::new();
        for (g, part) in parts[k].iter().enumerate() {
            for &q in part {
                let mut img = vec![Rational::zero(); cdim[k + 1]];
                for (g2, bd) in tgt.boundary.iter().enumerate() {
                    let mut acc = vec![Rational::zero(); n.dim()];
                    for (ix, x) in bd.iter().enumerate() {
                        if x.is_zero() || src.free.basis[ix].0 != g {
                            continue;
                        }
                        let v = n.act(alg, q, src.free.basis[ix].1);
                        for (a, b) in acc.iter_mut().zip(v) {
                            *a += x * &b;
                        }
                    }
                    for (slot, &q2) in parts[k + 1][g2].iter().enumerate() {
                        img[offs[g2] + slot] = acc[q2].clone();
                    }
                }
                cols.push(img);
            }
        }
        ranks[k + 1] = if cols.is_empty() || cdim[k + 1] == 0 { 0 } else { rank(&RatMatrix::from_rows(cols, cdim[k + 1])) };
    }
    (0..=len).map(|k| cdim[k] - ranks[k + 1] - ranks[k]).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KoszulCertificate {
    pub labels: Vec<SignVector>,
    /// Tor concentrated on the diagonal: generators of `P_k` in degree `k`.
    pub tor_linear: bool,
    /// (simple, k, internal degree) for every off-diagonal generator.
    pub offenders: Vec<(SignVector, usize, usize)>,
    pub global_dimension: usize,
    pub hilbert: QMatrix,
    pub ext: QMatrix,
    /// `H_A(q) * E(-q)^T`.
    pub product: QMatrix,
    pub hilbert_identity: bool,
}

impl KoszulCertificate {
    pub fn is_koszul(&self) -> bool {
        self.tor_linear && self.hilbert_identity
    }
}

pub fn koszulity_check(alg: &FiniteDimAlgebra, length_bound: usize) -> Result<KoszulCertificate> {
    let res = simple_resolutions(alg, length_bound)?;
    let ext = ext_from_resolutions(alg, &res);
    let mut offenders = Vec::new();
    for (a, r) in res.iter().enumerate() {
        for k in 0..=r.length() {
            for &(_, d) in r.summands(k) {
                if d != k {
                    offenders.push((alg.labels[a], k, d));
                }
            }
        }
    }
    let hilbert = hilbert_matrix(alg);
    let product = qmat_mul(&hilbert, &qmat_transpose(&qmat_map(&ext.dims, |p| p.at_minus_q())));
    let n = alg.num_labels();
    let hilbert_identity = (0..n).all(|i| (0..n).all(|j| product[i][j] == if i == j { QPoly::one() } else { QPoly::zero() }));
    Ok(KoszulCertificate {
        labels: alg.labels.clone(),
        tor_linear: offenders.is_empty(),
        offenders,
        global_dimension: ext.global_dimension,
        hilbert,
        ext: ext.dims,
        product,
        hilbert_identity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blockalg::{quotient_by_unbounded, Flavor};
    use crate::fixtures::{ex0, ex1, ex2};

    #[test]
    fn ex1_ext() {
        let a = quotient_by_unbounded(&ex1(), Flavor::DeRham).unwrap();
        let e = ext_algebra(&a, 8).unwrap();
        // order (-,+), (+,+)
        let s: Vec<Vec<String>> = e.dims.iter().map(|r| r.iter().map(|p| p.to_string()).collect()).collect();
        assert_eq!(s, vec![vec!["1", "q"], vec!["q", "1+q^2"]]);
        assert!(e.generated_in_degree_one_through_two());
        assert_eq!(e.global_dimension, 2);
    }

    #[test]
    fn fixtures_are_koszul() {
        for d in [ex0(), ex1(), ex2()] {
            let a = quotient_by_unbounded(&d, Flavor::DeRham).unwrap();
            let c = koszulity_check(&a, 12).unwrap();
            assert!(c.is_koszul(), "{c:?}");
        }
    }

    #[test]
    fn ex2_ext_low_degrees() {
        let a = quotient_by_unbounded(&ex2(), Flavor::DeRham).unwrap();
        let e = ext_algebra(&a, 12).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(e.dims[i][j].coeff(0), (i == j) as i64);
                let adjacent = i.abs_diff(j) == 1;
                assert_eq!(e.dims[i][j].coeff(1), adjacent as i64);
            }
        }
        assert_eq!(e.dims[0][0].to_string(), "1");
    }
}
