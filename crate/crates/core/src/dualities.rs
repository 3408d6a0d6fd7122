//! Identities between a datum, its Gale dual and the skeleton of compact
//! chambers, checked at the level of graded dimensions.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::arrangement::{gale_dual, polytope_from_vertices, require_valid, Arrangement, CategoryODatum, Polytope};
use crate::blockalg::{hilbert_matrix, quotient_by_unbounded, Flavor};
use crate::chamber_order::build_order_tables;
use crate::coeffring::DeRhamRing;
use crate::error::{Error, Result};
use crate::linalg::{dot, rank, RatMatrix, Rational};
use crate::qpoly::{QMatrix, QPoly};
use crate::repcat::{ext_algebra, quadratic_dual, QuadraticData};
use crate::sign::{theta, SignVector};

/// `h_k` = number of vertices with exactly `k` edges decreasing along a direction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HVector(pub Vec<usize>);

impl HVector {
    pub fn poincare(&self) -> QPoly {
        QPoly::from_coeffs(self.0.iter().enumerate().flat_map(|(k, &h)| if k == 0 { vec![h as i64] } else { vec![0, h as i64] }).collect())
    }

    pub fn is_palindromic(&self) -> bool {
        self.0.iter().eq(self.0.iter().rev())
    }
}

fn edge_h_vector(vertices: &[Vec<Rational>], edges: &[(usize, usize)], rays: &[(usize, Vec<Rational>)], dim: usize, direction: &[Rational]) -> Result<HVector> {
    let mut down = vec![0usize; vertices.len()];
    let mut check = |v: usize, dir: &[Rational]| -> Result<()> {
        let s = dot(dir, direction);
        if s.is_zero() {
            return Err(Error::NonGenericDirection);
        }
        if s.is_negative() {
            down[v] += 1;
        }
        Ok(())
    };
    for &(a, b) in edges {
        let ab: Vec<Rational> = vertices[b].iter().zip(&vertices[a]).map(|(x, y)| x - y).collect();
        let ba: Vec<Rational> = ab.iter().map(|x| -x).collect();
        check(a, &ab)?;
        check(b, &ba)?;
    }
    for (v, dir) in rays {
        check(*v, dir)?;
    }
    let mut h = vec![0; dim + 1];
    for d in down {
        h[d] += 1;
    }
    Ok(HVector(h))
}

pub fn h_vector(p: &Polytope, direction: &[Rational]) -> Result<HVector> {
    edge_h_vector(&p.vertices, &p.edges, &p.rays, p.dim, direction)
}

/// `sum_k h_k q^{2k}` for a generic direction.
pub fn poincare_polynomial(p: &Polytope, direction: &[Rational]) -> Result<QPoly> {
    Ok(h_vector(p, direction)?.poincare())
}

/// Affine dimension of a point set.
fn affine_dim(points: &[&Vec<Rational>]) -> usize {
    let Some(first) = points.first() else { return 0 };
    let rows: Vec<Vec<Rational>> = points.iter().skip(1).map(|p| p.iter().zip(first.iter()).map(|(a, b)| a - b).collect()).collect();
    if rows.is_empty() {
        return 0;
    }
    rank(&RatMatrix::from_rows(rows, first.len()))
}

/// The face `Δ_a ∩ Δ_b` of a compact chamber polytope: vertices with zeros on
/// every position where the sign vectors differ.
struct Face {
    vertices: Vec<Vec<Rational>>,
    edges: Vec<(usize, usize)>,
    dim: usize,
}

fn intersection_face(pa: &Polytope, a: &SignVector, b: &SignVector) -> Option<Face> {
    let diff = a.differ(b);
    let keep: Vec<usize> = (0..pa.vertices.len()).filter(|&v| diff.iter().all(|i| pa.tight[v].contains(i))).collect();
    if keep.is_empty() {
        return None;
    }
    let index: HashMap<usize, usize> = keep.iter().enumerate().map(|(k, &v)| (v, k)).collect();
    let edges = pa.edges.iter().filter_map(|(x, y)| Some((*index.get(x)?, *index.get(y)?))).collect();
    let dim = affine_dim(&keep.iter().map(|&v| &pa.vertices[v]).collect::<Vec<_>>());
    Some(Face { vertices: keep.iter().map(|&v| pa.vertices[v].clone()).collect(), edges, dim })
}

/// First `(1, s, s^2, ...)`, `s = 2, 3, ...`, not orthogonal to any edge.
pub fn generic_direction(polytopes: &[&Polytope], dim: usize) -> Vec<Rational> {
    for s in 2i64.. {
        let dir: Vec<Rational> = (0..dim).map(|i| Rational::from(s.pow(i as u32))).collect();
        if polytopes.iter().all(|p| (0..p.vertices.len()).all(|v| p.edge_directions(v).iter().all(|e| !dot(e, &dir).is_zero()))) {
            return dir;
        }
    }
    unreachable!()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkeletonDims {
    /// Bounded feasible chambers whose polytope is compact, in increasing order.
    pub labels: Vec<SignVector>,
    /// `q^{codim} * Poincare(Δ_a ∩ Δ_b)`, zero when disjoint.
    pub dims: QMatrix,
    pub direction: Vec<Rational>,
}

pub fn skeleton_algebra_dims(datum: &CategoryODatum) -> Result<SkeletonDims> {
    require_valid(datum)?;
    let arr = Arrangement::new(datum);
    let tables = build_order_tables(datum)?;
    let verts = arr.vertices();
    let mut labels = Vec::new();
    let mut polys = Vec::new();
    for l in tables.labels() {
        let p = polytope_from_vertices(&arr, &l, &verts)?;
        if p.is_bounded() {
            labels.push(l);
            polys.push(p);
        }
    }
    let direction = generic_direction(&polys.iter().collect::<Vec<_>>(), arr.dim());
    let mut dims = vec![vec![QPoly::zero(); labels.len()]; labels.len()];
    for (i, a) in labels.iter().enumerate() {
        for (j, b) in labels.iter().enumerate() {
            if let Some(face) = intersection_face(&polys[i], a, b) {
                let h = edge_h_vector(&face.vertices, &face.edges, &[], face.dim, &direction)?;
                dims[i][j] = h.poincare().shift(polys[i].dim - face.dim);
            }
        }
    }
    Ok(SkeletonDims { labels, dims, direction })
}

fn qmat_eval_one(m: &QMatrix) -> Vec<Vec<i64>> {
    m.iter().map(|r| r.iter().map(|p| p.eval_one()).collect()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkeletonReport {
    pub labels: Vec<SignVector>,
    pub skeleton: QMatrix,
    /// `Ext(S_a, S_b)` of the finite algebra, restricted to compact chambers.
    pub ext_corner: QMatrix,
    pub ungraded_equal: bool,
    pub graded_equal: bool,
    pub offending: Vec<(SignVector, SignVector)>,
}

impl SkeletonReport {
    pub fn ok(&self) -> bool {
        self.ungraded_equal
    }
}

pub fn skeleton_koszul_check(datum: &CategoryODatum, bound: usize) -> Result<SkeletonReport> {
    let sk = skeleton_algebra_dims(datum)?;
    let alg = quotient_by_unbounded(datum, Flavor::DeRham)?;
    let ext = ext_algebra(&alg, bound)?;
    let idx: Vec<usize> = sk.labels.iter().map(|l| alg.label_index(l).expect("compact chamber is bounded feasible")).collect();
    let ext_corner: QMatrix = idx.iter().map(|&a| idx.iter().map(|&b| ext.dims[a][b].clone()).collect()).collect();
    let mut offending = Vec::new();
    let a = qmat_eval_one(&sk.dims);
    let b = qmat_eval_one(&ext_corner);
    for i in 0..idx.len() {
        for j in 0..idx.len() {
            if a[i][j] != b[i][j] {
                offending.push((sk.labels[i], sk.labels[j]));
            }
        }
    }
    Ok(SkeletonReport {
        labels: sk.labels,
        graded_equal: sk.dims == ext_corner,
        skeleton: sk.dims,
        ext_corner,
        ungraded_equal: offending.is_empty(),
        offending,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MirrorReport {
    pub labels: Vec<SignVector>,
    /// Graded block dimensions of the finite algebra of the datum.
    pub hilbert: QMatrix,
    /// `Ext(S_a, S_b)` over the Gale dual, indexed by the same sign vectors.
    pub dual_ext: QMatrix,
    pub total: i64,
    pub dual_total: i64,
    pub offending: Vec<(SignVector, SignVector)>,
}

impl MirrorReport {
    pub fn ok(&self) -> bool {
        self.offending.is_empty() && self.total == self.dual_total
    }
}

/// Blockwise `dim e_a A e_b = sum_k dim Ext^k(S_a, S_b)` over the Gale dual; the
/// relabeling is the identity on sign vectors since bounded and feasible swap.
pub fn mirror_dim_check(datum: &CategoryODatum, bound: usize) -> Result<MirrorReport> {
    let dual = gale_dual(datum);
    let (alg, dual_alg) = crate::par::join(|| quotient_by_unbounded(datum, Flavor::DeRham), || quotient_by_unbounded(&dual, Flavor::DeRham));
    let (alg, dual_alg) = (alg?, dual_alg?);
    let ext = ext_algebra(&dual_alg, bound)?;
    let hilbert = hilbert_matrix(&alg);
    let k = alg.num_labels();
    let mut dual_ext = vec![vec![QPoly::zero(); k]; k];
    let mut offending = Vec::new();
    let sigma: Vec<Option<usize>> = alg.labels.iter().map(|l| dual_alg.label_index(l)).collect();
    for a in 0..k {
        for b in 0..k {
            if let (Some(x), Some(y)) = (sigma[a], sigma[b]) {
                dual_ext[a][b] = ext.dims[x][y].clone();
            }
            if sigma[a].is_none() || sigma[b].is_none() || hilbert[a][b].eval_one() != dual_ext[a][b].eval_one() {
                offending.push((alg.labels[a], alg.labels[b]));
            }
        }
    }
    let total = hilbert.iter().flatten().map(|p| p.eval_one()).sum();
    let dual_total = ext.dims.iter().flatten().map(|p| p.eval_one()).sum();
    Ok(MirrorReport { labels: alg.labels.clone(), hilbert, dual_ext, total, dual_total, offending })
}

/// Degree-one and degree-two data of `A(t,-)` over the feasible chambers: arrows
/// join chambers at distance one; `A_2` has one line for each pair at distance
/// two and a copy of the linear forms on each diagonal block.
pub fn unbounded_quadratic_data(datum: &CategoryODatum) -> Result<QuadraticData> {
    require_valid(datum)?;
    let feasible = Arrangement::new(datum).feasible();
    let ring = DeRhamRing::new(datum);
    let nv = ring.nvars();
    let mut arrows = Vec::new();
    let mut arrow_pairs = Vec::new();
    for (i, a) in feasible.iter().enumerate() {
        for (j, b) in feasible.iter().enumerate() {
            if a.distance(b) == 1 {
                arrows.push((i, j));
                arrow_pairs.push((*a, *b));
            }
        }
    }
    let mut a2: HashMap<(usize, usize, usize), usize> = HashMap::new();
    for (i, a) in feasible.iter().enumerate() {
        for (j, b) in feasible.iter().enumerate() {
            if a.distance(b) == 2 {
                let k = a2.len();
                a2.insert((i, j, 0), k);
            }
        }
        for f in 0..nv {
            let k = a2.len();
            a2.insert((i, i, f), k);
        }
    }
    let mut mu = HashMap::new();
    for (x, &(i, j)) in arrows.iter().enumerate() {
        for (y, &(j2, l)) in arrows.iter().enumerate() {
            if j != j2 {
                continue;
            }
            let v = if i != l {
                vec![(a2[&(i, l, 0)], Rational::one())]
            } else {
                let c = ring.dbar_monomial(&theta(&arrow_pairs[x].0, &arrow_pairs[x].1, &arrow_pairs[y].1));
                (0..nv)
                    .filter_map(|f| {
                        let mut m = vec![0; nv];
                        m[f] = 1;
                        let coef = c.coeff(&m);
                        (!coef.is_zero()).then(|| (a2[&(i, i, f)], coef))
                    })
                    .collect()
            };
            mu.insert((x, y), v);
        }
    }
    Ok(QuadraticData { labels: feasible, arrows, a2_dim: a2.len(), mu })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KoszulCornerReport {
    pub labels: Vec<SignVector>,
    pub degree_bound: usize,
    /// Graded dims of the quadratic dual of `A(t,-)` on bounded feasible chambers.
    pub corner: QMatrix,
    /// Transposed Ext table of the finite algebra, truncated at the same degree.
    pub ext: QMatrix,
    pub offending: Vec<(SignVector, SignVector)>,
}

impl KoszulCornerReport {
    pub fn ok(&self) -> bool {
        self.offending.is_empty()
    }
}

pub fn koszul_corner_check(datum: &CategoryODatum, bound: usize) -> Result<KoszulCornerReport> {
    let data = unbounded_quadratic_data(datum)?;
    let dual = quadratic_dual(&data, bound)?;
    let alg = quotient_by_unbounded(datum, Flavor::DeRham)?;
    let ext = ext_algebra(&alg, bound.max(1) * 4)?;
    let h = dual.hilbert();
    let pos: Vec<usize> = alg.labels.iter().map(|l| data.labels.iter().position(|x| x == l).expect("bounded feasible is feasible")).collect();
    let k = alg.num_labels();
    let corner: QMatrix = pos.iter().map(|&a| pos.iter().map(|&b| h[a][b].truncate(bound)).collect()).collect();
    let ext_t: QMatrix = (0..k).map(|a| (0..k).map(|b| ext.dims[b][a].truncate(bound)).collect()).collect();
    let mut offending = Vec::new();
    for a in 0..k {
        for b in 0..k {
            if corner[a][b] != ext_t[a][b] {
                offending.push((alg.labels[a], alg.labels[b]));
            }
        }
    }
    Ok(KoszulCornerReport { labels: alg.labels.clone(), degree_bound: bound, corner, ext: ext_t, offending })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::chamber_polytope;
    use crate::fixtures::{ex0, ex1, ex2, fixtures};

    fn sv(s: &str) -> SignVector {
        s.parse().unwrap()
    }

    fn q(c: &[i64]) -> QPoly {
        QPoly::from_coeffs(c.to_vec())
    }

    #[test]
    fn segment_and_point() {
        let p = chamber_polytope(&ex1(), &sv("++")).unwrap();
        assert_eq!(poincare_polynomial(&p, &[Rational::one()]).unwrap(), q(&[1, 0, 1]));
        // the Gale dual of a single coordinate line is a point
        let dual = gale_dual(&ex0());
        let a = Arrangement::new(&dual).feasible()[0];
        let p = chamber_polytope(&dual, &a).unwrap();
        assert_eq!(p.dim, 0);
        assert_eq!(poincare_polynomial(&p, &[]).unwrap(), q(&[1]));
    }

    #[test]
    fn square() {
        // two independent segments: g = 0 on n = 4 with t cutting [0,1]^2
        let d = CategoryODatum::new(
            4,
            vec![vec![1, 0, 1, 0], vec![0, 1, 0, 1]],
            vec![0, 0, 1, 1].into_iter().map(Rational::from).collect(),
            vec![1, 2, 0, 0].into_iter().map(Rational::from).collect(),
        )
        .unwrap();
        let p = chamber_polytope(&d, &sv("++++")).unwrap();
        assert!(p.is_bounded());
        let dir = vec![Rational::from(1), Rational::from(3)];
        assert_eq!(poincare_polynomial(&p, &dir).unwrap(), q(&[1, 0, 2, 0, 1]));
        let bad = vec![Rational::from(1), Rational::from(0)];
        assert_eq!(poincare_polynomial(&p, &bad).unwrap_err(), Error::NonGenericDirection);
    }

    #[test]
    fn skeleton_examples() {
        let s = skeleton_algebra_dims(&ex1()).unwrap();
        assert_eq!(s.labels, vec![sv("++")]);
        assert_eq!(s.dims[0][0], q(&[1, 0, 1]));
        let s = skeleton_algebra_dims(&ex2()).unwrap();
        // two compact segments meeting in a point
        let off: Vec<&QPoly> = (0..s.labels.len()).flat_map(|i| (0..s.labels.len()).filter(move |&j| j != i).map(move |j| (i, j))).map(|(i, j)| &s.dims[i][j]).collect();
        assert!(off.contains(&&q(&[0, 1])));
        assert!(skeleton_algebra_dims(&ex0()).unwrap().labels.is_empty());
    }

    #[test]
    fn fixture_dualities() {
        for (name, d) in fixtures() {
            let s = skeleton_koszul_check(&d, 12).unwrap();
            assert!(s.ok(), "{name}: {s:?}");
            let m = mirror_dim_check(&d, 12).unwrap();
            assert!(m.ok(), "{name}: {m:?}");
            let c = koszul_corner_check(&d, 4).unwrap();
            assert!(c.ok(), "{name}: {c:?}");
        }
        assert_eq!(mirror_dim_check(&ex1(), 12).unwrap().total, 5);
    }
}
