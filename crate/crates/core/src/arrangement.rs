//! Polarized hyperplane arrangements built from a category O datum.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{dot, kernel, kernel_lattice, rank, smith_normal_form, solve, IntMatrix, RatMatrix, Rational};
use crate::lp::{self, Inequalities, LpOutcome};
use crate::par;
use crate::sign::{SignVector, MAX_N};

/// A lattice inclusion `g_Z ⊂ Z^n` (rows of `g_basis`) with rational lifts of the
/// stability parameter `t` and the mass parameter `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CategoryODatum {
    pub n: usize,
    pub g_basis: IntMatrix,
    pub t_lift: Vec<Rational>,
    pub m_lift: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DatumJson {
    n: usize,
    g_basis: Vec<Vec<i64>>,
    t_lift: Vec<Rational>,
    m_lift: Vec<Rational>,
}

impl CategoryODatum {
    pub fn new(n: usize, g_basis: Vec<Vec<i64>>, t_lift: Vec<Rational>, m_lift: Vec<Rational>) -> Result<Self> {
        let rows = g_basis.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect();
        Self::from_parts(n, rows, t_lift, m_lift)
    }

    fn from_parts(n: usize, g_basis: Vec<Vec<BigInt>>, t_lift: Vec<Rational>, m_lift: Vec<Rational>) -> Result<Self> {
        if n == 0 || n > MAX_N {
            return Err(Error::Input(format!("n must be in 1..={MAX_N}, got {n}")));
        }
        if let Some(r) = g_basis.iter().find(|r| r.len() != n) {
            return Err(Error::Input(format!("g_basis row has {} entries, expected {n}", r.len())));
        }
        if t_lift.len() != n || m_lift.len() != n {
            return Err(Error::Input(format!(
                "t_lift and m_lift must have {n} entries (got {} and {})",
                t_lift.len(),
                m_lift.len()
            )));
        }
        Ok(CategoryODatum { n, g_basis: IntMatrix::from_rows(g_basis, n), t_lift, m_lift })
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: DatumJson = serde_json::from_str(s).map_err(|e| Error::Input(e.to_string()))?;
        let rows = raw.g_basis.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect();
        Self::from_parts(raw.n, rows, raw.t_lift, raw.m_lift)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("datum serializes")
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let raw = DatumJson {
            n: self.n,
            g_basis: self
                .g_basis
                .row_vecs()
                .into_iter()
                .map(|r| r.iter().map(|x| i64::try_from(x).expect("entry fits in i64")).collect())
                .collect(),
            t_lift: self.t_lift.clone(),
            m_lift: self.m_lift.clone(),
        };
        serde_json::to_value(raw).expect("datum serializes")
    }

    /// Rank of `g`.
    pub fn g_rank(&self) -> usize {
        self.g_basis.rows()
    }

    /// Dimension of `V = g^⊥`.
    pub fn dim_v(&self) -> usize {
        self.n - self.g_rank()
    }
}

/// Geometry derived from a datum: a Z-basis of `V_Z = g^⊥ ∩ Z^n` and intrinsic
/// coordinates `c` on `V(t) = t + V`, with `x = t + B c`.
#[derive(Clone, Debug)]
pub struct Arrangement {
    pub datum: CategoryODatum,
    /// Rows form a Z-basis of V_Z (d x n).
    pub v_basis: IntMatrix,
    /// n x d rational copy of the transpose of `v_basis`.
    b: RatMatrix,
    /// The mass parameter as a functional on intrinsic coordinates.
    m_intrinsic: Vec<Rational>,
}

impl Arrangement {
    pub fn new(datum: &CategoryODatum) -> Self {
        let v_basis = if datum.g_rank() == 0 {
            IntMatrix::identity(datum.n)
        } else {
            kernel_lattice(&datum.g_basis)
        };
        let b = RatMatrix::from_int(&v_basis.transpose());
        let d = v_basis.rows();
        let m_intrinsic = (0..d).map(|j| dot(&datum.m_lift, &b.column(j))).collect();
        Arrangement { datum: datum.clone(), v_basis, b, m_intrinsic }
    }

    pub fn n(&self) -> usize {
        self.datum.n
    }

    pub fn dim(&self) -> usize {
        self.v_basis.rows()
    }

    pub fn m_intrinsic(&self) -> &[Rational] {
        &self.m_intrinsic
    }

    pub fn basis_matrix(&self) -> &RatMatrix {
        &self.b
    }

    /// Ambient point `t + B c`.
    pub fn point(&self, c: &[Rational]) -> Vec<Rational> {
        let bc = self.b.mul_vec(c);
        self.datum.t_lift.iter().zip(bc).map(|(t, v)| t + &v).collect()
    }

    /// Ambient direction `B c`.
    pub fn direction(&self, c: &[Rational]) -> Vec<Rational> {
        self.b.mul_vec(c)
    }

    /// Value of the lifted mass parameter at an ambient point.
    pub fn mass(&self, x: &[Rational]) -> Rational {
        dot(&self.datum.m_lift, x)
    }

    /// The closed chamber `{alpha_i x_i >= 0}` in intrinsic coordinates.
    pub fn chamber_system(&self, alpha: &SignVector) -> Inequalities {
        let d = self.dim();
        let mut sys = Inequalities::new(d);
        for i in 0..self.n() {
            let s = Rational::from(alpha.sign(i));
            let row: Vec<Rational> = (0..d).map(|j| -(&s * self.b.get(i, j))).collect();
            sys.push(row, &s * &self.datum.t_lift[i]);
        }
        sys
    }

    /// Recession cone of the chamber together with `m . v >= 1`.
    fn unbounded_system(&self, alpha: &SignVector) -> Inequalities {
        let d = self.dim();
        let mut sys = Inequalities::new(d);
        for i in 0..self.n() {
            let s = Rational::from(alpha.sign(i));
            sys.push((0..d).map(|j| -(&s * self.b.get(i, j))).collect(), Rational::zero());
        }
        sys.push(self.m_intrinsic.iter().map(|x| -x).collect(), Rational::from(-1));
        sys
    }

    pub fn is_feasible(&self, alpha: &SignVector) -> bool {
        lp::is_feasible(&self.chamber_system(alpha))
    }

    pub fn is_bounded(&self, alpha: &SignVector) -> bool {
        !lp::is_feasible(&self.unbounded_system(alpha))
    }

    pub fn feasible(&self) -> Vec<SignVector> {
        let all: Vec<SignVector> = SignVector::all(self.n()).collect();
        let keep = par::map(&all, |a| self.is_feasible(a));
        let mut out: Vec<SignVector> = all.into_iter().zip(keep).filter(|(_, k)| *k).map(|(a, _)| a).collect();
        out.sort();
        out
    }

    pub fn bounded(&self) -> Vec<SignVector> {
        let all: Vec<SignVector> = SignVector::all(self.n()).collect();
        let keep = par::map(&all, |a| self.is_bounded(a));
        let mut out: Vec<SignVector> = all.into_iter().zip(keep).filter(|(_, k)| *k).map(|(a, _)| a).collect();
        out.sort();
        out
    }

    /// Vertices of the arrangement in V(t): points where some `d` coordinates with
    /// independent restrictions vanish. Each is returned with its zero set.
    pub fn vertices(&self) -> Vec<ArrangementVertex> {
        let d = self.dim();
        let mut out = Vec::new();
        for s in subsets_of_size(self.n(), d) {
            let bs = self.b.select_rows(&s);
            if d > 0 && bs.det().is_zero() {
                continue;
            }
            let rhs: Vec<Rational> = s.iter().map(|&i| -&self.datum.t_lift[i]).collect();
            let c = if d == 0 { Vec::new() } else { solve(&bs, &rhs).expect("invertible") };
            let x = self.point(&c);
            let zeros: Vec<usize> = (0..self.n()).filter(|&i| x[i].is_zero()).collect();
            if out.iter().any(|v: &ArrangementVertex| v.point == x) {
                continue;
            }
            out.push(ArrangementVertex { intrinsic: c, point: x, zeros });
        }
        out
    }

    /// Unit-speed direction leaving a simple vertex with zero set `tight` along the
    /// edge that keeps `tight \ {i}` at zero, moving into the side `sign` of hyperplane `i`.
    pub fn edge_direction(&self, tight: &[usize], i: usize, sign: i64) -> Vec<Rational> {
        let rest: Vec<usize> = tight.iter().copied().filter(|&j| j != i).collect();
        let k = kernel(&self.b.select_rows(&rest));
        assert_eq!(k.len(), 1, "edge direction needs a simple vertex");
        let mut dir = k.into_iter().next().unwrap();
        let along = dot(self.b.row(i), &dir);
        assert!(!along.is_zero());
        let scale = Rational::from(sign) / along;
        for x in dir.iter_mut() {
            *x = &*x * &scale;
        }
        dir
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrangementVertex {
    pub intrinsic: Vec<Rational>,
    pub point: Vec<Rational>,
    pub zeros: Vec<usize>,
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub kind: String,
    /// 1-based indices.
    pub subset: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub t_regular: bool,
    pub m_regular: bool,
    pub unimodular: bool,
    pub saturated: bool,
    pub witnesses: Vec<Witness>,
}

impl ValidationReport {
    pub fn is_category_o_datum(&self) -> bool {
        self.t_regular && self.m_regular && self.unimodular && self.saturated
    }
}

fn one_based(s: &[usize]) -> Vec<usize> {
    s.iter().map(|i| i + 1).collect()
}

/// Checks regularity of `t` and `m`, unimodularity and saturation. Never fails.
pub fn validate(datum: &CategoryODatum) -> ValidationReport {
    let mut witnesses = Vec::new();
    let n = datum.n;
    let g_ok = datum.g_rank() == 0 || {
        let snf = smith_normal_form(&datum.g_basis);
        snf.rank == datum.g_rank() && snf.all_divisors_one()
    };
    if !g_ok {
        witnesses.push(Witness { kind: "saturation".into(), subset: Vec::new() });
    }
    let arr = Arrangement::new(datum);
    let d = arr.dim();
    let b = arr.basis_matrix();
    let subsets: Vec<u32> = (1..(1u64 << n)).map(|x| x as u32).collect();

    // t: every nonempty flat H_S ∩ V(t) has codimension |S|
    let t_bad: Vec<Vec<usize>> = par::map(&subsets, |&mask| {
        let s: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let bs = b.select_rows(&s);
        let rhs: Vec<Rational> = s.iter().map(|&i| -&datum.t_lift[i]).collect();
        let consistent = if d == 0 { rhs.iter().all(|x| x.is_zero()) } else { solve(&bs, &rhs).is_some() };
        let r = if d == 0 { 0 } else { rank(&bs) };
        (consistent && r != s.len()).then_some(s)
    })
    .into_iter()
    .flatten()
    .collect();
    for s in &t_bad {
        witnesses.push(Witness { kind: "t_flat".into(), subset: one_based(s) });
    }

    // m: not constant on any one-dimensional flat of the central arrangement in V
    let mut all_subsets = vec![0u32];
    all_subsets.extend(&subsets);
    let m_bad: Vec<Vec<usize>> = par::map(&all_subsets, |&mask| {
        if d == 0 {
            return None;
        }
        let s: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let k = if s.is_empty() {
            RatMatrix::identity_q(d).row_vecs()
        } else {
            kernel(&b.select_rows(&s))
        };
        if k.len() != 1 {
            return None;
        }
        dot(arr.m_intrinsic(), &k[0]).is_zero().then_some(s)
    })
    .into_iter()
    .flatten()
    .collect();
    for s in &m_bad {
        witnesses.push(Witness { kind: "m_flat".into(), subset: one_based(s) });
    }

    // unimodularity: the projection of V_Z to Z^I has saturated image
    let uni_bad: Vec<Vec<usize>> = par::map(&subsets, |&mask| {
        let s: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        if d == 0 {
            return None;
        }
        let proj = arr.v_basis.select_cols(&s);
        let snf = smith_normal_form(&proj);
        (!snf.all_divisors_one()).then_some(s)
    })
    .into_iter()
    .flatten()
    .collect();
    for s in &uni_bad {
        witnesses.push(Witness { kind: "unimodularity".into(), subset: one_based(s) });
    }

    ValidationReport {
        t_regular: t_bad.is_empty(),
        m_regular: m_bad.is_empty(),
        unimodular: uni_bad.is_empty(),
        saturated: g_ok,
        witnesses,
    }
}

pub fn require_valid(datum: &CategoryODatum) -> Result<()> {
    let rep = validate(datum);
    if rep.is_category_o_datum() {
        Ok(())
    } else {
        let kinds: BTreeSet<&str> = rep.witnesses.iter().map(|w| w.kind.as_str()).collect();
        Err(Error::NotACategoryODatum(kinds.into_iter().collect::<Vec<_>>().join(", ")))
    }
}

pub fn feasible(datum: &CategoryODatum) -> Vec<SignVector> {
    Arrangement::new(datum).feasible()
}

pub fn bounded(datum: &CategoryODatum) -> Vec<SignVector> {
    Arrangement::new(datum).bounded()
}

/// A chamber polytope `Δ_α ∩ V(t)` in intrinsic coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Polytope {
    pub dim: usize,
    pub inequalities: Vec<Vec<Rational>>,
    pub rhs: Vec<Rational>,
    /// Vertices in intrinsic coordinates.
    pub vertices: Vec<Vec<Rational>>,
    /// The same vertices as ambient points of Q^n.
    pub points: Vec<Vec<Rational>>,
    /// Tight inequalities at each vertex.
    pub tight: Vec<Vec<usize>>,
    /// Bounded edges as pairs of vertex indices (i < j).
    pub edges: Vec<(usize, usize)>,
    /// Unbounded edges: (vertex index, intrinsic direction).
    pub rays: Vec<(usize, Vec<Rational>)>,
}

impl Polytope {
    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty()
    }

    /// Intrinsic direction vectors of all edges leaving vertex `v` (bounded edges
    /// point to the other endpoint).
    pub fn edge_directions(&self, v: usize) -> Vec<Vec<Rational>> {
        let mut out = Vec::new();
        for &(a, b) in &self.edges {
            let other = if a == v {
                b
            } else if b == v {
                a
            } else {
                continue;
            };
            out.push(self.vertices[other].iter().zip(&self.vertices[v]).map(|(x, y)| x - y).collect());
        }
        for (w, dir) in &self.rays {
            if *w == v {
                out.push(dir.clone());
            }
        }
        out
    }
}

pub fn chamber_polytope(datum: &CategoryODatum, alpha: &SignVector) -> Result<Polytope> {
    let arr = Arrangement::new(datum);
    let vertices = arr.vertices();
    polytope_from_vertices(&arr, alpha, &vertices)
}

pub(crate) fn polytope_from_vertices(
    arr: &Arrangement,
    alpha: &SignVector,
    all_vertices: &[ArrangementVertex],
) -> Result<Polytope> {
    let sys = arr.chamber_system(alpha);
    if !lp::is_feasible(&sys) {
        return Err(Error::InfeasibleChamber(*alpha));
    }
    let inside: Vec<&ArrangementVertex> = all_vertices
        .iter()
        .filter(|v| (0..arr.n()).all(|i| !(Rational::from(alpha.sign(i)) * &v.point[i]).is_negative()))
        .collect();
    let vertices: Vec<Vec<Rational>> = inside.iter().map(|v| v.intrinsic.clone()).collect();
    let points: Vec<Vec<Rational>> = inside.iter().map(|v| v.point.clone()).collect();
    let tight: Vec<Vec<usize>> = inside.iter().map(|v| v.zeros.clone()).collect();
    let mut edges = BTreeSet::new();
    let mut rays = Vec::new();
    for (vi, v) in inside.iter().enumerate() {
        for &i in &v.zeros {
            let dir = arr.edge_direction(&v.zeros, i, alpha.sign(i));
            let amb = arr.direction(&dir);
            // largest step keeping every other coordinate on its side
            let mut step: Option<Rational> = None;
            for j in 0..arr.n() {
                if v.zeros.contains(&j) {
                    continue;
                }
                let s = Rational::from(alpha.sign(j));
                if (&s * &amb[j]).is_negative() {
                    let lim = -(&v.point[j] / &amb[j]);
                    if step.as_ref().is_none_or(|cur| &lim < cur) {
                        step = Some(lim);
                    }
                }
            }
            match step {
                None => rays.push((vi, dir)),
                Some(s) => {
                    let end: Vec<Rational> = v.intrinsic.iter().zip(&dir).map(|(a, b)| a + &(&s * b)).collect();
                    let wi = vertices.iter().position(|w| *w == end).expect("edge endpoint is a vertex");
                    edges.insert((vi.min(wi), vi.max(wi)));
                }
            }
        }
    }
    Ok(Polytope {
        dim: arr.dim(),
        inequalities: sys.rows,
        rhs: sys.rhs,
        vertices,
        points,
        tight,
        edges: edges.into_iter().collect(),
        rays,
    })
}

/// Gale dual: `g' = V_Z`, `t' = -m`, `m' = -t`.
pub fn gale_dual(datum: &CategoryODatum) -> CategoryODatum {
    let arr = Arrangement::new(datum);
    let g = if arr.dim() == 0 { IntMatrix::from_rows(Vec::new(), datum.n) } else { arr.v_basis.clone() };
    CategoryODatum {
        n: datum.n,
        g_basis: g,
        t_lift: datum.m_lift.iter().map(|x| -x).collect(),
        m_lift: datum.t_lift.iter().map(|x| -x).collect(),
    }
}

/// Optimum of the mass parameter over a chamber, by simplex.
pub fn chamber_optimum(arr: &Arrangement, alpha: &SignVector) -> LpOutcome {
    lp::maximize(arr.m_intrinsic(), &arr.chamber_system(alpha))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{ex0, ex1, ex2};

    fn sv(s: &str) -> SignVector {
        s.parse().unwrap()
    }

    fn set(v: &[&str]) -> Vec<SignVector> {
        let mut out: Vec<SignVector> = v.iter().map(|s| sv(s)).collect();
        out.sort();
        out
    }

    #[test]
    fn validate_fixtures() {
        for d in [ex0(), ex1(), ex2()] {
            let r = validate(&d);
            assert!(r.is_category_o_datum(), "{r:?}");
        }
    }

    #[test]
    fn t_zero_on_ex1_is_not_regular() {
        let mut d = ex1();
        d.t_lift = vec![Rational::zero(), Rational::zero()];
        let r = validate(&d);
        assert!(!r.t_regular);
        assert!(r.witnesses.iter().any(|w| w.kind == "t_flat" && w.subset == vec![1, 2]));
    }

    #[test]
    fn non_unimodular_lattice() {
        let d = CategoryODatum::new(2, vec![vec![1, 2]], vec![1.into(), 0.into()], vec![0.into(), 1.into()]).unwrap();
        let r = validate(&d);
        assert!(!r.unimodular);
        assert!(r.witnesses.iter().any(|w| w.kind == "unimodularity" && w.subset == vec![1]));
    }

    #[test]
    fn feasible_sets() {
        assert_eq!(feasible(&ex0()), set(&["+", "-"]));
        assert_eq!(feasible(&ex1()), set(&["-+", "++", "+-"]));
        assert_eq!(feasible(&ex2()), set(&["---", "+--", "++-", "+++"]));
    }

    #[test]
    fn bounded_sets() {
        assert_eq!(bounded(&ex0()), set(&["-"]));
        let b1 = bounded(&ex1());
        assert!(b1.contains(&sv("-+")) && b1.contains(&sv("++")) && !b1.contains(&sv("+-")));
        let f2 = feasible(&ex2());
        let b2: Vec<SignVector> = bounded(&ex2()).into_iter().filter(|a| f2.contains(a)).collect();
        assert_eq!(b2, set(&["---", "+--", "++-"]));
    }

    #[test]
    fn chamber_polytopes() {
        let p = chamber_polytope(&ex1(), &sv("++")).unwrap();
        assert_eq!(p.vertices.len(), 2);
        assert_eq!(p.edges.len(), 1);
        assert!(p.is_bounded());
        let p = chamber_polytope(&ex1(), &sv("+-")).unwrap();
        assert_eq!(p.vertices.len(), 1);
        assert_eq!(p.rays.len(), 1);
        let p = chamber_polytope(&ex2(), &sv("+--")).unwrap();
        assert_eq!(p.vertices.len(), 2);
        assert!(matches!(chamber_polytope(&ex1(), &sv("--")), Err(Error::InfeasibleChamber(_))));
    }

    #[test]
    fn gale_dual_swaps_feasible_and_bounded() {
        for d in [ex0(), ex1(), ex2()] {
            let dual = gale_dual(&d);
            assert_eq!(feasible(&d), bounded(&dual));
            assert_eq!(bounded(&d), feasible(&dual));
            let dd = gale_dual(&dual);
            assert_eq!(feasible(&dd), feasible(&d));
            assert_eq!(bounded(&dd), bounded(&d));
        }
    }

    #[test]
    fn json_roundtrip() {
        let d = ex2();
        let back = CategoryODatum::from_json(&d.to_json()).unwrap();
        assert_eq!(back, d);
        let e = CategoryODatum::from_json(r#"{"n":2,"g_basis":[[1,1]],"t_lift":["1"],"m_lift":["0","-1"]}"#);
        assert!(matches!(e, Err(Error::Input(_))));
        let e = CategoryODatum::from_json(r#"{"n":1,"g_basis":[],"t_lift":["0"],"m_lift":["1"],"extra":1}"#);
        assert!(matches!(e, Err(Error::Input(_))));
    }
}
