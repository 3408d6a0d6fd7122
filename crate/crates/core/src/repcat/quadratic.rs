use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::blockalg::FiniteDimAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{rank, EchelonBasis, RatMatrix, Rational};
use crate::qpoly::{QMatrix, QPoly};
use crate::sign::SignVector;

/// Degree-one generators of a graded quiver algebra together with the
/// multiplication `A_1 (x) A_1 -> A_2`.
#[derive(Clone, Debug)]
pub struct QuadraticData {
    pub labels: Vec<SignVector>,
    /// `(left, right)` labels of each degree-one basis element.
    pub arrows: Vec<(usize, usize)>,
    pub a2_dim: usize,
    /// Product of composable arrows in `A_2` coordinates.
    pub mu: HashMap<(usize, usize), Vec<(usize, Rational)>>,
}

impl QuadraticData {
    pub fn from_algebra(alg: &FiniteDimAlgebra) -> Self {
        let arrows_idx: Vec<usize> = (0..alg.dim()).filter(|&i| alg.basis[i].degree == 1).collect();
        let a2: HashMap<usize, usize> =
            (0..alg.dim()).filter(|&i| alg.basis[i].degree == 2).enumerate().map(|(k, i)| (i, k)).collect();
        let arrows = arrows_idx.iter().map(|&i| (alg.basis[i].left, alg.basis[i].right)).collect();
        let mut mu = HashMap::new();
        for (x, &i) in arrows_idx.iter().enumerate() {
            for (y, &j) in arrows_idx.iter().enumerate() {
                if alg.basis[i].right != alg.basis[j].left {
                    continue;
                }
                let v: Vec<(usize, Rational)> = alg.product(i, j).iter().map(|(k, c)| (a2[k], c.clone())).collect();
                mu.insert((x, y), v);
            }
        }
        QuadraticData { labels: alg.labels.clone(), arrows, a2_dim: a2.len(), mu }
    }

    fn composable(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self.mu.keys().copied().collect();
        out.sort_unstable();
        out
    }

    /// `dim A_2 - rank(mu)`; zero when `A_2` is spanned by products of arrows.
    pub fn generation_defect(&self) -> usize {
        let pairs = self.composable();
        if pairs.is_empty() || self.a2_dim == 0 {
            return self.a2_dim;
        }
        let mut m = RatMatrix::zeros_q(self.a2_dim, pairs.len());
        for (c, p) in pairs.iter().enumerate() {
            for (k, x) in &self.mu[p] {
                m.set(*k, c, x.clone());
            }
        }
        self.a2_dim - rank(&m)
    }
}

/// Block dimensions of `A^! = T(A_1^*) / (R^perp)` by degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadraticPresentation {
    pub labels: Vec<SignVector>,
    /// `dim V`, the degree-one part.
    pub generators: usize,
    /// `dim R = dim V (x)_S V - rank(mu)`.
    pub relations: usize,
    /// `dims[k][a][b] = dim e_a A^!_k e_b`.
    pub dims: Vec<Vec<Vec<usize>>>,
    /// Last degree computed; `dims` is complete if it ends in a zero degree.
    pub degree_bound: usize,
}

impl QuadraticPresentation {
    pub fn hilbert(&self) -> QMatrix {
        let n = self.labels.len();
        (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| QPoly::from_coeffs(self.dims.iter().map(|d| d[a][b] as i64).collect()))
                    .collect()
            })
            .collect()
    }

    pub fn is_finite(&self) -> bool {
        self.dims.last().is_some_and(|d| d.iter().flatten().all(|&x| x == 0))
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().flatten().flatten().sum()
    }
}

/// Quadratic dual of the algebra presented by `data`, through `degree_bound`
/// or until a degree vanishes.
pub fn quadratic_dual(data: &QuadraticData, degree_bound: usize) -> Result<QuadraticPresentation> {
    let defect = data.generation_defect();
    if defect > 0 {
        return Err(Error::NotQuadraticallyGenerated { defect });
    }
    let n = data.labels.len();
    let pairs = data.composable();
    // R^perp: for each A_2 basis element, the functional (x, y) -> coefficient of it in x*y
    let mut rperp: Vec<BTreeMap<(usize, usize), Rational>> = vec![BTreeMap::new(); data.a2_dim];
    for p in &pairs {
        for (k, c) in &data.mu[p] {
            rperp[*k].insert(*p, c.clone());
        }
    }
    let mut by_src: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (x, &(a, _)) in data.arrows.iter().enumerate() {
        by_src[a].push(x);
    }

    let mut dims = vec![(0..n).map(|a| (0..n).map(|b| (a == b) as usize).collect()).collect::<Vec<Vec<usize>>>()];
    let mut paths: Vec<Vec<usize>> = (0..data.arrows.len()).map(|x| vec![x]).collect();
    let mut k = 1;
    while k <= degree_bound {
        if k >= 2 {
            let mut next = Vec::new();
            for p in &paths {
                let end = data.arrows[*p.last().unwrap()].1;
                for &x in &by_src[end] {
                    let mut q = p.clone();
                    q.push(x);
                    next.push(q);
                }
            }
            paths = next;
        }
        let mut d = vec![vec![0usize; n]; n];
        // group by block
        let mut blocks: BTreeMap<(usize, usize), Vec<Vec<usize>>> = BTreeMap::new();
        for p in &paths {
            blocks.entry((data.arrows[p[0]].0, data.arrows[*p.last().unwrap()].1)).or_default().push(p.clone());
        }
        for ((a, b), ps) in blocks {
            let index: HashMap<&[usize], usize> = ps.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
            let mut ech = EchelonBasis::new(ps.len());
            if k >= 2 {
                for p in &ps {
                    for s in 0..k - 1 {
                        // relation rows placed at positions s, s+1 of a path sharing p outside them
                        for row in &rperp {
                            if !row.contains_key(&(p[s], p[s + 1])) {
                                continue;
                            }
                            let mut v = vec![Rational::zero(); ps.len()];
                            for (&(x, y), c) in row {
                                let mut q = p.clone();
                                q[s] = x;
                                q[s + 1] = y;
                                if let Some(&i) = index.get(q.as_slice()) {
                                    v[i] = c.clone();
                                }
                            }
                            ech.insert(&v);
                        }
                    }
                }
            }
            d[a][b] = ps.len() - ech.rank();
        }
        dims.push(d);
        if dims.last().unwrap().iter().flatten().all(|&x| x == 0) {
            break;
        }
        k += 1;
    }
    Ok(QuadraticPresentation {
        labels: data.labels.clone(),
        generators: data.arrows.len(),
        relations: pairs.len() - (data.a2_dim - defect),
        dims, degree_bound: k.min(degree_bound) })
}
