use std::collections::{BTreeMap, HashMap};

use crate::blockalg::FiniteDimAlgebra;
use crate::linalg::{kernel, EchelonBasis, RatMatrix, Rational};

/// `⊕_s e_{label_s} A <shift_s>` as a right module, with basis pairs
/// (summand, algebra basis element in row `label_s`).
#[derive(Clone, Debug)]
pub struct FreeModule {
    pub summands: Vec<(usize, usize)>,
    pub basis: Vec<(usize, usize)>,
    index: HashMap<(usize, usize), usize>,
}

/// A (right label, degree) component.
pub type Stratum = (usize, usize);

impl FreeModule {
    pub fn new(alg: &FiniteDimAlgebra, summands: Vec<(usize, usize)>) -> Self {
        let mut basis = Vec::new();
        for (s, &(label, _)) in summands.iter().enumerate() {
            for c in 0..alg.num_labels() {
                for &i in alg.block(label, c) {
                    basis.push((s, i));
                }
            }
        }
        let index = basis.iter().enumerate().map(|(k, &b)| (b, k)).collect();
        FreeModule { summands, basis, index }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn zero(&self) -> Vec<Rational> {
        vec![Rational::zero(); self.dim()]
    }

    pub fn index_of(&self, summand: usize, alg_index: usize) -> Option<usize> {
        self.index.get(&(summand, alg_index)).copied()
    }

    pub fn stratum(&self, alg: &FiniteDimAlgebra, k: usize) -> Stratum {
        let (s, i) = self.basis[k];
        (alg.basis[i].right, self.summands[s].1 + alg.basis[i].degree)
    }

    /// `v * b_j`.
    pub fn mul(&self, alg: &FiniteDimAlgebra, v: &[Rational], j: usize) -> Vec<Rational> {
        let mut out = self.zero();
        for (k, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let (s, i) = self.basis[k];
            for (l, c) in alg.product(i, j) {
                out[self.index[&(s, *l)]] += x * c;
            }
        }
        out
    }

    /// The generator of summand `s`, i.e. `e_{label_s}` placed there.
    pub fn generator(&self, alg: &FiniteDimAlgebra, s: usize) -> Vec<Rational> {
        let mut v = self.zero();
        v[self.index[&(s, alg.idempotent(self.summands[s].0))]] = Rational::one();
        v
    }

    pub fn strata(&self, alg: &FiniteDimAlgebra) -> BTreeMap<Stratum, Vec<usize>> {
        let mut out: BTreeMap<Stratum, Vec<usize>> = BTreeMap::new();
        for k in 0..self.dim() {
            out.entry(self.stratum(alg, k)).or_default().push(k);
        }
        out
    }
}

/// A graded subspace of a free module, stored as independent homogeneous
/// vectors per stratum.
#[derive(Clone, Debug, Default)]
pub struct GradedSubspace {
    pub by_stratum: BTreeMap<Stratum, Vec<Vec<Rational>>>,
}

impl GradedSubspace {
    /// Span of homogeneous vectors (each supported in a single stratum).
    pub fn span(alg: &FiniteDimAlgebra, free: &FreeModule, vectors: impl IntoIterator<Item = Vec<Rational>>) -> Self {
        let mut ech: BTreeMap<Stratum, EchelonBasis> = BTreeMap::new();
        let mut by_stratum: BTreeMap<Stratum, Vec<Vec<Rational>>> = BTreeMap::new();
        for v in vectors {
            let Some(k) = v.iter().position(|x| !x.is_zero()) else { continue };
            let st = free.stratum(alg, k);
            debug_assert!(v.iter().enumerate().all(|(i, x)| x.is_zero() || free.stratum(alg, i) == st));
            if ech.entry(st).or_insert_with(|| EchelonBasis::new(free.dim())).insert(&v) {
                by_stratum.entry(st).or_default().push(v);
            }
        }
        GradedSubspace { by_stratum }
    }

    /// Submodule generated by homogeneous vectors.
    pub fn generated(alg: &FiniteDimAlgebra, free: &FreeModule, gens: &[Vec<Rational>]) -> Self {
        let vs = gens.iter().flat_map(|g| (0..alg.dim()).map(move |j| free.mul(alg, g, j)));
        GradedSubspace::span(alg, free, vs)
    }

    pub fn dim(&self) -> usize {
        self.by_stratum.values().map(|v| v.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn vectors(&self) -> impl Iterator<Item = &Vec<Rational>> {
        self.by_stratum.values().flatten()
    }
}

/// A quotient `F / K` of a free module by a graded submodule.
#[derive(Clone, Debug)]
pub struct GradedModule {
    pub free: FreeModule,
    pub sub: GradedSubspace,
    reducer: EchelonBasis,
    /// Free-module basis indices spanning the quotient.
    basis: Vec<usize>,
}

impl GradedModule {
    pub fn new(free: FreeModule, sub: GradedSubspace) -> Self {
        let mut reducer = EchelonBasis::new(free.dim());
        for v in sub.vectors() {
            reducer.insert(v);
        }
        let basis = reducer.free_columns();
        GradedModule { free, sub, reducer, basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Basis indices (into the module basis) lying in `M e_label`.
    pub fn label_part(&self, alg: &FiniteDimAlgebra, label: usize) -> Vec<usize> {
        (0..self.basis.len()).filter(|&q| alg.basis[self.free.basis[self.basis[q]].1].right == label).collect()
    }

    /// Degrees of the basis vectors lying in `M e_label`.
    pub fn label_degrees(&self, alg: &FiniteDimAlgebra, label: usize) -> Vec<usize> {
        self.label_part(alg, label).into_iter().map(|q| self.free.stratum(alg, self.basis[q]).1).collect()
    }

    pub fn coords(&self, v: &[Rational]) -> Vec<Rational> {
        let r = self.reducer.reduce(v);
        self.basis.iter().map(|&c| r[c].clone()).collect()
    }

    pub fn lift(&self, q: usize) -> Vec<Rational> {
        let mut v = self.free.zero();
        v[self.basis[q]] = Rational::one();
        v
    }

    /// `basis_q * b_j` in module coordinates.
    pub fn act(&self, alg: &FiniteDimAlgebra, q: usize, j: usize) -> Vec<Rational> {
        self.coords(&self.free.mul(alg, &self.lift(q), j))
    }

    /// The action satisfies the structure constants: `(v b_i) b_j = v (b_i b_j)`.
    pub fn is_module(&self, alg: &FiniteDimAlgebra) -> bool {
        (0..self.dim()).all(|q| {
            (0..alg.dim()).all(|i| {
                let vi = self.free.mul(alg, &self.lift(q), i);
                (0..alg.dim()).all(|j| {
                    let lhs = self.coords(&self.free.mul(alg, &vi, j));
                    let mut rhs = vec![Rational::zero(); self.dim()];
                    for (k, c) in alg.product(i, j) {
                        for (x, y) in rhs.iter_mut().zip(self.act(alg, q, *k)) {
                            *x += c * &y;
                        }
                    }
                    lhs == rhs
                })
            })
        })
    }
}

/// Kernel of the map `F' -> F` sending the basis vector `(g, i)` to `g * b_i`,
/// where `gens[g]` is the image of the generator of summand `g`.
pub fn kernel_of_cover(alg: &FiniteDimAlgebra, target: &FreeModule, source: &FreeModule, gens: &[Vec<Rational>]) -> GradedSubspace {
    let images: Vec<Vec<Rational>> = source.basis.iter().map(|&(g, i)| target.mul(alg, &gens[g], i)).collect();
    let target_strata = target.strata(alg);
    let mut out = Vec::new();
    for (st, cols) in source.strata(alg) {
        let rows = target_strata.get(&st).cloned().unwrap_or_default();
        if rows.is_empty() {
            for &c in &cols {
                let mut v = source.zero();
                v[c] = Rational::one();
                out.push(v);
            }
            continue;
        }
        let m = RatMatrix::from_fn(rows.len(), cols.len(), |r, c| images[cols[c]][rows[r]].clone());
        for kv in kernel(&m) {
            let mut v = source.zero();
            for (c, x) in cols.iter().zip(kv) {
                v[*c] = x;
            }
            out.push(v);
        }
    }
    GradedSubspace::span(alg, source, out)
}
