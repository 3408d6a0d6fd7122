//! Graded modules over `A(t,m)`: simples, projectives, standards, minimal
//! projective resolutions, Ext algebras, Koszulity and quadratic duals.

mod checks;
mod ext;
mod module;
mod quadratic;

use serde::{Deserialize, Serialize};

use crate::blockalg::FiniteDimAlgebra;
use crate::chamber_order::OrderTables;
use crate::error::{Error, Result};
use crate::linalg::{EchelonBasis, Rational};
use crate::sign::SignVector;

pub use checks::{
    bgg_reciprocity_check, composition_factors, exceptional_collection_check, peirce_total, standard_filtration_check, BggReport, ExceptionalReport, StandardFiltrationReport, StandardFiltrationRow,
};
pub use ext::{ext_algebra, ext_between, koszulity_check, ExtAlgebra, KoszulCertificate, YonedaBlock};
pub use module::{kernel_of_cover, FreeModule, GradedModule, GradedSubspace, Stratum};
pub use quadratic::{quadratic_dual, QuadraticData, QuadraticPresentation};

fn label(alg: &FiniteDimAlgebra, alpha: &SignVector) -> Result<usize> {
    alg.label_index(alpha).ok_or(Error::UnknownLabel(*alpha))
}

/// `P_alpha = e_alpha A`.
pub fn projective(alg: &FiniteDimAlgebra, alpha: &SignVector) -> Result<GradedModule> {
    let a = label(alg, alpha)?;
    let free = FreeModule::new(alg, vec![(a, 0)]);
    Ok(GradedModule::new(free, GradedSubspace::default()))
}

/// `S_alpha = P_alpha / rad P_alpha`, the radical being the positive-degree part.
pub fn simple(alg: &FiniteDimAlgebra, alpha: &SignVector) -> Result<GradedModule> {
    let a = label(alg, alpha)?;
    let free = FreeModule::new(alg, vec![(a, 0)]);
    let rad = radical_of_generators(alg, &free);
    Ok(GradedModule::new(free, rad))
}

fn radical_of_generators(alg: &FiniteDimAlgebra, free: &FreeModule) -> GradedSubspace {
    let vs: Vec<Vec<Rational>> = (0..free.dim())
        .filter(|&k| alg.basis[free.basis[k].1].degree > 0)
        .map(|k| {
            let mut v = free.zero();
            v[k] = Rational::one();
            v
        })
        .collect();
    GradedSubspace::span(alg, free, vs)
}

/// `V_alpha = P_alpha / sum_i p(alpha, alpha(i)) A` over `i` in `b_alpha` with
/// `alpha(i)` bounded and feasible.
pub fn standard(alg: &FiniteDimAlgebra, tables: &OrderTables, alpha: &SignVector) -> Result<GradedModule> {
    let a = label(alg, alpha)?;
    let entry = tables.entry(alpha).ok_or(Error::UnknownLabel(*alpha))?;
    let free = FreeModule::new(alg, vec![(a, 0)]);
    let mut gens = Vec::new();
    for &i in &entry.b {
        let Some(b) = alg.label_index(&alpha.flip(i)) else { continue };
        let path = alg
            .block(a, b)
            .iter()
            .copied()
            .find(|&k| alg.basis[k].monomial.iter().all(|&e| e == 0))
            .expect("minimal path in basis");
        let mut v = free.zero();
        v[free.index_of(0, path).expect("path in P_alpha")] = Rational::one();
        gens.push(v);
    }
    let sub = GradedSubspace::generated(alg, &free, &gens);
    Ok(GradedModule::new(free, sub))
}

/// One step of a resolution: the generators of `P_k` (label, degree) and their
/// images in the previous free module.
#[derive(Clone, Debug)]
pub struct ResolutionStep {
    pub free: FreeModule,
    /// For `k >= 1`, `boundary[g]` is the image of the g-th generator in `P_{k-1}`.
    pub boundary: Vec<Vec<Rational>>,
}

#[derive(Clone, Debug)]
pub struct Resolution {
    pub steps: Vec<ResolutionStep>,
    pub minimal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    /// `terms[k]` lists (label, internal degree) of the summands of `P_k`.
    pub terms: Vec<Vec<(SignVector, usize)>>,
}

impl Resolution {
    pub fn length(&self) -> usize {
        self.steps.len().saturating_sub(1)
    }

    pub fn summands(&self, k: usize) -> &[(usize, usize)] {
        &self.steps[k].free.summands
    }

    pub fn betti_table(&self, alg: &FiniteDimAlgebra) -> BettiTable {
        BettiTable {
            terms: self.steps.iter().map(|s| s.free.summands.iter().map(|&(l, d)| (alg.labels[l], d)).collect()).collect(),
        }
    }

    /// Every generator of `P_k` sits in internal degree `k`.
    pub fn is_linear(&self) -> bool {
        self.steps.iter().enumerate().all(|(k, s)| s.free.summands.iter().all(|&(_, d)| d == k))
    }
}

/// Minimal graded projective resolution of `M = F / K` by iterated covers of the
/// kernel modulo its radical.
pub fn minimal_projective_resolution(alg: &FiniteDimAlgebra, m: &GradedModule, length_bound: usize) -> Result<Resolution> {
    // P_0 -> M: minimal generators of M are those of F modulo K + rad F
    let free0 = &m.free;
    let mut steps = Vec::new();
    let p0 = minimal_cover(alg, free0, &m.sub, &radical_of_generators(alg, free0), true);
    let (mut prev_free, mut kernel) = match p0 {
        Cover::Identity => (free0.clone(), m.sub.clone()),
        Cover::Generators(summands, gens) => {
            let f = FreeModule::new(alg, summands);
            let k = kernel_of_quotient(alg, free0, &f, &gens, &m.sub);
            (f, k)
        }
    };
    steps.push(ResolutionStep { free: prev_free.clone(), boundary: Vec::new() });
    while !kernel.is_zero() {
        if steps.len() > length_bound {
            return Err(Error::LengthExceeded { bound: length_bound });
        }
        let rad = GradedSubspace::span(
            alg,
            &prev_free,
            kernel.vectors().flat_map(|v| (0..alg.dim()).filter(|&j| alg.basis[j].degree > 0).map(|j| prev_free.mul(alg, v, j))).collect::<Vec<_>>(),
        );
        let Cover::Generators(summands, gens) = minimal_cover(alg, &prev_free, &kernel, &rad, false) else { unreachable!() };
        let f = FreeModule::new(alg, summands);
        let next = kernel_of_cover(alg, &prev_free, &f, &gens);
        steps.push(ResolutionStep { free: f.clone(), boundary: gens });
        prev_free = f;
        kernel = next;
    }
    Ok(Resolution { steps, minimal: true })
}

enum Cover {
    Identity,
    Generators(Vec<(usize, usize)>, Vec<Vec<Rational>>),
}

/// Homogeneous vectors of `space` independent modulo `rad`, one summand each.
/// For the first step `space` is the quotient `F / K` and generators are taken
/// among the summand generators of `F` not already in `K + rad F`.
fn minimal_cover(alg: &FiniteDimAlgebra, free: &FreeModule, space: &GradedSubspace, rad: &GradedSubspace, first: bool) -> Cover {
    if first {
        // F is generated by its summand generators; keep those independent modulo K + rad F
        let mut ech = EchelonBasis::new(free.dim());
        for v in space.vectors().chain(rad.vectors()) {
            ech.insert(v);
        }
        let keep: Vec<usize> = (0..free.summands.len()).filter(|&s| ech.insert(&free.generator(alg, s))).collect();
        if keep.len() == free.summands.len() {
            return Cover::Identity;
        }
        let summands = keep.iter().map(|&s| free.summands[s]).collect();
        let gens = keep.iter().map(|&s| free.generator(alg, s)).collect();
        return Cover::Generators(summands, gens);
    }
    let mut summands = Vec::new();
    let mut gens = Vec::new();
    for (st, vs) in &space.by_stratum {
        let mut ech = EchelonBasis::new(free.dim());
        for r in rad.by_stratum.get(st).into_iter().flatten() {
            ech.insert(r);
        }
        for v in vs {
            if ech.insert(v) {
                summands.push(*st);
                gens.push(v.clone());
            }
        }
    }
    Cover::Generators(summands, gens)
}

/// Kernel of `F' -> F / K` for a cover given by generator images.
fn kernel_of_quotient(alg: &FiniteDimAlgebra, target: &FreeModule, source: &FreeModule, gens: &[Vec<Rational>], sub: &GradedSubspace) -> GradedSubspace {
    // preimage of K: solve in each stratum for combinations landing in K
    use crate::linalg::{kernel, RatMatrix};
    let images: Vec<Vec<Rational>> = source.basis.iter().map(|&(g, i)| target.mul(alg, &gens[g], i)).collect();
    let target_strata = target.strata(alg);
    let mut out = Vec::new();
    for (st, cols) in source.strata(alg) {
        let rows = target_strata.get(&st).cloned().unwrap_or_default();
        let ks: Vec<&Vec<Rational>> = sub.by_stratum.get(&st).map(|v| v.iter().collect()).unwrap_or_default();
        // unknowns: coefficients on cols and on K-basis vectors; image - K-combination = 0
        let ncols = cols.len() + ks.len();
        let m = RatMatrix::from_fn(rows.len(), ncols, |r, c| {
            if c < cols.len() {
                images[cols[c]][rows[r]].clone()
            } else {
                -&ks[c - cols.len()][rows[r]]
            }
        });
        let kers = if rows.is_empty() {
            (0..ncols).map(|c| (0..ncols).map(|x| if x == c { Rational::one() } else { Rational::zero() }).collect()).collect()
        } else {
            kernel(&m)
        };
        for kv in kers {
            let mut v = source.zero();
            for (c, x) in cols.iter().zip(&kv) {
                v[*c] = x.clone();
            }
            out.push(v);
        }
    }
    GradedSubspace::span(alg, source, out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blockalg::{quotient_by_unbounded, Flavor};
    use crate::chamber_order::build_order_tables;
    use crate::fixtures::{ex0, ex1, ex2};

    fn sv(s: &str) -> SignVector {
        s.parse().unwrap()
    }

    #[test]
    fn module_dimensions() {
        let d = ex1();
        let a = quotient_by_unbounded(&d, Flavor::DeRham).unwrap();
        let t = build_order_tables(&d).unwrap();
        assert_eq!(standard(&a, &t, &sv("++")).unwrap().dim(), 2);
        assert_eq!(standard(&a, &t, &sv("-+")).unwrap().dim(), 1);
        assert_eq!(simple(&a, &sv("++")).unwrap().dim(), 1);
        assert_eq!(projective(&a, &sv("-+")).unwrap().dim(), 3);
        assert!(standard(&a, &t, &sv("-+")).unwrap().is_module(&a));
        assert_eq!(simple(&a, &sv("+-")).unwrap_err(), Error::UnknownLabel(sv("+-")));

        let d = ex2();
        let a = quotient_by_unbounded(&d, Flavor::DeRham).unwrap();
        let dims: Vec<usize> = a.labels.iter().map(|l| projective(&a, l).unwrap().dim()).collect();
        assert_eq!(dims, vec![6, 5, 3]);
    }

    #[test]
    fn resolutions() {
        let a = quotient_by_unbounded(&ex0(), Flavor::DeRham).unwrap();
        let s = simple(&a, &sv("-")).unwrap();
        assert_eq!(minimal_projective_resolution(&a, &s, 4).unwrap().length(), 0);

        let d = ex1();
        let a = quotient_by_unbounded(&d, Flavor::DeRham).unwrap();
        let t = build_order_tables(&d).unwrap();
        let s = simple(&a, &sv("++")).unwrap();
        let r = minimal_projective_resolution(&a, &s, 6).unwrap();
        assert_eq!(r.length(), 2);
        assert!(r.is_linear());
        let v = standard(&a, &t, &sv("++")).unwrap();
        assert!(minimal_projective_resolution(&a, &v, 6).unwrap().length() <= 1);
        assert_eq!(minimal_projective_resolution(&a, &s, 1).unwrap_err(), Error::LengthExceeded { bound: 1 });
    }
}
