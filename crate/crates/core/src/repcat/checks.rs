use serde::{Deserialize, Serialize};

use super::{ext_between, minimal_projective_resolution, projective, simple, standard, GradedModule};
use crate::blockalg::{cartan_matrix, FiniteDimAlgebra};
use crate::chamber_order::OrderTables;
use crate::error::Result;
use crate::par;
use crate::sign::SignVector;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StandardFiltrationRow {
    pub label: SignVector,
    pub dim_v: usize,
    /// `|B_alpha ∩ F|`.
    pub neighborhood_size: usize,
    pub dim_p: usize,
    /// `sum of dim V_beta` over `beta` with `alpha` in `B_beta`.
    pub standards_sum: usize,
    /// `[V_alpha : S_beta]` read from `V_alpha e_beta` equals the indicator of `B_alpha`.
    pub composition_factors_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StandardFiltrationReport {
    pub rows: Vec<StandardFiltrationRow>,
}

impl StandardFiltrationReport {
    pub fn ok(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.dim_v == r.neighborhood_size && r.dim_p == r.standards_sum && r.composition_factors_ok)
    }
}

fn standards(alg: &FiniteDimAlgebra, tables: &OrderTables) -> Result<Vec<GradedModule>> {
    par::try_map(&alg.labels, |l| standard(alg, tables, l))
}

/// `N[beta][alpha] = dim V_beta e_alpha`.
fn standard_multiplicities(alg: &FiniteDimAlgebra, vs: &[GradedModule]) -> Vec<Vec<usize>> {
    vs.iter().map(|v| (0..alg.num_labels()).map(|a| v.label_part(alg, a).len()).collect()).collect()
}

pub fn standard_filtration_check(alg: &FiniteDimAlgebra, tables: &OrderTables) -> Result<StandardFiltrationReport> {
    let vs = standards(alg, tables)?;
    let n = standard_multiplicities(alg, &vs);
    let mut rows = Vec::new();
    for (a, &label) in alg.labels.iter().enumerate() {
        let entry = tables.entry(&label).expect("label in tables");
        let standards_sum = alg
            .labels
            .iter()
            .enumerate()
            .filter(|(_, b)| tables.in_neighborhood(b, &label))
            .map(|(b, _)| vs[b].dim())
            .sum();
        let composition_factors_ok =
            (0..alg.num_labels()).all(|b| n[a][b] == entry.neighborhood.contains(&alg.labels[b]) as usize);
        rows.push(StandardFiltrationRow {
            label,
            dim_v: vs[a].dim(),
            neighborhood_size: entry.neighborhood.len(),
            dim_p: projective(alg, &label)?.dim(),
            standards_sum,
            composition_factors_ok,
        });
    }
    Ok(StandardFiltrationReport { rows })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BggReport {
    pub labels: Vec<SignVector>,
    pub cartan: Vec<Vec<usize>>,
    /// `N[beta][alpha] = [V_beta : S_alpha]`.
    pub standard_multiplicities: Vec<Vec<usize>>,
    pub ntn: Vec<Vec<usize>>,
    /// `N` agrees with the combinatorial multiplicity matrix of the order.
    pub matches_order: bool,
}

impl BggReport {
    pub fn ok(&self) -> bool {
        self.cartan == self.ntn && self.matches_order
    }
}

pub fn bgg_reciprocity_check(alg: &FiniteDimAlgebra, tables: &OrderTables) -> Result<BggReport> {
    let vs = standards(alg, tables)?;
    let n = standard_multiplicities(alg, &vs);
    let k = alg.num_labels();
    let ntn = (0..k).map(|a| (0..k).map(|b| (0..k).map(|g| n[g][a] * n[g][b]).sum()).collect()).collect();
    let m = tables.multiplicity_matrix();
    let matches_order = alg.labels.iter().enumerate().all(|(i, li)| {
        alg.labels.iter().enumerate().all(|(j, lj)| {
            let (pi, pj) = (tables.position(li).unwrap(), tables.position(lj).unwrap());
            n[i][j] == m[pi][pj] as usize
        })
    });
    Ok(BggReport { labels: alg.labels.clone(), cartan: cartan_matrix(alg), standard_multiplicities: n, ntn, matches_order })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionalReport {
    /// Labels in increasing order.
    pub labels: Vec<SignVector>,
    /// `ext[a][b][k] = dim Ext^k(V_a, V_b)`, ungraded.
    pub ext: Vec<Vec<Vec<usize>>>,
    /// `(a, b, k)` with `Ext^k(V_a, V_b) != 0` against the order.
    pub violations: Vec<(SignVector, SignVector, usize)>,
    pub endomorphisms_scalar: bool,
}

impl ExceptionalReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty() && self.endomorphisms_scalar
    }
}

/// Standards form an exceptional sequence: `End(V_a) = Q`, `Hom(V_a, V_b) = 0`
/// unless `a <= b`, and `Ext^{>0}(V_a, V_b) = 0` unless `a < b`.
pub fn exceptional_collection_check(alg: &FiniteDimAlgebra, tables: &OrderTables, length_bound: usize) -> Result<ExceptionalReport> {
    let vs = standards(alg, tables)?;
    let res = par::try_map(&vs, |v| minimal_projective_resolution(alg, v, length_bound))?;
    let k = alg.num_labels();
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|a| (0..k).map(move |b| (a, b))).collect();
    let flat = par::map(&pairs, |&(a, b)| ext_between(alg, &res[a], &vs[b]));
    let ext: Vec<Vec<Vec<usize>>> = flat.chunks(k.max(1)).map(|c| c.to_vec()).collect();
    let pos: Vec<usize> = alg.labels.iter().map(|l| tables.position(l).unwrap()).collect();
    let mut violations = Vec::new();
    for (a, b) in pairs {
        for (deg, &d) in ext[a][b].iter().enumerate() {
            let allowed = if deg == 0 { pos[a] <= pos[b] } else { pos[a] < pos[b] };
            if d != 0 && !allowed {
                violations.push((alg.labels[a], alg.labels[b], deg));
            }
        }
    }
    let endomorphisms_scalar = (0..k).all(|a| ext[a][a].first() == Some(&1));
    Ok(ExceptionalReport { labels: alg.labels.clone(), ext, violations, endomorphisms_scalar })
}

/// `[M : S_alpha]` for every label, by dimension of `M e_alpha`.
pub fn composition_factors(alg: &FiniteDimAlgebra, m: &GradedModule) -> Vec<usize> {
    (0..alg.num_labels()).map(|a| m.label_part(alg, a).len()).collect()
}

/// `sum_a dim S_a * dim P_a`.
pub fn peirce_total(alg: &FiniteDimAlgebra) -> Result<usize> {
    let mut total = 0;
    for l in &alg.labels {
        total += simple(alg, l)?.dim() * projective(alg, l)?.dim();
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blockalg::{quotient_by_unbounded, Flavor};
    use crate::chamber_order::build_order_tables;
    use crate::fixtures::fixtures;

    #[test]
    fn fixture_reports() {
        for (_, d) in fixtures() {
            let a = quotient_by_unbounded(&d, Flavor::DeRham).unwrap();
            let t = build_order_tables(&d).unwrap();
            let s = standard_filtration_check(&a, &t).unwrap();
            assert!(s.ok(), "{s:?}");
            let b = bgg_reciprocity_check(&a, &t).unwrap();
            assert!(b.ok(), "{b:?}");
            let e = exceptional_collection_check(&a, &t, 12).unwrap();
            assert!(e.ok(), "{e:?}");
            if a.num_labels() > 1 {
                assert_eq!(e.ext[0][1], vec![1, 1]);
            }
            assert_eq!(peirce_total(&a).unwrap(), a.dim());
        }
    }
}
