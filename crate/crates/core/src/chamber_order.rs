//! Optimum vertices, neighborhoods and the highest-weight order on bounded
//! feasible chambers.

use serde::{Deserialize, Serialize};

use crate::arrangement::{Arrangement, CategoryODatum};
use crate::error::{Error, Result};
use crate::linalg::{dot, Rational};
use crate::lp::LpOutcome;
use crate::par;
use crate::sign::SignVector;

pub use crate::sign::theta;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChamberEntry {
    pub alpha: SignVector,
    /// The m-maximizing vertex as an ambient point.
    pub point: Vec<Rational>,
    /// Value of the lifted mass parameter at `point`.
    pub mass: Rational,
    /// Hyperplanes through `point` (0-based).
    pub b: Vec<usize>,
    /// Feasible chambers in the neighborhood of `alpha`, in the order.
    pub neighborhood: Vec<SignVector>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderTables {
    pub n: usize,
    pub feasible: Vec<SignVector>,
    /// Bounded feasible chambers, sorted increasingly in the order.
    pub entries: Vec<ChamberEntry>,
}

impl OrderTables {
    pub fn labels(&self) -> Vec<SignVector> {
        self.entries.iter().map(|e| e.alpha).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Position of `alpha` in the order.
    pub fn position(&self, alpha: &SignVector) -> Option<usize> {
        self.entries.iter().position(|e| e.alpha == *alpha)
    }

    pub fn entry(&self, alpha: &SignVector) -> Option<&ChamberEntry> {
        self.entries.iter().find(|e| e.alpha == *alpha)
    }

    /// Membership in `B_alpha`: agreement with `alpha` on `b_alpha`.
    pub fn in_neighborhood(&self, alpha: &SignVector, beta: &SignVector) -> bool {
        self.entry(alpha).is_some_and(|e| alpha.agrees_on(beta, &e.b))
    }

    pub fn is_feasible(&self, alpha: &SignVector) -> bool {
        self.feasible.binary_search(alpha).is_ok()
    }

    /// `M[beta][gamma] = 1` iff `gamma` lies in `B_beta ∩ F`, rows and columns in the order.
    pub fn multiplicity_matrix(&self) -> Vec<Vec<u8>> {
        self.entries
            .iter()
            .map(|row| self.entries.iter().map(|col| row.neighborhood.contains(&col.alpha) as u8).collect())
            .collect()
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["sign_vector", "p_alpha", "b_alpha", "B_alpha_cap_F", "rank"]).expect("csv");
        for (rank, e) in self.entries.iter().enumerate() {
            let p = e.point.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
            let b = e.b.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(" ");
            let nb = e.neighborhood.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(" ");
            w.write_record([e.alpha.to_string(), p, b, nb, rank.to_string()]).expect("csv");
        }
        String::from_utf8(w.into_inner().expect("csv")).expect("utf8")
    }
}

fn chamber_entry(arr: &Arrangement, alpha: &SignVector) -> Result<(SignVector, Vec<Rational>, Rational, Vec<usize>)> {
    let c = match crate::arrangement::chamber_optimum(arr, alpha) {
        LpOutcome::Optimal { point, .. } => point,
        LpOutcome::Infeasible => return Err(Error::InfeasibleChamber(*alpha)),
        LpOutcome::Unbounded => return Err(Error::DegenerateOptimum(*alpha)),
    };
    let x = arr.point(&c);
    let b: Vec<usize> = (0..arr.n()).filter(|&i| x[i].is_zero()).collect();
    if b.len() != arr.dim() {
        return Err(Error::DegenerateOptimum(*alpha));
    }
    // unique optimum: m strictly decreases along every edge leaving the vertex
    for &i in &b {
        let dir = arr.edge_direction(&b, i, alpha.sign(i));
        if !dot(arr.m_intrinsic(), &dir).is_negative() {
            return Err(Error::DegenerateOptimum(*alpha));
        }
    }
    let mass = arr.mass(&x);
    Ok((*alpha, x, mass, b))
}

pub fn build_order_tables(datum: &CategoryODatum) -> Result<OrderTables> {
    let arr = Arrangement::new(datum);
    let feasible = arr.feasible();
    let bf: Vec<SignVector> = feasible.iter().copied().filter(|a| arr.is_bounded(a)).collect();
    let mut raw = par::try_map(&bf, |a| chamber_entry(&arr, a))?;
    raw.sort_by(|x, y| x.2.cmp(&y.2).then(x.0.cmp(&y.0)));
    let order: Vec<SignVector> = raw.iter().map(|r| r.0).collect();
    let entries = raw
        .into_iter()
        .map(|(alpha, point, mass, b)| {
            let neighborhood = order.iter().copied().filter(|beta| alpha.agrees_on(beta, &b)).collect();
            ChamberEntry { alpha, point, mass, b, neighborhood }
        })
        .collect();
    Ok(OrderTables { n: datum.n, feasible, entries })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredictedDimensions {
    pub labels: Vec<SignVector>,
    pub dim_v: Vec<usize>,
    pub dim_p: Vec<usize>,
    pub cartan: Vec<Vec<usize>>,
    pub total: usize,
}

impl PredictedDimensions {
    pub fn from_tables(tables: &OrderTables) -> Self {
        let m = tables.multiplicity_matrix();
        let k = m.len();
        let dim_v: Vec<usize> = tables.entries.iter().map(|e| e.neighborhood.len()).collect();
        let dim_p: Vec<usize> = (0..k).map(|a| (0..k).filter(|&b| m[b][a] == 1).map(|b| dim_v[b]).sum()).collect();
        let cartan: Vec<Vec<usize>> = (0..k)
            .map(|i| (0..k).map(|j| (0..k).map(|l| (m[l][i] * m[l][j]) as usize).sum()).collect())
            .collect();
        let total = dim_p.iter().sum();
        PredictedDimensions { labels: tables.labels(), dim_v, dim_p, cartan, total }
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["label".to_string(), "dim_V".into(), "dim_P".into()];
        header.extend(self.labels.iter().map(|l| format!("C{l}")));
        w.write_record(&header).expect("csv");
        for (i, l) in self.labels.iter().enumerate() {
            let mut rec = vec![l.to_string(), self.dim_v[i].to_string(), self.dim_p[i].to_string()];
            rec.extend(self.cartan[i].iter().map(|x| x.to_string()));
            w.write_record(&rec).expect("csv");
        }
        let mut total = vec!["total".to_string(), String::new(), self.total.to_string()];
        total.extend(self.labels.iter().map(|_| String::new()));
        w.write_record(&total).expect("csv");
        String::from_utf8(w.into_inner().expect("csv")).expect("utf8")
    }
}

pub fn predicted_dimensions(datum: &CategoryODatum) -> Result<PredictedDimensions> {
    Ok(PredictedDimensions::from_tables(&build_order_tables(datum)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{ex0, ex1, ex2};

    fn sv(s: &str) -> SignVector {
        s.parse().unwrap()
    }

    #[test]
    fn ex1_tables() {
        let t = build_order_tables(&ex1()).unwrap();
        assert_eq!(t.labels(), vec![sv("-+"), sv("++")]);
        let pp = t.entry(&sv("++")).unwrap();
        assert_eq!(pp.b, vec![1]);
        assert_eq!(pp.neighborhood, vec![sv("-+"), sv("++")]);
        let mp = t.entry(&sv("-+")).unwrap();
        assert_eq!(mp.b, vec![0]);
        assert_eq!(mp.neighborhood, vec![sv("-+")]);
    }

    #[test]
    fn ex2_multiplicity() {
        let t = build_order_tables(&ex2()).unwrap();
        assert_eq!(t.labels(), vec![sv("---"), sv("+--"), sv("++-")]);
        assert_eq!(t.multiplicity_matrix(), vec![vec![1, 0, 0], vec![1, 1, 0], vec![1, 1, 1]]);
        let b: Vec<Vec<usize>> = t.entries.iter().map(|e| e.b.clone()).collect();
        assert_eq!(b, vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn ex0_tables() {
        let t = build_order_tables(&ex0()).unwrap();
        assert_eq!(t.labels(), vec![sv("-")]);
        assert_eq!(t.multiplicity_matrix(), vec![vec![1]]);
    }

    #[test]
    fn predicted() {
        let p = predicted_dimensions(&ex1()).unwrap();
        // order is (-,+), (+,+)
        assert_eq!(p.dim_v, vec![1, 2]);
        assert_eq!(p.dim_p, vec![3, 2]);
        assert_eq!(p.cartan, vec![vec![2, 1], vec![1, 1]]);
        assert_eq!(p.total, 5);
        let p = predicted_dimensions(&ex2()).unwrap();
        assert_eq!(p.dim_v, vec![1, 2, 3]);
        assert_eq!(p.dim_p, vec![6, 5, 3]);
        assert_eq!(p.cartan, vec![vec![3, 2, 1], vec![2, 2, 1], vec![1, 1, 1]]);
        assert_eq!(p.total, 14);
        assert_eq!(predicted_dimensions(&ex0()).unwrap().total, 1);
    }

    #[test]
    fn csv_has_one_row_per_chamber() {
        let t = build_order_tables(&ex2()).unwrap();
        let csv = t.to_csv();
        assert_eq!(csv.lines().count(), 4);
        assert!(csv.lines().nth(1).unwrap().starts_with("\"(-,-,-)\""));
    }
}
