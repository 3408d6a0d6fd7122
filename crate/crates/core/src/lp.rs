//! Exact rational linear programming over systems `A x <= b` with `x` free.
//!
//! Feasibility is decided by Fourier–Motzkin elimination in dimension at most
//! three and by a two-phase simplex with Bland's rule otherwise. Optimization
//! always uses the simplex.

use std::collections::BTreeSet;

use crate::linalg::{dot, Rational};

/// Largest dimension for which feasibility goes through Fourier–Motzkin.
pub const FOURIER_MOTZKIN_MAX_DIM: usize = 3;

/// A system of inequalities `rows[i] . x <= rhs[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inequalities {
    pub dim: usize,
    pub rows: Vec<Vec<Rational>>,
    pub rhs: Vec<Rational>,
}

impl Inequalities {
    pub fn new(dim: usize) -> Self {
        Inequalities { dim, rows: Vec::new(), rhs: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Rational>, rhs: Rational) {
        assert_eq!(row.len(), self.dim);
        self.rows.push(row);
        self.rhs.push(rhs);
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn satisfied_by(&self, x: &[Rational]) -> bool {
        self.rows.iter().zip(&self.rhs).all(|(r, b)| &dot(r, x) <= b)
    }

    /// Indices of the inequalities that hold with equality at `x`.
    pub fn tight_at(&self, x: &[Rational]) -> Vec<usize> {
        self.rows
            .iter()
            .zip(&self.rhs)
            .enumerate()
            .filter(|(_, (r, b))| &dot(r, x) == *b)
            .map(|(i, _)| i)
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { point: Vec<Rational>, value: Rational },
}

/// Feasibility of the system, dispatching on its dimension.
pub fn is_feasible(sys: &Inequalities) -> bool {
    if sys.dim <= FOURIER_MOTZKIN_MAX_DIM {
        fourier_motzkin_feasible(sys)
    } else {
        simplex_feasible(sys)
    }
}

pub fn fourier_motzkin_feasible(sys: &Inequalities) -> bool {
    let mut rows: Vec<(Vec<Rational>, Rational)> =
        sys.rows.iter().cloned().zip(sys.rhs.iter().cloned()).collect();
    for j in 0..sys.dim {
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        let mut next = Vec::new();
        for (a, b) in rows {
            match a[j].signum() {
                1 => pos.push((a, b)),
                -1 => neg.push((a, b)),
                _ => next.push((a, b)),
            }
        }
        for (ap, bp) in &pos {
            for (an, bn) in &neg {
                let cp = -&an[j];
                let cn = ap[j].clone();
                let a: Vec<Rational> =
                    ap.iter().zip(an).map(|(x, y)| &(&cp * x) + &(&cn * y)).collect();
                let b = &(&cp * bp) + &(&cn * bn);
                next.push((a, b));
            }
        }
        rows = normalize_rows(next);
    }
    rows.iter().all(|(_, b)| !b.is_negative())
}

/// Scales each row so that its first nonzero coefficient has absolute value one
/// and drops duplicates.
fn normalize_rows(rows: Vec<(Vec<Rational>, Rational)>) -> Vec<(Vec<Rational>, Rational)> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (a, b) in rows {
        let scale = a.iter().find(|x| !x.is_zero()).map(|x| x.abs().recip());
        let (a, b) = match scale {
            Some(s) => (a.iter().map(|x| x * &s).collect::<Vec<_>>(), &b * &s),
            None => (a, b),
        };
        if seen.insert((a.clone(), b.clone())) {
            out.push((a, b));
        }
    }
    out
}

pub fn simplex_feasible(sys: &Inequalities) -> bool {
    !matches!(maximize(&vec![Rational::zero(); sys.dim], sys), LpOutcome::Infeasible)
}

/// Maximizes `objective . x` subject to the system.
pub fn maximize(objective: &[Rational], sys: &Inequalities) -> LpOutcome {
    assert_eq!(objective.len(), sys.dim);
    let d = sys.dim;
    let m = sys.len();
    // columns: x+ (d), x- (d), slack (m), artificial (m)
    let n_struct = 2 * d + m;
    let n_cols = n_struct + m;
    let mut tab = Tableau { rows: Vec::with_capacity(m), basis: Vec::with_capacity(m), n_cols };
    for i in 0..m {
        let mut row = vec![Rational::zero(); n_cols + 1];
        for j in 0..d {
            row[j] = sys.rows[i][j].clone();
            row[d + j] = -&sys.rows[i][j];
        }
        row[2 * d + i] = Rational::one();
        row[n_cols] = sys.rhs[i].clone();
        if sys.rhs[i].is_negative() {
            for x in row.iter_mut() {
                *x = -&*x;
            }
            row[n_struct + i] = Rational::one();
            tab.basis.push(n_struct + i);
        } else {
            tab.basis.push(2 * d + i);
        }
        tab.rows.push(row);
    }

    // phase one: maximize -(sum of artificials)
    let mut phase1 = vec![Rational::zero(); n_cols];
    for c in phase1.iter_mut().skip(n_struct) {
        *c = Rational::from(-1);
    }
    let allowed: Vec<bool> = (0..n_cols).map(|_| true).collect();
    match tab.optimize(&phase1, &allowed) {
        Phase::Unbounded => unreachable!("phase one objective is bounded"),
        Phase::Optimal => {}
    }
    let infeasibility: Rational = tab
        .basis
        .iter()
        .enumerate()
        .filter(|(_, &b)| b >= n_struct)
        .map(|(i, _)| tab.rows[i][n_cols].clone())
        .sum();
    if !infeasibility.is_zero() {
        return LpOutcome::Infeasible;
    }
    // drive artificial variables out of the basis
    let mut i = 0;
    while i < tab.rows.len() {
        if tab.basis[i] >= n_struct {
            match (0..n_struct).find(|&j| !tab.rows[i][j].is_zero()) {
                Some(j) => tab.pivot(i, j),
                None => {
                    tab.rows.remove(i);
                    tab.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }

    let mut cost = vec![Rational::zero(); n_cols];
    for j in 0..d {
        cost[j] = objective[j].clone();
        cost[d + j] = -&objective[j];
    }
    let allowed: Vec<bool> = (0..n_cols).map(|j| j < n_struct).collect();
    match tab.optimize(&cost, &allowed) {
        Phase::Unbounded => LpOutcome::Unbounded,
        Phase::Optimal => {
            let mut z = vec![Rational::zero(); n_cols];
            for (i, &b) in tab.basis.iter().enumerate() {
                z[b] = tab.rows[i][n_cols].clone();
            }
            let point: Vec<Rational> = (0..d).map(|j| &z[j] - &z[d + j]).collect();
            let value = dot(objective, &point);
            LpOutcome::Optimal { point, value }
        }
    }
}

enum Phase {
    Optimal,
    Unbounded,
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    n_cols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        let prow = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Maximizes `cost . z` from the current feasible basis using Bland's rule.
    fn optimize(&mut self, cost: &[Rational], allowed: &[bool]) -> Phase {
        let rhs = self.n_cols;
        loop {
            // reduced cost of column j: cost_j - sum_i cost_{basis_i} * a_ij
            let entering = (0..self.n_cols).find(|&j| {
                if !allowed[j] || self.basis.contains(&j) {
                    return false;
                }
                let mut rc = cost[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    if !cost[b].is_zero() && !self.rows[i][j].is_zero() {
                        rc -= &cost[b] * &self.rows[i][j];
                    }
                }
                rc.is_positive()
            });
            let Some(j) = entering else {
                return Phase::Optimal;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[j].is_positive() {
                    continue;
                }
                let ratio = &row[rhs] / &row[j];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => {
                        ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                None => return Phase::Unbounded,
                Some((i, _)) => self.pivot(i, j),
            }
        }
    }
}
