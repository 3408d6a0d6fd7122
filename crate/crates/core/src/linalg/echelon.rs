use std::collections::BTreeMap;

use super::Rational;

/// Incrementally built row-echelon basis of a subspace of Q^n.
///
/// Rows are stored sparsely and keyed by their leading column; a lower column
/// index is preferred as pivot. Columns without a pivot index a basis of the
/// quotient Q^n / span, and [`EchelonBasis::reduce`] returns the unique
/// representative supported on them.
#[derive(Clone, Debug, Default)]
pub struct EchelonBasis {
    dim: usize,
    rows: BTreeMap<usize, Vec<(usize, Rational)>>,
}

impl EchelonBasis {
    pub fn new(dim: usize) -> Self {
        EchelonBasis { dim, rows: BTreeMap::new() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.rows.contains_key(&col)
    }

    /// Columns that carry no pivot, in increasing order.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.dim).filter(|c| !self.rows.contains_key(c)).collect()
    }

    fn reduce_dense(&self, v: &mut [Rational]) {
        for (&p, row) in &self.rows {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (c, x) in row {
                let t = &f * x;
                v[*c] -= t;
            }
        }
    }

    /// Normal form of `v` modulo the span (zero on every pivot column).
    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut w = v.to_vec();
        self.reduce_dense(&mut w);
        w
    }

    pub fn reduce_sparse(&self, v: &[(usize, Rational)]) -> Vec<Rational> {
        let mut w = vec![Rational::zero(); self.dim];
        for (c, x) in v {
            w[*c] += x;
        }
        self.reduce_dense(&mut w);
        w
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(Rational::is_zero)
    }

    /// Adds `v` to the span. Returns true if the rank grew.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        let mut w = v.to_vec();
        self.insert_owned(&mut w)
    }

    pub fn insert_sparse(&mut self, v: &[(usize, Rational)]) -> bool {
        if self.is_full() {
            return false;
        }
        let mut w = vec![Rational::zero(); self.dim];
        for (c, x) in v {
            w[*c] += x;
        }
        self.insert_owned(&mut w)
    }

    fn insert_owned(&mut self, w: &mut [Rational]) -> bool {
        if self.is_full() {
            return false;
        }
        self.reduce_dense(w);
        let Some(lead) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[lead].recip();
        let row: Vec<(usize, Rational)> = w
            .iter()
            .enumerate()
            .skip(lead)
            .filter(|(_, x)| !x.is_zero())
            .map(|(c, x)| (c, x * &inv))
            .collect();
        self.rows.insert(lead, row);
        true
    }

    /// Rows of the basis as dense vectors, ordered by pivot.
    pub fn basis(&self) -> Vec<Vec<Rational>> {
        self.rows
            .values()
            .map(|row| {
                let mut v = vec![Rational::zero(); self.dim];
                for (c, x) in row {
                    v[*c] = x.clone();
                }
                v
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from(x)).collect()
    }

    #[test]
    fn insert_reduce_normal_form() {
        let mut e = EchelonBasis::new(3);
        assert!(e.insert(&r(&[0, 1, 1])));
        assert!(e.insert(&r(&[1, 1, 0])));
        assert!(!e.insert(&r(&[1, 2, 1])));
        assert_eq!(e.rank(), 2);
        assert_eq!(e.free_columns(), vec![2]);
        // (0,0,1) = -(0,1,1) + ... normal form lives on column 2
        let nf = e.reduce(&r(&[0, 1, 0]));
        assert_eq!(nf, r(&[0, 0, -1]));
        assert!(e.contains(&r(&[2, 3, 1])));
    }
}
