use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::Rational;

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type RatMatrix = Matrix<Rational>;
pub type IntMatrix = Matrix<BigInt>;

impl<T: Clone> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds from row vectors; every row must have `cols` entries.
    pub fn from_rows(rows: Vec<Vec<T>>, cols: usize) -> Self {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r);
        }
        Matrix { rows: nrows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        Matrix::from_rows(idx.iter().map(|&i| self.row(i).to_vec()).collect(), self.cols)
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        Matrix::from_fn(self.rows, idx.len(), |i, j| self.get(i, idx[j]).clone())
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }
}

impl<T: Clone + Zero + One> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }
}

impl Matrix<Rational> {
    pub fn zeros_q(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| Rational::zero())
    }

    pub fn identity_q(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { Rational::one() } else { Rational::zero() })
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows);
        Matrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = Rational::zero();
            for k in 0..self.cols {
                let a = self.get(i, k);
                if !a.is_zero() {
                    acc += a * other.get(k, j);
                }
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn from_int(m: &IntMatrix) -> Self {
        m.map(|x| Rational::from(x.clone()))
    }
}

impl Matrix<BigInt> {
    pub fn from_i64(rows: Vec<Vec<i64>>, cols: usize) -> Self {
        Matrix::from_rows(
            rows.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect(),
            cols,
        )
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        Matrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = BigInt::zero();
            for k in 0..self.cols {
                acc += self.get(i, k) * other.get(k, j);
            }
            acc
        })
    }

    /// Exact determinant via fraction-free elimination over Q.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let q = RatMatrix::from_int(self);
        q.det().to_integer().expect("integer determinant")
    }
}

impl Matrix<Rational> {
    pub fn det(&self) -> Rational {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        let n = self.rows;
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !m.get(r, c).is_zero()) else {
                return Rational::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m.get(c, c).clone();
            det *= &piv;
            for r in c + 1..n {
                let f = m.get(r, c) / &piv;
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = m.get(r, j) - &(&f * m.get(c, j));
                    m.set(r, j, v);
                }
            }
        }
        det
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{} {}", self.rows, self.cols, self)
    }
}

/// Reduced row-echelon form of `m`, its pivot columns and rank.
pub fn rref(m: &RatMatrix) -> (RatMatrix, Vec<usize>, usize) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols() {
        if r == a.rows() {
            break;
        }
        let Some(p) = (r..a.rows()).find(|&i| !a.get(i, c).is_zero()) else {
            continue;
        };
        a.swap_rows(p, r);
        let inv = a.get(r, c).recip();
        for j in c..a.cols() {
            let v = a.get(r, j) * &inv;
            a.set(r, j, v);
        }
        for i in 0..a.rows() {
            if i == r || a.get(i, c).is_zero() {
                continue;
            }
            let f = a.get(i, c).clone();
            for j in c..a.cols() {
                let v = a.get(i, j) - &(&f * a.get(r, j));
                a.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    let rank = pivots.len();
    (a, pivots, rank)
}

pub fn rank(m: &RatMatrix) -> usize {
    rref(m).2
}

/// Basis (as rows) of the right kernel {x : m x = 0}.
pub fn kernel(m: &RatMatrix) -> Vec<Vec<Rational>> {
    let (r, pivots, rank) = rref(m);
    let n = m.cols();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); n];
            v[f] = Rational::one();
            for (row, &p) in pivots.iter().enumerate().take(rank) {
                v[p] = -r.get(row, f);
            }
            v
        })
        .collect()
}

/// Solves `m x = b`; returns one solution if consistent.
pub fn solve(m: &RatMatrix, b: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(m.rows(), b.len());
    let aug = Matrix::from_fn(m.rows(), m.cols() + 1, |i, j| {
        if j < m.cols() {
            m.get(i, j).clone()
        } else {
            b[i].clone()
        }
    });
    let (r, pivots, rank) = rref(&aug);
    if pivots.last() == Some(&m.cols()) {
        return None;
    }
    let mut x = vec![Rational::zero(); m.cols()];
    for (row, &p) in pivots.iter().enumerate().take(rank) {
        x[p] = r.get(row, m.cols()).clone();
    }
    Some(x)
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).filter(|(x, _)| !x.is_zero()).map(|(x, y)| x * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(rows: Vec<Vec<i64>>) -> RatMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(
            rows.into_iter().map(|r| r.into_iter().map(Rational::from).collect()).collect(),
            cols,
        )
    }

    #[test]
    fn rref_proportional_rows() {
        let (r, piv, rank) = rref(&q(vec![vec![1, 1], vec![2, 2]]));
        assert_eq!(rank, 1);
        assert_eq!(piv, vec![0]);
        assert_eq!(r, q(vec![vec![1, 1], vec![0, 0]]));
    }

    #[test]
    fn rref_identity() {
        let id = RatMatrix::identity_q(3);
        let (r, piv, rank) = rref(&id);
        assert_eq!(r, id);
        assert_eq!(piv, vec![0, 1, 2]);
        assert_eq!(rank, 3);
    }

    #[test]
    fn rref_plumbing_lattice() {
        let m = q(vec![vec![1, -1, 0], vec![0, 1, -1]]);
        let (r, _, rank) = rref(&m);
        assert_eq!(rank, 2);
        assert_eq!(r, q(vec![vec![1, 0, -1], vec![0, 1, -1]]));
        let k = kernel(&m);
        assert_eq!(k, vec![vec![Rational::from(1), Rational::from(1), Rational::from(1)]]);
    }

    #[test]
    fn solve_and_det() {
        let m = q(vec![vec![2, 1], vec![1, 3]]);
        assert_eq!(m.det(), Rational::from(5));
        let x = solve(&m, &[Rational::from(3), Rational::from(4)]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![Rational::from(3), Rational::from(4)]);
        let sing = q(vec![vec![1, 1], vec![1, 1]]);
        assert!(solve(&sing, &[Rational::from(0), Rational::from(1)]).is_none());
    }
}
