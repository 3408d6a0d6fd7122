//! Integer lattice algorithms: Hermite and Smith normal forms, kernel lattices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{IntMatrix, Matrix};

/// Result of a Smith normal form computation: `u * m * v == d`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    /// Inverse of `v`, tracked alongside it.
    pub v_inv: IntMatrix,
    pub rank: usize,
}

impl Smith {
    /// Nonzero diagonal entries, in divisibility order.
    pub fn elementary_divisors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d.get(i, i).clone()).collect()
    }

    pub fn all_divisors_one(&self) -> bool {
        self.elementary_divisors().iter().all(|x| x.is_one())
    }
}

struct SnfState {
    m: IntMatrix,
    u: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl SnfState {
    fn row_swap(&mut self, a: usize, b: usize) {
        self.m.swap_rows(a, b);
        self.u.swap_rows(a, b);
    }

    fn col_swap(&mut self, a: usize, b: usize) {
        self.m.swap_cols(a, b);
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }

    /// row[dst] += c * row[src]
    fn row_add(&mut self, dst: usize, src: usize, c: &BigInt) {
        add_row(&mut self.m, dst, src, c);
        add_row(&mut self.u, dst, src, c);
    }

    /// col[dst] += c * col[src]
    fn col_add(&mut self, dst: usize, src: usize, c: &BigInt) {
        add_col(&mut self.m, dst, src, c);
        add_col(&mut self.v, dst, src, c);
        // inverse elementary op acts on rows of v_inv: row[src] -= c * row[dst]
        add_row(&mut self.v_inv, src, dst, &-c);
    }

    fn row_neg(&mut self, r: usize) {
        neg_row(&mut self.m, r);
        neg_row(&mut self.u, r);
    }
}

fn add_row(m: &mut IntMatrix, dst: usize, src: usize, c: &BigInt) {
    if c.is_zero() {
        return;
    }
    for j in 0..m.cols() {
        let v = m.get(dst, j) + c * m.get(src, j);
        m.set(dst, j, v);
    }
}

fn add_col(m: &mut IntMatrix, dst: usize, src: usize, c: &BigInt) {
    if c.is_zero() {
        return;
    }
    for i in 0..m.rows() {
        let v = m.get(i, dst) + c * m.get(i, src);
        m.set(i, dst, v);
    }
}

fn neg_row(m: &mut IntMatrix, r: usize) {
    for j in 0..m.cols() {
        let v = -m.get(r, j);
        m.set(r, j, v);
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> Smith {
    let (rows, cols) = (m.rows(), m.cols());
    let mut s = SnfState {
        m: m.clone(),
        u: IntMatrix::identity(rows),
        v: IntMatrix::identity(cols),
        v_inv: IntMatrix::identity(cols),
    };
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let x = s.m.get(i, j);
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| x.abs() < s.m.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        s.row_swap(t, bi);
        s.col_swap(t, bj);
        loop {
            let mut done = true;
            let p = s.m.get(t, t).clone();
            for i in t + 1..rows {
                let x = s.m.get(i, t).clone();
                if x.is_zero() {
                    continue;
                }
                let q = x.div_floor(&p);
                s.row_add(i, t, &-q);
                if !s.m.get(i, t).is_zero() {
                    done = false;
                }
            }
            for j in t + 1..cols {
                let x = s.m.get(t, j).clone();
                if x.is_zero() {
                    continue;
                }
                let q = x.div_floor(&p);
                s.col_add(j, t, &-q);
                if !s.m.get(t, j).is_zero() {
                    done = false;
                }
            }
            if !done {
                // move the smallest remainder in row/col t to the pivot
                let mut best = (t, t);
                for i in t..rows {
                    let x = s.m.get(i, t);
                    if !x.is_zero() && x.abs() < s.m.get(best.0, best.1).abs() {
                        best = (i, t);
                    }
                }
                for j in t..cols {
                    let x = s.m.get(t, j);
                    if !x.is_zero() && x.abs() < s.m.get(best.0, best.1).abs() {
                        best = (t, j);
                    }
                }
                s.row_swap(t, best.0);
                s.col_swap(t, best.1);
                continue;
            }
            // divisibility of the trailing block by the pivot
            let p = s.m.get(t, t).clone();
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !s.m.get(i, j).is_multiple_of(&p));
            match bad {
                Some((i, _)) => s.row_add(t, i, &BigInt::one()),
                None => break,
            }
        }
        if s.m.get(t, t).is_negative() {
            s.row_neg(t);
        }
        t += 1;
    }
    let rank = (0..rows.min(cols)).take_while(|&i| !s.m.get(i, i).is_zero()).count();
    Smith { u: s.u, d: s.m, v: s.v, v_inv: s.v_inv, rank }
}

/// Row-style Hermite normal form: returns `(h, u)` with `u * m == h`, `u` unimodular,
/// pivots positive and entries above each pivot reduced into `[0, pivot)`.
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let (rows, cols) = (m.rows(), m.cols());
    let mut h = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        loop {
            let nz: Vec<usize> = (r..rows).filter(|&i| !h.get(i, c).is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            let p = *nz.iter().min_by_key(|&&i| h.get(i, c).abs()).unwrap();
            h.swap_rows(r, p);
            u.swap_rows(r, p);
            let mut clean = true;
            for i in r + 1..rows {
                let x = h.get(i, c).clone();
                if x.is_zero() {
                    continue;
                }
                let q = x.div_floor(h.get(r, c));
                add_row(&mut h, i, r, &-&q);
                add_row(&mut u, i, r, &-q);
                if !h.get(i, c).is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if h.get(r, c).is_zero() {
            continue;
        }
        if h.get(r, c).is_negative() {
            neg_row(&mut h, r);
            neg_row(&mut u, r);
        }
        let p = h.get(r, c).clone();
        for i in 0..r {
            let q = h.get(i, c).div_floor(&p);
            add_row(&mut h, i, r, &-&q);
            add_row(&mut u, i, r, &-q);
        }
        r += 1;
    }
    (h, u)
}

/// Z-basis (as rows) of the saturated kernel lattice `{x in Z^n : m x = 0}`,
/// returned in Hermite normal form.
pub fn kernel_lattice(m: &IntMatrix) -> IntMatrix {
    let s = smith_normal_form(m);
    let n = m.cols();
    let basis: Vec<Vec<BigInt>> = (s.rank..n).map(|j| s.v.column(j)).collect();
    let k = Matrix::from_rows(basis, n);
    let (h, _) = hermite_normal_form(&k);
    let nonzero: Vec<usize> = (0..h.rows()).filter(|&i| h.row(i).iter().any(|x| !x.is_zero())).collect();
    h.select_rows(&nonzero)
}

/// Coordinates on `Z^n / L` for a saturated sublattice `L` spanned by the rows of `g`.
///
/// Returns `(p, s)` where `p` (`d x n`) is surjective with kernel `L` and `s`
/// (`n x d`) is a section: `p * s == I_d`. Returns `None` if `L` is not saturated
/// or the rows are dependent.
pub fn quotient_coordinates(g: &IntMatrix) -> Option<(IntMatrix, IntMatrix)> {
    let n = g.cols();
    let k = g.rows();
    let s = smith_normal_form(g);
    if s.rank != k || !s.all_divisors_one() {
        return None;
    }
    let d = n - k;
    let p = Matrix::from_fn(d, n, |j, i| s.v.get(i, k + j).clone());
    let sec = Matrix::from_fn(n, d, |i, j| s.v_inv.get(k + j, i).clone());
    Some((p, sec))
}

/// Is the lattice spanned by the rows of `m` a direct summand of Z^cols?
pub fn is_saturated(m: &IntMatrix) -> bool {
    smith_normal_form(m).all_divisors_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(rows: Vec<Vec<i64>>) -> IntMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        IntMatrix::from_i64(rows, cols)
    }

    fn check_smith(m: &IntMatrix) -> Smith {
        let s = smith_normal_form(m);
        assert_eq!(s.u.mul(m).mul(&s.v), s.d);
        assert!(s.u.det().abs().is_one());
        assert!(s.v.det().abs().is_one());
        assert_eq!(s.v.mul(&s.v_inv), IntMatrix::identity(m.cols()));
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert!(s.d.get(i, j).is_zero());
                }
            }
        }
        let divs = s.elementary_divisors();
        for w in divs.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        s
    }

    #[test]
    fn smith_diag_2_3() {
        let s = check_smith(&z(vec![vec![2, 0], vec![0, 3]]));
        assert_eq!(s.elementary_divisors(), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn smith_identity_and_unimodular_row() {
        let s = check_smith(&IntMatrix::identity(3));
        assert_eq!(s.d, IntMatrix::identity(3));
        let s = check_smith(&z(vec![vec![1, 1]]));
        assert_eq!(s.d, z(vec![vec![1, 0]]));
    }

    #[test]
    fn hnf_basic() {
        let m = z(vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let (h, u) = hermite_normal_form(&m);
        assert_eq!(u.mul(&m), h);
        assert!(u.det().abs().is_one());
        assert_eq!(h, z(vec![vec![2, 4, 4], vec![0, 6, 0], vec![0, 0, 12]]));
    }

    #[test]
    fn kernels_of_fixture_lattices() {
        assert_eq!(kernel_lattice(&z(vec![vec![1, 1]])), z(vec![vec![1, -1]]));
        assert_eq!(kernel_lattice(&z(vec![vec![1, -1, 0], vec![0, 1, -1]])), z(vec![vec![1, 1, 1]]));
        assert_eq!(kernel_lattice(&z(vec![vec![0, 0, 0]])), IntMatrix::identity(3));
        assert_eq!(kernel_lattice(&z(vec![vec![1, 2]])), z(vec![vec![2, -1]]));
    }

    #[test]
    fn quotient_coordinates_have_kernel_g() {
        let g = z(vec![vec![1, -1, 0], vec![0, 1, -1]]);
        let (p, s) = quotient_coordinates(&g).unwrap();
        assert_eq!(p.mul(&s), IntMatrix::identity(1));
        assert!(p.mul(&g.transpose()).row(0).iter().all(|x| x.is_zero()));
        assert!(quotient_coordinates(&z(vec![vec![2, 0]])).is_none());
    }
}
