//! Integer polynomials in one variable `q`, used for graded dimensions.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct QPoly {
    coeffs: Vec<i64>,
}

impl QPoly {
    pub fn from_coeffs(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn zero() -> Self {
        QPoly::default()
    }

    pub fn one() -> Self {
        QPoly::monomial(1, 0)
    }

    pub fn monomial(c: i64, e: usize) -> Self {
        let mut v = vec![0; e + 1];
        v[e] = c;
        QPoly::from_coeffs(v)
    }

    /// Graded dimension from a list of basis degrees.
    pub fn from_degrees(degrees: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Vec::new();
        for d in degrees {
            if v.len() <= d {
                v.resize(d + 1, 0);
            }
            v[d] += 1;
        }
        QPoly::from_coeffs(v)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, e: usize) -> i64 {
        self.coeffs.get(e).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval_one(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    /// `p(-q)`.
    pub fn at_minus_q(&self) -> Self {
        QPoly::from_coeffs(self.coeffs.iter().enumerate().map(|(i, &c)| if i % 2 == 1 { -c } else { c }).collect())
    }

    /// Terms of degree `<= deg`.
    pub fn truncate(&self, deg: usize) -> Self {
        QPoly::from_coeffs(self.coeffs.iter().take(deg + 1).copied().collect())
    }

    /// Multiplies by `q^e`.
    pub fn shift(&self, e: usize) -> Self {
        let mut v = vec![0; e];
        v.extend(&self.coeffs);
        QPoly::from_coeffs(v)
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, o: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        QPoly::from_coeffs((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, o: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        QPoly::from_coeffs((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, o: &QPoly) -> QPoly {
        if self.is_zero() || o.is_zero() {
            return QPoly::zero();
        }
        let mut v = vec![0; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        QPoly::from_coeffs(v)
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (e, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mag = c.abs();
            if out.is_empty() {
                if c < 0 {
                    out.push('-');
                }
            } else {
                out.push(if c < 0 { '-' } else { '+' });
            }
            let var = match e {
                0 => String::new(),
                1 => "q".into(),
                _ => format!("q^{e}"),
            };
            if var.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag == 1 {
                out.push_str(&var);
            } else {
                out.push_str(&format!("{mag}{var}"));
            }
        }
        write!(f, "{out}")
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub type QMatrix = Vec<Vec<QPoly>>;

pub fn qmat_mul(a: &QMatrix, b: &QMatrix) -> QMatrix {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let mut acc = QPoly::zero();
                    for (k, brow) in b.iter().enumerate() {
                        acc = &acc + &(&a[i][k] * &brow[j]);
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn qmat_transpose(a: &QMatrix) -> QMatrix {
    let m = a.first().map_or(0, |r| r.len());
    (0..m).map(|j| a.iter().map(|row| row[j].clone()).collect()).collect()
}

pub fn qmat_map(a: &QMatrix, f: impl Fn(&QPoly) -> QPoly) -> QMatrix {
    a.iter().map(|row| row.iter().map(&f).collect()).collect()
}

/// Is `a` the identity modulo terms of degree greater than `deg`?
pub fn qmat_is_identity_through(a: &QMatrix, deg: usize) -> bool {
    a.iter().enumerate().all(|(i, row)| {
        row.iter().enumerate().all(|(j, p)| {
            let expect = if i == j { QPoly::one() } else { QPoly::zero() };
            p.truncate(deg) == expect
        })
    })
}
