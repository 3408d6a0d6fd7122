use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::Rational;

/// Element of the Laurent ring Q[tau, tau^-1]; tau stands for a formal 2*pi*i.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct TauScalar {
    terms: BTreeMap<i64, Rational>,
}

impl TauScalar {
    pub fn zero() -> Self {
        TauScalar::default()
    }

    pub fn one() -> Self {
        TauScalar::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        TauScalar::monomial(c, 0)
    }

    /// `c * tau^e`.
    pub fn monomial(c: Rational, e: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        TauScalar { terms }
    }

    pub fn tau() -> Self {
        TauScalar::monomial(Rational::one(), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn coeff(&self, e: i64) -> Rational {
        self.terms.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    /// The monomial `c * tau^e` if this is one.
    pub fn as_monomial(&self) -> Option<(Rational, i64)> {
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            Some((c.clone(), *e))
        } else {
            None
        }
    }

    /// Units of Q[tau, tau^-1] are exactly the nonzero monomials.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn inverse(&self) -> Option<Self> {
        self.as_monomial().map(|(c, e)| TauScalar::monomial(c.recip(), -e))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return TauScalar::zero();
        }
        TauScalar {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    pub fn shift(&self, by: i64) -> Self {
        TauScalar {
            terms: self.terms.iter().map(|(e, x)| (e + by, x.clone())).collect(),
        }
    }

    fn add_term(&mut self, e: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }
}

impl Add<&TauScalar> for &TauScalar {
    type Output = TauScalar;
    fn add(self, rhs: &TauScalar) -> TauScalar {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub<&TauScalar> for &TauScalar {
    type Output = TauScalar;
    fn sub(self, rhs: &TauScalar) -> TauScalar {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Mul<&TauScalar> for &TauScalar {
    type Output = TauScalar;
    fn mul(self, rhs: &TauScalar) -> TauScalar {
        let mut out = TauScalar::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &TauScalar {
    type Output = TauScalar;
    fn neg(self) -> TauScalar {
        self.scale(&Rational::from(-1))
    }
}

impl fmt::Display for TauScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| match e {
                0 => format!("{c}"),
                1 => format!("({c})t"),
                _ => format!("({c})t^{e}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for TauScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
