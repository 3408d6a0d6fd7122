//! The algebras `A(t,-)` with basis `R p(alpha, beta)` over feasible chambers,
//! their finite-dimensional quotients `A(t,m)`, and stratification checks.

mod drinfeld;
mod finite;
mod tor;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::arrangement::{require_valid, Arrangement, CategoryODatum};
use crate::coeffring::{DeRhamRing, LaurentElement, LocalBettiRing, Poly};
use crate::error::Result;
use crate::sign::{theta, SignVector};

pub use drinfeld::{derived_quotient_homology, DgHomology};
pub use finite::{cartan_matrix, hilbert_matrix, quotient_by_unbounded, quotient_by_unbounded_with_cap, BasisElement, FiniteDimAlgebra};
pub use tor::{tor0_stratifying_check, Tor0Defect, Tor0Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    DeRham,
    Betti,
}

impl std::str::FromStr for Flavor {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "derham" | "dr" | "de_rham" => Ok(Flavor::DeRham),
            "betti" | "bet" => Ok(Flavor::Betti),
            other => Err(format!("unknown flavor {other:?}")),
        }
    }
}

/// Coefficient of a minimal path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coeff {
    DeRham(Poly),
    Betti(LaurentElement),
}

impl Coeff {
    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::DeRham(p) => p.is_zero(),
            Coeff::Betti(x) => x.is_zero(),
        }
    }

    fn add(&self, o: &Coeff) -> Coeff {
        match (self, o) {
            (Coeff::DeRham(a), Coeff::DeRham(b)) => Coeff::DeRham(a.add(b)),
            (Coeff::Betti(a), Coeff::Betti(b)) => Coeff::Betti(a.add(b)),
            _ => panic!("mixed flavors"),
        }
    }

    fn mul(&self, o: &Coeff) -> Coeff {
        match (self, o) {
            (Coeff::DeRham(a), Coeff::DeRham(b)) => Coeff::DeRham(a.mul(b)),
            (Coeff::Betti(a), Coeff::Betti(b)) => Coeff::Betti(a.mul(b)),
            _ => panic!("mixed flavors"),
        }
    }
}

/// An element of `A(t,-)`: a coefficient for each pair of feasible chambers.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BlockElement {
    pub entries: BTreeMap<(SignVector, SignVector), Coeff>,
}

impl BlockElement {
    pub fn get(&self, a: &SignVector, b: &SignVector) -> Option<&Coeff> {
        self.entries.get(&(*a, *b))
    }
}

/// `A(t,-)` over the feasible chambers of a datum, in either flavor.
#[derive(Clone, Debug)]
pub struct BlockAlgebra {
    pub flavor: Flavor,
    pub datum: CategoryODatum,
    pub feasible: Vec<SignVector>,
    pub bounded_feasible: Vec<SignVector>,
    pub derham: DeRhamRing,
    pub betti: LocalBettiRing,
}

impl BlockAlgebra {
    pub fn build(datum: &CategoryODatum, flavor: Flavor) -> Result<Self> {
        require_valid(datum)?;
        let arr = Arrangement::new(datum);
        let feasible = arr.feasible();
        let bounded_feasible = feasible.iter().copied().filter(|a| arr.is_bounded(a)).collect();
        Ok(BlockAlgebra {
            flavor,
            datum: datum.clone(),
            feasible,
            bounded_feasible,
            derham: DeRhamRing::new(datum),
            betti: LocalBettiRing::new(datum),
        })
    }

    pub fn unbounded_feasible(&self) -> Vec<SignVector> {
        self.feasible.iter().copied().filter(|a| !self.bounded_feasible.contains(a)).collect()
    }

    /// `c^theta` with `c_i = dbar_i` (de Rham) or `1 - m_i` (Betti).
    pub fn c_power(&self, exps: &[u8]) -> Coeff {
        match self.flavor {
            Flavor::DeRham => Coeff::DeRham(self.derham.dbar_monomial(exps)),
            Flavor::Betti => {
                let g = &self.betti.group;
                let mut x = g.one();
                for (i, &e) in exps.iter().enumerate() {
                    for _ in 0..e {
                        x = x.mul(&g.one_minus_m(i));
                    }
                }
                Coeff::Betti(x)
            }
        }
    }

    /// Coefficient of `p(a, c)` in `p(a, b) p(b, c)`.
    pub fn path_product(&self, a: &SignVector, b: &SignVector, c: &SignVector) -> Coeff {
        self.c_power(&theta(a, b, c))
    }

    pub fn one_coeff(&self) -> Coeff {
        match self.flavor {
            Flavor::DeRham => Coeff::DeRham(Poly::one(self.derham.nvars())),
            Flavor::Betti => Coeff::Betti(self.betti.group.one()),
        }
    }

    /// The element `coeff * p(a, b)`.
    pub fn element(&self, a: SignVector, b: SignVector, coeff: Coeff) -> BlockElement {
        let mut e = BlockElement::default();
        if !coeff.is_zero() {
            e.entries.insert((a, b), coeff);
        }
        e
    }

    pub fn path(&self, a: SignVector, b: SignVector) -> BlockElement {
        self.element(a, b, self.one_coeff())
    }

    pub fn idempotent(&self, a: SignVector) -> BlockElement {
        self.path(a, a)
    }

    pub fn unit(&self) -> BlockElement {
        let mut e = BlockElement::default();
        for &a in &self.feasible {
            e.entries.insert((a, a), self.one_coeff());
        }
        e
    }

    pub fn add(&self, x: &BlockElement, y: &BlockElement) -> BlockElement {
        let mut out = x.clone();
        for (k, v) in &y.entries {
            let s = match out.entries.get(k) {
                Some(u) => u.add(v),
                None => v.clone(),
            };
            if s.is_zero() {
                out.entries.remove(k);
            } else {
                out.entries.insert(*k, s);
            }
        }
        out
    }

    pub fn mul(&self, x: &BlockElement, y: &BlockElement) -> BlockElement {
        let mut out = BlockElement::default();
        for ((a, b), u) in &x.entries {
            for ((b2, c), v) in &y.entries {
                if b != b2 {
                    continue;
                }
                let term = self.element(*a, *c, u.mul(v).mul(&self.path_product(a, b, c)));
                out = self.add(&out, &term);
            }
        }
        out
    }

    /// Degree of `p(a, b)`.
    pub fn path_degree(a: &SignVector, b: &SignVector) -> usize {
        a.distance(b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::ex1;

    fn sv(s: &str) -> SignVector {
        s.parse().unwrap()
    }

    #[test]
    fn ex1_products() {
        let a = BlockAlgebra::build(&ex1(), Flavor::DeRham).unwrap();
        let prod = a.mul(&a.path(sv("-+"), sv("++")), &a.path(sv("++"), sv("-+")));
        assert_eq!(prod.get(&sv("-+"), &sv("-+")), Some(&Coeff::DeRham(a.derham.dbar(0).clone())));
        let b = BlockAlgebra::build(&ex1(), Flavor::Betti).unwrap();
        let prod = b.mul(&b.path(sv("-+"), sv("++")), &b.path(sv("++"), sv("-+")));
        assert_eq!(prod.get(&sv("-+"), &sv("-+")), Some(&Coeff::Betti(b.betti.group.one_minus_m(0))));
        let e = a.idempotent(sv("++"));
        assert_eq!(a.mul(&e, &e), e);
        let u = a.unit();
        let x = a.path(sv("+-"), sv("-+"));
        assert_eq!(a.mul(&u, &x), x);
        assert_eq!(a.mul(&x, &u), x);
    }

    #[test]
    fn associativity_on_paths() {
        let a = BlockAlgebra::build(&crate::fixtures::ex2(), Flavor::DeRham).unwrap();
        for &x in &a.feasible {
            for &y in &a.feasible {
                for &z in &a.feasible {
                    for &w in &a.feasible {
                        let l = a.mul(&a.mul(&a.path(x, y), &a.path(y, z)), &a.path(z, w));
                        let r = a.mul(&a.path(x, y), &a.mul(&a.path(y, z), &a.path(z, w)));
                        assert_eq!(l, r);
                    }
                }
            }
        }
    }
}
