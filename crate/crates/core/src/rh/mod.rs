//! Truncated Riemann–Hilbert map from the Betti block algebra to the de Rham
//! one, with `tau` a formal stand-in for `2*pi*i`.

mod taupoly;

use serde::{Deserialize, Serialize};

use crate::arrangement::{require_valid, Arrangement, CategoryODatum};
use crate::blockalg::{quotient_by_unbounded, Flavor};
use crate::coeffring::{monomial_degree, monomials_of_degree, DeRhamRing, LocalBettiRing, Monomial, Poly};
use crate::error::Result;
use crate::linalg::{quotient_coordinates, EchelonBasis, Rational, TauScalar};
use crate::par;
use crate::sign::{theta, SignVector};

pub use taupoly::{laurent_det, TauPoly};

/// Which idempotents carry the truncated algebras.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RhDomain {
    /// Feasible chambers only.
    Feasible,
    /// All of `2^[n]`.
    All,
}

/// `A / (augmentation ideal)^{k+1}` in either flavor: each block is the free
/// module on the monomials of degree `<= k` times `p(a, b)`.
#[derive(Clone, Debug)]
pub struct TruncatedAlgebra {
    pub flavor: Flavor,
    pub k: usize,
    pub labels: Vec<SignVector>,
    pub monomials: Vec<Monomial>,
    nvars: usize,
    derham: DeRhamRing,
    betti: LocalBettiRing,
}

impl TruncatedAlgebra {
    pub fn new(datum: &CategoryODatum, flavor: Flavor, k: usize, labels: Vec<SignVector>) -> Self {
        let derham = DeRhamRing::new(datum);
        let betti = LocalBettiRing::new(datum);
        let nvars = derham.nvars();
        debug_assert_eq!(nvars, betti.nvars());
        let monomials = (0..=k).flat_map(|d| monomials_of_degree(nvars, d)).collect();
        TruncatedAlgebra { flavor, k, labels, monomials, nvars, derham, betti }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn bound(&self) -> usize {
        self.k + 1
    }

    /// Rank of each block over the coefficient field.
    pub fn block_rank(&self) -> usize {
        self.monomials.len()
    }

    /// `c^theta` for `p(a, b) p(b, c) = c^theta p(a, c)`.
    pub fn structure_coeff(&self, exps: &[u8]) -> Poly {
        match self.flavor {
            Flavor::DeRham => self.derham.dbar_monomial(exps).truncate(Some(self.bound())),
            Flavor::Betti => self.betti.one_minus_m_monomial(exps, self.bound()),
        }
    }

    /// Coefficient of `p(a, c)` in `(x p(a, b)) (y p(b, c))`.
    pub fn mul(&self, a: &SignVector, b: &SignVector, c: &SignVector, x: &TauPoly, y: &TauPoly) -> TauPoly {
        let s = TauPoly::from_poly(&self.structure_coeff(&theta(a, b, c)));
        x.mul_trunc(y, self.bound()).mul_trunc(&s, self.bound())
    }

    pub fn monomial(&self, i: usize) -> TauPoly {
        TauPoly::from_poly(&Poly::monomial(self.monomials[i].clone(), Rational::one()))
    }

    pub fn coords(&self, p: &Poly) -> Vec<Rational> {
        self.monomials.iter().map(|m| p.coeff(m)).collect()
    }
}

#[derive(Clone, Debug)]
pub struct RhMap {
    pub k: usize,
    pub domain: RhDomain,
    pub labels: Vec<SignVector>,
    pub betti: TruncatedAlgebra,
    pub derham: TruncatedAlgebra,
    /// Image of the chart variable `w_j = z_j - 1`: `exp(tau F_j) - 1`.
    pub w_images: Vec<TauPoly>,
    /// Image of `r_i` is `phi[i] * v_i`, `phi(x) = (1 - exp(tau x)) / x` at `dbar_i`.
    pub phi: Vec<TauPoly>,
    /// `exp(tau dbar_i)`, the expected image of `m_i`.
    pub m_images: Vec<TauPoly>,
    /// Preimage of each free de Rham variable, `tau^-1 log(m_i)` in the chart.
    pub x_preimages: Vec<TauPoly>,
    /// Preimage factor of `v_i`: `phi(dbar_i)^-1` in the chart.
    pub phi_inv: Vec<TauPoly>,
}

fn factorial(n: usize) -> Rational {
    (1..=n).fold(Rational::one(), |acc, i| acc * Rational::from(i as i64))
}

fn tau_series(bound: usize, f: impl Fn(usize) -> Option<(Rational, i64)>) -> Vec<TauScalar> {
    (0..=bound).map(|n| f(n).map_or_else(TauScalar::zero, |(c, e)| TauScalar::monomial(c, e))).collect()
}

/// `(F_1..F_d)` with `F_j = sum_i s_ij dbar_i`, `s` a section of the quotient map.
fn chart_forms(datum: &CategoryODatum, derham: &DeRhamRing) -> Vec<Poly> {
    let n = datum.n;
    let f = derham.nvars();
    let section: Vec<Vec<i64>> = if datum.g_rank() == 0 {
        (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect()
    } else {
        let (_, s) = quotient_coordinates(&datum.g_basis).expect("saturated lattice");
        (0..s.rows()).map(|i| (0..s.cols()).map(|j| i64::try_from(s.get(i, j)).expect("small")).collect()).collect()
    };
    let d = section.first().map_or(0, |r| r.len());
    (0..d)
        .map(|j| {
            let mut p = Poly::zero(f);
            for (i, row) in section.iter().enumerate() {
                p = p.add(&derham.dbar(i).scale(&Rational::from(row[j])));
            }
            p
        })
        .collect()
}

pub fn rh_map(datum: &CategoryODatum, k: usize, domain: RhDomain) -> Result<RhMap> {
    require_valid(datum)?;
    let labels = match domain {
        RhDomain::Feasible => Arrangement::new(datum).feasible(),
        RhDomain::All => SignVector::all(datum.n).collect(),
    };
    let betti = TruncatedAlgebra::new(datum, Flavor::Betti, k, labels.clone());
    let derham = TruncatedAlgebra::new(datum, Flavor::DeRham, k, labels.clone());
    let bound = k + 1;
    let nv = derham.nvars();

    let exp_minus_one = tau_series(bound, |n| (n > 0).then(|| (factorial(n).recip(), n as i64)));
    let exp = tau_series(bound, |n| Some((factorial(n).recip(), n as i64)));
    // phi(x) = -sum_{j>=1} tau^j x^{j-1} / j!
    let phi_series = tau_series(bound, |n| Some((-factorial(n + 1).recip(), n as i64 + 1)));
    let log_series = tau_series(bound, |n| (n > 0).then(|| (Rational::new(if n % 2 == 1 { 1 } else { -1 }, n as i64), 0)));

    let forms = chart_forms(datum, &derham.derham);
    let w_images: Vec<TauPoly> = forms.iter().map(|f| TauPoly::from_poly(f).compose_series(&exp_minus_one, bound)).collect();
    let dbars: Vec<TauPoly> = (0..datum.n).map(|i| TauPoly::from_poly(derham.derham.dbar(i))).collect();
    let phi: Vec<TauPoly> = dbars.iter().map(|d| d.compose_series(&phi_series, bound)).collect();
    let m_images: Vec<TauPoly> = dbars.iter().map(|d| d.compose_series(&exp, bound)).collect();

    // log m_i = sum_j p_ji log(1 + w_j)
    let group = &betti.betti.group;
    let logs: Vec<TauPoly> =
        (0..nv).map(|j| TauPoly::from_poly(&Poly::var(nv, j)).compose_series(&log_series, bound)).collect();
    let log_m: Vec<TauPoly> = (0..datum.n)
        .map(|i| {
            let mut acc = TauPoly::zero(nv);
            for (j, l) in logs.iter().enumerate() {
                acc = acc.add(&l.scale(&TauScalar::constant(Rational::from(group.projection[j][i]))));
            }
            acc
        })
        .collect();
    let tau_inv = TauScalar::monomial(Rational::one(), -1);
    let x_preimages: Vec<TauPoly> = derham.derham.free.iter().map(|&i| log_m[i].scale(&tau_inv)).collect();
    // phi(tau^-1 L) = -tau (1 + sum_{j>=1} L^j / (j+1)!)
    let u_series = tau_series(bound, |n| (n > 0).then(|| (factorial(n + 1).recip(), 0)));
    let phi_inv: Vec<TauPoly> = log_m
        .iter()
        .map(|l| {
            let u = l.compose_series(&u_series, bound);
            let f = TauPoly::one(nv).add(&u).scale(&TauScalar::monomial(Rational::from(-1), 1));
            f.inverse(bound).expect("unit leading term")
        })
        .collect();

    Ok(RhMap { k, domain, labels, betti, derham, w_images, phi, m_images, x_preimages, phi_inv })
}

/// Positions `i` where `p(a, b)` uses `r_i` (resp. `v_i`): `a_i = -`, `b_i = +`.
fn rising(a: &SignVector, b: &SignVector) -> Vec<usize> {
    a.differ(b).into_iter().filter(|&i| !a.is_plus(i)).collect()
}

impl RhMap {
    fn bound(&self) -> usize {
        self.k + 1
    }

    /// `rh(c p(a, b)) = rh(c) prod phi_i p(a, b)`; returns the de Rham coefficient.
    pub fn apply(&self, a: &SignVector, b: &SignVector, c: &TauPoly) -> TauPoly {
        let mut out = c.substitute(&self.w_images, self.bound());
        for i in rising(a, b) {
            out = out.mul_trunc(&self.phi[i], self.bound());
        }
        out
    }

    pub fn apply_inverse(&self, a: &SignVector, b: &SignVector, c: &TauPoly) -> TauPoly {
        let mut out = c.substitute(&self.x_preimages, self.bound());
        for i in rising(a, b) {
            out = out.mul_trunc(&self.phi_inv[i], self.bound());
        }
        out
    }

    /// Matrix of `rh` on the block `(a, b)`: columns Betti monomials, rows de Rham monomials.
    pub fn block_matrix(&self, a: &SignVector, b: &SignVector) -> Vec<Vec<TauScalar>> {
        let images: Vec<TauPoly> = (0..self.betti.block_rank()).map(|i| self.apply(a, b, &self.betti.monomial(i))).collect();
        self.derham.monomials.iter().map(|m| images.iter().map(|img| img.coeff(m)).collect()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockDeterminant {
    pub left: SignVector,
    pub right: SignVector,
    pub determinant: String,
    pub unit: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CornerBlock {
    pub left: SignVector,
    pub right: SignVector,
    pub betti_quotient_dim: usize,
    pub derham_quotient_dim: usize,
    /// Dimension of the block of the finite-dimensional de Rham quotient.
    pub finite_dim: usize,
    /// `rh` maps the Betti ideal block into the de Rham one.
    pub image_contained: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RhReport {
    pub k: usize,
    pub domain: RhDomain,
    pub labels: Vec<SignVector>,
    pub homomorphism: bool,
    pub product_failures: Vec<(SignVector, SignVector, SignVector)>,
    pub unital: bool,
    pub generator_images: bool,
    pub determinants: Vec<BlockDeterminant>,
    pub bijective: bool,
    pub inverse_identity: bool,
    pub corner: Vec<CornerBlock>,
    /// Largest coefficient degree in the finite quotient; beyond it truncation is invisible.
    pub top_degree: usize,
    pub corner_ok: bool,
}

impl RhReport {
    pub fn ok(&self) -> bool {
        self.homomorphism && self.unital && self.generator_images && self.bijective && self.inverse_identity && self.corner_ok
    }
}

pub fn rh_iso_check(datum: &CategoryODatum, k: usize, domain: RhDomain) -> Result<RhReport> {
    let map = rh_map(datum, k, domain)?;
    let labels = map.labels.clone();
    let l = labels.len();
    let r = map.betti.block_rank();
    let bound = map.bound();

    // images of every basis element
    let pairs: Vec<(usize, usize)> = (0..l).flat_map(|a| (0..l).map(move |b| (a, b))).collect();
    let images: Vec<Vec<TauPoly>> =
        par::map(&pairs, |&(a, b)| (0..r).map(|i| map.apply(&labels[a], &labels[b], &map.betti.monomial(i))).collect());
    let image = |a: usize, b: usize, i: usize| &images[a * l + b][i];

    let triples: Vec<(usize, usize, usize)> = pairs.iter().flat_map(|&(a, b)| (0..l).map(move |c| (a, b, c))).collect();
    let failures: Vec<(SignVector, SignVector, SignVector)> = par::map(&triples, |&(a, b, c)| {
        let (la, lb, lc) = (&labels[a], &labels[b], &labels[c]);
        let ok = (0..r).all(|i| {
            (0..r).all(|j| {
                let prod = map.betti.mul(la, lb, lc, &map.betti.monomial(i), &map.betti.monomial(j));
                let lhs = map.apply(la, lc, &prod);
                let rhs = map.derham.mul(la, lb, lc, image(a, b, i), image(b, c, j));
                lhs == rhs
            })
        });
        (!ok).then_some((*la, *lb, *lc))
    })
    .into_iter()
    .flatten()
    .collect();

    let unital = (0..l).all(|a| image(a, a, 0) == &TauPoly::one(map.derham.nvars()));

    // m_i -> exp(tau dbar_i) and, at k = 0, r_i -> -tau v_i
    let betti_ring = &map.betti.betti;
    let generator_images = (0..datum.n).all(|i| {
        let m_chart = TauPoly::from_poly(&betti_ring.y(i, bound).add(&Poly::one(betti_ring.nvars())));
        m_chart.substitute(&map.w_images, bound) == map.m_images[i]
    }) && map.phi.iter().all(|p| p.truncate(1) == TauPoly::constant(map.derham.nvars(), TauScalar::monomial(Rational::from(-1), 1)));

    let determinants: Vec<BlockDeterminant> = par::map(&pairs, |&(a, b)| {
        let det = laurent_det(&map.block_matrix(&labels[a], &labels[b]));
        BlockDeterminant { left: labels[a], right: labels[b], unit: det.is_unit(), determinant: det.to_string() }
    });
    let bijective = determinants.iter().all(|d| d.unit);

    let inverse_identity = par::map(&pairs, |&(a, b)| {
        (0..r).all(|i| {
            let (la, lb) = (&labels[a], &labels[b]);
            let x = map.betti.monomial(i);
            let y = map.derham.monomial(i);
            map.apply_inverse(la, lb, image(a, b, i)) == x && map.apply(la, lb, &map.apply_inverse(la, lb, &y)) == y
        })
    })
    .into_iter()
    .all(|x| x);

    let (corner, top_degree) = corner_blocks(datum, &map)?;
    let stable = k >= top_degree;
    let corner_ok = corner.iter().all(|c| {
        c.image_contained && c.betti_quotient_dim == c.derham_quotient_dim && (!stable || c.derham_quotient_dim == c.finite_dim)
    });

    Ok(RhReport {
        k,
        domain,
        labels,
        homomorphism: failures.is_empty(),
        product_failures: failures,
        unital,
        generator_images,
        determinants,
        bijective,
        inverse_identity,
        corner,
        top_degree,
        corner_ok,
    })
}

/// Quotients of the truncations by the ideal generated by `e_g`, `g` feasible and unbounded.
fn corner_blocks(datum: &CategoryODatum, map: &RhMap) -> Result<(Vec<CornerBlock>, usize)> {
    let arr = Arrangement::new(datum);
    let feasible = arr.feasible();
    let unbounded: Vec<SignVector> = feasible.iter().copied().filter(|a| !arr.is_bounded(a)).collect();
    let fin = quotient_by_unbounded(datum, Flavor::DeRham)?;
    let top_degree = fin.basis.iter().map(|e| monomial_degree(&e.monomial)).max().unwrap_or(0);
    let bound = map.bound();
    let r = map.derham.block_rank();
    let pairs: Vec<(usize, usize)> = (0..fin.num_labels()).flat_map(|a| (0..fin.num_labels()).map(move |b| (a, b))).collect();
    let blocks = par::map(&pairs, |&(ia, ib)| {
        let (a, b) = (fin.labels[ia], fin.labels[ib]);
        let span = |alg: &TruncatedAlgebra| -> (EchelonBasis, Vec<Poly>) {
            let mut ech = EchelonBasis::new(r);
            let mut vecs = Vec::new();
            for g in &unbounded {
                let gen = alg.structure_coeff(&theta(&a, g, &b));
                for m in &alg.monomials {
                    let v = gen.mul_trunc(&Poly::monomial(m.clone(), Rational::one()), Some(bound));
                    if ech.insert(&alg.coords(&v)) {
                        vecs.push(v);
                    }
                }
            }
            (ech, vecs)
        };
        let (bet, bet_vecs) = span(&map.betti);
        let (dr, _) = span(&map.derham);
        let image_contained = bet_vecs.iter().all(|v| {
            let img = map.apply(&a, &b, &TauPoly::from_poly(v));
            img.tau_exponents().into_iter().all(|e| dr.contains(&map.derham.coords(&img.tau_component(e))))
        });
        CornerBlock {
            left: a,
            right: b,
            betti_quotient_dim: r - bet.rank(),
            derham_quotient_dim: r - dr.rank(),
            finite_dim: fin.block(ia, ib).len(),
            image_contained,
        }
    });
    Ok((blocks, top_degree))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{ex0, ex1, fixtures};

    fn sv(s: &str) -> SignVector {
        s.parse().unwrap()
    }

    fn tau(c: Rational, e: i64) -> TauScalar {
        TauScalar::monomial(c, e)
    }

    #[test]
    fn degree_zero_map() {
        let m = rh_map(&ex1(), 0, RhDomain::Feasible).unwrap();
        for p in &m.phi {
            assert_eq!(p, &TauPoly::constant(1, tau(Rational::from(-1), 1)));
        }
        let r = rh_iso_check(&ex1(), 0, RhDomain::Feasible).unwrap();
        assert!(r.ok(), "{r:?}");
    }

    #[test]
    fn one_variable_series() {
        // n = 1, trivial g: rh(r) rh(l) = (-tau - tau^2 d / 2) vu and 1 - m -> 1 - exp(tau d)
        let m = rh_map(&ex0(), 1, RhDomain::All).unwrap();
        let d = TauPoly::from_poly(&Poly::var(1, 0));
        let expected = TauPoly::constant(1, tau(Rational::from(-1), 1)).add(&d.scale(&tau(Rational::new(-1, 2), 2)));
        assert_eq!(m.phi[0], expected);
        let one_minus_exp = TauPoly::one(1).sub(&m.m_images[0]);
        assert_eq!(m.phi[0].mul_trunc(&d, 2), one_minus_exp.truncate(2));
    }

    #[test]
    fn ex1_through_six() {
        for k in 0..=6 {
            let r = rh_iso_check(&ex1(), k, RhDomain::Feasible).unwrap();
            assert!(r.ok(), "k = {k}: {r:?}");
            let d = r.determinants.iter().find(|d| d.left == sv("-+") && d.right == sv("-+")).unwrap();
            assert!(d.unit);
        }
    }

    #[test]
    fn all_fixtures_both_domains() {
        for (_, d) in fixtures() {
            for domain in [RhDomain::Feasible, RhDomain::All] {
                let r = rh_iso_check(&d, 3, domain).unwrap();
                assert!(r.ok(), "{r:?}");
            }
            let r = rh_iso_check(&d, 6, RhDomain::Feasible).unwrap();
            assert!(r.corner.iter().all(|c| c.derham_quotient_dim == c.finite_dim));
        }
    }
}
