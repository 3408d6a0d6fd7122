mod common;

use hypero::arrangement::{chamber_polytope, Arrangement};
use hypero::dualities::{h_vector, mirror_dim_check, poincare_polynomial, skeleton_algebra_dims};
use hypero::linalg::Rational;
use hypero::Error;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn h_vector_does_not_depend_on_direction(
        d in common::datum(6),
        dirs in prop::collection::vec(prop::collection::vec(-20i64..=20, 6), 4),
    ) {
        let arr = Arrangement::new(&d);
        for alpha in arr.feasible() {
            let p = chamber_polytope(&d, &alpha).unwrap();
            if !p.is_bounded() {
                continue;
            }
            let mut seen = None;
            for dir in &dirs {
                let dir: Vec<Rational> = dir[..p.dim].iter().map(|&x| Rational::from(x)).collect();
                match h_vector(&p, &dir) {
                    Ok(h) => {
                        prop_assert!(h.is_palindromic());
                        if let Some(prev) = &seen {
                            prop_assert_eq!(prev, &h);
                        }
                        seen = Some(h);
                    }
                    Err(Error::NonGenericDirection) => {}
                    Err(e) => return Err(TestCaseError::fail(e.to_string())),
                }
            }
            if let Some(h) = seen {
                prop_assert_eq!(h.0.iter().sum::<usize>(), p.vertices.len());
            }
        }
    }

    #[test]
    fn poincare_polynomials_of_compact_chambers(d in common::datum(6)) {
        let sk = skeleton_algebra_dims(&d).unwrap();
        for (i, row) in sk.dims.iter().enumerate() {
            let diag = &row[i];
            prop_assert_eq!(diag.coeff(0), 1);
            let c = diag.coeffs();
            let rev: Vec<i64> = c.iter().rev().copied().collect();
            prop_assert_eq!(c, rev.as_slice());
            for (j, x) in row.iter().enumerate() {
                prop_assert_eq!(x, &sk.dims[j][i]);
            }
        }
        for alpha in &sk.labels {
            let p = chamber_polytope(&d, alpha).unwrap();
            prop_assert!(poincare_polynomial(&p, &sk.direction).is_ok());
        }
    }

    #[test]
    fn mirror_dimensions(d in common::datum(6)) {
        let r = mirror_dim_check(&d, 16).unwrap();
        prop_assert!(r.ok(), "{:?}", r.offending);
    }
}
