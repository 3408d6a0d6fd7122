mod common;

use std::collections::BTreeSet;

use hypero::arrangement::{bounded, chamber_polytope, feasible, gale_dual, validate, Arrangement};
use hypero::chamber_order::build_order_tables;
use hypero::linalg::Rational;
use hypero::lp::{fourier_motzkin_feasible, maximize, simplex_feasible, Inequalities, LpOutcome};
use hypero::SignVector;
use proptest::prelude::*;

/// Largest `s <= 1` with `alpha_i x_i >= s` on the chamber; positive iff the open chamber is nonempty.
fn open_slack(arr: &Arrangement, alpha: &SignVector) -> Option<Rational> {
    let d = arr.dim();
    let b = arr.basis_matrix();
    let mut sys = Inequalities::new(d + 1);
    for i in 0..arr.n() {
        let s = Rational::from(alpha.sign(i));
        let mut row: Vec<Rational> = (0..d).map(|j| -(&s * b.get(i, j))).collect();
        row.push(Rational::one());
        sys.push(row, &s * &arr.datum.t_lift[i]);
    }
    let mut cap = vec![Rational::zero(); d];
    cap.push(Rational::one());
    sys.push(cap.clone(), Rational::one());
    match maximize(&cap, &sys) {
        LpOutcome::Optimal { value, .. } => Some(value),
        _ => None,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn gale_duality_swaps_feasible_and_bounded(d in common::datum(8)) {
        let g = gale_dual(&d);
        prop_assert!(validate(&g).is_category_o_datum());
        prop_assert_eq!(feasible(&d), bounded(&g));
        prop_assert_eq!(bounded(&d), feasible(&g));
    }

    #[test]
    fn closed_and_open_feasibility_agree(d in common::datum(6)) {
        let arr = Arrangement::new(&d);
        for alpha in SignVector::all(d.n) {
            let open = open_slack(&arr, &alpha).is_some_and(|s| s.is_positive());
            prop_assert_eq!(arr.is_feasible(&alpha), open, "{}", alpha);
        }
    }

    #[test]
    fn chamber_polytopes_are_simple(d in common::datum(6)) {
        let arr = Arrangement::new(&d);
        for alpha in arr.feasible() {
            let p = chamber_polytope(&d, &alpha).unwrap();
            for t in &p.tight {
                prop_assert_eq!(t.len(), arr.dim());
            }
            prop_assert_eq!(p.edges.len() * 2 + p.rays.len(), p.vertices.len() * arr.dim());
        }
    }

    #[test]
    fn vertex_bijection(d in common::datum(6)) {
        let arr = Arrangement::new(&d);
        let tables = build_order_tables(&d).unwrap();
        let from_chambers: BTreeSet<Vec<Rational>> = tables.entries.iter().map(|e| e.point.clone()).collect();
        let vertices: BTreeSet<Vec<Rational>> = arr.vertices().into_iter().map(|v| v.point).collect();
        prop_assert_eq!(from_chambers.len(), tables.entries.len());
        prop_assert_eq!(from_chambers, vertices);
        let bf = arr.feasible().into_iter().filter(|a| arr.is_bounded(a)).count();
        prop_assert_eq!(bf, tables.entries.len());
    }

    #[test]
    fn fourier_motzkin_matches_simplex(
        (dim, rows) in (1usize..=3, 1usize..=6)
            .prop_flat_map(|(dim, r)| (Just(dim), prop::collection::vec(prop::collection::vec(-4i64..=4, dim + 1), r)))
    ) {
        let mut sys = Inequalities::new(dim);
        for r in &rows {
            sys.push(r[..dim].iter().map(|&x| Rational::from(x)).collect(), Rational::from(r[dim]));
        }
        prop_assert_eq!(fourier_motzkin_feasible(&sys), simplex_feasible(&sys));
    }
}
