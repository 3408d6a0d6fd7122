mod common;

use hypero::fixtures::fixtures;
use hypero::rh::{rh_iso_check, rh_map, RhDomain};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn truncations_are_isomorphisms(d in common::datum(3), k in 0usize..=3) {
        for domain in [RhDomain::Feasible, RhDomain::All] {
            let r = rh_iso_check(&d, k, domain).unwrap();
            prop_assert!(r.ok(), "{:?}", r);
        }
    }
}

#[test]
fn inverse_round_trips_on_basis() {
    for (_, d) in fixtures() {
        for k in [0, 2, 5] {
            let map = rh_map(&d, k, RhDomain::All).unwrap();
            let r = rh_iso_check(&d, k, RhDomain::All).unwrap();
            assert!(r.inverse_identity && r.unital);
            assert_eq!(map.k, k);
        }
    }
}

#[test]
fn corner_dimensions_stabilize_past_top_degree() {
    for (name, d) in fixtures() {
        let r = rh_iso_check(&d, 6, RhDomain::Feasible).unwrap();
        assert!(6 >= r.top_degree, "{name}");
        for c in &r.corner {
            assert_eq!(c.betti_quotient_dim, c.finite_dim, "{name} {}{}", c.left, c.right);
            assert_eq!(c.derham_quotient_dim, c.finite_dim, "{name} {}{}", c.left, c.right);
        }
    }
}
