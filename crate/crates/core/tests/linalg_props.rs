mod common;

use hypero::linalg::{kernel_lattice, rref, smith_normal_form, IntMatrix, RatMatrix};
use num_bigint::BigInt;
use num_traits::{One, Signed};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn smith_factorization(
        (c, rows) in (1usize..=4, 1usize..=5).prop_flat_map(|(r, c)| (Just(c), common::small_matrix(r, c)))
    ) {
        let r = rows.len();
        let m = IntMatrix::from_i64(rows, c);
        let s = smith_normal_form(&m);
        prop_assert_eq!(s.u.mul(&m).mul(&s.v), s.d.clone());
        prop_assert!(s.u.det().abs().is_one());
        prop_assert!(s.v.det().abs().is_one());
        prop_assert_eq!(s.v.mul(&s.v_inv), IntMatrix::identity(c));
        // diagonal with successive divisibility
        for i in 0..r {
            for j in 0..c {
                if i != j {
                    prop_assert_eq!(s.d.get(i, j).clone(), BigInt::from(0));
                }
            }
        }
        for i in 1..s.rank {
            let (a, b) = (s.d.get(i - 1, i - 1).clone(), s.d.get(i, i).clone());
            prop_assert!((b % a) == BigInt::from(0));
        }
    }

    #[test]
    fn kernel_lattice_is_saturated(rows in common::small_matrix(2, 5)) {
        let m = IntMatrix::from_i64(rows, 5);
        let k = kernel_lattice(&m);
        let prod = m.mul(&k.transpose());
        prop_assert!(prod.row_vecs().iter().flatten().all(|x| *x == BigInt::from(0)));
        if k.rows() > 0 {
            prop_assert!(smith_normal_form(&k).all_divisors_one());
        }
        let rank = smith_normal_form(&m).rank;
        prop_assert_eq!(k.rows(), 5 - rank);
    }

    #[test]
    fn rref_is_idempotent(rows in common::small_matrix(3, 4)) {
        let m = RatMatrix::from_int(&IntMatrix::from_i64(rows, 4));
        let (r, pivots, rank) = rref(&m);
        let (r2, pivots2, rank2) = rref(&r);
        prop_assert_eq!(r, r2);
        prop_assert_eq!(pivots, pivots2);
        prop_assert_eq!(rank, rank2);
    }
}
