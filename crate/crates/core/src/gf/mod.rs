//! Exact linear algebra over GF(q).

mod field;
mod subspace;

pub use field::{prime_power, Elem, Field, FieldOp, FieldSpec};
pub use subspace::{
    enumerate_subspaces, gaussian_binomial, rref, subspace_intersect, subspace_sum, Subspace,
    SubspaceJson, DEFAULT_ENUMERATION_BUDGET,
};

#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    fn matrix(q: usize, n: usize) -> impl Strategy<Value = Vec<Vec<Elem>>> {
        prop::collection::vec(prop::collection::vec(0..q as Elem, n), 0..=n + 2)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn rref_is_idempotent_gf2(m in matrix(2, 5)) {
            let f = Field::new(2).unwrap();
            let s = rref(&f, 5, &m).unwrap();
            prop_assert_eq!(rref(&f, 5, s.rows()).unwrap(), s);
        }

        #[test]
        fn rref_is_idempotent_gf3(m in matrix(3, 4)) {
            let f = Field::new(3).unwrap();
            let s = rref(&f, 4, &m).unwrap();
            prop_assert_eq!(rref(&f, 4, s.rows()).unwrap(), s);
        }

        #[test]
        fn rref_is_idempotent_gf4(m in matrix(4, 4)) {
            let f = Field::new(4).unwrap();
            let s = rref(&f, 4, &m).unwrap();
            prop_assert_eq!(rref(&f, 4, s.rows()).unwrap(), s);
        }

        #[test]
        fn rref_preserves_membership(m in matrix(3, 4)) {
            let f = Field::new(3).unwrap();
            let s = rref(&f, 4, &m).unwrap();
            for row in &m {
                prop_assert!(s.contains_vector(&f, row));
            }
            prop_assert!(s.dim() <= m.len());
        }
    }
}
