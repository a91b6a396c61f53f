mod common;

use proptest::prelude::*;

use fatpoint_core::field_linalg::PrimeField;
use fatpoint_core::numerics::{expected_hilbert, n_forms, v_of};
use fatpoint_core::scheme_model::{conditions_matrix, hilbert_function, random_scheme, FatPointSpec};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn hilbert_function_is_semicontinuous((a, b, c) in common::small_counts(40), seed in any::<u64>()) {
        common::semicontinuity(a, b, c, seed)?;
    }

    #[test]
    fn conditions_matrix_shape((a, b, c) in common::small_counts(40), seed in any::<u64>(), k in 0u32..10) {
        let spec = FatPointSpec::from_counts(a, b, c).unwrap();
        let m = conditions_matrix(&random_scheme(&spec, seed, PrimeField::default()), k);
        prop_assert_eq!(m.rows() as u64, spec.length());
        prop_assert_eq!(m.cols() as u64, n_forms(k));
    }

    #[test]
    fn simple_points_are_generic(a in 1u64..60, seed in any::<u64>()) {
        let scheme = random_scheme(&FatPointSpec::from_counts(a, 0, 0).unwrap(), seed, PrimeField::default());
        for k in 0..=v_of(a).unwrap() + 1 {
            prop_assert_eq!(hilbert_function(&scheme, k), expected_hilbert(a, k));
        }
    }
}

#[test]
fn multiplicity_lengths_specialize() {
    let len = |a, b, c| FatPointSpec::from_counts(a, b, c).unwrap().length();
    assert_eq!(len(0, 1, 0), 3 * len(1, 0, 0));
    assert_eq!(len(0, 0, 1), len(0, 1, 0) + 3 * len(1, 0, 0));
}
