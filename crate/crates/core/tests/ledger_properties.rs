mod common;

use proptest::prelude::*;

use fatpoint_core::horace_ledger::{certify_tuple, lambda_tuples};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1500))]

    #[test]
    fn tuple_certificates_balance(k in 12u32..=30, index in any::<usize>()) {
        common::ledger_tuple(k, index)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn general_configurations_round_trip_through_json(k in 12u32..=30, index in any::<usize>()) {
        let tuples = lambda_tuples(k);
        let (s, d, t, p) = tuples[index % tuples.len()];
        let cert = certify_tuple(s, d, t, p as u64, k).unwrap();
        let back = serde_json::from_str(&serde_json::to_string(&cert).unwrap()).unwrap();
        prop_assert_eq!(cert, back);
    }
}
