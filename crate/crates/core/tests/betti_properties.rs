mod common;

use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn generators_and_syzygies_satisfy_euler((a, b, c) in common::small_counts(30), seed in any::<u64>()) {
        common::euler_identity(a, b, c, seed)?;
    }

    #[test]
    fn maximal_trials_balance_cokernels((a, b, c) in common::small_counts(60), seed in any::<u64>()) {
        common::cokernel_balance(a, b, c, seed)?;
    }
}
