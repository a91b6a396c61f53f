//! Property checks shared by the proptest suites and the acceptance run.
#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use fatpoint_core::betti_engine::analyze;
use fatpoint_core::field_linalg::PrimeField;
use fatpoint_core::horace_ledger::{
    certify_tuple, lambda_tuples, AxiomTable, Certificate, RuleRegistry,
};
use fatpoint_core::numerics::{alpha, expected_hilbert, scheme_length, v_of, w_of};
use fatpoint_core::scheme_model::{hilbert_function, random_scheme, FatPointSpec};

pub type Check = Result<(), TestCaseError>;

pub fn v_w_bracket(l: u64) -> Check {
    let v = v_of(l).unwrap();
    let w = w_of(l).unwrap();
    prop_assert!(v <= w && w <= v + 1, "l={l} v={v} w={w}");
    Ok(())
}

/// Nondecreasing on the domain `6n <= k + 4`; strictly increasing while
/// both `n` and `n + 1` lie below `(k + 4) / 6`.
pub fn alpha_monotone(n: u64, k: u32) -> Check {
    let (Ok(lo), Ok(hi)) = (alpha(n, k), alpha(n + 1, k)) else {
        return Ok(());
    };
    prop_assert!(lo <= hi, "alpha({n},{k})={lo} > alpha({},{k})={hi}", n + 1);
    if 6 * (n + 1) < k as u64 + 4 {
        prop_assert!(lo < hi, "alpha not strict at n={n} k={k}");
    }
    Ok(())
}

/// Counts `(a, b, c)` with `1 <= length <= max_len`.
pub fn small_counts(max_len: u64) -> impl Strategy<Value = (u64, u64, u64)> {
    (0..=max_len, 0..=max_len / 3, 0..=max_len / 6)
        .prop_filter("length in range", move |&(a, b, c)| {
            let l = scheme_length(a, b, c).unwrap();
            (1..=max_len).contains(&l)
        })
}

/// h0 is never below the generic value, and once positive it never drops.
pub fn semicontinuity(a: u64, b: u64, c: u64, seed: u64) -> Check {
    let field = PrimeField::default();
    let spec = FatPointSpec::from_counts(a, b, c).unwrap();
    let scheme = random_scheme(&spec, seed, field);
    let l = spec.length();
    let top = v_of(l).unwrap() + 2;
    let mut prev = 0;
    for k in 0..=top {
        let h = hilbert_function(&scheme, k);
        prop_assert!(h >= expected_hilbert(l, k), "({a},{b},{c}) seed {seed} k={k}: {h}");
        prop_assert!(h >= prev, "({a},{b},{c}) seed {seed}: h0 drops at k={k}");
        prev = h;
    }
    Ok(())
}

/// `gens(j) - syz(j)` is the third difference of the Hilbert function of
/// the coordinate ring, and on maximal trials generators never fall below
/// the expectation.
pub fn euler_identity(a: u64, b: u64, c: u64, seed: u64) -> Check {
    let spec = FatPointSpec::from_counts(a, b, c).unwrap();
    let scheme = random_scheme(&spec, seed, PrimeField::default());
    let r = analyze(&scheme, true).unwrap();
    prop_assert_eq!(r.euler_consistent, Some(true), "({},{},{}) seed {}", a, b, c, seed);
    if !r.hf_maximal {
        return Ok(());
    }
    for k in [r.expected.v, r.expected.v + 1] {
        let got = r.generators.get(&k).copied().unwrap_or(0);
        prop_assert!(got >= r.expected.gens_in(k), "({a},{b},{c}) k={k}: {got} generators");
    }
    Ok(())
}

/// On maximal trials, `3 h0(k) - h0(k+1) = k(k+2) - 2 length` in every
/// degree where h0 is positive and generic.
pub fn cokernel_balance(a: u64, b: u64, c: u64, seed: u64) -> Check {
    let spec = FatPointSpec::from_counts(a, b, c).unwrap();
    let scheme = random_scheme(&spec, seed, PrimeField::default());
    let r = analyze(&scheme, false).unwrap();
    if !r.hf_maximal {
        return Ok(());
    }
    let l = r.expected.length as i64;
    for (&k, &h) in &r.hilbert {
        let Some(&next) = r.hilbert.get(&(k + 1)) else { continue };
        if h == 0 || h != expected_hilbert(l as u64, k) {
            continue;
        }
        let k = k as i64;
        prop_assert_eq!(3 * h as i64 - next as i64, k * (k + 2) - 2 * l);
    }
    Ok(())
}

/// Length conservation, trace saturation and axiom soundness along a
/// certificate, plus a clean re-verification.
pub fn certificate_budgets(cert: &Certificate) -> Check {
    let axioms = AxiomTable::standard();
    for (i, s) in cert.steps.iter().enumerate() {
        prop_assert_eq!(s.before.length(), s.length_before, "step {}", i);
        prop_assert_eq!(s.after.length(), s.length_after, "step {}", i);
        if s.k_after == s.k_before {
            prop_assert_eq!(s.length_before, s.length_after, "rewrite {} changes length", i);
        } else {
            // A chain of conic steps k, k-2, ... each with trace 2(2k).
            let (k, k_after) = (s.k_before as u64, s.k_after as u64);
            prop_assert!(k_after < k && (k - k_after) % 2 == 0, "step {} degrees", i);
            let trace: u64 = (0..(k - k_after) / 2).map(|j| 4 * (k - 2 * j)).sum();
            prop_assert_eq!(s.trace, Some(trace), "step {} trace", i);
            prop_assert_eq!(s.length_before, k * (k + 2));
            prop_assert_eq!(s.length_after, k_after * (k_after + 2));
            prop_assert_eq!(s.length_before - trace, s.length_after);
        }
    }
    let last = cert.last();
    prop_assert_eq!(last.k, cert.terminal.k);
    prop_assert!(last.check_settled_length().is_ok());
    let axiom = axioms.get(&cert.terminal.axiom).expect("terminal axiom in table");
    prop_assert!(axiom.applies(last), "{} does not cover {}", axiom.id, last);
    prop_assert!(cert.verify(&RuleRegistry::standard(), &axioms).is_ok());
    Ok(())
}

/// A certificate for the `index`-th tuple of `Lambda_k` (wrapping), checked
/// for budgets and for being reproduced identically.
pub fn ledger_tuple(k: u32, index: usize) -> Check {
    let tuples = lambda_tuples(k);
    let (s, d, t, p) = tuples[index % tuples.len()];
    let cert = certify_tuple(s, d, t, p as u64, k)
        .map_err(|e| TestCaseError::fail(format!("k={k} ({s},{d},{t},{p}): {e}")))?;
    certificate_budgets(&cert)?;
    prop_assert_eq!(&cert, &certify_tuple(s, d, t, p as u64, k).unwrap());
    Ok(())
}

/// Runs `check` on `cases` inputs from `strategy` with a fixed RNG seed;
/// returns the case count or the first failure.
pub fn run_cases<S: Strategy>(
    cases: u32,
    strategy: S,
    check: impl Fn(S::Value) -> Check,
) -> Result<u32, String> {
    let mut runner = TestRunner::new_with_rng(
        Config { cases, failure_persistence: None, ..Config::default() },
        proptest::test_runner::TestRng::deterministic_rng(proptest::test_runner::RngAlgorithm::ChaCha),
    );
    runner
        .run(&strategy, check)
        .map(|_| cases)
        .map_err(|e| e.to_string())
}
