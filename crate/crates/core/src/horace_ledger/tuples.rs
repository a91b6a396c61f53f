//! Admissible parameter tuples and the choosers that produce them.

use serde::{Deserialize, Serialize};

use super::config::REMAINDER_LENGTHS;
use super::LedgerError;
use crate::numerics::{decompose12, decompose6, settled_length};

fn weighted(parts: &[(u64, u64)]) -> Option<u64> {
    parts
        .iter()
        .try_fold(0u64, |acc, &(n, w)| n.checked_mul(w).and_then(|x| acc.checked_add(x)))
}

/// `2s + 6d + p = k(k+2)` with `p` in `{0,1,2,3,5}` and `p <= r(k)`.
pub fn in_delta_k(s: u64, d: u64, p: u64, k: u32) -> bool {
    matches!(p, 0 | 1 | 2 | 3 | 5)
        && p <= decompose6(k).r as u64
        && weighted(&[(s, 2), (d, 6), (p, 1)]) == Some(settled_length(k))
}

/// `2s + 6d + 12t + p = k(k+2)` with `p` an allowed remainder and
/// `p <= rho(k)`.
pub fn in_lambda_k(s: u64, d: u64, t: u64, p: u64, k: u32) -> bool {
    REMAINDER_LENGTHS.iter().any(|&x| x as u64 == p)
        && p <= decompose12(k).rho as u64
        && weighted(&[(s, 2), (d, 6), (t, 12), (p, 1)]) == Some(settled_length(k))
}

/// Every tuple of `Lambda_k`, ordered by `p`, then `t`, then `d`.
pub fn lambda_tuples(k: u32) -> Vec<(u64, u64, u64, u8)> {
    let n = settled_length(k);
    let rho = decompose12(k).rho;
    let mut out = Vec::new();
    for &p in REMAINDER_LENGTHS.iter().filter(|&&p| p <= rho) {
        for t in 0..=n / 12 {
            for d in 0..=n / 6 {
                let used = p as u64 + 12 * t + 6 * d;
                if used > n {
                    break;
                }
                if (n - used).is_multiple_of(2) {
                    out.push(((n - used) / 2, d, t, p));
                }
            }
        }
    }
    out
}

/// A tuple of `Delta_{k-1}` fitting inside `a` simple and `b` double
/// pullbacks, when `2a + 6b` exceeds `(k-1)(k+1)`.
pub fn choose_delta_subtuple(a: u64, b: u64, k: u32) -> Result<(u64, u64, u64), LedgerError> {
    if k == 0 {
        return Err(LedgerError::NoTuple("degree must be at least 1".into()));
    }
    let total = weighted(&[(a, 2), (b, 6)]).ok_or(LedgerError::NoTuple("length overflow".into()))?;
    if total <= settled_length(k - 1) {
        return Err(LedgerError::NoTuple(format!(
            "2a + 6b = {total} does not exceed (k-1)(k+1) = {}",
            settled_length(k - 1)
        )));
    }
    let dec = decompose6(k - 1);
    let (q, r) = (dec.q, dec.r as u64);
    let tuple = if q < b {
        (0, q, r)
    } else {
        let (l, eps) = (r / 2, r % 2);
        (3 * (q - b) + l, b, eps)
    };
    debug_assert!(in_delta_k(tuple.0, tuple.1, tuple.2, k - 1));
    debug_assert!(tuple.1 < b || tuple.0 + tuple.2 <= a);
    Ok(tuple)
}

/// A tuple of `Lambda_k` containing `a` simple, `b` double and `c` triple
/// pullbacks.
pub fn choose_lambda_supertuple(a: u64, b: u64, c: u64, k: u32) -> Result<(u64, u64, u64, u64), LedgerError> {
    let n = settled_length(k);
    let used = weighted(&[(a, 2), (b, 6), (c, 12)]).ok_or(LedgerError::NoTuple("length overflow".into()))?;
    if used > n {
        return Err(LedgerError::NoTuple(format!(
            "2a + 6b + 12c = {used} exceeds k(k+2) = {n}"
        )));
    }
    let rest = n - 6 * b - 12 * c;
    let rho = decompose12(k).rho as u64;
    let p = if rest - 2 * a >= rho { rho } else { rho % 2 };
    let tuple = ((rest - p) / 2, b, c, p);
    debug_assert!(in_lambda_k(tuple.0, tuple.1, tuple.2, tuple.3, k));
    Ok(tuple)
}

/// Result of trading simple points for larger ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "branch", rename_all = "snake_case")]
pub enum Reduction {
    /// Few doubles: every double swallows three simples into a triple,
    /// sixes of the leftover simples become triples too.
    Triples {
        merged_doubles: u64,
        simple_sixes: u64,
        simple: u64,
        triple: u64,
        p: u8,
    },
    /// Many doubles: `floor(s/3)` doubles each swallow three simples.
    Mixed {
        merged: u64,
        sigma: u64,
        delta: u64,
        tau: u64,
        p: u8,
        j: u64,
        /// `(sigma, j, p) = (0, 1, 5)`: the leftover double and `R_5` do not
        /// merge into `R_11`, so they are kept together as the barred remainder.
        barred: bool,
    },
}

pub fn reduce_simples(s: u64, d: u64, t: u64, p: u64, k: u32) -> Result<Reduction, LedgerError> {
    if !in_lambda_k(s, d, t, p, k) {
        return Err(LedgerError::NotInLambda { s, d, t, p, k });
    }
    let rho = decompose12(k).rho as u64;
    let p8 = p as u8;
    if 3 * d <= s {
        let m = (s - 3 * d) / 6;
        let simple = s - 3 * d - 6 * m;
        let triple = t + d + m;
        if 2 * simple + p != rho {
            return Err(LedgerError::Inapplicable(format!(
                "2*{simple} + {p} does not equal rho = {rho}"
            )));
        }
        return Ok(Reduction::Triples {
            merged_doubles: d,
            simple_sixes: m,
            simple,
            triple,
            p: p8,
        });
    }
    let merged = s / 3;
    let sigma = s - 3 * merged;
    let delta = d - merged;
    let tau = t + merged;
    let j = delta % 2;
    if 6 * j + 2 * sigma + p != rho {
        return Err(LedgerError::Inapplicable(format!(
            "6*{j} + 2*{sigma} + {p} does not equal rho = {rho}"
        )));
    }
    Ok(Reduction::Mixed {
        merged,
        sigma,
        delta,
        tau,
        p: p8,
        j,
        barred: (sigma, j, p) == (0, 1, 5),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_membership() {
        for k in 1..40 {
            let dec = decompose6(k);
            assert!(in_delta_k(0, dec.q, dec.r as u64, k));
        }
        assert!(in_delta_k(1, 0, 1, 1));
        assert!(!in_delta_k(0, 0, 4, 2));
        assert!(!in_delta_k(2, 1, 4, 2));
        assert!(!in_delta_k(u64::MAX, 0, 0, 3));
    }

    #[test]
    fn lambda_membership() {
        for k in 1..40 {
            let dec = decompose12(k);
            assert!(in_lambda_k(0, 0, dec.u, dec.rho as u64, k));
        }
        for l in 2..6u32 {
            let k = 6 * l + 5;
            let n = settled_length(k);
            for t in 0..=(n - 5) / 12 {
                let rest = n - 5 - 12 * t;
                if rest.is_multiple_of(6) {
                    let d = rest / 6;
                    assert_eq!(d % 2, 1);
                    assert!(in_lambda_k(0, d, t, 5, k));
                }
            }
        }
        assert!(!in_lambda_k(1, 0, 0, 1, 2));
        assert!(!in_lambda_k(0, 0, 1, 4, 2));
    }

    #[test]
    fn lambda_enumeration_is_complete() {
        for k in 1..=14 {
            let n = settled_length(k);
            let mut brute = Vec::new();
            for &p in &REMAINDER_LENGTHS {
                for t in 0..=n / 12 {
                    for d in 0..=n / 6 {
                        for s in 0..=n / 2 {
                            if in_lambda_k(s, d, t, p as u64, k) {
                                brute.push((s, d, t, p));
                            }
                        }
                    }
                }
            }
            let mut fast = lambda_tuples(k);
            fast.sort();
            brute.sort();
            assert_eq!(fast, brute, "k = {k}");
        }
    }

    #[test]
    fn delta_subtuple_examples() {
        for k in 2..30 {
            let dec = decompose6(k - 1);
            assert_eq!(
                choose_delta_subtuple(0, dec.q + 1, k).unwrap(),
                (0, dec.q, dec.r as u64)
            );
            let a = 3 * dec.q + 10;
            let (l, eps) = (dec.r as u64 / 2, dec.r as u64 % 2);
            assert_eq!(choose_delta_subtuple(a, 0, k).unwrap(), (3 * dec.q + l, 0, eps));
        }
        // r(k-1) = 3 at k-1 = 1: one simple beside q doubles is too little,
        // two simples give (1, q, 1).
        let q = decompose6(1).q;
        assert!(choose_delta_subtuple(1, q, 2).is_err());
        assert_eq!(choose_delta_subtuple(2, q, 2).unwrap(), (1, q, 1));
        assert!(choose_delta_subtuple(0, 0, 5).is_err());
    }

    #[test]
    fn delta_subtuple_exhaustive() {
        for k in 1..=16u32 {
            let n = settled_length(k - 1);
            for b in 0..=n / 6 + 2 {
                for a in 0..=n / 2 + 3 {
                    let res = choose_delta_subtuple(a, b, k);
                    if 2 * a + 6 * b <= n {
                        assert!(res.is_err());
                        continue;
                    }
                    let (s, d, p) = res.unwrap();
                    assert!(in_delta_k(s, d, p, k - 1));
                    assert!(d <= b);
                    if d == b {
                        assert!(s + (p > 0) as u64 <= a);
                    }
                }
            }
        }
    }

    #[test]
    fn lambda_supertuple_exhaustive() {
        for k in 1..=20u32 {
            let dec = decompose12(k);
            assert_eq!(
                choose_lambda_supertuple(0, 0, dec.u, k).unwrap(),
                (0, 0, dec.u, dec.rho as u64)
            );
            let n = settled_length(k);
            for c in 0..=n / 12 {
                for b in 0..=(n - 12 * c) / 6 {
                    for a in 0..=(n - 12 * c - 6 * b) / 2 + 1 {
                        let res = choose_lambda_supertuple(a, b, c, k);
                        if 2 * a + 6 * b + 12 * c > n {
                            assert!(res.is_err());
                            continue;
                        }
                        let (s, d, t, p) = res.unwrap();
                        assert!(in_lambda_k(s, d, t, p, k));
                        assert!(s >= a && d >= b && t >= c);
                    }
                }
            }
        }
    }

    #[test]
    fn reduction_branches() {
        // 2*9 + 6*3 = 36 = 12*3: nine simples and three doubles become
        // three triples.
        let k = 12;
        let u = decompose12(k).u;
        match reduce_simples(9, 3, u - 3, 0, k).unwrap() {
            Reduction::Triples { simple, triple, .. } => assert_eq!((simple, triple), (0, u)),
            other => panic!("{other:?}"),
        }
        let n = settled_length(k);
        let t = (n - 6 - 6) / 12;
        assert_eq!(2 * 3 + 6 + 12 * t, n);
        assert!(matches!(reduce_simples(3, 1, t, 0, k).unwrap(), Reduction::Triples { .. }));
        // k = 17: one double left over next to R_5.
        let k = 17;
        let n = settled_length(k);
        let t = (n - 5 - 6) / 12;
        assert_eq!(6 + 12 * t + 5, n);
        match reduce_simples(0, 1, t, 5, k).unwrap() {
            Reduction::Mixed { barred, delta, j, .. } => {
                assert!(barred);
                assert_eq!((delta, j), (1, 1));
            }
            other => panic!("{other:?}"),
        }
        assert!(reduce_simples(0, 0, 1, 4, 2).is_err());
    }

    #[test]
    fn reduction_conserves_length() {
        for k in 10..=20 {
            for (s, d, t, p) in lambda_tuples(k) {
                let n = settled_length(k);
                match reduce_simples(s, d, t, p as u64, k).unwrap() {
                    Reduction::Triples { simple, triple, p, .. } => {
                        assert_eq!(2 * simple + 12 * triple + p as u64, n);
                    }
                    Reduction::Mixed { sigma, delta, tau, p, .. } => {
                        assert_eq!(2 * sigma + 6 * delta + 12 * tau + p as u64, n);
                    }
                }
            }
        }
    }
}
