//! Closed-form counts shared by the numeric pipeline and the ledger.
//!
//! Degrees are `u32` and counts are `u64`; every product of two degrees
//! fits, so only the length-valued entry points can overflow.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumericsError {
    #[error("scheme length must be at least 1")]
    ZeroLength,
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
    #[error("alpha({n}, {k}) is undefined: need k >= 6 and 1 <= n <= (k+4)/6")]
    AlphaDomain { n: u64, k: u32 },
    #[error("degree {0} is below 6")]
    DegreeTooSmall(u32),
}

/// Dimension of the space of ternary forms of degree `k`.
pub fn n_forms(k: u32) -> u64 {
    let (a, b) = (k as u64 + 2, k as u64 + 1);
    if a % 2 == 0 {
        (a / 2) * b
    } else {
        a * (b / 2)
    }
}

/// `k(k+2)`, the length a `k`-settled configuration must have.
pub fn settled_length(k: u32) -> u64 {
    k as u64 * (k as u64 + 2)
}

/// `k(k+2) = 6q + r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeDecomp6 {
    pub k: u32,
    pub q: u64,
    pub r: u8,
}

/// `k(k+2) = 12u + rho`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeDecomp12 {
    pub k: u32,
    pub u: u64,
    pub rho: u8,
}

pub fn decompose6(k: u32) -> DegreeDecomp6 {
    let n = settled_length(k);
    let r = (n % 6) as u8;
    assert!(
        matches!(r, 0 | 2 | 3 | 5),
        "k(k+2) mod 6 = {r} for k = {k}; arithmetic is broken"
    );
    DegreeDecomp6 { k, q: n / 6, r }
}

pub fn decompose12(k: u32) -> DegreeDecomp12 {
    let n = settled_length(k);
    let rho = (n % 12) as u8;
    assert!(
        matches!(rho, 0 | 3 | 8 | 11),
        "k(k+2) mod 12 = {rho} for k = {k}; arithmetic is broken"
    );
    DegreeDecomp12 { k, u: n / 12, rho }
}

/// Least `v >= 0` with `length <= n_forms(v)`.
pub fn v_of(length: u64) -> Result<u32, NumericsError> {
    if length == 0 {
        return Err(NumericsError::ZeroLength);
    }
    if n_forms(u32::MAX) < length {
        return Err(NumericsError::Overflow("v_of"));
    }
    Ok(partition_point(|v| n_forms(v) < length))
}

/// Least `k >= 1` with `k(k+2) >= 2 * length`.
pub fn w_of(length: u64) -> Result<u32, NumericsError> {
    if length == 0 {
        return Err(NumericsError::ZeroLength);
    }
    let target = length
        .checked_mul(2)
        .ok_or(NumericsError::Overflow("w_of"))?;
    if settled_length(u32::MAX) < target {
        return Err(NumericsError::Overflow("w_of"));
    }
    Ok(partition_point(|k| settled_length(k) < target).max(1))
}

// First `x` in `0..=u32::MAX` for which `below(x)` is false; `below` is monotone.
fn partition_point(below: impl Fn(u32) -> bool) -> u32 {
    let (mut lo, mut hi) = (0u64, u32::MAX as u64);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if below(mid as u32) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    lo as u32
}

/// Generic value of `h0(I(k))` for a scheme of the given length.
pub fn expected_hilbert(length: u64, k: u32) -> u64 {
    n_forms(k).saturating_sub(length)
}

/// `a + 3b + 6c`.
pub fn scheme_length(a: u64, b: u64, c: u64) -> Result<u64, NumericsError> {
    let err = NumericsError::Overflow("scheme length");
    let b3 = b.checked_mul(3).ok_or(err.clone())?;
    let c6 = c.checked_mul(6).ok_or(err.clone())?;
    a.checked_add(b3)
        .and_then(|x| x.checked_add(c6))
        .ok_or(err)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedResolution {
    pub length: u64,
    pub v: u32,
    pub gens_v: u64,
    pub gens_v1: u64,
    pub hf_exception: bool,
    pub res_exception: bool,
}

impl ExpectedResolution {
    /// Expected number of minimal generators in degree `k`.
    pub fn gens_in(&self, k: u32) -> u64 {
        if k == self.v {
            self.gens_v
        } else if k == self.v + 1 {
            self.gens_v1
        } else {
            0
        }
    }
}

pub fn expected_resolution(a: u64, b: u64, c: u64) -> Result<ExpectedResolution, NumericsError> {
    let length = scheme_length(a, b, c)?;
    let v = v_of(length)?;
    let gens_v = n_forms(v) - length;
    let gens_v1 = (2 * length).saturating_sub(settled_length(v));
    let hf_exception = matches!((a, b, c), (0, 2, 0) | (0, 5, 0) | (0, 0, 2) | (0, 0, 5));
    let res_exception = hf_exception || matches!((a, b, c), (1, 1, 0) | (1, 2, 0) | (0, 0, 3));
    Ok(ExpectedResolution {
        length,
        v,
        gens_v,
        gens_v1,
        hf_exception,
        res_exception,
    })
}

/// Doubles consumed by `n` chained applications of the degree-lowering
/// double-point step starting at degree `k`: `n(2k - 6n + 2)`.
pub fn alpha(n: u64, k: u32) -> Result<u64, NumericsError> {
    if k < 6 || n == 0 || 6 * n > k as u64 + 4 {
        return Err(NumericsError::AlphaDomain { n, k });
    }
    Ok(n * (2 * k as u64 + 2 - 6 * n))
}

/// Largest `n` with `6n <= k` and `alpha(n, k) <= d`; zero when `d < 2k - 4`.
pub fn n_bar(d: u64, k: u32) -> Result<u64, NumericsError> {
    if k < 6 {
        return Err(NumericsError::DegreeTooSmall(k));
    }
    let mut best = 0;
    for n in 1..=(k as u64 / 6) {
        if alpha(n, k)? <= d {
            best = n;
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n_forms_values() {
        assert_eq!(n_forms(0), 1);
        assert_eq!(n_forms(2), 6);
        assert_eq!(n_forms(12), 91);
        assert_eq!(n_forms(u32::MAX), (1u64 << 63) + (1u64 << 31));
    }

    #[test]
    fn decompositions() {
        assert_eq!(decompose6(1), DegreeDecomp6 { k: 1, q: 0, r: 3 });
        assert_eq!(decompose6(2), DegreeDecomp6 { k: 2, q: 1, r: 2 });
        assert_eq!(decompose6(5), DegreeDecomp6 { k: 5, q: 5, r: 5 });
        assert_eq!((decompose12(13).u, decompose12(13).rho), (16, 3));
        assert_eq!((decompose12(14).u, decompose12(14).rho), (18, 8));
        assert_eq!((decompose12(17).u, decompose12(17).rho), (26, 11));
    }

    #[test]
    fn thresholds() {
        assert_eq!(v_of(4), Ok(2));
        assert_eq!(v_of(78), Ok(11));
        assert_eq!(v_of(79), Ok(12));
        assert_eq!(v_of(15), Ok(4));
        assert_eq!(v_of(10), Ok(3));
        assert_eq!(v_of(1), Ok(0));
        assert_eq!(v_of(0), Err(NumericsError::ZeroLength));
        assert_eq!(w_of(4), Ok(2));
        assert_eq!(w_of(12), Ok(4));
        assert_eq!(w_of(11), Ok(4));
        assert_eq!(w_of(1), Ok(1));
        assert!(v_of(u64::MAX).is_err());
        assert!(w_of(u64::MAX).is_err());
    }

    #[test]
    fn expected_values() {
        assert_eq!(expected_hilbert(6, 2), 0);
        assert_eq!(expected_hilbert(6, 3), 4);
        assert_eq!(expected_hilbert(79, 12), 12);

        let e = expected_resolution(1, 1, 0).unwrap();
        assert_eq!((e.v, e.gens_v, e.gens_v1, e.res_exception), (2, 2, 0, true));
        let e = expected_resolution(0, 0, 1).unwrap();
        assert_eq!((e.v, e.gens_v, e.gens_v1), (2, 0, 4));
        let e = expected_resolution(79, 0, 0).unwrap();
        assert_eq!((e.v, e.gens_v, e.gens_v1), (12, 12, 0));
        let e = expected_resolution(72, 0, 0).unwrap();
        assert_eq!((e.v, e.gens_v, e.gens_v1), (11, 6, 1));
        let e = expected_resolution(1, 0, 0).unwrap();
        assert_eq!((e.v, e.gens_v, e.gens_v1), (0, 0, 2));
        assert_eq!(expected_resolution(0, 0, 0), Err(NumericsError::ZeroLength));
        assert!(expected_resolution(0, u64::MAX, 0).is_err());
    }

    #[test]
    fn exception_flags() {
        for c in 1..=12u64 {
            let e = expected_resolution(0, 0, c).unwrap();
            assert_eq!(e.hf_exception, c == 2 || c == 5);
            assert_eq!(e.res_exception, matches!(c, 2 | 3 | 5));
        }
        for (a, b) in [(0, 2), (0, 5)] {
            let e = expected_resolution(a, b, 0).unwrap();
            assert!(e.hf_exception && e.res_exception);
        }
        for (a, b) in [(1, 1), (1, 2)] {
            let e = expected_resolution(a, b, 0).unwrap();
            assert!(!e.hf_exception && e.res_exception);
        }
    }

    #[test]
    fn alpha_and_n_bar() {
        for k in 6..40 {
            assert_eq!(alpha(1, k), Ok(2 * k as u64 - 4));
        }
        assert_eq!(alpha(2, 14), Ok(36));
        assert_eq!(alpha(2, 17), Ok(48));
        for k in 6..60u32 {
            for n in 1..=(k as u64 + 4) / 6 {
                let sum: u64 = (0..n).map(|i| 2 * (k as u64 - 6 * i) - 4).sum();
                assert_eq!(alpha(n, k), Ok(sum));
            }
        }
        assert!(alpha(0, 12).is_err());
        assert!(alpha(3, 12).is_err());
        assert!(alpha(1, 5).is_err());
        assert_eq!(n_bar(19, 12), Ok(0));
        assert_eq!(n_bar(20, 12), Ok(1));
        assert_eq!(n_bar(28, 12), Ok(2));
        assert!(n_bar(3, 5).is_err());
    }
}
