//! Fat point schemes with random support in the affine chart `z = 1`, and
//! their interpolation matrices.

use std::collections::HashSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field_linalg::{PrimeField, PrimeMatrix};
use crate::numerics::{n_forms, NumericsError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemeError {
    #[error("a scheme needs at least one point")]
    Empty,
    #[error("multiplicities must be at least 1")]
    ZeroMultiplicity,
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("point ({x}, {y}) appears twice")]
    DuplicatePoint { x: u64, y: u64 },
}

/// Multiplicities of the points, simple points first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FatPointSpec {
    multiplicities: Vec<u8>,
}

impl FatPointSpec {
    pub fn new(mut multiplicities: Vec<u8>) -> Result<Self, SchemeError> {
        if multiplicities.is_empty() {
            return Err(SchemeError::Empty);
        }
        if multiplicities.contains(&0) {
            return Err(SchemeError::ZeroMultiplicity);
        }
        multiplicities.sort_unstable();
        Ok(FatPointSpec { multiplicities })
    }

    /// `a` simple, `b` double and `c` triple points.
    pub fn from_counts(a: u64, b: u64, c: u64) -> Result<Self, SchemeError> {
        crate::numerics::scheme_length(a, b, c)?;
        let total = a
            .checked_add(b)
            .and_then(|x| x.checked_add(c))
            .and_then(|x| usize::try_from(x).ok())
            .ok_or(NumericsError::Overflow("point count"))?;
        let mut m = Vec::with_capacity(total);
        m.extend(std::iter::repeat_n(1, a as usize));
        m.extend(std::iter::repeat_n(2, b as usize));
        m.extend(std::iter::repeat_n(3, c as usize));
        Self::new(m)
    }

    pub fn multiplicities(&self) -> &[u8] {
        &self.multiplicities
    }

    pub fn point_count(&self) -> usize {
        self.multiplicities.len()
    }

    pub fn length(&self) -> u64 {
        self.multiplicities
            .iter()
            .map(|&m| m as u64 * (m as u64 + 1) / 2)
            .sum()
    }

    /// `(a, b, c)` when every multiplicity is at most 3.
    pub fn counts(&self) -> Option<(u64, u64, u64)> {
        let mut n = [0u64; 3];
        for &m in &self.multiplicities {
            if m > 3 {
                return None;
            }
            n[m as usize - 1] += 1;
        }
        Some((n[0], n[1], n[2]))
    }
}

impl fmt::Display for FatPointSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.counts() {
            Some((a, b, c)) => write!(f, "({a},{b},{c})"),
            None => write!(f, "{:?}", self.multiplicities),
        }
    }
}

/// A fat point scheme with explicit support `(x, y, 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportedScheme {
    spec: FatPointSpec,
    field: PrimeField,
    support: Vec<(u64, u64)>,
    seed: Option<u64>,
}

/// Serialized form of a `SupportedScheme`: one `m:x:y` string per point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemeRecord {
    pub prime: u64,
    pub seed: Option<u64>,
    pub points: Vec<String>,
}

pub fn random_scheme(spec: &FatPointSpec, seed: u64, field: PrimeField) -> SupportedScheme {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = field.modulus();
    let mut seen = HashSet::with_capacity(spec.point_count());
    let mut support = Vec::with_capacity(spec.point_count());
    while support.len() < spec.point_count() {
        let pt = (rng.gen_range(0..p), rng.gen_range(0..p));
        if seen.insert(pt) {
            support.push(pt);
        }
    }
    SupportedScheme {
        spec: spec.clone(),
        field,
        support,
        seed: Some(seed),
    }
}

impl SupportedScheme {
    /// Scheme with explicitly chosen support; points must be distinct.
    pub fn with_support(field: PrimeField, points: Vec<(u8, u64, u64)>) -> Result<Self, SchemeError> {
        let mut pts = points;
        pts.sort_by_key(|&(m, _, _)| m);
        let mut seen = HashSet::new();
        for &(_, x, y) in &pts {
            let key = (field.reduce(x), field.reduce(y));
            if !seen.insert(key) {
                return Err(SchemeError::DuplicatePoint { x: key.0, y: key.1 });
            }
        }
        let spec = FatPointSpec::new(pts.iter().map(|&(m, _, _)| m).collect())?;
        let support = pts
            .iter()
            .map(|&(_, x, y)| (field.reduce(x), field.reduce(y)))
            .collect();
        Ok(SupportedScheme {
            spec,
            field,
            support,
            seed: None,
        })
    }

    /// Parses the line format `m:x:y` (blank lines and `#` comments skipped).
    pub fn parse(text: &str, field: PrimeField) -> Result<Self, SchemeError> {
        let mut pts = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |message: &str| SchemeError::Parse {
                line: i + 1,
                message: message.to_string(),
            };
            let parts: Vec<&str> = line.split(':').collect();
            if parts.len() != 3 {
                return Err(bad("expected m:x:y"));
            }
            let m: u8 = parts[0].trim().parse().map_err(|_| bad("bad multiplicity"))?;
            let x: u64 = parts[1].trim().parse().map_err(|_| bad("bad x coordinate"))?;
            let y: u64 = parts[2].trim().parse().map_err(|_| bad("bad y coordinate"))?;
            if x >= field.modulus() || y >= field.modulus() {
                return Err(bad("coordinate is not a reduced residue"));
            }
            pts.push((m, x, y));
        }
        Self::with_support(field, pts)
    }

    pub fn to_lines(&self) -> Vec<String> {
        self.spec
            .multiplicities()
            .iter()
            .zip(&self.support)
            .map(|(m, (x, y))| format!("{m}:{x}:{y}"))
            .collect()
    }

    pub fn record(&self) -> SchemeRecord {
        SchemeRecord {
            prime: self.field.modulus(),
            seed: self.seed,
            points: self.to_lines(),
        }
    }

    pub fn spec(&self) -> &FatPointSpec {
        &self.spec
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn support(&self) -> &[(u64, u64)] {
        &self.support
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn length(&self) -> u64 {
        self.spec.length()
    }
}

/// Index of `x^a y^b z^(k-a-b)` among degree-`k` monomials, ordered
/// lexicographically with `x > y > z`.
pub fn monomial_index(k: u32, a: u32, b: u32) -> usize {
    debug_assert!(a + b <= k);
    let top = (k - a) as usize;
    top * (top + 1) / 2 + (k - a - b) as usize
}

/// Exponent pairs `(a, b)` of degree-`k` monomials in column order.
pub fn monomials(k: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::with_capacity(n_forms(k) as usize);
    for a in (0..=k).rev() {
        for b in (0..=k - a).rev() {
            out.push((a, b));
        }
    }
    out
}

/// Rows: one per point and per `(alpha, beta)` with `alpha + beta < m`.
/// Columns: degree-`k` monomials. The entry is the coefficient of
/// `x^alpha y^beta` in `(x + x_i)^a (y + y_i)^b`.
pub fn conditions_matrix(scheme: &SupportedScheme, k: u32) -> PrimeMatrix {
    let f = scheme.field;
    let mons = monomials(k);
    let max_m = scheme.spec.multiplicities().iter().copied().max().unwrap_or(1) as usize;
    let binom = binomial_table(f, k as usize, max_m);
    let rows = scheme.length() as usize;
    let mut m = PrimeMatrix::zeros(f, rows, mons.len());
    let mut row = 0;
    for (&mult, &(x, y)) in scheme.spec.multiplicities().iter().zip(&scheme.support) {
        let xp = powers(f, x, k);
        let yp = powers(f, y, k);
        for alpha in 0..mult as u32 {
            for beta in 0..(mult as u32 - alpha) {
                for (col, &(a, b)) in mons.iter().enumerate() {
                    if a < alpha || b < beta {
                        continue;
                    }
                    let cx = f.mul(binom[a as usize][alpha as usize], xp[(a - alpha) as usize]);
                    let cy = f.mul(binom[b as usize][beta as usize], yp[(b - beta) as usize]);
                    m.set(row, col, f.mul(cx, cy));
                }
                row += 1;
            }
        }
    }
    m
}

fn powers(f: PrimeField, x: u64, k: u32) -> Vec<u64> {
    let mut out = Vec::with_capacity(k as usize + 1);
    let mut acc = 1;
    for _ in 0..=k {
        out.push(acc);
        acc = f.mul(acc, x);
    }
    out
}

// binom[n][j] mod p for n <= top, j < width.
fn binomial_table(f: PrimeField, top: usize, width: usize) -> Vec<Vec<u64>> {
    let mut t = vec![vec![0u64; width]; top + 1];
    for n in 0..=top {
        t[n][0] = 1;
        for j in 1..width.min(n + 1) {
            t[n][j] = f.add(t[n - 1][j - 1], t[n - 1][j]);
        }
    }
    t
}

/// `h0(I(k))`: dimension of degree-`k` forms vanishing on the scheme.
pub fn hilbert_function(scheme: &SupportedScheme, k: u32) -> u64 {
    n_forms(k) - conditions_matrix(scheme, k).rank() as u64
}

/// Basis of the degree-`k` part of the ideal, as coefficient vectors over
/// `monomials(k)`.
pub fn ideal_basis(scheme: &SupportedScheme, k: u32) -> Vec<Vec<u64>> {
    conditions_matrix(scheme, k).kernel_basis()
}
