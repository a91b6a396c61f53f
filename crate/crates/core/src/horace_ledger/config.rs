//! Length bookkeeping for configurations on the projectivized cotangent
//! bundle. All lengths here are bundle lengths: a simple-point pullback
//! has length 2, a double 6, a triple 12, and each plane point on the
//! conic contributes 2.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::LedgerError;
use crate::numerics::settled_length;

/// One slice of a column over the conic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Row {
    /// `a` plane conditions on the conic (bundle length `2a`).
    Plane(u32),
    /// A single point of the bundle over the conic, written `1/0`.
    Bundle,
}

impl Row {
    pub fn length(self) -> u64 {
        match self {
            Row::Plane(a) => 2 * a as u64,
            Row::Bundle => 1,
        }
    }
}

/// A vertically graded scheme over the conic, rows listed bottom-up.
/// Written top-down as in `(1;2;3)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Column(Vec<Row>);

impl Column {
    pub fn new(bottom_up: Vec<Row>) -> Result<Self, LedgerError> {
        if bottom_up.is_empty() || bottom_up.contains(&Row::Plane(0)) {
            return Err(LedgerError::InvalidColumn(format!("{bottom_up:?}")));
        }
        Ok(Column(bottom_up))
    }

    fn plane(bottom_up: &[u32]) -> Self {
        Column(bottom_up.iter().map(|&a| Row::Plane(a)).collect())
    }

    /// `(1;2)`: a double point placed on the conic.
    pub fn double_on_conic() -> Self {
        Self::plane(&[2, 1])
    }

    /// `(1;3)`: residue of a triple point sliced in its middle row.
    pub fn one_three() -> Self {
        Self::plane(&[3, 1])
    }

    /// `(2;3)`: residue of a triple point sliced in its top row.
    pub fn two_three() -> Self {
        Self::plane(&[3, 2])
    }

    /// `(1;2;3)`: a triple point placed on the conic.
    pub fn triple_on_conic() -> Self {
        Self::plane(&[3, 2, 1])
    }

    /// `(1/0;2)`, the shape of `R_5`.
    pub fn bundle_two() -> Self {
        Column(vec![Row::Plane(2), Row::Bundle])
    }

    /// `(1/0;2;3)`, the shape of `R_11`.
    pub fn bundle_two_three() -> Self {
        Column(vec![Row::Plane(3), Row::Plane(2), Row::Bundle])
    }

    pub fn rows(&self) -> &[Row] {
        &self.0
    }

    pub fn bottom(&self) -> Row {
        self.0[0]
    }

    pub fn length(&self) -> u64 {
        self.0.iter().map(|r| r.length()).sum()
    }

    /// The column without its bottom row, if anything is left.
    pub fn lifted(&self) -> Option<Column> {
        (self.0.len() > 1).then(|| Column(self.0[1..].to_vec()))
    }
}

impl fmt::Display for Column {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .rev()
            .map(|r| match r {
                Row::Plane(a) => a.to_string(),
                Row::Bundle => "1/0".to_string(),
            })
            .collect();
        write!(f, "({})", parts.join(";"))
    }
}

impl FromStr for Column {
    type Err = LedgerError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || LedgerError::InvalidColumn(s.to_string());
        let inner = s.trim().strip_prefix('(').and_then(|x| x.strip_suffix(')')).ok_or_else(bad)?;
        let mut rows = inner
            .split(';')
            .map(|part| match part.trim() {
                "1/0" => Ok(Row::Bundle),
                n => n.parse().map(Row::Plane).map_err(|_| bad()),
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.reverse();
        Column::new(rows)
    }
}

impl TryFrom<String> for Column {
    type Error = LedgerError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<Column> for String {
    fn from(c: Column) -> String {
        c.to_string()
    }
}

/// Allowed remainder lengths.
pub const REMAINDER_LENGTHS: [u8; 7] = [0, 1, 2, 3, 5, 8, 11];

/// The remainder scheme `R_p`, or the barred `R̄_11` (a double-point
/// pullback together with `R_5`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Remainder {
    p: u8,
    barred: bool,
}

impl Remainder {
    pub const NONE: Remainder = Remainder { p: 0, barred: false };
    pub const BARRED: Remainder = Remainder { p: 11, barred: true };

    pub fn new(p: u8) -> Result<Self, LedgerError> {
        if !REMAINDER_LENGTHS.contains(&p) {
            return Err(LedgerError::InvalidRemainder(p));
        }
        Ok(Remainder { p, barred: false })
    }

    pub fn p(self) -> u8 {
        self.p
    }

    pub fn is_barred(self) -> bool {
        self.barred
    }

    pub fn length(self) -> u64 {
        self.p as u64
    }

    /// Column shape used when the remainder is slid onto the conic.
    pub fn column(self) -> Option<Column> {
        match (self.p, self.barred) {
            (5, false) => Some(Column::bundle_two()),
            (8, false) => Some(Column::one_three()),
            (11, false) => Some(Column::bundle_two_three()),
            _ => None,
        }
    }
}

impl fmt::Display for Remainder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.barred {
            write!(f, "Rbar{}", self.p)
        } else {
            write!(f, "R{}", self.p)
        }
    }
}

impl TryFrom<String> for Remainder {
    type Error = LedgerError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        if s == "Rbar11" {
            return Ok(Remainder::BARRED);
        }
        s.strip_prefix('R')
            .and_then(|n| n.parse().ok())
            .ok_or(LedgerError::InvalidRemainderName(s.clone()))
            .and_then(Remainder::new)
    }
}

impl From<Remainder> for String {
    fn from(r: Remainder) -> String {
        r.to_string()
    }
}

/// A configuration at degree `k`: general pullbacks of simple, double and
/// triple points, schemes over the conic, and a remainder.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Configuration {
    pub k: u32,
    pub simple: u64,
    pub double: u64,
    pub triple: u64,
    /// Multi-row columns over the conic, with multiplicity.
    pub columns: BTreeMap<Column, u64>,
    /// Plane points on the conic (bundle length 2 each).
    pub conic_points: u64,
    /// Isolated points of the bundle over the conic (length 1 each).
    pub bundle_points: u64,
    pub remainder: Remainder,
}

impl Configuration {
    pub fn new(k: u32) -> Self {
        Configuration {
            k,
            simple: 0,
            double: 0,
            triple: 0,
            columns: BTreeMap::new(),
            conic_points: 0,
            bundle_points: 0,
            remainder: Remainder::NONE,
        }
    }

    /// `Z(s, d, t, p)` at degree `k`.
    pub fn general(k: u32, s: u64, d: u64, t: u64, p: u8) -> Result<Self, LedgerError> {
        Ok(Configuration {
            simple: s,
            double: d,
            triple: t,
            remainder: Remainder::new(p)?,
            ..Self::new(k)
        })
    }

    pub fn with_columns(mut self, col: Column, n: u64) -> Self {
        self.add_columns(col, n);
        self
    }

    pub fn column_count(&self, col: &Column) -> u64 {
        self.columns.get(col).copied().unwrap_or(0)
    }

    pub fn add_columns(&mut self, col: Column, n: u64) {
        if n > 0 {
            *self.columns.entry(col).or_insert(0) += n;
        }
    }

    pub fn remove_columns(&mut self, col: &Column, n: u64) -> Result<(), LedgerError> {
        let have = self.column_count(col);
        if have < n {
            return Err(LedgerError::Inapplicable(format!(
                "needs {n} columns {col} over the conic, found {have}"
            )));
        }
        if have == n {
            self.columns.remove(col);
        } else {
            self.columns.insert(col.clone(), have - n);
        }
        Ok(())
    }

    /// Adds what is left of a column once its bottom row has been used.
    /// Single plane rows become points on the conic, a lone `1/0` becomes
    /// a bundle point.
    pub fn add_residual(&mut self, rows: &[Row]) {
        match rows {
            [] => {}
            [Row::Plane(a)] => self.conic_points += *a as u64,
            [Row::Bundle] => self.bundle_points += 1,
            _ => self.add_columns(Column(rows.to_vec()), 1),
        }
    }

    pub fn length(&self) -> u64 {
        2 * self.simple
            + 6 * self.double
            + 12 * self.triple
            + self.columns.iter().map(|(c, n)| c.length() * n).sum::<u64>()
            + 2 * self.conic_points
            + self.bundle_points
            + self.remainder.length()
    }

    /// Length already sitting on the conic that a step at this degree
    /// must count towards its trace.
    pub fn conic_load(&self) -> u64 {
        self.columns.iter().map(|(c, n)| c.bottom().length() * n).sum::<u64>()
            + 2 * self.conic_points
            + self.bundle_points
    }

    pub fn has_conic_data(&self) -> bool {
        !self.columns.is_empty() || self.conic_points > 0 || self.bundle_points > 0
    }

    /// Length must equal `k(k+2)`.
    pub fn check_settled_length(&self) -> Result<(), LedgerError> {
        let want = settled_length(self.k);
        if self.length() != want {
            return Err(LedgerError::LengthMismatch {
                k: self.k,
                expected: want,
                found: self.length(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k={}", self.k)?;
        let mut parts = Vec::new();
        if self.simple > 0 {
            parts.push(format!("{} simple", self.simple));
        }
        if self.double > 0 {
            parts.push(format!("{} double", self.double));
        }
        if self.triple > 0 {
            parts.push(format!("{} triple", self.triple));
        }
        let mut on_c = Vec::new();
        if self.conic_points > 0 {
            on_c.push(format!("({})", self.conic_points));
        }
        for (c, n) in &self.columns {
            on_c.push(if *n == 1 { c.to_string() } else { format!("{n}{c}") });
        }
        if self.bundle_points > 0 {
            on_c.push(format!("{}(1/0)", self.bundle_points));
        }
        if !on_c.is_empty() {
            parts.push(format!("[{}] on C", on_c.join(" + ")));
        }
        if self.remainder != Remainder::NONE {
            parts.push(self.remainder.to_string());
        }
        if parts.is_empty() {
            write!(f, ": empty")
        } else {
            write!(f, ": {}", parts.join(", "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn column_lengths_and_notation() {
        assert_eq!(Column::double_on_conic().length(), 6);
        assert_eq!(Column::one_three().length(), 8);
        assert_eq!(Column::two_three().length(), 10);
        assert_eq!(Column::triple_on_conic().length(), 12);
        assert_eq!(Column::bundle_two().length(), 5);
        assert_eq!(Column::bundle_two_three().length(), 11);
        assert_eq!(Column::triple_on_conic().to_string(), "(1;2;3)");
        assert_eq!(Column::bundle_two_three().to_string(), "(1/0;2;3)");
        for c in [Column::two_three(), Column::bundle_two(), Column::plane(&[4])] {
            assert_eq!(c.to_string().parse::<Column>().unwrap(), c);
        }
        assert!("(0;2)".parse::<Column>().is_err());
        assert!("1;2".parse::<Column>().is_err());
        assert_eq!(Column::triple_on_conic().lifted(), Some(Column::double_on_conic()));
    }

    #[test]
    fn remainders() {
        for p in REMAINDER_LENGTHS {
            let r = Remainder::new(p).unwrap();
            assert_eq!(r.length(), p as u64);
            assert_eq!(Remainder::try_from(r.to_string()).unwrap(), r);
        }
        assert!(Remainder::new(4).is_err());
        assert_eq!(Remainder::BARRED.length(), 11);
        assert_eq!(Remainder::try_from("Rbar11".to_string()).unwrap(), Remainder::BARRED);
        assert_eq!(Remainder::new(8).unwrap().column(), Some(Column::one_three()));
        assert_eq!(Remainder::BARRED.column(), None);
    }

    #[test]
    fn configuration_length() {
        let mut c = Configuration::general(12, 1, 2, 3, 8).unwrap();
        assert_eq!(c.length(), 2 + 12 + 36 + 8);
        c.add_columns(Column::double_on_conic(), 2);
        c.conic_points = 3;
        c.bundle_points = 1;
        assert_eq!(c.length(), 58 + 12 + 6 + 1);
        assert_eq!(c.conic_load(), 8 + 6 + 1);
        let json = serde_json::to_string(&c).unwrap();
        let back: Configuration = serde_json::from_str(&json).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn residual_rows() {
        let mut c = Configuration::new(5);
        c.add_residual(&[Row::Plane(2)]);
        c.add_residual(&[Row::Bundle]);
        c.add_residual(&[Row::Plane(2), Row::Bundle]);
        assert_eq!(c.conic_points, 2);
        assert_eq!(c.bundle_points, 1);
        assert_eq!(c.column_count(&Column::bundle_two()), 1);
    }
}
