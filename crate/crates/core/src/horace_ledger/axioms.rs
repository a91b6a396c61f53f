//! Terminal facts a certificate may end on. These are the vanishing
//! results the ledger takes as given; it only checks that a configuration
//! has exactly the shape each one covers.

use serde::Serialize;

use super::config::{Column, Configuration, Remainder};
use crate::numerics::{decompose12, decompose6};

#[derive(Clone, Serialize)]
pub struct Axiom {
    pub id: &'static str,
    pub statement: &'static str,
    #[serde(skip)]
    applies: fn(&Configuration) -> bool,
}

impl Axiom {
    pub fn applies(&self, c: &Configuration) -> bool {
        (self.applies)(c)
    }
}

impl std::fmt::Debug for Axiom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Axiom").field("id", &self.id).finish()
    }
}

fn only_general(c: &Configuration) -> bool {
    c.simple == 0 && !c.has_conic_data() && !c.remainder.is_barred()
}

fn doubles(c: &Configuration) -> bool {
    let dec = decompose6(c.k);
    only_general(c)
        && c.triple == 0
        && c.double == dec.q
        && c.remainder.p() == dec.r
        && (c.k == 1 || c.k >= 4)
}

fn triples(c: &Configuration) -> bool {
    let dec = decompose12(c.k);
    only_general(c)
        && c.double == 0
        && c.triple == dec.u
        && c.remainder.p() == dec.rho
        && c.k >= 10
}

fn point_and_bundle_point(c: &Configuration) -> bool {
    c.k == 1
        && c.conic_points == 1
        && c.bundle_points == 1
        && c.columns.is_empty()
        && c.simple == 0
        && c.double == 0
        && c.triple == 0
        && c.remainder == Remainder::NONE
}

/// Counts `(b, d, e)` of `(1;2)`, `(1;3)`, `(2;3)` columns, or `None` if any
/// other column is present.
fn conic_column_counts(c: &Configuration) -> Option<(u64, u64, u64)> {
    let (b, d, e) = (
        c.column_count(&Column::double_on_conic()),
        c.column_count(&Column::one_three()),
        c.column_count(&Column::two_three()),
    );
    (b + d + e == c.columns.values().sum::<u64>()).then_some((b, d, e))
}

fn conic_columns_shape(c: &Configuration) -> bool {
    let Some((b, d, e)) = conic_column_counts(c) else {
        return false;
    };
    c.k >= 12
        && c.simple == 0
        && c.double == 0
        && c.bundle_points == 0
        && 2 * b + c.conic_points + 3 * d + 3 * e <= 2 * c.k as u64
        && d + e <= 1
        && c.check_settled_length().is_ok()
}

fn conic_columns(c: &Configuration) -> bool {
    let allowed: &[u8] = if c.k.is_multiple_of(2) { &[0, 8] } else { &[3, 11] };
    conic_columns_shape(c) && !c.remainder.is_barred() && allowed.contains(&c.remainder.p())
}

fn conic_columns_barred(c: &Configuration) -> bool {
    conic_columns_shape(c) && c.remainder.is_barred() && c.k % 2 == 1
}

pub struct AxiomTable {
    axioms: Vec<Axiom>,
}

impl AxiomTable {
    pub fn standard() -> Self {
        AxiomTable {
            axioms: vec![
                Axiom {
                    id: "general_doubles",
                    statement: "q(k) general double points with R_r(k), where k(k+2) = 6q + r, are k-settled for k = 1 and every k >= 4",
                    applies: doubles,
                },
                Axiom {
                    id: "general_triples",
                    statement: "u(k) general triple points with R_rho(k), where k(k+2) = 12u + rho, are k-settled for k >= 10",
                    applies: triples,
                },
                Axiom {
                    id: "conic_columns",
                    statement: "b (1;2), c (1), d (1;3), e (2;3) over a conic plus general triples and R_0 or R_8 (k even) or R_3 or R_11 (k odd) are k-settled for k >= 12 when 2b+c+3d+3e <= 2k, d+e <= 1 and the length is k(k+2)",
                    applies: conic_columns,
                },
                Axiom {
                    id: "conic_columns_barred",
                    statement: "the same conic-column schemes with the barred remainder in place of R_11 are k-settled for odd k >= 12",
                    applies: conic_columns_barred,
                },
                Axiom {
                    id: "point_and_bundle_point",
                    statement: "one point on the conic together with one point of the bundle is 1-settled",
                    applies: point_and_bundle_point,
                },
            ],
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = &Axiom> {
        self.axioms.iter()
    }

    pub fn get(&self, id: &str) -> Option<&Axiom> {
        self.axioms.iter().find(|a| a.id == id)
    }

    /// First axiom covering the configuration.
    pub fn find(&self, c: &Configuration) -> Option<&Axiom> {
        self.axioms.iter().find(|a| a.applies(c))
    }
}
