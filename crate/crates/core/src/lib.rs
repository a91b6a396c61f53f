//! Hilbert functions and graded Betti numbers of general unions of simple,
//! double and triple points in the projective plane, computed exactly over
//! a prime field, together with a checker for Horace-method certificates.

pub mod betti_engine;
pub mod field_linalg;
pub mod horace_ledger;
pub mod numerics;
pub mod scheme_model;
