//! Length bookkeeping checker for conic-degeneration proofs of vanishing
//! on the projectivized cotangent bundle.
//!
//! A [`Configuration`] records only counts and lengths. Rules in
//! [`RuleRegistry`] rewrite configurations or lower the degree by two,
//! checking every budget on the way, and a [`Certificate`] is a replayable
//! list of such steps ending in an entry of the [`AxiomTable`].

mod axioms;
mod certificate;
mod config;
mod replay;
mod rules;
mod tuples;

use thiserror::Error;

pub use axioms::{Axiom, AxiomTable};
pub use certificate::{Certificate, Step, Terminal};
pub use config::{Column, Configuration, Remainder, Row, REMAINDER_LENGTHS};
pub use replay::{
    barred_base_cases, certify_configuration, certify_tuple, chain_then, degree_cases,
    quoted_jumps, specialization_path, sweep_degree, triples_step, two_step_descent, BaseCase,
    CaseRow, CaseStart, Descent, JumpCheck, SweepSummary,
};
pub use rules::{conic_step, standard_slides, Applied, Params, Rule, RuleRegistry, Slides};
pub use tuples::{
    choose_delta_subtuple, choose_lambda_supertuple, in_delta_k, in_lambda_k, lambda_tuples,
    reduce_simples, Reduction,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LedgerError {
    #[error("invalid column {0}")]
    InvalidColumn(String),
    #[error("no remainder scheme of length {0}")]
    InvalidRemainder(u8),
    #[error("unrecognized remainder {0:?}")]
    InvalidRemainderName(String),
    #[error("length {found} at degree {k}, expected {expected}")]
    LengthMismatch { k: u32, expected: u64, found: u64 },
    #[error("rule does not apply: {0}")]
    Inapplicable(String),
    #[error("({s}, {d}, {t}, {p}) is not an admissible tuple at degree {k}")]
    NotInLambda { s: u64, d: u64, t: u64, p: u64, k: u32 },
    #[error("no admissible tuple: {0}")]
    NoTuple(String),
    #[error("unknown rule {0:?}")]
    UnknownRule(String),
    #[error("unknown axiom {0:?}")]
    UnknownAxiom(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("step {index}: {message}")]
    StepMismatch { index: usize, message: String },
    #[error("no axiom covers {0}")]
    NoAxiom(String),
}
