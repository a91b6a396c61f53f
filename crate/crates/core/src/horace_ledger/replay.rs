//! Certificate construction: the reduction of an admissible tuple to
//! doubles and triples, the routing of the resulting configuration by its
//! number of doubles, and the small-degree tails.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::axioms::AxiomTable;
use super::certificate::{Certificate, Recorder, Step};
use super::config::{Column, Configuration, Remainder};
use super::rules::{standard_slides, Params, RuleRegistry, Slides};
use super::tuples::{in_delta_k, in_lambda_k, lambda_tuples, reduce_simples, Reduction};
use super::LedgerError;
use crate::numerics::{decompose12, decompose6, n_bar};

struct Ledger {
    rules: RuleRegistry,
    axioms: AxiomTable,
}

fn ledger() -> &'static Ledger {
    static LEDGER: OnceLock<Ledger> = OnceLock::new();
    LEDGER.get_or_init(|| Ledger {
        rules: RuleRegistry::standard(),
        axioms: AxiomTable::standard(),
    })
}

fn count(n: u64) -> Params {
    Params::from([("count".to_string(), n)])
}

fn stuck(c: &Configuration, why: &str) -> LedgerError {
    LedgerError::NoAxiom(format!("{c} ({why})"))
}

type Rec = Recorder<'static>;

fn recorder(c: Configuration) -> Rec {
    Recorder::new(&ledger().rules, c)
}

fn at_axiom(r: &Rec) -> bool {
    ledger().axioms.find(&r.current).is_some()
}

fn std_step(r: &mut Rec, slide: bool) -> Result<(), LedgerError> {
    let sl = standard_slides(&r.current, slide)?;
    r.apply("standard_step", sl.to_params())?;
    Ok(())
}

fn horace(r: &mut Rec, sl: Slides) -> Result<(), LedgerError> {
    r.apply("horace_step", sl.to_params())?;
    Ok(())
}

fn rewrite(r: &mut Rec, rule: &str, n: u64) -> Result<(), LedgerError> {
    if n > 0 {
        r.apply(rule, count(n))?;
    }
    Ok(())
}

fn absorb(r: &mut Rec, simple: u64, double: u64, conic_points: u64) -> Result<(), LedgerError> {
    if simple + double + conic_points == 0 {
        return Ok(());
    }
    let params = [("simple", simple), ("double", double), ("conic_points", conic_points)]
        .into_iter()
        .filter(|&(_, v)| v > 0)
        .map(|(k, v)| (k.to_string(), v))
        .collect();
    r.apply("absorb_into_remainder", params)?;
    Ok(())
}

/// Points on the conic, general doubles and a remainder: trade the points
/// for doubles and the remainder of the degree, if the counts fit.
fn points_to_doubles(r: &mut Rec) -> Result<bool, LedgerError> {
    let c = &r.current;
    if c.simple > 0 || c.triple > 0 || !c.columns.is_empty() || c.bundle_points > 0 || c.remainder.is_barred() {
        return Ok(false);
    }
    let dec = decompose6(c.k);
    let (threes, left) = (c.conic_points / 3, c.conic_points % 3);
    if c.double + threes != dec.q || c.remainder.p() as u64 + 2 * left != dec.r as u64 {
        return Ok(false);
    }
    rewrite(r, "conic_points_to_double", threes)?;
    absorb(r, 0, 0, left)?;
    Ok(true)
}

/// Standard steps until an axiom or the double-point normal form applies.
fn descend(r: &mut Rec) -> Result<(), LedgerError> {
    loop {
        if at_axiom(r) || points_to_doubles(r)? {
            return Ok(());
        }
        if r.current.k <= 1 {
            return Err(stuck(&r.current, "no step left"));
        }
        std_step(r, false)?;
    }
}

fn doubles_onto_conic(r: &mut Rec) -> Result<(), LedgerError> {
    let d = r.current.double;
    rewrite(r, "doubles_onto_conic", d)
}

/// Two conic steps spread over two conics, ending in the conic-columns
/// axiom at degree `k-4` or `k-6`.
fn two_conic_descent(r: &mut Rec) -> Result<(), LedgerError> {
    let (k, d) = (r.current.k as u64, r.current.double);
    let half = (k - 4) / 2;
    horace(r, Slides { r: k, ..Slides::default() })?;
    if d - k > half {
        let (m, l) = ((k - 4) / 2, (k - 4) % 2);
        horace(r, Slides { r: m, s: l, ..Slides::default() })?;
    }
    let c = &r.current;
    let plane = (2 * c.k as u64)
        .checked_sub(c.conic_points + 2 * c.double)
        .ok_or_else(|| stuck(c, "conic over-filled"))?;
    let g = c.triple.min(plane / 3);
    let rest = plane - 3 * g;
    horace(
        r,
        Slides {
            r: r.current.double,
            g,
            n: (rest == 2) as u64,
            p: (rest == 1) as u64,
            ..Slides::default()
        },
    )
}

fn barred_tail(r: &mut Rec) -> Result<(), LedgerError> {
    while r.current.k > 3 {
        std_step(r, false)?;
    }
    if r.current.double > 0 {
        doubles_onto_conic(r)?;
    } else if r.current.column_count(&Column::double_on_conic()) == 0 {
        rewrite(r, "conic_points_to_conic_double", 1)?;
    }
    std_step(r, true)
}

fn expand(r: &mut Rec) -> Result<(), LedgerError> {
    r.apply("expand_barred_remainder", Params::new())?;
    Ok(())
}

fn tail_at_five(r: &mut Rec) -> Result<(), LedgerError> {
    if r.current.k != 5 {
        return Err(stuck(&r.current, "expected degree 5"));
    }
    if r.current.remainder.is_barred() {
        expand(r)?;
        return barred_tail(r);
    }
    std_step(r, true)?;
    std_step(r, false)
}

fn degree_eleven(r: &mut Rec) -> Result<(), LedgerError> {
    if at_axiom(r) {
        return Ok(());
    }
    let c = &r.current;
    if c.remainder.is_barred() && c.double == 0 && c.triple == 11 {
        expand(r)?;
        return barred_tail(r);
    }
    while r.current.k > 5 {
        std_step(r, false)?;
    }
    tail_at_five(r)
}

/// Degrees 12 to 17 with fewer than `2k-4` doubles.
fn small_degree(r: &mut Rec) -> Result<(), LedgerError> {
    let c = &r.current;
    let (k, d, t) = (c.k, c.double, c.triple);
    let half = (k as u64 - 4) / 2;
    if d <= k as u64 {
        return doubles_onto_conic(r);
    }
    if (k == 16 || k == 17) && d <= k as u64 + half {
        return two_conic_descent(r);
    }
    if t == 0 && matches!(k, 12 | 13 | 15 | 16) {
        return Ok(());
    }
    if k == 17 {
        if t <= 11 {
            r.apply("double_chain", Params::new())?;
            return degree_eleven(r);
        }
        for _ in 0..6 {
            std_step(r, false)?;
        }
        return tail_at_five(r);
    }
    std_step(r, false)?;
    if k == 14 {
        std_step(r, true)?;
    }
    descend(r)
}

/// Doubles, triples and a remainder at degree `k >= 12`.
fn route_by_doubles(r: &mut Rec) -> Result<(), LedgerError> {
    let (k, d) = (r.current.k, r.current.double);
    if k < 12 {
        return Err(stuck(&r.current, "routing needs k >= 12"));
    }
    let (h, j) = (k / 6, k % 6);
    if d < 2 * k as u64 - 4 {
        if k >= 18 {
            if d <= k as u64 {
                return doubles_onto_conic(r);
            }
            return two_conic_descent(r);
        }
        return small_degree(r);
    }
    let nb = n_bar(d, k).map_err(|e| stuck(&r.current, &e.to_string()))?;
    if nb + 3 <= h as u64 {
        for _ in 0..nb {
            r.apply("double_chain", Params::new())?;
        }
        return route_by_doubles(r);
    }
    for _ in 0..h - 2 {
        r.apply("double_chain", Params::new())?;
    }
    debug_assert_eq!(r.current.k, 12 + j);
    small_degree(r)
}

fn close(r: Rec) -> Result<Certificate, LedgerError> {
    r.finish(&ledger().axioms)
}

/// Certificate that `Z(s, d, t, p)` is `k`-settled, for `(s, d, t, p)` in
/// `Lambda_k` and `k >= 12`.
pub fn certify_tuple(s: u64, d: u64, t: u64, p: u64, k: u32) -> Result<Certificate, LedgerError> {
    if !in_lambda_k(s, d, t, p, k) {
        return Err(LedgerError::NotInLambda { s, d, t, p, k });
    }
    if k < 12 {
        return Err(LedgerError::BadParameter(format!("tuple replay needs k >= 12, got {k}")));
    }
    let mut r = recorder(Configuration::general(k, s, d, t, p as u8)?);
    if in_delta_k(s, d, p, k) && t == 0 {
        let sigma = (decompose6(k).r as u64 - p) / 2;
        rewrite(&mut r, "simples_to_doubles", (s - sigma) / 3)?;
        absorb(&mut r, sigma, 0, 0)?;
        return close(r);
    }
    match reduce_simples(s, d, t, p, k)? {
        Reduction::Triples {
            merged_doubles,
            simple_sixes,
            simple,
            ..
        } => {
            rewrite(&mut r, "double_and_simples_to_triple", merged_doubles)?;
            rewrite(&mut r, "simples_to_triples", simple_sixes)?;
            absorb(&mut r, simple, 0, 0)?;
        }
        Reduction::Mixed {
            merged,
            sigma,
            j,
            barred,
            ..
        } => {
            rewrite(&mut r, "double_and_simples_to_triple", merged)?;
            if barred {
                r.apply("bar_remainder", Params::new())?;
            } else {
                absorb(&mut r, sigma, j, 0)?;
            }
            route_by_doubles(&mut r)?;
        }
    }
    close(r)
}

/// Certificate for an arbitrary configuration of settled length, using
/// the same routes as the tuple replay.
pub fn certify_configuration(c: &Configuration) -> Result<Certificate, LedgerError> {
    c.check_settled_length()?;
    let mut r = recorder(c.clone());
    if !at_axiom(&r) {
        let general = c.simple == 0 && !c.has_conic_data();
        if general && c.k >= 12 {
            route_by_doubles(&mut r)?;
        } else if general && c.k == 11 {
            degree_eleven(&mut r)?;
        } else if c.remainder.is_barred() {
            expand(&mut r)?;
            barred_tail(&mut r)?;
        } else if c.k == 5 && c.remainder.p() == 11 {
            tail_at_five(&mut r)?;
        } else {
            descend(&mut r)?;
        }
    }
    close(r)
}

/// Prepends one double-chain step to a certificate for the residue.
pub fn chain_then(before: &Configuration, rest: Certificate) -> Result<Certificate, LedgerError> {
    let mut r = recorder(before.clone());
    r.apply("double_chain", Params::new())?;
    if r.current != rest.input {
        return Err(LedgerError::StepMismatch {
            index: 0,
            message: format!("chain gives {}, the residue certificate starts at {}", r.current, rest.input),
        });
    }
    let mut steps = r.steps;
    steps.extend(rest.steps);
    Ok(Certificate {
        input: before.clone(),
        steps,
        terminal: rest.terminal,
    })
}

/// `d` doubles, `t` triples and `R_rho` at degree `k`, with `d + 2t = 2u(k)`.
fn doubles_and_triples(t: u64, k: u32) -> Result<Configuration, LedgerError> {
    let dec = decompose12(k);
    let d = (2 * dec.u).checked_sub(2 * t).ok_or_else(|| {
        LedgerError::BadParameter(format!("t = {t} exceeds u({k}) = {}", dec.u))
    })?;
    Configuration::general(k, 0, d, t, dec.rho)
}

/// Two greedy conic steps from `t` triples and `2u(k) - 2t` doubles.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Descent {
    pub t: u64,
    pub k: u32,
    pub d: u64,
    /// Doubles cut in the top and bottom row in the first step.
    pub a: u64,
    pub b: u64,
    /// Doubles cut in the bottom and top row in the second step.
    pub h: u64,
    pub i: u64,
    /// Points left on the conic and general doubles left at degree `k-4`.
    pub w: u64,
    pub q: u64,
    pub slide_remainder: bool,
    pub steps: Vec<Step>,
}

impl Descent {
    pub fn first_residue(&self) -> &Configuration {
        &self.steps[0].after
    }

    pub fn residue(&self) -> &Configuration {
        &self.steps[1].after
    }
}

/// All triples on the conic in the first step, then doubles only in the
/// second; with `slide_remainder` the second step also slides `R_rho`.
pub fn two_step_descent(t: u64, k: u32, slide_remainder: bool) -> Result<Descent, LedgerError> {
    if t > 2 * k as u64 / 3 {
        return Err(LedgerError::BadParameter(format!(
            "the two-step descent needs t <= 2k/3, got t = {t} at k = {k}"
        )));
    }
    if k < 5 {
        return Err(LedgerError::BadParameter(format!("the two-step descent needs k >= 5, got {k}")));
    }
    let input = doubles_and_triples(t, k)?;
    let d = input.double;
    let mut r = recorder(input);
    std_step(&mut r, false)?;
    let first = Slides::from_params(&r.steps[0].parameters)?;
    if (first.g, first.n, first.p) != (t, 0, 0) {
        return Err(LedgerError::Inapplicable(format!("first step did not take all {t} triples")));
    }
    let (b, a) = (first.r, first.s);
    let (bound, loaded) = (2 * (k as u64 - 2), 2 * t + b + 2 * a);
    if loaded > bound {
        return Err(LedgerError::Inapplicable(format!(
            "2t + b + 2a = {loaded} exceeds 2(k-2) = {bound}"
        )));
    }
    std_step(&mut r, slide_remainder)?;
    let second = Slides::from_params(&r.steps[1].parameters)?;
    if second.g + second.n + second.p > 0 {
        return Err(LedgerError::Inapplicable("second step met a triple".into()));
    }
    let (h, i) = (second.r, second.s);
    let q = d
        .checked_sub(a + b + h + i)
        .ok_or_else(|| LedgerError::Inapplicable("d - a - b - h - i is negative".into()))?;
    let w = t + h + 2 * i + slide_remainder as u64;
    let res = &r.current;
    if res.conic_points != w || res.double != q {
        return Err(LedgerError::Inapplicable(format!(
            "residue {res} disagrees with w = {w}, q = {q}"
        )));
    }
    Ok(Descent {
        t,
        k,
        d,
        a,
        b,
        h,
        i,
        w,
        q,
        slide_remainder,
        steps: r.steps,
    })
}

/// One standard step using triples only, for `t > 2k/3`.
pub fn triples_step(t: u64, k: u32) -> Result<Step, LedgerError> {
    if t <= 2 * k as u64 / 3 {
        return Err(LedgerError::BadParameter(format!(
            "the triples-only step needs t > 2k/3, got t = {t} at k = {k}"
        )));
    }
    let mut r = recorder(doubles_and_triples(t, k)?);
    std_step(&mut r, false)?;
    let step = r.steps.pop().expect("one step recorded");
    let sl = Slides::from_params(&step.parameters)?;
    if sl.r + sl.s > 0 || sl.n + sl.p > 1 || 3 * sl.g + 2 * sl.n + sl.p != 2 * k as u64 {
        return Err(LedgerError::Inapplicable(format!(
            "step used doubles or more than one sliced triple: {sl:?}"
        )));
    }
    Ok(step)
}

/// Rewrites turning `from` into `to` by moving general doubles and triples
/// onto the conic and regrouping points on the conic three at a time.
/// Fails when the counts would have to move the other way.
pub fn specialization_path(from: &Configuration, to: &Configuration) -> Result<Vec<(String, Params)>, LedgerError> {
    let bad = |why: String| LedgerError::Inapplicable(format!("{from} does not specialize to {to}: {why}"));
    let dc = Column::double_on_conic();
    let tc = Column::triple_on_conic();
    let strip = |c: &Configuration| {
        let mut c = c.clone();
        c.columns.remove(&dc);
        c.columns.remove(&tc);
        (c.k, c.simple, c.columns, c.bundle_points, c.remainder)
    };
    if strip(from) != strip(to) {
        return Err(bad("they differ beyond doubles, triples and points on the conic".into()));
    }
    let delta = |a: u64, b: u64| b as i64 - a as i64;
    let placed_triples = delta(from.column_count(&tc), to.column_count(&tc));
    if placed_triples < 0 || delta(to.triple, from.triple) != placed_triples {
        return Err(bad("triples would have to leave the conic".into()));
    }
    let db = delta(from.column_count(&dc), to.column_count(&dc));
    let dd = delta(from.double, to.double);
    let de = delta(from.conic_points, to.conic_points);
    if -3 * (db + dd) != de {
        return Err(bad("lengths do not balance".into()));
    }
    // x doubles placed, y point triples to (1;2) on C, z point triples to doubles.
    let x = (-dd).max(0);
    let (y, z) = (db - x, dd + x);
    if y < 0 || x > from.double as i64 {
        return Err(bad(format!(
            "needs {} points on the conic from double points",
            -3 * y.min(0) + 3 * (x - from.double as i64).max(0)
        )));
    }
    let mut out = Vec::new();
    for (rule, n) in [
        ("triples_onto_conic", placed_triples),
        ("doubles_onto_conic", x),
        ("conic_points_to_conic_double", y),
        ("conic_points_to_double", z),
    ] {
        if n > 0 {
            out.push((rule.to_string(), count(n as u64)));
        }
    }
    let mut check = recorder(from.clone());
    for (rule, params) in &out {
        check.apply(rule, params.clone())?;
    }
    if &check.current != to {
        return Err(bad(format!("rewrites reach {}", check.current)));
    }
    Ok(out)
}

/// A claimed specialization between two configurations of the case
/// analysis and the rewrites that realize it, if any.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JumpCheck {
    pub label: String,
    pub from: Configuration,
    pub to: Configuration,
    pub path: Option<Vec<(String, Params)>>,
    pub error: Option<String>,
}

fn jump(label: String, from: &Configuration, to: &Configuration) -> JumpCheck {
    let (path, error) = match specialization_path(from, to) {
        Ok(p) => (Some(p), None),
        Err(e) => (None, Some(e.to_string())),
    };
    JumpCheck {
        label,
        from: from.clone(),
        to: to.clone(),
        path,
        error,
    }
}

/// The specializations the degree 14 and 15 cases rely on: descent
/// residues onto first residues of degree `k-2`, and triples-only residues
/// onto the starting configuration of the two-step descent with its conic
/// pieces placed.
pub fn quoted_jumps() -> Result<Vec<JumpCheck>, LedgerError> {
    let mut out = Vec::new();
    for (k, slide, lower, smallest) in [(14, true, 12, 0), (15, false, 13, 1)] {
        for (t, target) in [(8, 1), (4, 2), (smallest, 4)] {
            let from = two_step_descent(t, k, slide)?;
            let to = two_step_descent(target, lower, false)?;
            out.push(jump(
                format!("k={k} t={t} (w,q)=({},{}) onto the first residue of the two-step descent at k={lower}, t={target}", from.w, from.q),
                from.residue(),
                to.first_residue(),
            ));
        }
    }
    for (t, target) in [(11, 1), (12, 2)] {
        let from = triples_step(t, 15)?.after;
        let to = two_step_descent(target, 13, false)?;
        let mut placed = to.steps[0].before.clone();
        placed.triple -= target;
        placed.double -= to.a + to.b;
        placed.add_columns(Column::triple_on_conic(), target);
        placed.add_columns(Column::double_on_conic(), to.a + to.b);
        out.push(jump(
            format!("k=15 t={t} triples-only residue onto the placed start of the two-step descent at k=13, t={target}"),
            &from,
            &placed,
        ));
    }
    Ok(out)
}

/// A named base configuration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseCase {
    pub label: String,
    pub configuration: Configuration,
}

/// The eleven degree-7 schemes with the barred remainder:
/// `b (1;2) + c (1) + d (1;3) + e (2;3)` on the conic and `f` triples.
pub fn barred_base_cases() -> Vec<BaseCase> {
    const CASES: [(u64, u64, u64, u64, u64); 11] = [
        (0, 9, 0, 1, 2),
        (1, 5, 0, 0, 3),
        (1, 6, 0, 1, 2),
        (1, 7, 1, 0, 2),
        (2, 2, 0, 0, 3),
        (2, 3, 0, 1, 2),
        (2, 4, 1, 0, 2),
        (3, 5, 0, 0, 2),
        (4, 2, 0, 0, 2),
        (4, 3, 0, 1, 1),
        (1, 1, 1, 0, 3),
    ];
    CASES
        .iter()
        .map(|&(b, c, d, e, f)| {
            let mut z = Configuration::new(7)
                .with_columns(Column::double_on_conic(), b)
                .with_columns(Column::one_three(), d)
                .with_columns(Column::two_three(), e);
            z.conic_points = c;
            z.triple = f;
            z.remainder = Remainder::BARRED;
            BaseCase {
                label: format!("({b},{c},{d},{e},{f},11,7) barred"),
                configuration: z,
            }
        })
        .collect()
}

/// How a small-degree row starts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseStart {
    TwoStep,
    /// Two steps, the second also sliding the remainder.
    TwoStepSlide,
    TriplesStep,
    /// One double chain to degree 11, then the two-step descent.
    ChainTwoStep,
    Chain,
    StandardSteps,
}

/// One `(k, t)` row of the degree 12 to 17 analysis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseRow {
    pub k: u32,
    pub t: u64,
    pub d: u64,
    pub start: CaseStart,
    /// `(w, q)` of the two-step descent when the row uses it.
    pub w: Option<u64>,
    pub q: Option<u64>,
    pub terminal: String,
    pub steps: usize,
}

fn case_start(k: u32, t: u64) -> CaseStart {
    let two_thirds = 2 * k as u64 / 3;
    match k {
        17 if t <= 7 => CaseStart::ChainTwoStep,
        17 if t <= 11 => CaseStart::Chain,
        17 => CaseStart::StandardSteps,
        14 if t <= 9 => CaseStart::TwoStepSlide,
        _ if t <= two_thirds => CaseStart::TwoStep,
        _ => CaseStart::TriplesStep,
    }
}

/// Rows for `k = 12..=17` over the triple counts each degree needs, each
/// with its full certificate replayed.
pub fn degree_cases() -> Result<Vec<CaseRow>, LedgerError> {
    let ranges: [(u32, u64, u64); 6] = [(12, 1, 7), (13, 1, 9), (14, 0, 10), (15, 1, 13), (16, 1, 12), (17, 0, 14)];
    let mut rows = Vec::new();
    for (k, lo, hi) in ranges {
        for t in lo..=hi {
            let input = doubles_and_triples(t, k)?;
            let start = case_start(k, t);
            let descent = match start {
                CaseStart::TwoStep => Some(two_step_descent(t, k, false)?),
                CaseStart::TwoStepSlide => Some(two_step_descent(t, k, true)?),
                CaseStart::ChainTwoStep => Some(two_step_descent(t, 11, false)?),
                _ => None,
            };
            if start == CaseStart::TriplesStep {
                triples_step(t, k)?;
            }
            let cert = certify_configuration(&input)?;
            cert.verify(&ledger().rules, &ledger().axioms)?;
            rows.push(CaseRow {
                k,
                t,
                d: input.double,
                start,
                w: descent.as_ref().map(|x| x.w),
                q: descent.as_ref().map(|x| x.q),
                terminal: cert.terminal.axiom,
                steps: cert.steps.len(),
            });
        }
    }
    Ok(rows)
}

/// Outcome of replaying every tuple of `Lambda_k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub k: u32,
    pub tuples: usize,
    pub certified: usize,
    pub by_axiom: BTreeMap<String, usize>,
    /// `(s, d, t, p)` and the error, for tuples that failed.
    pub failures: Vec<((u64, u64, u64, u8), String)>,
}

pub fn sweep_degree(k: u32) -> SweepSummary {
    let tuples = lambda_tuples(k);
    let results: Vec<_> = tuples
        .par_iter()
        .map(|&(s, d, t, p)| {
            let res = certify_tuple(s, d, t, p as u64, k)
                .and_then(|c| c.verify(&ledger().rules, &ledger().axioms).map(|_| c.terminal.axiom));
            ((s, d, t, p), res)
        })
        .collect();
    let mut summary = SweepSummary {
        k,
        tuples: tuples.len(),
        certified: 0,
        by_axiom: BTreeMap::new(),
        failures: Vec::new(),
    };
    for (tuple, res) in results {
        match res {
            Ok(axiom) => {
                summary.certified += 1;
                *summary.by_axiom.entry(axiom).or_default() += 1;
            }
            Err(e) => summary.failures.push((tuple, e.to_string())),
        }
    }
    summary
}

#[cfg(test)]
mod tests {
    use super::*;

    fn verify(c: &Certificate) {
        c.verify(&ledger().rules, &ledger().axioms).unwrap();
    }

    #[test]
    fn pure_triples_need_no_steps() {
        for k in 12..=30 {
            let dec = decompose12(k);
            let cert = certify_tuple(0, 0, dec.u, dec.rho as u64, k).unwrap();
            assert!(cert.steps.is_empty());
            assert_eq!(cert.terminal.axiom, "general_triples");
            verify(&cert);
        }
    }

    #[test]
    fn non_member_is_rejected() {
        assert!(matches!(
            certify_tuple(0, 0, 1, 4, 2),
            Err(LedgerError::NotInLambda { .. })
        ));
    }

    #[test]
    fn two_step_values() {
        let x = two_step_descent(1, 12, false).unwrap();
        assert_eq!((x.w, x.q), (4, 12));
        assert_eq!((x.a, x.b, x.h, x.i), (1, 10, 3, 0));
        let x = two_step_descent(4, 11, false).unwrap();
        assert_eq!((x.w, x.q), (8, 6));
        let x = two_step_descent(0, 14, true).unwrap();
        assert_eq!((x.w, x.q), (6, 18));
        assert!(two_step_descent(9, 12, false).is_err());
    }

    #[test]
    fn triples_step_shapes() {
        let step = triples_step(10, 14).unwrap();
        assert_eq!(step.after.column_count(&Column::double_on_conic()), 9);
        assert_eq!(step.after.column_count(&Column::two_three()), 1);
        let sl = Slides::from_params(&triples_step(11, 16).unwrap().parameters).unwrap();
        assert_eq!((sl.g, sl.n, sl.p), (10, 1, 0));
        assert!(triples_step(5, 12).is_err());
    }

    #[test]
    fn sweep_twelve() {
        let s = sweep_degree(12);
        assert!(s.failures.is_empty(), "{:?}", &s.failures[..s.failures.len().min(5)]);
        assert_eq!(s.certified, s.tuples);
    }

    #[test]
    fn barred_cases_certify() {
        let cases = barred_base_cases();
        assert_eq!(cases.len(), 11);
        for case in cases {
            assert_eq!(case.configuration.length(), 63, "{}", case.label);
            let cert = certify_configuration(&case.configuration).unwrap();
            assert_eq!(cert.terminal.axiom, "point_and_bundle_point");
            verify(&cert);
        }
    }

    #[test]
    fn chain_composition() {
        let c = doubles_and_triples(8, 17).unwrap();
        let mut r = recorder(c.clone());
        r.apply("double_chain", Params::new()).unwrap();
        let rest = certify_configuration(&r.current).unwrap();
        let whole = chain_then(&c, rest.clone()).unwrap();
        assert_eq!(whole.steps.len(), rest.steps.len() + 1);
        verify(&whole);
        let other = doubles_and_triples(9, 17).unwrap();
        assert!(chain_then(&other, rest).is_err());
    }

    #[test]
    fn tampered_certificate_fails() {
        let c = doubles_and_triples(3, 20).unwrap();
        let mut cert = certify_configuration(&c).unwrap();
        verify(&cert);
        assert!(!cert.steps.is_empty());
        cert.steps[0].after.double += 1;
        assert!(cert.verify(&ledger().rules, &ledger().axioms).is_err());
        let mut cert = certify_configuration(&c).unwrap();
        cert.terminal.axiom = "general_triples".into();
        assert!(cert.verify(&ledger().rules, &ledger().axioms).is_err());
    }

    #[test]
    fn quoted_jumps_resolve() {
        let jumps = quoted_jumps().unwrap();
        assert_eq!(jumps.len(), 8);
        for j in &jumps {
            assert!(j.error.is_none(), "{}: {:?}", j.label, j.error);
        }
        // Read in the opposite order the descent residues would have to
        // split doubles into points.
        let from = two_step_descent(0, 14, true).unwrap();
        let to = two_step_descent(1, 12, false).unwrap();
        assert!(specialization_path(from.residue(), to.first_residue()).is_err());
    }

    #[test]
    fn path_moves_doubles_onto_conic() {
        let mut from = Configuration::new(10);
        from.conic_points = 12;
        from.double = 16;
        let mut to = Configuration::new(10).with_columns(Column::double_on_conic(), 1);
        to.conic_points = 12;
        to.double = 15;
        let path = specialization_path(&from, &to).unwrap();
        assert_eq!(path, vec![("doubles_onto_conic".to_string(), count(1))]);
        assert!(specialization_path(&to, &from).is_err());
    }
}
