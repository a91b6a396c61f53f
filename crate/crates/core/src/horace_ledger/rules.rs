//! Reduction rules. Each rule is a named strategy that maps a
//! configuration and integer parameters to a new configuration, checking
//! every arithmetic side condition on the way. Certificates refer to rules
//! by name and are re-verified through a [`RuleRegistry`].

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::config::{Column, Configuration, Remainder, REMAINDER_LENGTHS};
use super::LedgerError;
use crate::numerics::settled_length;

pub type Params = BTreeMap<String, u64>;

/// Outcome of applying a rule.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Applied {
    pub after: Configuration,
    /// Bundle length placed on the conic, for steps that lower the degree.
    pub trace: Option<u64>,
    /// Intermediate checks worth recording (one line each).
    pub notes: Vec<String>,
}

impl Applied {
    fn rewrite(after: Configuration) -> Self {
        Applied {
            after,
            trace: None,
            notes: Vec::new(),
        }
    }
}

pub trait Rule: Send + Sync {
    fn name(&self) -> &'static str;
    /// One-line statement of the fact the rule relies on.
    fn summary(&self) -> &'static str;
    /// Parameter names the rule accepts; missing ones default to 0.
    fn parameters(&self) -> &'static [&'static str];
    fn apply(&self, before: &Configuration, params: &Params) -> Result<Applied, LedgerError>;
}

fn param(params: &Params, key: &str) -> u64 {
    params.get(key).copied().unwrap_or(0)
}

fn flag(params: &Params, key: &str) -> Result<bool, LedgerError> {
    match param(params, key) {
        0 => Ok(false),
        1 => Ok(true),
        v => Err(LedgerError::Inapplicable(format!("parameter {key} must be 0 or 1, got {v}"))),
    }
}

fn need(cond: bool, msg: impl FnOnce() -> String) -> Result<(), LedgerError> {
    if cond {
        Ok(())
    } else {
        Err(LedgerError::Inapplicable(msg()))
    }
}

fn take(have: u64, want: u64, what: &str) -> Result<u64, LedgerError> {
    have.checked_sub(want)
        .ok_or_else(|| LedgerError::Inapplicable(format!("needs {want} {what}, found {have}")))
}

/// How the pieces that are not already on the conic meet it in one step.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Slides {
    /// General doubles cut in their bottom row: trace 2, leave 1 point on C.
    pub r: u64,
    /// General doubles cut in their top row: trace 1, leave 2 points on C.
    pub s: u64,
    /// Triples cut in their bottom row: trace 3, leave `(1;2)` on C.
    pub g: u64,
    /// Triples cut in their middle row: trace 2, leave `(1;3)` on C.
    pub n: u64,
    /// Triples cut in their top row: trace 1, leave `(2;3)` on C.
    pub p: u64,
    /// The remainder's bottom row goes on the conic too.
    pub remainder: bool,
}

impl Slides {
    pub fn to_params(self) -> Params {
        [
            ("r", self.r),
            ("s", self.s),
            ("g", self.g),
            ("n", self.n),
            ("p", self.p),
            ("remainder", self.remainder as u64),
        ]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect()
    }

    pub fn from_params(params: &Params) -> Result<Self, LedgerError> {
        Ok(Slides {
            r: param(params, "r"),
            s: param(params, "s"),
            g: param(params, "g"),
            n: param(params, "n"),
            p: param(params, "p"),
            remainder: flag(params, "remainder")?,
        })
    }
}

/// One step `k -> k-2` on a conic: everything already over the conic gives
/// its bottom row, the slides add theirs, and the total must be exactly
/// `2k` plane conditions. Returns the residue at degree `k-2`.
pub fn conic_step(before: &Configuration, sl: Slides) -> Result<Applied, LedgerError> {
    let k = before.k;
    need(k >= 2, || format!("a conic step needs k >= 2, got {k}"))?;
    before.check_settled_length()?;
    let rem_col = if sl.remainder {
        Some(before.remainder.column().ok_or_else(|| {
            LedgerError::Inapplicable(format!("remainder {} cannot be slid onto the conic", before.remainder))
        })?)
    } else {
        None
    };
    let trace = before.conic_load()
        + 4 * sl.r
        + 2 * sl.s
        + 6 * sl.g
        + 4 * sl.n
        + 2 * sl.p
        + rem_col.as_ref().map_or(0, |c| c.bottom().length());
    need(trace == 4 * k as u64, || {
        format!("trace on the conic has length {trace}, a degree-{k} step needs exactly {}", 4 * k)
    })?;

    let mut after = Configuration::new(k - 2);
    after.simple = before.simple;
    after.double = take(before.double, sl.r + sl.s, "general doubles")?;
    after.triple = take(before.triple, sl.g + sl.n + sl.p, "general triples")?;
    after.remainder = before.remainder;
    for (col, &mult) in &before.columns {
        for _ in 0..mult {
            after.add_residual(&col.rows()[1..]);
        }
    }
    after.conic_points += sl.r + 2 * sl.s;
    after.add_columns(Column::double_on_conic(), sl.g);
    after.add_columns(Column::one_three(), sl.n);
    after.add_columns(Column::two_three(), sl.p);
    if let Some(col) = rem_col {
        after.add_residual(&col.rows()[1..]);
        after.remainder = Remainder::NONE;
    }
    let want = settled_length(k - 2);
    if after.length() != want {
        return Err(LedgerError::LengthMismatch {
            k: k - 2,
            expected: want,
            found: after.length(),
        });
    }
    Ok(Applied {
        after,
        trace: Some(trace),
        notes: Vec::new(),
    })
}

/// The greedy slide choice: as many triples cut in their bottom row as fit,
/// then at most one more triple to close the gap, otherwise doubles.
pub fn standard_slides(before: &Configuration, remainder: bool) -> Result<Slides, LedgerError> {
    let k = before.k as u64;
    let mut load = before.conic_load();
    if remainder {
        load += before
            .remainder
            .column()
            .map(|c| c.bottom().length())
            .ok_or_else(|| {
                LedgerError::Inapplicable(format!("remainder {} cannot be slid onto the conic", before.remainder))
            })?;
    }
    let room = (4 * k).checked_sub(load).ok_or_else(|| {
        LedgerError::Inapplicable(format!(
            "the conic already carries length {load}, more than the {} a degree-{k} step allows",
            4 * k
        ))
    })?;
    need(room % 2 == 0, || format!("odd room {room} on the conic cannot be filled"))?;
    let plane = room / 2;
    let g = before.triple.min(plane / 3);
    let left = plane - 3 * g;
    let mut sl = Slides {
        g,
        remainder,
        ..Slides::default()
    };
    if left > 0 && before.triple > g {
        if left == 2 {
            sl.n = 1;
        } else {
            sl.p = 1;
        }
    } else {
        sl.r = left / 2;
        sl.s = left % 2;
    }
    need(before.double >= sl.r + sl.s, || {
        format!(
            "filling the conic needs {} general doubles, found {}",
            sl.r + sl.s,
            before.double
        )
    })?;
    Ok(sl)
}

struct HoraceStep;

impl Rule for HoraceStep {
    fn name(&self) -> &'static str {
        "horace_step"
    }
    fn summary(&self) -> &'static str {
        "a configuration whose conic trace has length exactly 2k is k-settled when its residue is (k-2)-settled"
    }
    fn parameters(&self) -> &'static [&'static str] {
        &["r", "s", "g", "n", "p", "remainder"]
    }
    fn apply(&self, before: &Configuration, params: &Params) -> Result<Applied, LedgerError> {
        conic_step(before, Slides::from_params(params)?)
    }
}

struct StandardStep;

impl Rule for StandardStep {
    fn name(&self) -> &'static str {
        "standard_step"
    }
    fn summary(&self) -> &'static str {
        "conic step with the greedy choice: most triples first, one extra triple slice if needed, doubles only if no triple is left"
    }
    fn parameters(&self) -> &'static [&'static str] {
        &["r", "s", "g", "n", "p", "remainder"]
    }
    fn apply(&self, before: &Configuration, params: &Params) -> Result<Applied, LedgerError> {
        let sl = standard_slides(before, flag(params, "remainder")?)?;
        let chosen = sl.to_params();
        for (key, &value) in params {
            if chosen[key] != value {
                return Err(LedgerError::Inapplicable(format!(
                    "recorded {key} = {value} differs from the greedy choice {}",
                    chosen[key]
                )));
            }
        }
        conic_step(before, sl)
    }
}

struct DoubleChain;

impl Rule for DoubleChain {
    fn name(&self) -> &'static str {
        "double_chain"
    }
    fn summary(&self) -> &'static str {
        "2k-4 general doubles added to a (k-6)-settled scheme give a k-settled scheme (three conic steps of traces 2k, 2k-4, 2k-8)"
    }
    fn parameters(&self) -> &'static [&'static str] {
        &[]
    }
    fn apply(&self, before: &Configuration, _: &Params) -> Result<Applied, LedgerError> {
        let k = before.k as u64;
        need(k >= 6, || format!("the chain needs k >= 6, got {k}"))?;
        need(!before.has_conic_data(), || "the chain needs nothing placed on a conic".into())?;
        before.check_settled_length()?;
        let rest = take(before.double, 2 * k - 4, "general doubles")?;
        let mut notes = Vec::new();
        let mut len = before.length();
        // Stage 1: k doubles on C. Stage 2: k-4 doubles plus 4 of the k
        // points on a second conic C'. Stage 3: the remaining 2k-8 points
        // on C.
        let stages = [(2 * k, k), (2 * k - 4, k - 2), (2 * k - 8, k - 4)];
        for (i, &(plane, deg)) in stages.iter().enumerate() {
            need(plane == 2 * deg, || format!("stage {} trace {plane} is not 2*{deg}", i + 1))?;
            need(len == deg * (deg + 2), || {
                format!("stage {} starts with length {len}, expected {}", i + 1, deg * (deg + 2))
            })?;
            len -= 2 * plane;
            notes.push(format!(
                "stage {}: degree {deg}, trace {plane} plane conditions, residue length {len}",
                i + 1
            ));
        }
        let mut after = before.clone();
        after.k = before.k - 6;
        after.double = rest;
        need(after.length() == len, || "chain residue length disagrees with the stages".into())?;
        after.check_settled_length()?;
        Ok(Applied {
            after,
            trace: Some(4 * (3 * k - 6)),
            notes,
        })
    }
}

struct SimplesToDoubles;

impl Rule for SimplesToDoubles {
    fn name(&self) -> &'static str {
        "simples_to_doubles"
    }
    fn summary(&self) -> &'static str {
        "three general simple points specialize to a general double point"
    }
    fn parameters(&self) -> &'static [&'static str] {
        &["count"]
    }
    fn apply(&self, before: &Configuration, params: &Params) -> Result<Applied, LedgerError> {
        let n = param(params, "count");
        let mut after = before.clone();
        after.simple = take(before.simple, 3 * n, "simple points")?;
        after.double += n;
        Ok(Applied::rewrite(after))
    }
}

struct SimplesToTriples;

impl Rule for SimplesToTriples {
    fn name(&self) -> &'static str {
        "simples_to_triples"
    }
    fn summary(&self) -> &'static str {
        "six general simple points specialize to a general triple point"
    }
    fn parameters(&self) -> &'static [&'static str] {
        &["count"]
    }
    fn apply(&self, before: &Configuration, params: &Params) -> Result<Applied, LedgerError> {
        let n = param(params, "count");
        let mut after = before.clone();
        after.simple = take(before.simple, 6 * n, "simple points")?;
        after.triple += n;
        Ok(Applied::rewrite(after))
    }
}

struct DoubleAndSimplesToTriple;

impl Rule for DoubleAndSimplesToTriple {
    fn name(&self) -> &'static str {
        "double_and_simples_to_triple"
    }
    fn summary(&self) -> &'static str {
        "a general double point and three general simple points specialize to a general triple point"
    }
    fn parameters(&self) -> &'static [&'static str] {
        &["count"]
    }
    fn apply(&self, before: &Configuration, params: &Params) -> Result<Applied, LedgerError> {
        let n = param(params, "count");
        let mut after = before.clone();
        after.simple = take(before.simple, 3 * n, "simple points")?;
        after.double = take(before.double, n, "general doubles")?;
        after.triple += n;
        Ok(Applied::rewrite(after))
    }
}

struct AbsorbIntoRemainder;

impl Rule for AbsorbIntoRemainder {
    fn name(&self) -> &'static str {
        "absorb_into_remainder"
    }
    fn summary(&self) -> &'static str {
        "general simple points, points on the conic and at most one double point merge with R_p into the remainder of the total length"
    }
    fn parameters(&self) -> &'static [&'static str] {
        &["simple", "double", "conic_points"]
    }
    fn apply(&self, before: &Configuration, params: &Params) -> Result<Applied, LedgerError> {
        let (s, d, e) = (
            param(params, "simple"),
            param(params, "double"),
            param(params, "conic_points"),
        );
        need(!before.remainder.is_barred(), || "the barred remainder does not absorb points".into())?;
        need(d <= 1, || "at most one double point can join the remainder".into())?;
        let p = before.remainder.p() as u64;
        need(!(d == 1 && s == 0 && e == 0 && p == 5), || {
            "a double point and R_5 do not specialize to R_11".into()
        })?;
        let target = p + 2 * s + 6 * d + 2 * e;
        let target = u8::try_from(target)
            .ok()
            .filter(|t| REMAINDER_LENGTHS.contains(t))
            .ok_or_else(|| LedgerError::Inapplicable(format!("no remainder of length {target}")))?;
        let mut after = before.clone();
        after.simple = take(before.simple, s, "simple points")?;
        after.double = take(before.double, d, "general doubles")?;
        after.conic_points = take(before.conic_points, e, "points on the conic")?;
        after.remainder = Remainder::new(target)?;
        Ok(Applied::rewrite(after))
    }
}

struct BarRemainder;

impl Rule for BarRemainder {
    fn name(&self) -> &'static str {
        "bar_remainder"
    }
    fn summary(&self) -> &'static str {
        "a general double point kept beside R_5 is recorded as the barred remainder of length 11"
    }
    fn parameters(&self) -> &'static [&'static str] {
        &[]
    }
    fn apply(&self, before: &Configuration, _: &Params) -> Result<Applied, LedgerError> {
        need(before.remainder == Remainder::new(5)?, || "needs R_5".into())?;
        let mut after = before.clone();
        after.double = take(before.double, 1, "general doubles")?;
        after.remainder = Remainder::BARRED;
        Ok(Applied::rewrite(after))
    }
}

struct ExpandBarred;

impl Rule for ExpandBarred {
    fn name(&self) -> &'static str {
        "expand_barred_remainder"
    }
    fn summary(&self) -> &'static str {
        "the barred remainder is a general double point together with R_5"
    }
    fn parameters(&self) -> &'static [&'static str] {
        &[]
    }
    fn apply(&self, before: &Configuration, _: &Params) -> Result<Applied, LedgerError> {
        need(before.remainder.is_barred(), || "needs the barred remainder".into())?;
        let mut after = before.clone();
        after.double += 1;
        after.remainder = Remainder::new(5)?;
        Ok(Applied::rewrite(after))
    }
}

struct DoublesOntoConic;

impl Rule for DoublesOntoConic {
    fn name(&self) -> &'static str {
        "doubles_onto_conic"
    }
    fn summary(&self) -> &'static str {
        "general double points specialize to double points supported on the conic"
    }
    fn parameters(&self) -> &'static [&'static str] {
        &["count"]
    }
    fn apply(&self, before: &Configuration, params: &Params) -> Result<Applied, LedgerError> {
        let n = param(params, "count");
        let mut after = before.clone();
        after.double = take(before.double, n, "general doubles")?;
        after.add_columns(Column::double_on_conic(), n);
        Ok(Applied::rewrite(after))
    }
}

struct TriplesOntoConic;

impl Rule for TriplesOntoConic {
    fn name(&self) -> &'static str {
        "triples_onto_conic"
    }
    fn summary(&self) -> &'static str {
        "general triple points specialize to triple points supported on the conic"
    }
    fn parameters(&self) -> &'static [&'static str] {
        &["count"]
    }
    fn apply(&self, before: &Configuration, params: &Params) -> Result<Applied, LedgerError> {
        let n = param(params, "count");
        let mut after = before.clone();
        after.triple = take(before.triple, n, "general triples")?;
        after.add_columns(Column::triple_on_conic(), n);
        Ok(Applied::rewrite(after))
    }
}

struct ConicPointsToConicDouble;

impl Rule for ConicPointsToConicDouble {
    fn name(&self) -> &'static str {
        "conic_points_to_conic_double"
    }
    fn summary(&self) -> &'static str {
        "points on a conic are general, so three of them specialize to a double point on the conic"
    }
    fn parameters(&self) -> &'static [&'static str] {
        &["count"]
    }
    fn apply(&self, before: &Configuration, params: &Params) -> Result<Applied, LedgerError> {
        let n = param(params, "count");
        let mut after = before.clone();
        after.conic_points = take(before.conic_points, 3 * n, "points on the conic")?;
        after.add_columns(Column::double_on_conic(), n);
        Ok(Applied::rewrite(after))
    }
}

struct ConicPointsToDouble;

impl Rule for ConicPointsToDouble {
    fn name(&self) -> &'static str {
        "conic_points_to_double"
    }
    fn summary(&self) -> &'static str {
        "points on a conic are general, so three of them specialize to a general double point"
    }
    fn parameters(&self) -> &'static [&'static str] {
        &["count"]
    }
    fn apply(&self, before: &Configuration, params: &Params) -> Result<Applied, LedgerError> {
        let n = param(params, "count");
        let mut after = before.clone();
        after.conic_points = take(before.conic_points, 3 * n, "points on the conic")?;
        after.double += n;
        Ok(Applied::rewrite(after))
    }
}

/// Rules by name.
pub struct RuleRegistry {
    rules: Vec<Box<dyn Rule>>,
}

impl RuleRegistry {
    pub fn empty() -> Self {
        RuleRegistry { rules: Vec::new() }
    }

    /// Every rule the replay engine uses.
    pub fn standard() -> Self {
        let mut reg = Self::empty();
        reg.register(Box::new(HoraceStep));
        reg.register(Box::new(StandardStep));
        reg.register(Box::new(DoubleChain));
        reg.register(Box::new(SimplesToDoubles));
        reg.register(Box::new(SimplesToTriples));
        reg.register(Box::new(DoubleAndSimplesToTriple));
        reg.register(Box::new(AbsorbIntoRemainder));
        reg.register(Box::new(BarRemainder));
        reg.register(Box::new(ExpandBarred));
        reg.register(Box::new(DoublesOntoConic));
        reg.register(Box::new(TriplesOntoConic));
        reg.register(Box::new(ConicPointsToConicDouble));
        reg.register(Box::new(ConicPointsToDouble));
        reg
    }

    /// Adds a rule, replacing any rule with the same name.
    pub fn register(&mut self, rule: Box<dyn Rule>) {
        self.rules.retain(|r| r.name() != rule.name());
        self.rules.push(rule);
    }

    pub fn get(&self, name: &str) -> Option<&dyn Rule> {
        self.rules.iter().find(|r| r.name() == name).map(|r| r.as_ref())
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn Rule> {
        self.rules.iter().map(|r| r.as_ref())
    }

    /// Looks the rule up, rejects unknown parameters, and applies it.
    pub fn apply(&self, name: &str, before: &Configuration, params: &Params) -> Result<Applied, LedgerError> {
        let rule = self.get(name).ok_or_else(|| LedgerError::UnknownRule(name.to_string()))?;
        if let Some(bad) = params.keys().find(|k| !rule.parameters().contains(&k.as_str())) {
            return Err(LedgerError::Inapplicable(format!("rule {name} has no parameter {bad}")));
        }
        rule.apply(before, params)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::decompose12;

    fn params(pairs: &[(&str, u64)]) -> Params {
        pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    fn x(d: u64, t: u64, k: u32) -> Configuration {
        let rho = decompose12(k).rho;
        Configuration::general(k, 0, d, t, rho).unwrap()
    }

    #[test]
    fn registry_lookup() {
        let reg = RuleRegistry::standard();
        assert!(reg.get("standard_step").is_some());
        assert!(reg.get("nonexistent").is_none());
        let names: Vec<_> = reg.iter().map(|r| r.name()).collect();
        let mut unique = names.clone();
        unique.sort();
        unique.dedup();
        assert_eq!(names.len(), unique.len());
        let c = x(10, 6, 12);
        assert!(matches!(
            reg.apply("standard_step", &c, &params(&[("bogus", 1)])),
            Err(LedgerError::Inapplicable(_))
        ));
        assert!(matches!(
            reg.apply("nonexistent", &c, &Params::new()),
            Err(LedgerError::UnknownRule(_))
        ));
    }

    #[test]
    fn first_standard_step_at_twelve() {
        // d + 2t = 2u(12) = 28.
        let c = x(16, 6, 12);
        assert_eq!(c.length(), 168);
        let sl = standard_slides(&c, false).unwrap();
        assert_eq!((sl.g, sl.r, sl.s, sl.n, sl.p), (6, 3, 0, 0, 0));
        let out = conic_step(&c, sl).unwrap();
        assert_eq!(out.after.length(), 120);
        assert_eq!(out.trace, Some(48));
        assert_eq!(out.after.column_count(&Column::double_on_conic()), 6);
        assert_eq!(out.after.conic_points, 3);
        assert_eq!(out.after.double, 13);
    }

    #[test]
    fn empty_conic_without_material_is_rejected() {
        let mut c = Configuration::general(4, 12, 0, 0, 0).unwrap();
        assert_eq!(c.length(), 24);
        assert!(standard_slides(&c, false).is_err());
        c.k = 5;
        assert!(conic_step(&c, Slides::default()).is_err());
    }

    #[test]
    fn triples_only_step_at_fourteen() {
        // t = 10, d = 2u - 2t = 16, R_8.
        let c = x(16, 10, 14);
        let sl = standard_slides(&c, false).unwrap();
        assert_eq!((sl.g, sl.n, sl.p, sl.r, sl.s), (9, 0, 1, 0, 0));
        let out = conic_step(&c, sl).unwrap().after;
        assert_eq!(out.column_count(&Column::double_on_conic()), 9);
        assert_eq!(out.column_count(&Column::two_three()), 1);
        assert_eq!(out.double, 16);
        assert_eq!(out.triple, 0);
    }

    #[test]
    fn under_filled_trace_is_rejected() {
        let c = x(16, 6, 12);
        let sl = Slides {
            g: 6,
            r: 2,
            ..Slides::default()
        };
        assert!(matches!(conic_step(&c, sl), Err(LedgerError::Inapplicable(_))));
    }

    #[test]
    fn standard_step_checks_recorded_choice() {
        let reg = RuleRegistry::standard();
        let c = x(16, 6, 12);
        let mut p = standard_slides(&c, false).unwrap().to_params();
        assert!(reg.apply("standard_step", &c, &p).is_ok());
        p.insert("g".into(), 5);
        assert!(reg.apply("standard_step", &c, &p).is_err());
    }

    #[test]
    fn chain_stages() {
        let reg = RuleRegistry::standard();
        let c = x(8, 0, 6);
        assert_eq!(c.length(), 48);
        let out = reg.apply("double_chain", &c, &Params::new()).unwrap();
        assert_eq!(out.after.k, 0);
        assert_eq!(out.after.double, 0);
        assert_eq!(out.notes.len(), 3);
        let too_small = Configuration::general(5, 0, 5, 0, 5).unwrap();
        assert!(reg.apply("double_chain", &too_small, &Params::new()).is_err());
        // 17 -> 11 with thirty doubles consumed.
        let c = x(30 + 22, 0, 17);
        let out = reg.apply("double_chain", &c, &Params::new()).unwrap();
        assert_eq!((out.after.k, out.after.double), (11, 22));
    }

    #[test]
    fn remainder_absorption() {
        let reg = RuleRegistry::standard();
        let c = Configuration::general(5, 1, 1, 0, 5).unwrap();
        assert!(reg
            .apply("absorb_into_remainder", &c, &params(&[("double", 1)]))
            .is_err());
        let c = Configuration::general(5, 0, 1, 0, 2).unwrap();
        let out = reg
            .apply("absorb_into_remainder", &c, &params(&[("double", 1)]))
            .unwrap();
        assert_eq!(out.after.remainder, Remainder::new(8).unwrap());
        let c = Configuration::general(5, 2, 0, 0, 0).unwrap();
        assert!(reg
            .apply("absorb_into_remainder", &c, &params(&[("simple", 2)]))
            .is_err());
    }

    #[test]
    fn barred_round_trip() {
        let reg = RuleRegistry::standard();
        let c = Configuration::general(17, 0, 3, 0, 5).unwrap();
        let barred = reg.apply("bar_remainder", &c, &Params::new()).unwrap().after;
        assert_eq!(barred.remainder, Remainder::BARRED);
        assert_eq!(barred.length(), c.length());
        let back = reg.apply("expand_barred_remainder", &barred, &Params::new()).unwrap().after;
        assert_eq!(back, c);
    }

    #[test]
    fn rewrites_preserve_length() {
        let reg = RuleRegistry::standard();
        let mut c = Configuration::general(20, 12, 3, 1, 2).unwrap();
        c.conic_points = 6;
        for (name, p) in [
            ("simples_to_doubles", params(&[("count", 2)])),
            ("simples_to_triples", params(&[("count", 1)])),
            ("double_and_simples_to_triple", params(&[("count", 2)])),
            ("doubles_onto_conic", params(&[("count", 1)])),
            ("triples_onto_conic", params(&[("count", 1)])),
            ("conic_points_to_conic_double", params(&[("count", 1)])),
            ("conic_points_to_double", params(&[("count", 2)])),
            ("absorb_into_remainder", params(&[("simple", 3)])),
        ] {
            let out = reg.apply(name, &c, &p).unwrap();
            assert_eq!(out.after.length(), c.length(), "{name}");
        }
    }

    #[test]
    fn remainder_slide_shapes() {
        // (6)_C + 2 doubles + R_11 at k = 5 with the remainder slid.
        let mut c = Configuration::general(5, 0, 2, 0, 11).unwrap();
        c.conic_points = 6;
        assert_eq!(c.length(), 35);
        let sl = standard_slides(&c, true).unwrap();
        let out = conic_step(&c, sl).unwrap().after;
        assert_eq!(out.k, 3);
        assert_eq!(out.remainder, Remainder::NONE);
        assert_eq!(out.column_count(&Column::bundle_two()), 1);
    }
}
