use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::Subcommand;
use serde::Serialize;
use serde_json::Value;

use fatpoint_core::horace_ledger::{
    barred_base_cases, certify_configuration, certify_tuple, degree_cases, quoted_jumps,
    sweep_degree, AxiomTable, Certificate, LedgerError, RuleRegistry,
};

use crate::output::Sink;
use crate::Outcome;

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "snake_case", tag = "ledger")]
pub enum LedgerCommand {
    /// Certify one admissible tuple (s, d, t, p) at degree k.
    Replay { s: u64, d: u64, t: u64, p: u64, k: u32 },
    /// Certify every admissible tuple for each degree in K..=TO.
    Sweep {
        k: u32,
        #[arg(long)]
        to: Option<u32>,
    },
    /// List the axiom table.
    Axioms,
    /// List the registered rules.
    Rules,
    /// Replay the barred degree-7 base schemes, the degree 12 to 17 case
    /// rows and the specializations between them.
    BaseCases,
    /// Re-verify a certificate from a JSON file.
    Check { file: PathBuf },
}

const AXIOM_COLUMNS: [&str; 5] = [
    "general_doubles",
    "general_triples",
    "conic_columns",
    "conic_columns_barred",
    "point_and_bundle_point",
];

#[derive(Serialize)]
struct CaseLine {
    kind: &'static str,
    label: String,
    k: u32,
    t: Option<u64>,
    w: Option<u64>,
    q: Option<u64>,
    result: String,
    steps: usize,
    ok: bool,
}

fn step_rows(cert: &Certificate) -> Vec<Vec<String>> {
    cert.steps
        .iter()
        .enumerate()
        .map(|(i, s)| {
            vec![
                i.to_string(),
                s.rule.clone(),
                s.k_before.to_string(),
                s.k_after.to_string(),
                s.length_before.to_string(),
                s.length_after.to_string(),
                s.trace.map(|t| t.to_string()).unwrap_or_default(),
                s.parameters
                    .iter()
                    .map(|(k, v)| format!("{k}={v}"))
                    .collect::<Vec<_>>()
                    .join(" "),
                s.after.to_string(),
            ]
        })
        .chain(std::iter::once(vec![
            "terminal".into(),
            cert.terminal.axiom.clone(),
            cert.terminal.k.to_string(),
            String::new(),
            cert.last().length().to_string(),
            String::new(),
            String::new(),
            String::new(),
            cert.last().to_string(),
        ]))
        .collect()
}

const STEP_HEADER: [&str; 9] = [
    "step", "rule", "k_before", "k_after", "length_before", "length_after", "trace", "parameters", "after",
];

pub fn run(cmd: &LedgerCommand, sink: Sink) -> Result<Outcome> {
    match cmd {
        LedgerCommand::Replay { s, d, t, p, k } => match certify_tuple(*s, *d, *t, *p, *k) {
            Ok(cert) => {
                sink.emit("certificate", &cert, &STEP_HEADER, step_rows(&cert))?;
                Ok(Outcome::Pass)
            }
            Err(e @ (LedgerError::NotInLambda { .. } | LedgerError::BadParameter(_))) => {
                Err(crate::UsageError(e.to_string()).into())
            }
            Err(e) => {
                eprintln!("certificate failed: {e}");
                Ok(Outcome::Mismatch)
            }
        },
        LedgerCommand::Sweep { k, to } => {
            let hi = to.unwrap_or(*k);
            if *k < 12 || hi < *k {
                return Err(crate::UsageError(format!("sweep needs 12 <= k <= to, got {k}..={hi}")).into());
            }
            let summaries: Vec<_> = (*k..=hi).map(sweep_degree).collect();
            let ok = summaries.iter().all(|s| s.failures.is_empty());
            let mut header = vec!["k", "tuples", "certified", "failed"];
            header.extend(AXIOM_COLUMNS);
            let rows = summaries
                .iter()
                .map(|s| {
                    let mut row = vec![
                        s.k.to_string(),
                        s.tuples.to_string(),
                        s.certified.to_string(),
                        s.failures.len().to_string(),
                    ];
                    row.extend(
                        AXIOM_COLUMNS
                            .iter()
                            .map(|a| s.by_axiom.get(*a).copied().unwrap_or(0).to_string()),
                    );
                    row
                })
                .collect();
            for s in &summaries {
                for (tuple, err) in &s.failures {
                    eprintln!("k={} {tuple:?}: {err}", s.k);
                }
            }
            sink.emit("rows", &summaries, &header, rows)?;
            Ok(if ok { Outcome::Pass } else { Outcome::Mismatch })
        }
        LedgerCommand::Axioms => {
            let table = AxiomTable::standard();
            let axioms: Vec<_> = table.iter().collect();
            let rows = axioms
                .iter()
                .map(|a| vec![a.id.to_string(), a.statement.to_string()])
                .collect();
            sink.emit("rows", &axioms, &["id", "statement"], rows)?;
            Ok(Outcome::Pass)
        }
        LedgerCommand::Rules => {
            let reg = RuleRegistry::standard();
            let rules: Vec<Value> = reg
                .iter()
                .map(|r| {
                    serde_json::json!({
                        "name": r.name(),
                        "parameters": r.parameters(),
                        "summary": r.summary(),
                    })
                })
                .collect();
            let rows = reg
                .iter()
                .map(|r| vec![r.name().to_string(), r.parameters().join(" "), r.summary().to_string()])
                .collect();
            sink.emit("rows", &rules, &["name", "parameters", "summary"], rows)?;
            Ok(Outcome::Pass)
        }
        LedgerCommand::BaseCases => {
            let mut lines = Vec::new();
            for case in barred_base_cases() {
                let res = certify_configuration(&case.configuration);
                lines.push(CaseLine {
                    kind: "barred_base",
                    label: case.label,
                    k: case.configuration.k,
                    t: None,
                    w: None,
                    q: None,
                    ok: res.is_ok(),
                    steps: res.as_ref().map_or(0, |c| c.steps.len()),
                    result: res.map_or_else(|e| e.to_string(), |c| c.terminal.axiom),
                });
            }
            for row in degree_cases()? {
                lines.push(CaseLine {
                    kind: "degree_case",
                    label: format!("{:?}", row.start).to_lowercase(),
                    k: row.k,
                    t: Some(row.t),
                    w: row.w,
                    q: row.q,
                    result: row.terminal,
                    steps: row.steps,
                    ok: true,
                });
            }
            for j in quoted_jumps()? {
                lines.push(CaseLine {
                    kind: "specialization",
                    k: j.from.k,
                    t: None,
                    w: None,
                    q: None,
                    ok: j.error.is_none(),
                    steps: j.path.as_ref().map_or(0, Vec::len),
                    result: match (&j.path, &j.error) {
                        (_, Some(e)) => e.clone(),
                        (Some(p), None) => p
                            .iter()
                            .map(|(r, ps)| format!("{r}({})", ps.values().map(u64::to_string).collect::<Vec<_>>().join(",")))
                            .collect::<Vec<_>>()
                            .join(" "),
                        (None, None) => String::new(),
                    },
                    label: j.label,
                });
            }
            let ok = lines.iter().all(|l| l.ok);
            let opt = |x: Option<u64>| x.map(|v| v.to_string()).unwrap_or_default();
            let rows = lines
                .iter()
                .map(|l| {
                    vec![
                        l.kind.to_string(),
                        l.label.clone(),
                        l.k.to_string(),
                        opt(l.t),
                        opt(l.w),
                        opt(l.q),
                        l.result.clone(),
                        l.steps.to_string(),
                        l.ok.to_string(),
                    ]
                })
                .collect();
            sink.emit(
                "rows",
                &lines,
                &["kind", "label", "k", "t", "w", "q", "result", "steps", "ok"],
                rows,
            )?;
            Ok(if ok { Outcome::Pass } else { Outcome::Mismatch })
        }
        LedgerCommand::Check { file } => {
            let text = std::fs::read_to_string(file).with_context(|| format!("cannot read {}", file.display()))?;
            let doc: Value = serde_json::from_str(&text).with_context(|| format!("{} is not JSON", file.display()))?;
            let body = doc.get("certificate").cloned().unwrap_or(doc);
            let cert: Certificate = serde_json::from_value(body).context("not a certificate document")?;
            let verdict = cert.verify(&RuleRegistry::standard(), &AxiomTable::standard());
            let result = verdict.as_ref().map_or_else(|e| e.to_string(), |_| "ok".to_string());
            let payload = serde_json::json!({
                "valid": verdict.is_ok(),
                "result": result,
                "steps": cert.steps.len(),
                "terminal": cert.terminal,
            });
            sink.emit(
                "report",
                &payload,
                &["valid", "steps", "terminal", "result"],
                vec![vec![
                    verdict.is_ok().to_string(),
                    cert.steps.len().to_string(),
                    cert.terminal.axiom.clone(),
                    result,
                ]],
            )?;
            Ok(if verdict.is_ok() { Outcome::Pass } else { Outcome::Mismatch })
        }
    }
}
