//! Replayable certificates.

use serde::{Deserialize, Serialize};

use super::axioms::AxiomTable;
use super::config::Configuration;
use super::rules::{Params, RuleRegistry};
use super::LedgerError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub rule: String,
    pub k_before: u32,
    pub k_after: u32,
    pub parameters: Params,
    pub length_before: u64,
    pub length_after: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub before: Configuration,
    pub after: Configuration,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Terminal {
    pub axiom: String,
    pub k: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub input: Configuration,
    pub steps: Vec<Step>,
    pub terminal: Terminal,
}

impl Certificate {
    /// Configuration the terminal axiom is asserted on.
    pub fn last(&self) -> &Configuration {
        self.steps.last().map_or(&self.input, |s| &s.after)
    }

    /// Re-applies every step through the registry, compares each recorded
    /// state, and checks the terminal axiom.
    pub fn verify(&self, rules: &RuleRegistry, axioms: &AxiomTable) -> Result<(), LedgerError> {
        let mut current = &self.input;
        for (index, step) in self.steps.iter().enumerate() {
            let fail = |message: String| LedgerError::StepMismatch { index, message };
            if &step.before != current {
                return Err(fail(format!(
                    "recorded pre-state {} differs from the previous post-state {}",
                    step.before, current
                )));
            }
            let applied = rules
                .apply(&step.rule, &step.before, &step.parameters)
                .map_err(|e| fail(format!("{}: {e}", step.rule)))?;
            if applied.after != step.after {
                return Err(fail(format!(
                    "{} gives {}, certificate records {}",
                    step.rule, applied.after, step.after
                )));
            }
            if applied.trace != step.trace {
                return Err(fail(format!(
                    "trace {:?} recorded, rule gives {:?}",
                    step.trace, applied.trace
                )));
            }
            if (step.k_before, step.k_after) != (step.before.k, step.after.k)
                || (step.length_before, step.length_after) != (step.before.length(), step.after.length())
            {
                return Err(fail("degree or length summary disagrees with the states".into()));
            }
            current = &step.after;
        }
        let axiom = axioms
            .get(&self.terminal.axiom)
            .ok_or_else(|| LedgerError::UnknownAxiom(self.terminal.axiom.clone()))?;
        if self.terminal.k != current.k || !axiom.applies(current) {
            return Err(LedgerError::NoAxiom(format!(
                "{} does not cover {current}",
                self.terminal.axiom
            )));
        }
        Ok(())
    }
}

/// Applies rules one at a time and records the steps.
pub(crate) struct Recorder<'a> {
    rules: &'a RuleRegistry,
    pub(crate) input: Configuration,
    pub(crate) current: Configuration,
    pub(crate) steps: Vec<Step>,
}

impl<'a> Recorder<'a> {
    pub(crate) fn new(rules: &'a RuleRegistry, input: Configuration) -> Self {
        Recorder {
            rules,
            current: input.clone(),
            input,
            steps: Vec::new(),
        }
    }

    pub(crate) fn apply(&mut self, rule: &str, parameters: Params) -> Result<&Configuration, LedgerError> {
        let index = self.steps.len();
        let applied = self
            .rules
            .apply(rule, &self.current, &parameters)
            .map_err(|e| LedgerError::StepMismatch {
                index,
                message: format!("{rule} on {}: {e}", self.current),
            })?;
        let before = std::mem::replace(&mut self.current, applied.after);
        self.steps.push(Step {
            rule: rule.to_string(),
            k_before: before.k,
            k_after: self.current.k,
            parameters,
            length_before: before.length(),
            length_after: self.current.length(),
            trace: applied.trace,
            notes: applied.notes,
            before,
            after: self.current.clone(),
        });
        Ok(&self.current)
    }

    pub(crate) fn finish(self, axioms: &AxiomTable) -> Result<Certificate, LedgerError> {
        let axiom = axioms
            .find(&self.current)
            .ok_or_else(|| LedgerError::NoAxiom(self.current.to_string()))?;
        Ok(Certificate {
            terminal: Terminal {
                axiom: axiom.id.to_string(),
                k: self.current.k,
            },
            input: self.input,
            steps: self.steps,
        })
    }
}
