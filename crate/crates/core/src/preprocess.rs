//! Preprocessing: one instrumented run of the original program per test
//! yields the covered mutant set C and the state-infected set I, nested as
//! I ⊆ C ⊆ M. Covered minus infected is the candidate set for equivalence
//! proving; infection per test drives the strongest execution filter.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{CallError, InvariantError};
use crate::interp::{apply_arith, apply_rel, run_traced, TraceStep, Value};
use crate::lang::ast::BinOp;
use crate::lang::CheckedProgram;
use crate::mutgen::{MutantId, MutantTable, OpClass};
use crate::suite::TestSuite;

/// Verdict of re-applying a mutant's operator to the operand values one
/// site evaluation captured.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ProbeOutcome {
    /// Mutated operator yields the same value the original produced.
    Same,
    /// Mutated operator yields a different value: the state is infected.
    Differs,
    /// The probe could not produce a value (mutated operator raised, or a
    /// needed operand was unavailable). Counted as infected, conservatively.
    Error,
}

impl ProbeOutcome {
    pub fn infected(self) -> bool {
        !matches!(self, ProbeOutcome::Same)
    }
}

/// Re-applies `replacement_op` to the captured operand values of one site
/// evaluation and compares against the captured original result.
///
/// `rhs` is absent when the original run never obtained a right operand
/// value (its evaluation errored, either normally or during the eager
/// lookahead past a short-circuit). `result` is absent when the original
/// evaluation of the site produced no value (operator error, or connector
/// right operand error). A mutant that needs a missing piece probes to
/// `Error`; a mutant that produces a value while the original produced none
/// genuinely differs.
pub fn probe_outcome(
    original_op: BinOp,
    replacement_op: BinOp,
    lhs: Value,
    rhs: Option<Value>,
    result: Option<Value>,
) -> ProbeOutcome {
    debug_assert_eq!(OpClass::of(original_op), OpClass::of(replacement_op));
    let mutant_value = match OpClass::of(replacement_op) {
        OpClass::Lcr => {
            let Value::Bool(l) = lhs else { return ProbeOutcome::Error };
            match (replacement_op, l) {
                (BinOp::And, false) => Some(Value::Bool(false)),
                (BinOp::Or, true) => Some(Value::Bool(true)),
                _ => rhs,
            }
        }
        OpClass::Ror => match (lhs, rhs) {
            (Value::Int(a), Some(Value::Int(b))) => Some(Value::Bool(apply_rel(replacement_op, a, b))),
            _ => None,
        },
        OpClass::Aor => match (lhs, rhs) {
            (Value::Int(a), Some(Value::Int(b))) => apply_arith(replacement_op, a, b).ok().map(Value::Int),
            _ => None,
        },
    };
    match (mutant_value, result) {
        (None, _) => ProbeOutcome::Error,
        (Some(m), Some(o)) if m == o => ProbeOutcome::Same,
        (Some(_), _) => ProbeOutcome::Differs,
    }
}

/// The boolean view: did this probe witness (or conservatively assume) a
/// state difference?
pub fn infection_probe(
    original_op: BinOp,
    replacement_op: BinOp,
    lhs: Value,
    rhs: Option<Value>,
    result: Option<Value>,
) -> bool {
    probe_outcome(original_op, replacement_op, lhs, rhs, result).infected()
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PerTestSets {
    pub covered: BTreeSet<MutantId>,
    pub infected: BTreeSet<MutantId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreprocessReport {
    pub mutant_count: usize,
    pub covered: BTreeSet<MutantId>,
    pub infected: BTreeSet<MutantId>,
    pub probe_errors: BTreeSet<MutantId>,
    /// Per test id, in suite order.
    pub per_test: Vec<(String, PerTestSets)>,
}

impl PreprocessReport {
    /// C − I: covered mutants no test's probe distinguished, the candidates
    /// for equivalence proving.
    pub fn potentially_equivalent(&self) -> BTreeSet<MutantId> {
        self.covered.difference(&self.infected).copied().collect()
    }

    pub fn test_sets(&self, test_id: &str) -> Option<&PerTestSets> {
        self.per_test.iter().find(|(id, _)| id == test_id).map(|(_, s)| s)
    }

    /// Verifies infected ⊆ covered ⊆ mutant ids, globally and per test.
    /// A violation means the instrumentation is broken, not that the input
    /// was bad.
    pub fn check_nested(&self) -> Result<(), InvariantError> {
        let nested = |name: &str, infected: &BTreeSet<MutantId>, covered: &BTreeSet<MutantId>| {
            if let Some(id) = infected.difference(covered).next() {
                return Err(InvariantError::SetNesting {
                    detail: format!("{name}: mutant {id} is infected but not covered"),
                });
            }
            if let Some(id) = covered.iter().find(|id| **id as usize >= self.mutant_count) {
                return Err(InvariantError::SetNesting {
                    detail: format!(
                        "{name}: covered mutant {id} is outside the table of {} mutants",
                        self.mutant_count
                    ),
                });
            }
            Ok(())
        };
        nested("suite", &self.infected, &self.covered)?;
        for (id, sets) in &self.per_test {
            nested(&format!("test {id}"), &sets.infected, &sets.covered)?;
            if let Some(m) = sets.covered.difference(&self.covered).next() {
                return Err(InvariantError::SetNesting {
                    detail: format!("test {id}: covered mutant {m} missing from the suite set"),
                });
            }
            if let Some(m) = sets.infected.difference(&self.infected).next() {
                return Err(InvariantError::SetNesting {
                    detail: format!("test {id}: infected mutant {m} missing from the suite set"),
                });
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut per_test = serde_json::Map::new();
        for (id, sets) in &self.per_test {
            per_test.insert(
                id.clone(),
                serde_json::json!({
                    "covered": sets.covered,
                    "infected": sets.infected,
                }),
            );
        }
        serde_json::json!({
            "mutants": self.mutant_count,
            "covered": self.covered,
            "infected": self.infected,
            "probe_errors": self.probe_errors,
            "per_test": per_test,
        })
    }
}

/// Runs every test once against the instrumented original program and
/// aggregates coverage and infection. No mutant is ever executed here.
pub fn preprocess(
    p: &CheckedProgram,
    table: &MutantTable,
    suite: &TestSuite,
) -> Result<PreprocessReport, CallError> {
    let mut report = PreprocessReport {
        mutant_count: table.len(),
        covered: BTreeSet::new(),
        infected: BTreeSet::new(),
        probe_errors: BTreeSet::new(),
        per_test: Vec::new(),
    };
    for t in &suite.tests {
        let (_, trace) = run_traced(p, &t.function, &t.args, table)?;
        let mut sets = PerTestSets::default();
        for step in &trace.steps {
            match step {
                TraceStep::SiteEval { site, .. } => {
                    sets.covered.extend(table.at_site(*site).iter().copied());
                }
                TraceStep::ProbeResult { mutant, outcome } => {
                    if outcome.infected() {
                        sets.infected.insert(*mutant);
                    }
                    if *outcome == ProbeOutcome::Error {
                        report.probe_errors.insert(*mutant);
                    }
                }
                _ => {}
            }
        }
        report.covered.extend(sets.covered.iter().copied());
        report.infected.extend(sets.infected.iter().copied());
        report.per_test.push((t.id.clone(), sets));
    }
    Ok(report)
}
