//! Strong mutation analysis with a selectable execution filter.
//!
//! The filter decides which (mutant, test) pairs actually run: `none` runs
//! everything, `coverage` only pairs whose test reached the mutated site,
//! `infection` only pairs whose test additionally infected the state there.
//! Because coverage and infection are necessary conditions for a kill, the
//! killed set is identical under all three filters; only the executed pair
//! count shrinks. Tests run in suite order and a mutant's remaining tests
//! are skipped once it is killed.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::time::Instant;

use crate::error::{AnalysisError, CompareError, InvariantError};
use crate::interp::run;
use crate::lang::CheckedProgram;
use crate::mutgen::{apply_mutant, MutantId, MutantTable};
use crate::preprocess::PreprocessReport;
use crate::suite::TestSuite;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Filter {
    None,
    Coverage,
    Infection,
}

impl fmt::Display for Filter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Filter::None => "none",
            Filter::Coverage => "coverage",
            Filter::Infection => "infection",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MutantStatus {
    Killed,
    Live,
    SkippedUncovered,
    SkippedUninfected,
}

impl fmt::Display for MutantStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MutantStatus::Killed => "killed",
            MutantStatus::Live => "live",
            MutantStatus::SkippedUncovered => "skipped-uncovered",
            MutantStatus::SkippedUninfected => "skipped-uninfected",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MutantResult {
    pub status: MutantStatus,
    pub killing_tests: Vec<String>,
    pub executed_pairs: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnalysisReport {
    pub filter: Filter,
    pub mutant_count: usize,
    pub per_mutant: BTreeMap<MutantId, MutantResult>,
    pub executed_pairs: u64,
    pub executed_mutants: usize,
    /// Wall clock of the analysis; informational only, never part of the
    /// serialized report so reports stay reproducible.
    pub wall_millis: u128,
}

impl AnalysisReport {
    pub fn killed(&self) -> BTreeSet<MutantId> {
        self.by_status(MutantStatus::Killed)
    }

    pub fn live(&self) -> BTreeSet<MutantId> {
        self.by_status(MutantStatus::Live)
    }

    fn by_status(&self, status: MutantStatus) -> BTreeSet<MutantId> {
        self.per_mutant
            .iter()
            .filter(|(_, r)| r.status == status)
            .map(|(id, _)| *id)
            .collect()
    }

    pub fn score(&self) -> f64 {
        if self.mutant_count == 0 {
            0.0
        } else {
            self.killed().len() as f64 / self.mutant_count as f64
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "filter": self.filter.to_string(),
            "mutants": self.mutant_count,
            "killed": self.killed(),
            "live": self.live(),
            "skipped": {
                "uncovered": self.by_status(MutantStatus::SkippedUncovered),
                "uninfected": self.by_status(MutantStatus::SkippedUninfected),
            },
            "executed_pairs": self.executed_pairs,
            "executed_mutants": self.executed_mutants,
            "score": self.score(),
        })
    }
}

pub fn run_analysis(
    p: &CheckedProgram,
    table: &MutantTable,
    suite: &TestSuite,
    filter: Filter,
    pre: Option<&PreprocessReport>,
) -> Result<AnalysisReport, AnalysisError> {
    if filter != Filter::None && pre.is_none() {
        return Err(AnalysisError::MissingPreprocess { filter: filter.to_string() });
    }
    let started = Instant::now();
    let mut per_mutant = BTreeMap::new();
    let mut executed_pairs = 0u64;
    let mut executed_mutants = 0usize;
    for m in &table.mutants {
        let runnable: Vec<usize> = suite
            .tests
            .iter()
            .enumerate()
            .filter(|(_, t)| match (filter, pre) {
                (Filter::None, _) => true,
                (Filter::Coverage, Some(r)) => {
                    r.test_sets(&t.id).is_some_and(|s| s.covered.contains(&m.id))
                }
                (Filter::Infection, Some(r)) => {
                    r.test_sets(&t.id).is_some_and(|s| s.infected.contains(&m.id))
                }
                _ => unreachable!("checked above"),
            })
            .map(|(i, _)| i)
            .collect();

        if runnable.is_empty() && filter != Filter::None {
            let covered = pre.is_some_and(|r| r.covered.contains(&m.id));
            let status = if filter == Filter::Infection && covered {
                MutantStatus::SkippedUninfected
            } else {
                MutantStatus::SkippedUncovered
            };
            per_mutant.insert(m.id, MutantResult { status, killing_tests: vec![], executed_pairs: 0 });
            continue;
        }

        let mutated = apply_mutant(p, table, m.id).expect("table ids are in range");
        let mut result =
            MutantResult { status: MutantStatus::Live, killing_tests: vec![], executed_pairs: 0 };
        for i in runnable {
            let t = &suite.tests[i];
            let outcome = run(&mutated, &t.function, &t.args)?;
            result.executed_pairs += 1;
            if outcome != t.expected {
                result.status = MutantStatus::Killed;
                result.killing_tests.push(t.id.clone());
                break;
            }
        }
        if result.executed_pairs > 0 {
            executed_mutants += 1;
        }
        executed_pairs += result.executed_pairs;
        per_mutant.insert(m.id, result);
    }
    Ok(AnalysisReport {
        filter,
        mutant_count: table.len(),
        per_mutant,
        executed_pairs,
        executed_mutants,
        wall_millis: started.elapsed().as_millis(),
    })
}

#[derive(Debug, Clone)]
pub struct SavingsReport {
    pub none: AnalysisReport,
    pub coverage: AnalysisReport,
    pub infection: AnalysisReport,
}

impl SavingsReport {
    pub fn summary(&self) -> String {
        let pct = |part: u64, whole: u64| {
            if whole == 0 {
                0.0
            } else {
                100.0 * (1.0 - part as f64 / whole as f64)
            }
        };
        format!(
            "executed mutants none/coverage/infection: {}/{}/{}\n\
             executed pairs  none/coverage/infection: {}/{}/{}\n\
             pair reduction vs none: coverage {:.1}%, infection {:.1}%\n\
             killed under every filter: {}",
            self.none.executed_mutants,
            self.coverage.executed_mutants,
            self.infection.executed_mutants,
            self.none.executed_pairs,
            self.coverage.executed_pairs,
            self.infection.executed_pairs,
            pct(self.coverage.executed_pairs, self.none.executed_pairs),
            pct(self.infection.executed_pairs, self.none.executed_pairs),
            self.none.killed().len(),
        )
    }
}

/// Runs the analysis under all three filters and checks the killed sets
/// coincide; a mismatch is an internal soundness bug, not an input error.
pub fn compare_filters(
    p: &CheckedProgram,
    table: &MutantTable,
    suite: &TestSuite,
    pre: &PreprocessReport,
) -> Result<SavingsReport, CompareError> {
    let none = run_analysis(p, table, suite, Filter::None, Some(pre))?;
    let coverage = run_analysis(p, table, suite, Filter::Coverage, Some(pre))?;
    let infection = run_analysis(p, table, suite, Filter::Infection, Some(pre))?;
    for (other, name) in [(&coverage, "coverage"), (&infection, "infection")] {
        if other.killed() != none.killed() {
            let only_none: Vec<MutantId> =
                none.killed().difference(&other.killed()).copied().collect();
            let only_other: Vec<MutantId> =
                other.killed().difference(&none.killed()).copied().collect();
            return Err(InvariantError::KillSetMismatch {
                detail: format!(
                    "none vs {name}: killed only under none {only_none:?}, only under {name} {only_other:?}"
                ),
            }
            .into());
        }
    }
    Ok(SavingsReport { none, coverage, infection })
}
