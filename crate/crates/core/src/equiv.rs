//! Equivalence classification over a finite domain, and suite augmentation
//! from the models it finds.
//!
//! A candidate mutant is proven equivalent over the domain when its path
//! enumeration is complete and the infection condition is unsatisfiable on
//! every path. A satisfiable path yields a model that is turned into a new
//! test case; the model provably infects the mutant's state but may still
//! fail to kill it, so "killable" is a lower bound claim, never inverted
//! into an equivalence claim. Any incompleteness (loops, truncated path
//! sets, solver budget) degrades the verdict to unknown.

use std::collections::BTreeSet;

use serde_json::{json, Map, Value as Json};

use crate::constraints::{backsubstitute, enumerate_paths, infection_fragment, Formula, Mode};
use crate::error::InvariantError;
use crate::interp::{run, run_traced, Value};
use crate::lang::CheckedProgram;
use crate::mutanalysis::AnalysisReport;
use crate::mutgen::{mutant_descriptor, MutantId, MutantTable};
use crate::preprocess::PreprocessReport;
use crate::solver::{solve, Domain, Model, SolveResult, DEFAULT_DOMAIN_HI, DEFAULT_DOMAIN_LO, DEFAULT_SOLVER_BUDGET};
use crate::suite::{TestCase, TestSuite};

pub const DEFAULT_PATH_BOUND: usize = 64;

/// Why a verdict stayed unknown.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnknownCause {
    /// A loop precedes or re-enters the site; paths cannot be enumerated.
    Loops,
    /// The static path enumeration hit the path bound.
    PathBound,
    /// Some path's solve ran out of budget.
    SolverBudget,
}

impl UnknownCause {
    pub fn as_str(self) -> &'static str {
        match self {
            UnknownCause::Loops => "loops",
            UnknownCause::PathBound => "path-bound",
            UnknownCause::SolverBudget => "solver-budget",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum VerdictStatus {
    /// Complete path set, every path unsatisfiable over the domain.
    EquivalentOverDomain,
    /// Some path's infection condition is satisfiable; `model` is the first
    /// satisfying assignment of the first such path.
    Killable { model: Model, path: usize },
    Unknown(UnknownCause),
}

impl VerdictStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            VerdictStatus::EquivalentOverDomain => "equivalent-over-domain",
            VerdictStatus::Killable { .. } => "killable",
            VerdictStatus::Unknown(_) => "unknown",
        }
    }
}

#[derive(Debug, Clone)]
pub struct EquivalenceVerdict {
    pub mutant: MutantId,
    pub function: String,
    pub descriptor: String,
    pub status: VerdictStatus,
    pub paths: usize,
    pub complete: bool,
    pub path_formulas: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct EquivalenceReport {
    pub mode: Mode,
    pub lo: i64,
    pub hi: i64,
    pub verdicts: Vec<EquivalenceVerdict>,
}

impl EquivalenceReport {
    pub fn equivalent_ids(&self) -> BTreeSet<MutantId> {
        self.verdicts
            .iter()
            .filter(|v| v.status == VerdictStatus::EquivalentOverDomain)
            .map(|v| v.mutant)
            .collect()
    }

    pub fn to_json(&self) -> Json {
        json!({
            "mode": self.mode.as_str(),
            "domain": { "lo": self.lo, "hi": self.hi },
            "note": format!(
                "all verdicts are relative to int parameters ranging over [{}, {}]; \
                 equivalent-over-domain makes no claim outside that domain",
                self.lo, self.hi
            ),
            "verdicts": self.verdicts.iter().map(verdict_json).collect::<Vec<Json>>(),
        })
    }
}

fn verdict_json(v: &EquivalenceVerdict) -> Json {
    let mut obj = Map::new();
    obj.insert("mutant".into(), json!(v.mutant));
    obj.insert("function".into(), json!(v.function));
    obj.insert("descriptor".into(), json!(v.descriptor));
    obj.insert("status".into(), json!(v.status.as_str()));
    match &v.status {
        VerdictStatus::Killable { model, path } => {
            obj.insert("model".into(), model_json(model));
            obj.insert("killable_path".into(), json!(path));
        }
        VerdictStatus::Unknown(cause) => {
            obj.insert("cause".into(), json!(cause.as_str()));
        }
        VerdictStatus::EquivalentOverDomain => {}
    }
    obj.insert("paths".into(), json!(v.paths));
    obj.insert("complete".into(), json!(v.complete));
    obj.insert("path_formulas".into(), json!(v.path_formulas));
    Json::Object(obj)
}

fn model_json(model: &Model) -> Json {
    let mut obj = Map::new();
    for (name, value) in model {
        obj.insert(name.clone(), serde_json::to_value(value).expect("values serialize"));
    }
    Json::Object(obj)
}

#[derive(Debug, Clone, Copy)]
pub struct ClassifyOptions {
    pub mode: Mode,
    pub lo: i64,
    pub hi: i64,
    pub path_bound: usize,
    pub solver_budget: u64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            mode: Mode::Local,
            lo: DEFAULT_DOMAIN_LO,
            hi: DEFAULT_DOMAIN_HI,
            path_bound: DEFAULT_PATH_BOUND,
            solver_budget: DEFAULT_SOLVER_BUDGET,
        }
    }
}

/// Classifies candidate mutants as equivalent-over-domain, killable, or
/// unknown.
///
/// In local mode the candidates are the covered-but-never-infected mutants
/// of the preprocess report. In outermost mode they are the covered,
/// state-infected, yet live mutants, which needs the kill results in
/// `analysis` (pass the infection-filtered analysis of the same suite).
/// Loops in reaching a site fall back to trace-derived paths and an unknown
/// verdict; `suite` provides those traces.
pub fn classify_equivalence(
    cp: &CheckedProgram,
    table: &MutantTable,
    suite: &TestSuite,
    pre: &PreprocessReport,
    analysis: Option<&AnalysisReport>,
    opts: &ClassifyOptions,
) -> Result<EquivalenceReport, InvariantError> {
    let candidates: Vec<MutantId> = match opts.mode {
        Mode::Local => pre.potentially_equivalent().into_iter().collect(),
        Mode::Outermost => {
            let analysis = analysis.expect("outermost mode needs an analysis report for the live set");
            let live = analysis.live();
            pre.covered
                .iter()
                .filter(|m| pre.infected.contains(m) && live.contains(m))
                .copied()
                .collect()
        }
    };
    let traces: Vec<_> = suite
        .tests
        .iter()
        .map(|t| {
            run_traced(cp, &t.function, &t.args, table)
                .expect("suite was validated against the program")
                .1
        })
        .collect();

    let mut verdicts = Vec::with_capacity(candidates.len());
    for id in candidates {
        let mutant = table.get(id).expect("candidate ids come from the table");
        let func = cp
            .program
            .function_of_node(mutant.site.node)
            .expect("mutated site belongs to a function");
        let fragment = infection_fragment(cp, mutant, opts.mode);
        let enumeration = enumerate_paths(cp, mutant.site.node, opts.path_bound, &traces);
        let formulas: Vec<Formula> = enumeration
            .paths
            .iter()
            .map(|script| match opts.mode {
                Mode::Local => backsubstitute(script, &fragment),
                // The outermost condition ranges over the whole statement
                // expression, so reaching the statement is enough; guards
                // internal to it must not constrain the path.
                Mode::Outermost => backsubstitute(&script.without_site_guards(), &fragment),
            })
            .collect();

        let params: BTreeSet<String> = func.params.iter().map(|p| p.name.clone()).collect();
        for f in &formulas {
            if let Some(open) = f.vars().into_iter().find(|v| !params.contains(v)) {
                return Err(InvariantError::OpenFormula {
                    mutant: id,
                    detail: format!("variable `{open}` survives backsubstitution in {f}"),
                });
            }
        }

        let status = if !enumeration.complete {
            let cause = if enumeration.loopy { UnknownCause::Loops } else { UnknownCause::PathBound };
            VerdictStatus::Unknown(cause)
        } else {
            let domain = Domain::for_function(func, opts.lo, opts.hi);
            let mut budget_hit = false;
            let mut first_sat: Option<(Model, usize)> = None;
            for (i, f) in formulas.iter().enumerate() {
                match solve(f, &domain, opts.solver_budget).map_err(|e| {
                    InvariantError::OpenFormula { mutant: id, detail: e.to_string() }
                })? {
                    SolveResult::Sat(model) => {
                        if first_sat.is_none() {
                            first_sat = Some((model, i));
                        }
                    }
                    SolveResult::UnsatOverDomain => {}
                    SolveResult::BudgetExceeded => budget_hit = true,
                }
            }
            if budget_hit {
                VerdictStatus::Unknown(UnknownCause::SolverBudget)
            } else if let Some((model, path)) = first_sat {
                VerdictStatus::Killable { model, path }
            } else {
                VerdictStatus::EquivalentOverDomain
            }
        };

        verdicts.push(EquivalenceVerdict {
            mutant: id,
            function: func.name.clone(),
            descriptor: mutant_descriptor(table, id).expect("candidate ids come from the table"),
            status,
            paths: enumeration.paths.len(),
            complete: enumeration.complete,
            path_formulas: formulas.iter().map(|f| f.to_string()).collect(),
        });
    }
    Ok(EquivalenceReport { mode: opts.mode, lo: opts.lo, hi: opts.hi, verdicts })
}

/// Extends a suite with one test per killable verdict's model, skipping
/// argument vectors the suite (or an earlier verdict) already exercises.
/// Expected outcomes are recorded from the original program.
pub fn augment_suite(
    cp: &CheckedProgram,
    suite: &TestSuite,
    report: &EquivalenceReport,
) -> TestSuite {
    let mut tests = suite.tests.clone();
    let mut ids: BTreeSet<String> = tests.iter().map(|t| t.id.clone()).collect();
    let mut seen: Vec<(String, Vec<Value>)> =
        tests.iter().map(|t| (t.function.clone(), t.args.clone())).collect();
    for v in &report.verdicts {
        let VerdictStatus::Killable { model, .. } = &v.status else { continue };
        let args: Vec<Value> = model.iter().map(|(_, value)| *value).collect();
        let key = (v.function.clone(), args.clone());
        if seen.contains(&key) {
            continue;
        }
        let expected = run(cp, &v.function, &args).expect("model matches the function signature");
        let mut id = format!("m{}", v.mutant);
        let mut suffix = 2;
        while ids.contains(&id) {
            id = format!("m{}-{suffix}", v.mutant);
            suffix += 1;
        }
        ids.insert(id.clone());
        seen.push(key);
        tests.push(TestCase { id, function: v.function.clone(), args, expected });
    }
    TestSuite { name: format!("{}-augmented", suite.name), tests }
}
