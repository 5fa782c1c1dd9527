//! Exhaustive ground truth for equivalence over a finite domain.
//!
//! The oracle executes the original program and every mutant on every
//! assignment of the domain and compares outcomes. It is deliberately
//! independent of the constraint machinery so it can validate it; its only
//! shared vocabulary is the interpreter. Runs use the interpreter's default
//! step budget, so a mutant that loops where the original halted shows up
//! as a differing outcome rather than hanging the oracle.

use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Map, Value as Json};

use crate::equiv::EquivalenceReport;
use crate::error::{InvariantError, OracleError};
use crate::interp::{run, Outcome, Value};
use crate::lang::CheckedProgram;
use crate::mutgen::{apply_mutant, MutantId, MutantTable};
use crate::solver::Domain;

/// Most assignments the oracle will execute per function.
pub const ORACLE_CAP: u64 = 1_000_000;

/// First observed disagreement between original and mutant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub args: Vec<Value>,
    pub original: Outcome,
    pub mutant: Outcome,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleEntry {
    pub equivalent: bool,
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone)]
pub struct OracleReport {
    pub lo: i64,
    pub hi: i64,
    pub per_mutant: BTreeMap<MutantId, OracleEntry>,
}

impl OracleReport {
    pub fn equivalent_ids(&self) -> BTreeSet<MutantId> {
        self.per_mutant
            .iter()
            .filter(|(_, e)| e.equivalent)
            .map(|(id, _)| *id)
            .collect()
    }

    pub fn to_json(&self) -> Json {
        let mut mutants = Map::new();
        for (id, entry) in &self.per_mutant {
            let mut obj = Map::new();
            obj.insert("equivalent".into(), json!(entry.equivalent));
            if let Some(w) = &entry.witness {
                obj.insert(
                    "witness".into(),
                    json!({
                        "args": w.args,
                        "original": w.original,
                        "mutant": w.mutant,
                    }),
                );
            }
            mutants.insert(id.to_string(), Json::Object(obj));
        }
        json!({
            "domain": { "lo": self.lo, "hi": self.hi },
            "equivalent": self.equivalent_ids().into_iter().collect::<Vec<_>>(),
            "mutants": mutants,
        })
    }
}

/// Compares every mutant against the original on the full domain
/// `[lo, hi]` per integer parameter. Functions without mutation sites are
/// skipped entirely; a function whose domain exceeds [`ORACLE_CAP`]
/// assignments is an error.
pub fn brute_force_oracle(
    cp: &CheckedProgram,
    table: &MutantTable,
    lo: i64,
    hi: i64,
) -> Result<OracleReport, OracleError> {
    let mut per_mutant = BTreeMap::new();
    for func in &cp.program.functions {
        let mutants: Vec<MutantId> = table
            .mutants
            .iter()
            .filter(|m| cp.program.function_of_node(m.site.node).map(|f| &f.name) == Some(&func.name))
            .map(|m| m.id)
            .collect();
        if mutants.is_empty() {
            continue;
        }
        let domain = Domain::for_function(func, lo, hi);
        if domain.size() > ORACLE_CAP {
            return Err(OracleError::DomainTooLarge {
                function: func.name.clone(),
                size: domain.size(),
                cap: ORACLE_CAP,
            });
        }
        let inputs: Vec<Vec<Value>> = domain
            .assignments()
            .map(|m| m.into_iter().map(|(_, v)| v).collect())
            .collect();
        let baseline: Vec<Outcome> = inputs
            .iter()
            .map(|args| run(cp, &func.name, args).expect("domain matches the signature"))
            .collect();
        for id in mutants {
            let mutated = apply_mutant(cp, table, id).expect("table ids are dense");
            let mut entry = OracleEntry { equivalent: true, witness: None };
            for (args, expected) in inputs.iter().zip(&baseline) {
                let got = run(&mutated, &func.name, args).expect("domain matches the signature");
                if got != *expected {
                    entry = OracleEntry {
                        equivalent: false,
                        witness: Some(Witness {
                            args: args.clone(),
                            original: *expected,
                            mutant: got,
                        }),
                    };
                    break;
                }
            }
            per_mutant.insert(id, entry);
        }
    }
    Ok(OracleReport { lo, hi, per_mutant })
}

/// Confirms that no equivalent-over-domain verdict contradicts the oracle.
/// Killable and unknown verdicts are free to disagree (infection is
/// necessary, not sufficient); a false equivalence claim never is.
pub fn cross_check(
    equivalence: &EquivalenceReport,
    oracle: &OracleReport,
) -> Result<(), InvariantError> {
    for id in equivalence.equivalent_ids() {
        match oracle.per_mutant.get(&id) {
            Some(entry) if entry.equivalent => {}
            Some(entry) => {
                let w = entry.witness.as_ref().expect("inequivalent entries carry a witness");
                return Err(InvariantError::OracleMismatch {
                    detail: format!(
                        "mutant {id} was judged equivalent over [{}, {}] but differs on args {:?} (original {}, mutant {})",
                        oracle.lo, oracle.hi, w.args, w.original, w.mutant
                    ),
                });
            }
            None => {
                return Err(InvariantError::OracleMismatch {
                    detail: format!("mutant {id} was judged equivalent but the oracle never ran it"),
                });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::{check, parse_program};
    use crate::mutgen::generate_mutants;
    use crate::lang::ast::BinOp;

    fn checked(src: &str) -> CheckedProgram {
        check(parse_program(src, "oracle.ml0").unwrap()).unwrap()
    }

    #[test]
    fn boundary_mutant_is_caught_with_smallest_witness() {
        let cp = checked("fn f(a: int, b: int) -> int { if (a > b) { return 1; } return 0; }");
        let table = generate_mutants(&cp);
        let report = brute_force_oracle(&cp, &table, 0, 3).unwrap();
        let ge = table
            .mutants
            .iter()
            .find(|m| m.site.original_op == BinOp::Gt && m.replacement_op == BinOp::Ge)
            .unwrap();
        let entry = &report.per_mutant[&ge.id];
        assert!(!entry.equivalent);
        let w = entry.witness.as_ref().unwrap();
        assert_eq!(w.args, vec![Value::Int(0), Value::Int(0)]);
        assert_eq!(w.original, Outcome::Value(Value::Int(0)));
        assert_eq!(w.mutant, Outcome::Value(Value::Int(1)));
    }

    #[test]
    fn program_without_sites_yields_empty_report() {
        let cp = checked("fn id(a: int) -> int { return a; }");
        let table = generate_mutants(&cp);
        // No sites also means no domain sweep, however large the bounds.
        let report = brute_force_oracle(&cp, &table, -1_000_000, 1_000_000).unwrap();
        assert!(report.per_mutant.is_empty());
    }

    #[test]
    fn genuinely_equivalent_mutant_is_labeled_equivalent() {
        let cp = checked(
            "fn gate(a: int) -> int {
    x = 0;
    if (a > 0) {
        x = 1;
    } else {
        x = 2;
    }
    if (x > 0) {
        return 1;
    }
    return 0;
}",
        );
        let table = generate_mutants(&cp);
        let report = brute_force_oracle(&cp, &table, -3, 3).unwrap();
        let ne = table
            .mutants
            .iter()
            .rfind(|m| m.site.original_op == BinOp::Gt && m.replacement_op == BinOp::Ne)
            .unwrap();
        // x is always 1 or 2 at the second guard; x > 0 and x != 0 agree.
        let entry = &report.per_mutant[&ne.id];
        assert!(entry.equivalent);
        assert!(entry.witness.is_none());
        assert_eq!(report.per_mutant.len(), table.len());
    }

    #[test]
    fn oversized_domains_are_rejected() {
        let cp = checked("fn f(a: int, b: int, c: int, d: int) -> int { return a + b + c + d; }");
        let table = generate_mutants(&cp);
        let err = brute_force_oracle(&cp, &table, 0, 40).unwrap_err();
        assert!(matches!(err, OracleError::DomainTooLarge { size, .. } if size == 41u64.pow(4)));
    }

    #[test]
    fn looping_mutant_differs_via_step_budget() {
        let cp = checked(
            "fn sum_to(n: int) -> int {
    i = 0;
    s = 0;
    while (i <= n) {
        s = s + i;
        i = i + 1;
    }
    return s;
}",
        );
        let table = generate_mutants(&cp);
        let ne = table
            .mutants
            .iter()
            .find(|m| m.site.original_op == BinOp::Le && m.replacement_op == BinOp::Ne)
            .unwrap();
        let report = brute_force_oracle(&cp, &table, -2, 2).unwrap();
        let entry = &report.per_mutant[&ne.id];
        // i != n never turns false for negative n, so the mutant exhausts
        // its step budget where the original returned normally.
        assert!(!entry.equivalent);
        let w = entry.witness.as_ref().unwrap();
        assert_eq!(w.args, vec![Value::Int(-2)]);
        assert_eq!(w.original, Outcome::Value(Value::Int(0)));
    }

    #[test]
    fn report_json_lists_equivalent_ids() {
        let cp = checked("fn f(a: int, b: int) -> int { if (a > b) { return 1; } return 0; }");
        let table = generate_mutants(&cp);
        let report = brute_force_oracle(&cp, &table, 0, 3).unwrap();
        let j = report.to_json();
        assert_eq!(j["domain"]["lo"], 0);
        assert!(j["equivalent"].is_array());
        assert!(j["mutants"].is_object());
        let first = &j["mutants"][table.mutants[0].id.to_string()];
        assert!(first["equivalent"].is_boolean());
    }

    #[test]
    fn cross_check_accepts_true_and_rejects_false_equivalences() {
        use crate::constraints::Mode;
        use crate::equiv::{EquivalenceVerdict, VerdictStatus};

        let cp = checked("fn f(a: int, b: int) -> int { if (a > b) { return 1; } return 0; }");
        let table = generate_mutants(&cp);
        let oracle = brute_force_oracle(&cp, &table, 0, 3).unwrap();
        let ge = table
            .mutants
            .iter()
            .find(|m| m.site.original_op == BinOp::Gt && m.replacement_op == BinOp::Ge)
            .unwrap();
        let verdict = |id, status| EquivalenceVerdict {
            mutant: id,
            function: "f".into(),
            descriptor: String::new(),
            status,
            paths: 0,
            complete: true,
            path_formulas: vec![],
        };
        let claim = |verdicts| EquivalenceReport { mode: Mode::Local, lo: 0, hi: 3, verdicts };

        let honest = claim(vec![verdict(
            ge.id,
            VerdictStatus::Killable { model: vec![("a".into(), Value::Int(0))], path: 0 },
        )]);
        cross_check(&honest, &oracle).unwrap();

        let lying = claim(vec![verdict(ge.id, VerdictStatus::EquivalentOverDomain)]);
        let err = cross_check(&lying, &oracle).unwrap_err();
        assert!(err.to_string().contains("oracle contradicts"));

        let phantom = claim(vec![verdict(9999, VerdictStatus::EquivalentOverDomain)]);
        assert!(cross_check(&phantom, &oracle).is_err());
    }
}
