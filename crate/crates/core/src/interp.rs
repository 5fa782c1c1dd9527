//! Tree-walking evaluator with an instrumented mode.
//!
//! Arithmetic is 64-bit two's-complement with checked overflow; overflow,
//! division by zero, modulo by zero, and an exhausted statement budget are
//! runtime outcomes, not panics. The instrumented mode records statement
//! entries, branch decisions, assignments, an operand/result capture for
//! every evaluated mutation site, and a probe verdict for every mutant
//! seeded at such a site. Probes never influence evaluation, so the traced
//! outcome always equals the plain one.
//!
//! Site captures at a short-circuiting connector deserve care. When the
//! original run skips the right operand, the probe for the opposite
//! connector may still need its value, so it is evaluated eagerly on the
//! side, without recording anything (inner sites of a skipped operand do
//! not count as covered) and with errors mapped to an absent value. When
//! the right operand of a connector errors during normal evaluation, or the
//! operator itself errors, the capture is still emitted with the missing
//! pieces absent: a mutant at that site could legitimately behave
//! differently, so it must count as covered and its probes resolve to the
//! conservative error verdict.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::CallError;
use crate::lang::ast::*;
use crate::lang::CheckedProgram;
use crate::mutgen::{MutantId, MutantTable};
use crate::preprocess::{probe_outcome, ProbeOutcome};

pub const DEFAULT_STEP_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Int(i64),
    Bool(bool),
}

impl Value {
    pub fn type_of(self) -> Type {
        match self {
            Value::Int(_) => Type::Int,
            Value::Bool(_) => Type::Bool,
        }
    }

    fn as_int(self) -> i64 {
        match self {
            Value::Int(n) => n,
            Value::Bool(_) => unreachable!("type checker admits ints only here"),
        }
    }

    fn as_bool(self) -> bool {
        match self {
            Value::Bool(b) => b,
            Value::Int(_) => unreachable!("type checker admits bools only here"),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(n) => write!(f, "{n}"),
            Value::Bool(b) => write!(f, "{b}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RuntimeErrorKind {
    DivByZero,
    ModByZero,
    Overflow,
    StepBudgetExceeded,
}

impl fmt::Display for RuntimeErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RuntimeErrorKind::DivByZero => "div-by-zero",
            RuntimeErrorKind::ModByZero => "mod-by-zero",
            RuntimeErrorKind::Overflow => "overflow",
            RuntimeErrorKind::StepBudgetExceeded => "step-budget-exceeded",
        })
    }
}

/// What one function invocation produced. Two outcomes compare equal only
/// when both are the same value or both are errors of the same kind; that
/// equality is the kill oracle for strong mutation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Value(Value),
    Error(RuntimeErrorKind),
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Value(v) => write!(f, "{v}"),
            Outcome::Error(k) => write!(f, "error({k})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TraceStep {
    StmtEnter { stmt: NodeId, loc: SourceLoc },
    Branch { cond: NodeId, taken: bool },
    Assign { var: String, value: Value },
    SiteEval { site: NodeId, lhs: Value, rhs: Option<Value>, result: Option<Value> },
    ProbeResult { mutant: MutantId, outcome: ProbeOutcome },
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ExecutionTrace {
    pub steps: Vec<TraceStep>,
}

impl ExecutionTrace {
    pub fn site_evals(&self, site: NodeId) -> impl Iterator<Item = &TraceStep> {
        self.steps.iter().filter(move |s| matches!(s, TraceStep::SiteEval { site: n, .. } if *n == site))
    }

    pub fn covers(&self, site: NodeId) -> bool {
        self.site_evals(site).next().is_some()
    }
}

pub fn apply_arith(op: BinOp, a: i64, b: i64) -> Result<i64, RuntimeErrorKind> {
    match op {
        BinOp::Add => a.checked_add(b).ok_or(RuntimeErrorKind::Overflow),
        BinOp::Sub => a.checked_sub(b).ok_or(RuntimeErrorKind::Overflow),
        BinOp::Mul => a.checked_mul(b).ok_or(RuntimeErrorKind::Overflow),
        BinOp::Div => {
            if b == 0 {
                Err(RuntimeErrorKind::DivByZero)
            } else {
                a.checked_div(b).ok_or(RuntimeErrorKind::Overflow)
            }
        }
        BinOp::Mod => {
            if b == 0 {
                Err(RuntimeErrorKind::ModByZero)
            } else {
                a.checked_rem(b).ok_or(RuntimeErrorKind::Overflow)
            }
        }
        _ => unreachable!("not an arithmetic operator"),
    }
}

pub fn apply_rel(op: BinOp, a: i64, b: i64) -> bool {
    match op {
        BinOp::Lt => a < b,
        BinOp::Le => a <= b,
        BinOp::Gt => a > b,
        BinOp::Ge => a >= b,
        BinOp::Eq => a == b,
        BinOp::Ne => a != b,
        _ => unreachable!("not a relational operator"),
    }
}

pub fn run(p: &CheckedProgram, fname: &str, args: &[Value]) -> Result<Outcome, CallError> {
    run_with_budget(p, fname, args, DEFAULT_STEP_BUDGET)
}

pub fn run_with_budget(
    p: &CheckedProgram,
    fname: &str,
    args: &[Value],
    budget: u64,
) -> Result<Outcome, CallError> {
    let f = resolve(p, fname, args)?;
    let mut m = Machine::new(f, args, budget, None);
    Ok(m.run(f))
}

pub fn run_traced(
    p: &CheckedProgram,
    fname: &str,
    args: &[Value],
    probes: &MutantTable,
) -> Result<(Outcome, ExecutionTrace), CallError> {
    run_traced_with_budget(p, fname, args, probes, DEFAULT_STEP_BUDGET)
}

pub fn run_traced_with_budget(
    p: &CheckedProgram,
    fname: &str,
    args: &[Value],
    probes: &MutantTable,
    budget: u64,
) -> Result<(Outcome, ExecutionTrace), CallError> {
    let f = resolve(p, fname, args)?;
    let mut m = Machine::new(f, args, budget, Some(probes));
    let outcome = m.run(f);
    Ok((outcome, ExecutionTrace { steps: m.steps }))
}

fn resolve<'a>(p: &'a CheckedProgram, fname: &str, args: &[Value]) -> Result<&'a FunctionDef, CallError> {
    let f = p
        .program
        .function(fname)
        .ok_or_else(|| CallError::UnknownFunction { name: fname.to_string() })?;
    if args.len() != f.params.len() {
        return Err(CallError::ArityMismatch {
            name: fname.to_string(),
            expected: f.params.len(),
            got: args.len(),
        });
    }
    for (i, (arg, param)) in args.iter().zip(&f.params).enumerate() {
        if arg.type_of() != param.ty {
            return Err(CallError::ArgTypeMismatch {
                name: fname.to_string(),
                index: i,
                expected: param.ty.to_string(),
                found: arg.type_of().to_string(),
            });
        }
    }
    Ok(f)
}

struct Machine<'a> {
    env: BTreeMap<String, Value>,
    steps_used: u64,
    budget: u64,
    probes: Option<&'a MutantTable>,
    steps: Vec<TraceStep>,
}

enum Flow {
    Next,
    Return(Value),
}

impl<'a> Machine<'a> {
    fn new(f: &FunctionDef, args: &[Value], budget: u64, probes: Option<&'a MutantTable>) -> Self {
        let env = f.params.iter().map(|p| p.name.clone()).zip(args.iter().copied()).collect();
        Machine { env, steps_used: 0, budget, probes, steps: Vec::new() }
    }

    fn run(&mut self, f: &FunctionDef) -> Outcome {
        match self.exec_block(&f.body) {
            Ok(Flow::Return(v)) => Outcome::Value(v),
            Ok(Flow::Next) => unreachable!("checker guarantees all paths return"),
            Err(k) => Outcome::Error(k),
        }
    }

    fn tracing(&self) -> bool {
        self.probes.is_some()
    }

    fn emit(&mut self, step: TraceStep) {
        if self.tracing() {
            self.steps.push(step);
        }
    }

    fn enter_stmt(&mut self, s: &Stmt) -> Result<(), RuntimeErrorKind> {
        if self.steps_used >= self.budget {
            return Err(RuntimeErrorKind::StepBudgetExceeded);
        }
        self.steps_used += 1;
        self.emit(TraceStep::StmtEnter { stmt: s.id, loc: s.loc });
        Ok(())
    }

    fn exec_block(&mut self, stmts: &[Stmt]) -> Result<Flow, RuntimeErrorKind> {
        for s in stmts {
            if let Flow::Return(v) = self.exec_stmt(s)? {
                return Ok(Flow::Return(v));
            }
        }
        Ok(Flow::Next)
    }

    fn exec_stmt(&mut self, s: &Stmt) -> Result<Flow, RuntimeErrorKind> {
        match &s.kind {
            StmtKind::Assign { target, value } => {
                self.enter_stmt(s)?;
                let v = self.eval(value)?;
                self.emit(TraceStep::Assign { var: target.clone(), value: v });
                self.env.insert(target.clone(), v);
                Ok(Flow::Next)
            }
            StmtKind::If { cond, then_body, else_body } => {
                self.enter_stmt(s)?;
                let taken = self.eval(cond)?.as_bool();
                self.emit(TraceStep::Branch { cond: cond.id, taken });
                if taken {
                    self.exec_block(then_body)
                } else {
                    self.exec_block(else_body)
                }
            }
            StmtKind::While { cond, body } => loop {
                self.enter_stmt(s)?;
                let taken = self.eval(cond)?.as_bool();
                self.emit(TraceStep::Branch { cond: cond.id, taken });
                if !taken {
                    return Ok(Flow::Next);
                }
                if let Flow::Return(v) = self.exec_block(body)? {
                    return Ok(Flow::Return(v));
                }
            },
            StmtKind::Return(e) => {
                self.enter_stmt(s)?;
                let v = self.eval(e)?;
                Ok(Flow::Return(v))
            }
        }
    }

    fn eval(&mut self, e: &Expr) -> Result<Value, RuntimeErrorKind> {
        match &e.kind {
            ExprKind::IntLit(n) => Ok(Value::Int(*n)),
            ExprKind::BoolLit(b) => Ok(Value::Bool(*b)),
            ExprKind::Var(name) => Ok(self.env[name]),
            ExprKind::Unary { op, operand } => {
                let v = self.eval(operand)?;
                match op {
                    UnOp::Neg => v
                        .as_int()
                        .checked_neg()
                        .map(Value::Int)
                        .ok_or(RuntimeErrorKind::Overflow),
                    UnOp::Not => Ok(Value::Bool(!v.as_bool())),
                }
            }
            ExprKind::Binary { op, lhs, rhs } if op.is_logical() => {
                let lv = self.eval(lhs)?;
                let short = match op {
                    BinOp::And => !lv.as_bool(),
                    BinOp::Or => lv.as_bool(),
                    _ => unreachable!(),
                };
                if short {
                    let rv = if self.tracing() { eval_silent(rhs, &self.env).ok() } else { None };
                    self.capture(e, *op, lv, rv, Some(lv));
                    Ok(lv)
                } else {
                    match self.eval(rhs) {
                        Ok(rv) => {
                            self.capture(e, *op, lv, Some(rv), Some(rv));
                            Ok(rv)
                        }
                        Err(k) => {
                            self.capture(e, *op, lv, None, None);
                            Err(k)
                        }
                    }
                }
            }
            ExprKind::Binary { op, lhs, rhs } => {
                let lv = self.eval(lhs)?;
                let rv = self.eval(rhs)?;
                let result = if op.is_arithmetic() {
                    apply_arith(*op, lv.as_int(), rv.as_int()).map(Value::Int)
                } else {
                    Ok(Value::Bool(apply_rel(*op, lv.as_int(), rv.as_int())))
                };
                match result {
                    Ok(v) => {
                        self.capture(e, *op, lv, Some(rv), Some(v));
                        Ok(v)
                    }
                    Err(k) => {
                        self.capture(e, *op, lv, Some(rv), None);
                        Err(k)
                    }
                }
            }
        }
    }

    fn capture(&mut self, e: &Expr, op: BinOp, lhs: Value, rhs: Option<Value>, result: Option<Value>) {
        let Some(table) = self.probes else { return };
        self.steps.push(TraceStep::SiteEval { site: e.id, lhs, rhs, result });
        for &id in table.at_site(e.id) {
            let m = &table.mutants[id as usize];
            let outcome = probe_outcome(op, m.replacement_op, lhs, rhs, result);
            self.steps.push(TraceStep::ProbeResult { mutant: id, outcome });
        }
    }
}

/// Plain recursive evaluation against a fixed environment, recording
/// nothing. Used only to obtain the value of an operand the original run
/// short-circuited past.
fn eval_silent(e: &Expr, env: &BTreeMap<String, Value>) -> Result<Value, RuntimeErrorKind> {
    match &e.kind {
        ExprKind::IntLit(n) => Ok(Value::Int(*n)),
        ExprKind::BoolLit(b) => Ok(Value::Bool(*b)),
        ExprKind::Var(name) => Ok(env[name]),
        ExprKind::Unary { op, operand } => {
            let v = eval_silent(operand, env)?;
            match op {
                UnOp::Neg => v.as_int().checked_neg().map(Value::Int).ok_or(RuntimeErrorKind::Overflow),
                UnOp::Not => Ok(Value::Bool(!v.as_bool())),
            }
        }
        ExprKind::Binary { op, lhs, rhs } if op.is_logical() => {
            let lv = eval_silent(lhs, env)?;
            match (op, lv.as_bool()) {
                (BinOp::And, false) => Ok(Value::Bool(false)),
                (BinOp::Or, true) => Ok(Value::Bool(true)),
                _ => eval_silent(rhs, env),
            }
        }
        ExprKind::Binary { op, lhs, rhs } => {
            let lv = eval_silent(lhs, env)?;
            let rv = eval_silent(rhs, env)?;
            if op.is_arithmetic() {
                apply_arith(*op, lv.as_int(), rv.as_int()).map(Value::Int)
            } else {
                Ok(Value::Bool(apply_rel(*op, lv.as_int(), rv.as_int())))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::{check, parse_program};
    use crate::mutgen::generate_mutants;

    fn checked(src: &str) -> CheckedProgram {
        check(parse_program(src, "test.ml0").unwrap()).unwrap()
    }

    fn run_ok(src: &str, f: &str, args: &[i64]) -> Outcome {
        let p = checked(src);
        let args: Vec<Value> = args.iter().map(|n| Value::Int(*n)).collect();
        run(&p, f, &args).unwrap()
    }

    #[test]
    fn arithmetic_and_branching() {
        let src = "fn max(a: int, b: int) -> int { if (a > b) { return a; } return b; }";
        assert_eq!(run_ok(src, "max", &[3, 9]), Outcome::Value(Value::Int(9)));
        assert_eq!(run_ok(src, "max", &[9, 3]), Outcome::Value(Value::Int(9)));
    }

    #[test]
    fn division_truncates_toward_zero() {
        let src = "fn f(a: int, b: int) -> int { return a / b; }";
        assert_eq!(run_ok(src, "f", &[7, 2]), Outcome::Value(Value::Int(3)));
        assert_eq!(run_ok(src, "f", &[-7, 2]), Outcome::Value(Value::Int(-3)));
        assert_eq!(run_ok(src, "f", &[7, -2]), Outcome::Value(Value::Int(-3)));
    }

    #[test]
    fn runtime_errors_by_kind() {
        assert_eq!(
            run_ok("fn f(a: int) -> int { return a / 0; }", "f", &[5]),
            Outcome::Error(RuntimeErrorKind::DivByZero)
        );
        assert_eq!(
            run_ok("fn f(a: int) -> int { return a % 0; }", "f", &[5]),
            Outcome::Error(RuntimeErrorKind::ModByZero)
        );
        assert_eq!(
            run_ok(
                "fn f(a: int) -> int { return a * a; }",
                "f",
                &[4_000_000_000]
            ),
            Outcome::Error(RuntimeErrorKind::Overflow)
        );
        assert_eq!(
            run_ok("fn f(a: int, b: int) -> int { return a % b; }", "f", &[i64::MIN, -1]),
            Outcome::Error(RuntimeErrorKind::Overflow)
        );
        assert_eq!(
            run_ok("fn f(a: int, b: int) -> int { return a / b; }", "f", &[i64::MIN, -1]),
            Outcome::Error(RuntimeErrorKind::Overflow)
        );
    }

    #[test]
    fn short_circuit_skips_errors() {
        let src = "fn f(a: int) -> bool { return a == 0 || 10 / a > 2; }";
        assert_eq!(run_ok(src, "f", &[0]), Outcome::Value(Value::Bool(true)));
        assert_eq!(run_ok(src, "f", &[2]), Outcome::Value(Value::Bool(true)));
        let src2 = "fn g(a: int) -> bool { return a != 0 && 10 / a > 2; }";
        assert_eq!(run_ok(src2, "g", &[0]), Outcome::Value(Value::Bool(false)));
    }

    #[test]
    fn while_loop_and_budget() {
        let src = "fn sum(n: int) -> int { s = 0; i = 1; while (i <= n) { s = s + i; i = i + 1; } return s; }";
        assert_eq!(run_ok(src, "sum", &[10]), Outcome::Value(Value::Int(55)));
        let p = checked("fn spin(a: int) -> int { while (a > 0) { a = a + 0; } return a; }");
        assert_eq!(
            run_with_budget(&p, "spin", &[Value::Int(1)], 1000).unwrap(),
            Outcome::Error(RuntimeErrorKind::StepBudgetExceeded)
        );
    }

    #[test]
    fn budget_monotonicity() {
        let src = "fn sum(n: int) -> int { s = 0; i = 1; while (i <= n) { s = s + i; i = i + 1; } return s; }";
        let p = checked(src);
        let args = [Value::Int(20)];
        let base = run_with_budget(&p, "sum", &args, 100).unwrap();
        assert_eq!(base, Outcome::Value(Value::Int(210)));
        for budget in [101, 1000, DEFAULT_STEP_BUDGET] {
            assert_eq!(run_with_budget(&p, "sum", &args, budget).unwrap(), base);
        }
    }

    #[test]
    fn caller_errors_are_not_outcomes() {
        let p = checked("fn f(a: int) -> int { return a; }");
        assert!(matches!(run(&p, "g", &[Value::Int(1)]), Err(CallError::UnknownFunction { .. })));
        assert!(matches!(run(&p, "f", &[]), Err(CallError::ArityMismatch { .. })));
        assert!(matches!(
            run(&p, "f", &[Value::Bool(true)]),
            Err(CallError::ArgTypeMismatch { .. })
        ));
    }

    #[test]
    fn traced_outcome_matches_plain_outcome() {
        let srcs = [
            "fn f(a: int, b: int) -> int { if (a > b && b > 0) { return a / b; } return 0; }",
            "fn f(a: int, b: int) -> int { return a % (b - b); }",
            "fn f(a: int, b: int) -> int { s = 0; while (a > 0) { s = s + b; a = a - 1; } return s; }",
        ];
        for src in srcs {
            let p = checked(src);
            let t = generate_mutants(&p);
            for a in -2..3_i64 {
                for b in -2..3_i64 {
                    let args = [Value::Int(a), Value::Int(b)];
                    let plain = run(&p, "f", &args).unwrap();
                    let (traced, _) = run_traced(&p, "f", &args, &t).unwrap();
                    assert_eq!(plain, traced, "{src} at ({a},{b})");
                }
            }
        }
    }

    #[test]
    fn traces_are_deterministic() {
        let src = "fn f(a: int, b: int) -> int { if (a > b || a == 0) { return a + b; } return a - b; }";
        let p = checked(src);
        let t = generate_mutants(&p);
        let args = [Value::Int(2), Value::Int(1)];
        let r1 = run_traced(&p, "f", &args, &t).unwrap();
        let r2 = run_traced(&p, "f", &args, &t).unwrap();
        assert_eq!(r1, r2);
    }

    #[test]
    fn trace_records_statements_branches_sites() {
        let src = "fn f(a: int) -> int { if (a > 0) { return 1; } return 0; }";
        let p = checked(src);
        let t = generate_mutants(&p);
        let (_, trace) = run_traced(&p, "f", &[Value::Int(5)], &t).unwrap();
        assert!(matches!(trace.steps[0], TraceStep::StmtEnter { .. }));
        let branch = trace.steps.iter().find(|s| matches!(s, TraceStep::Branch { .. })).unwrap();
        assert!(matches!(branch, TraceStep::Branch { taken: true, .. }));
        let site = trace.steps.iter().find(|s| matches!(s, TraceStep::SiteEval { .. })).unwrap();
        match site {
            TraceStep::SiteEval { lhs, rhs, result, .. } => {
                assert_eq!(*lhs, Value::Int(5));
                assert_eq!(*rhs, Some(Value::Int(0)));
                assert_eq!(*result, Some(Value::Bool(true)));
            }
            _ => unreachable!(),
        }
        let probes = trace.steps.iter().filter(|s| matches!(s, TraceStep::ProbeResult { .. })).count();
        assert_eq!(probes, 5);
    }

    #[test]
    fn no_probe_steps_without_mutants() {
        let src = "fn f(a: int) -> int { return a + 1; }";
        let p = checked(src);
        let empty = {
            let id = checked("fn id(a: int) -> int { return a; }");
            generate_mutants(&id)
        };
        let (_, trace) = run_traced(&p, "f", &[Value::Int(1)], &empty).unwrap();
        assert!(trace.steps.iter().any(|s| matches!(s, TraceStep::SiteEval { .. })));
        assert!(!trace.steps.iter().any(|s| matches!(s, TraceStep::ProbeResult { .. })));
    }

    #[test]
    fn skipped_operand_sites_are_not_covered() {
        let src = "fn f(a: int, b: int) -> bool { return a > 0 || b + 1 > 2; }";
        let p = checked(src);
        let t = generate_mutants(&p);
        let add_site = t
            .mutants
            .iter()
            .find(|m| m.site.original_op == BinOp::Add)
            .unwrap()
            .site
            .node;
        let (_, trace) = run_traced(&p, "f", &[Value::Int(1), Value::Int(0)], &t).unwrap();
        assert!(!trace.covers(add_site), "short-circuited operand must not count as covered");
        let (_, trace2) = run_traced(&p, "f", &[Value::Int(-1), Value::Int(0)], &t).unwrap();
        assert!(trace2.covers(add_site));
    }

    #[test]
    fn connector_rhs_error_still_captures_site() {
        let src = "fn f(a: int) -> bool { return a > 0 && 1 / (a - a) > 0; }";
        let p = checked(src);
        let t = generate_mutants(&p);
        let and_site = t
            .mutants
            .iter()
            .find(|m| m.site.original_op == BinOp::And)
            .unwrap()
            .site
            .node;
        let (outcome, trace) = run_traced(&p, "f", &[Value::Int(1)], &t).unwrap();
        assert_eq!(outcome, Outcome::Error(RuntimeErrorKind::DivByZero));
        let eval = trace.site_evals(and_site).next().unwrap();
        match eval {
            TraceStep::SiteEval { rhs, result, .. } => {
                assert_eq!(*rhs, None);
                assert_eq!(*result, None);
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn operator_error_still_captures_site() {
        let src = "fn f(a: int) -> int { return a / (a - a); }";
        let p = checked(src);
        let t = generate_mutants(&p);
        let div_site = t.mutants.iter().find(|m| m.site.original_op == BinOp::Div).unwrap().site.node;
        let (outcome, trace) = run_traced(&p, "f", &[Value::Int(3)], &t).unwrap();
        assert_eq!(outcome, Outcome::Error(RuntimeErrorKind::DivByZero));
        let eval = trace.site_evals(div_site).next().unwrap();
        match eval {
            TraceStep::SiteEval { lhs, rhs, result, .. } => {
                assert_eq!(*lhs, Value::Int(3));
                assert_eq!(*rhs, Some(Value::Int(0)));
                assert_eq!(*result, None);
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn outcome_serialization() {
        assert_eq!(
            serde_json::to_string(&Outcome::Value(Value::Int(3))).unwrap(),
            "{\"value\":3}"
        );
        assert_eq!(
            serde_json::to_string(&Outcome::Value(Value::Bool(true))).unwrap(),
            "{\"value\":true}"
        );
        assert_eq!(
            serde_json::to_string(&Outcome::Error(RuntimeErrorKind::DivByZero)).unwrap(),
            "{\"error\":\"div-by-zero\"}"
        );
        let back: Outcome = serde_json::from_str("{\"error\":\"step-budget-exceeded\"}").unwrap();
        assert_eq!(back, Outcome::Error(RuntimeErrorKind::StepBudgetExceeded));
    }
}
