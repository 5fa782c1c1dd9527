//! Entry-to-site path scripts and backward substitution.
//!
//! A path script records everything executed before first reaching a site:
//! branch conditions with their observed polarity, assignments, and finally
//! the short-circuit guards inside the hosting statement. Substituting the
//! script backwards through a site-local condition yields a closed formula
//! over the function parameters that holds exactly for inputs driving
//! execution along that path into the condition.

use crate::error::TraceError;
use crate::interp::{ExecutionTrace, TraceStep};
use crate::lang::ast::{BinOp, Expr, ExprKind, NodeId, Stmt, StmtKind, Type};
use crate::lang::CheckedProgram;

use super::formula::{Binding, Formula};
use super::{def_bool, def_int, formula_of, term_of, Cx};

/// A short-circuit guard inside the hosting statement: the left operand of
/// an enclosing `&&` (`||`) must be true (false) for evaluation to reach
/// the site.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SiteGuard {
    pub cond: Formula,
    pub polarity: bool,
    pub def: Formula,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PathStep {
    /// A branch or loop condition observed with the given polarity.
    Assume { cond: Formula, polarity: bool, def: Formula },
    /// An assignment of a term or formula to a variable.
    Assign { var: String, value: Binding, def: Formula },
}

/// One way execution can first reach a site: the steps executed before the
/// hosting statement, in program order, then the guards within it, outermost
/// first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathScript {
    pub site: NodeId,
    pub steps: Vec<PathStep>,
    pub site_guards: Vec<SiteGuard>,
}

impl PathScript {
    /// The same path without the in-statement short-circuit guards. Used for
    /// conditions that already range over the whole statement expression,
    /// where reaching the statement is all that matters.
    pub fn without_site_guards(&self) -> PathScript {
        PathScript { site: self.site, steps: self.steps.clone(), site_guards: Vec::new() }
    }
}

/// Result of [`enumerate_paths`].
#[derive(Debug, Clone)]
pub struct PathEnumeration {
    pub paths: Vec<PathScript>,
    /// True when `paths` covers every way execution can reach the site.
    pub complete: bool,
    /// True when a loop precedes the site or can re-enter it, in which case
    /// only trace-derived paths are reported and `complete` is false.
    pub loopy: bool,
}

/// Conjoins a path script backwards through `fragment`: site guards nearest
/// the site first, then the recorded steps in reverse. Assumptions conjoin
/// their definedness and the signed condition; assignments substitute into
/// everything derived so far.
pub fn backsubstitute(script: &PathScript, fragment: &Formula) -> Formula {
    let mut f = fragment.clone();
    for g in script.site_guards.iter().rev() {
        let signed = if g.polarity { g.cond.clone() } else { Formula::not(g.cond.clone()) };
        f = Formula::and(vec![f, g.def.clone(), signed]);
    }
    for step in script.steps.iter().rev() {
        match step {
            PathStep::Assume { cond, polarity, def } => {
                let signed = if *polarity { cond.clone() } else { Formula::not(cond.clone()) };
                f = Formula::and(vec![f, def.clone(), signed]);
            }
            PathStep::Assign { var, value, def } => {
                f = Formula::and(vec![f.subst(var, value), def.clone()]);
            }
        }
    }
    f
}

fn assume_step(cond: &Expr, polarity: bool, cx: &Cx) -> PathStep {
    PathStep::Assume { cond: formula_of(cond, cx), polarity, def: def_bool(cond, cx) }
}

fn assign_step(cp: &CheckedProgram, target: &str, value: &Expr, cx: &Cx) -> PathStep {
    let (binding, def) = match cp.expr_type(value.id) {
        Type::Int => (Binding::Int(term_of(value, cx)), def_int(value, cx)),
        Type::Bool => (Binding::Bool(formula_of(value, cx)), def_bool(value, cx)),
    };
    PathStep::Assign { var: target.to_string(), value: binding, def }
}

fn site_guards(top: &Expr, site: NodeId, cx: &Cx) -> Vec<SiteGuard> {
    let mut out = Vec::new();
    let found = collect_guards(top, site, cx, &mut out);
    debug_assert!(found, "site must be inside the statement expression");
    out
}

fn collect_guards(e: &Expr, site: NodeId, cx: &Cx, out: &mut Vec<SiteGuard>) -> bool {
    if e.id == site {
        return true;
    }
    match &e.kind {
        ExprKind::Unary { operand, .. } => collect_guards(operand, site, cx, out),
        ExprKind::Binary { op, lhs, rhs } => {
            if collect_guards(lhs, site, cx, out) {
                return true;
            }
            if op.is_logical() {
                out.push(SiteGuard {
                    cond: formula_of(lhs, cx),
                    polarity: *op == BinOp::And,
                    def: def_bool(lhs, cx),
                });
                if collect_guards(rhs, site, cx, out) {
                    true
                } else {
                    out.pop();
                    false
                }
            } else {
                collect_guards(rhs, site, cx, out)
            }
        }
        _ => false,
    }
}

/// Replays a recorded execution up to the first evaluation of `site` and
/// renders it as a path script. Fails if the trace never evaluates the site.
pub fn trace_to_path(
    cp: &CheckedProgram,
    trace: &ExecutionTrace,
    site: NodeId,
) -> Result<PathScript, TraceError> {
    let func = cp.program.function_of_node(site).expect("site belongs to a function");
    let cx = Cx::new(&cp.var_types[&func.name]);
    let mut steps = Vec::new();
    let mut current: Option<&Stmt> = None;
    for step in &trace.steps {
        match step {
            TraceStep::StmtEnter { stmt, .. } => current = cp.program.stmt(*stmt),
            TraceStep::SiteEval { site: s, .. } if *s == site => {
                let stmt = current.expect("site evaluations happen inside a statement");
                return Ok(PathScript {
                    site,
                    steps,
                    site_guards: site_guards(stmt.top_expr(), site, &cx),
                });
            }
            TraceStep::Branch { cond, taken } => {
                let e = cp.program.expr(*cond).expect("branch condition exists");
                steps.push(assume_step(e, *taken, &cx));
            }
            TraceStep::Assign { .. } => {
                let stmt = current.expect("assignments happen inside a statement");
                let StmtKind::Assign { target, value } = &stmt.kind else {
                    unreachable!("assign trace steps come from assignment statements");
                };
                steps.push(assign_step(cp, target, value, &cx));
            }
            _ => {}
        }
    }
    Err(TraceError::SiteNotExecuted { site })
}

struct StaticAcc {
    paths: Vec<PathScript>,
    truncated: bool,
    loopy: bool,
    bound: usize,
}

fn explore<'a>(
    cp: &'a CheckedProgram,
    cx: &Cx,
    site: NodeId,
    mut cont: Vec<&'a [Stmt]>,
    mut steps: Vec<PathStep>,
    acc: &mut StaticAcc,
) {
    if acc.truncated || acc.loopy {
        return;
    }
    loop {
        let Some(&block) = cont.last() else { return };
        let Some(stmt) = block.first() else {
            cont.pop();
            continue;
        };
        *cont.last_mut().unwrap() = &block[1..];
        if matches!(stmt.kind, StmtKind::While { .. }) {
            // Whether the site sits beyond the loop, in its body, or in its
            // condition (re-entrant), static enumeration cannot bound the
            // ways of reaching it.
            acc.loopy = true;
            return;
        }
        if stmt.top_expr().contains(site) {
            if acc.paths.len() >= acc.bound {
                acc.truncated = true;
            } else {
                acc.paths.push(PathScript {
                    site,
                    steps,
                    site_guards: site_guards(stmt.top_expr(), site, cx),
                });
            }
            return;
        }
        match &stmt.kind {
            StmtKind::Assign { target, value } => {
                steps.push(assign_step(cp, target, value, cx));
            }
            StmtKind::Return(_) => return,
            StmtKind::If { cond, then_body, else_body } => {
                let mut then_cont = cont.clone();
                then_cont.push(then_body);
                let mut then_steps = steps.clone();
                then_steps.push(assume_step(cond, true, cx));
                explore(cp, cx, site, then_cont, then_steps, acc);
                cont.push(else_body);
                steps.push(assume_step(cond, false, cx));
                explore(cp, cx, site, cont, steps, acc);
                return;
            }
            StmtKind::While { .. } => unreachable!("handled above"),
        }
    }
}

/// Enumerates entry-to-site paths for the function hosting `site`.
///
/// For loop-free reachability the enumeration is static and exhaustive up to
/// `path_bound` paths; `complete` reports whether the bound was hit. When a
/// loop stands between function entry and the site (or the site is a loop
/// condition, which later iterations revisit), the set of paths is unbounded:
/// the result is then the deduplicated paths actually observed in `traces`,
/// with `complete` false and `loopy` true.
pub fn enumerate_paths(
    cp: &CheckedProgram,
    site: NodeId,
    path_bound: usize,
    traces: &[ExecutionTrace],
) -> PathEnumeration {
    let func = cp.program.function_of_node(site).expect("site belongs to a function");
    let cx = Cx::new(&cp.var_types[&func.name]);
    let mut acc = StaticAcc {
        paths: Vec::new(),
        truncated: false,
        loopy: false,
        bound: path_bound.max(1),
    };
    explore(cp, &cx, site, vec![&func.body[..]], Vec::new(), &mut acc);
    if acc.loopy {
        let mut paths: Vec<PathScript> = Vec::new();
        for trace in traces {
            if let Ok(script) = trace_to_path(cp, trace, site) {
                if !paths.contains(&script) {
                    paths.push(script);
                }
            }
        }
        paths.truncate(path_bound.max(1));
        return PathEnumeration { paths, complete: false, loopy: true };
    }
    PathEnumeration { paths: acc.paths, complete: !acc.truncated, loopy: false }
}
