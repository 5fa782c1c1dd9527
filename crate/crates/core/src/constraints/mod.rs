//! Translation from MiniLang expressions to formulas, definedness
//! conditions, and per-mutant infection fragments.
//!
//! The infection fragment for a mutant is a formula over the variables in
//! scope at its site that holds exactly when evaluating the site under the
//! original operator and under the replacement yields observably different
//! results: different values, or one side defined and the other erroring on
//! a zero divisor. Overflow is not modeled; domains are expected to stay
//! well inside `i64`.

pub mod formula;
mod path;

pub use formula::{Binding, Formula, Term};
pub use path::{
    backsubstitute, enumerate_paths, trace_to_path, PathEnumeration, PathScript, PathStep, SiteGuard,
};

use std::collections::BTreeMap;

use crate::lang::ast::{BinOp, Expr, ExprKind, NodeId, Type, UnOp};
use crate::lang::CheckedProgram;
use crate::mutgen::{Mutant, OpClass};

/// Which expression the infection condition is phrased over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Compare the mutated operator application itself.
    Local,
    /// Compare the whole top-level expression of the hosting statement.
    Outermost,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Local => "local",
            Mode::Outermost => "outermost",
        }
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Translation context: variable types of the enclosing function, plus an
/// optional operator replacement applied at one node.
pub(crate) struct Cx<'a> {
    types: &'a BTreeMap<String, Type>,
    swap: Option<(NodeId, BinOp)>,
}

impl<'a> Cx<'a> {
    pub(crate) fn new(types: &'a BTreeMap<String, Type>) -> Cx<'a> {
        Cx { types, swap: None }
    }

    fn with_swap(types: &'a BTreeMap<String, Type>, node: NodeId, op: BinOp) -> Cx<'a> {
        Cx { types, swap: Some((node, op)) }
    }

    fn op_at(&self, e: &Expr, op: BinOp) -> BinOp {
        match self.swap {
            Some((node, repl)) if node == e.id => repl,
            _ => op,
        }
    }

    fn is_bool_var(&self, name: &str) -> bool {
        self.types.get(name) == Some(&Type::Bool)
    }
}

/// Translates an integer-typed expression to a term.
pub(crate) fn term_of(e: &Expr, cx: &Cx) -> Term {
    match &e.kind {
        ExprKind::IntLit(n) => Term::Const(*n),
        ExprKind::Var(name) => {
            debug_assert!(!cx.is_bool_var(name));
            Term::Var(name.clone())
        }
        ExprKind::Unary { op: UnOp::Neg, operand } => Term::Neg(Box::new(term_of(operand, cx))),
        ExprKind::Binary { op, lhs, rhs } if op.is_arithmetic() => {
            Term::bin(cx.op_at(e, *op), term_of(lhs, cx), term_of(rhs, cx))
        }
        _ => unreachable!("expression translated as a term must be integer-typed"),
    }
}

/// Translates a boolean-typed expression to a formula. Short-circuit
/// operators become plain conjunction/disjunction; partiality is tracked
/// separately by [`def_bool`].
pub(crate) fn formula_of(e: &Expr, cx: &Cx) -> Formula {
    match &e.kind {
        ExprKind::BoolLit(b) => Formula::Const(*b),
        ExprKind::Var(name) => {
            debug_assert!(cx.is_bool_var(name));
            Formula::BoolVar(name.clone())
        }
        ExprKind::Unary { op: UnOp::Not, operand } => Formula::not(formula_of(operand, cx)),
        ExprKind::Binary { op, lhs, rhs } if op.is_relational() => {
            Formula::cmp(cx.op_at(e, *op), term_of(lhs, cx), term_of(rhs, cx))
        }
        ExprKind::Binary { op, lhs, rhs } if op.is_logical() => {
            let parts = vec![formula_of(lhs, cx), formula_of(rhs, cx)];
            match cx.op_at(e, *op) {
                BinOp::And => Formula::and(parts),
                BinOp::Or => Formula::or(parts),
                _ => unreachable!("logical operator replaced by a logical operator"),
            }
        }
        _ => unreachable!("expression translated as a formula must be boolean-typed"),
    }
}

/// Condition under which evaluating an integer expression succeeds: every
/// reached divisor is nonzero.
pub(crate) fn def_int(e: &Expr, cx: &Cx) -> Formula {
    match &e.kind {
        ExprKind::IntLit(_) | ExprKind::Var(_) => Formula::TRUE,
        ExprKind::Unary { op: UnOp::Neg, operand } => def_int(operand, cx),
        ExprKind::Binary { op, lhs, rhs } if op.is_arithmetic() => {
            let mut parts = vec![def_int(lhs, cx), def_int(rhs, cx)];
            if matches!(cx.op_at(e, *op), BinOp::Div | BinOp::Mod) {
                parts.push(Formula::cmp(BinOp::Ne, term_of(rhs, cx), Term::Const(0)));
            }
            Formula::and(parts)
        }
        _ => unreachable!("definedness of a term asked for a non-integer expression"),
    }
}

/// Condition under which evaluating a boolean expression succeeds. Short
/// circuiting is respected: the right operand of `&&`/`||` only needs to be
/// defined when it is actually evaluated.
pub(crate) fn def_bool(e: &Expr, cx: &Cx) -> Formula {
    match &e.kind {
        ExprKind::BoolLit(_) | ExprKind::Var(_) => Formula::TRUE,
        ExprKind::Unary { op: UnOp::Not, operand } => def_bool(operand, cx),
        ExprKind::Binary { op, lhs, rhs } if op.is_relational() => {
            Formula::and(vec![def_int(lhs, cx), def_int(rhs, cx)])
        }
        ExprKind::Binary { op, lhs, rhs } if op.is_logical() => {
            let skip = match cx.op_at(e, *op) {
                BinOp::And => Formula::not(formula_of(lhs, cx)),
                BinOp::Or => formula_of(lhs, cx),
                _ => unreachable!("logical operator replaced by a logical operator"),
            };
            Formula::and(vec![
                def_bool(lhs, cx),
                Formula::or(vec![skip, def_bool(rhs, cx)]),
            ])
        }
        _ => unreachable!("definedness of a formula asked for a non-boolean expression"),
    }
}

fn div_like(op: BinOp) -> bool {
    matches!(op, BinOp::Div | BinOp::Mod)
}

/// Builds the infection fragment for `mutant` in the given mode. The result
/// is phrased over the variables live at the site; callers compose it with a
/// path script to obtain a closed formula over the parameters.
pub fn infection_fragment(cp: &CheckedProgram, mutant: &Mutant, mode: Mode) -> Formula {
    let site = mutant.site.node;
    let func = cp
        .program
        .function_of_node(site)
        .expect("mutated site belongs to a function");
    let types = &cp.var_types[&func.name];
    match mode {
        Mode::Local => local_fragment(cp, mutant, types),
        Mode::Outermost => outermost_fragment(cp, mutant, types),
    }
}

fn local_fragment(cp: &CheckedProgram, mutant: &Mutant, types: &BTreeMap<String, Type>) -> Formula {
    let cx = Cx::new(types);
    let e = cp.program.expr(mutant.site.node).expect("mutated site exists");
    let ExprKind::Binary { op, lhs, rhs } = &e.kind else {
        unreachable!("mutation sites are binary expressions");
    };
    let orig = *op;
    let repl = mutant.replacement_op;
    match mutant.site.op_class {
        OpClass::Ror => {
            let tl = term_of(lhs, &cx);
            let tr = term_of(rhs, &cx);
            Formula::and(vec![
                def_int(lhs, &cx),
                def_int(rhs, &cx),
                Formula::xor(
                    Formula::cmp(orig, tl.clone(), tr.clone()),
                    Formula::cmp(repl, tl, tr),
                ),
            ])
        }
        OpClass::Aor => {
            let tl = term_of(lhs, &cx);
            let tr = term_of(rhs, &cx);
            let applied_orig = Term::bin(orig, tl.clone(), tr.clone());
            let applied_repl = Term::bin(repl, tl, tr.clone());
            let values_differ = Formula::cmp(BinOp::Ne, applied_orig, applied_repl);
            let body = if div_like(orig) || div_like(repl) {
                // With a zero divisor exactly one of the two applications
                // errors (or both do, with distinct error kinds), which is
                // observable; otherwise compare values.
                Formula::or(vec![
                    Formula::and(vec![
                        Formula::cmp(BinOp::Ne, tr.clone(), Term::Const(0)),
                        values_differ,
                    ]),
                    Formula::cmp(BinOp::Eq, tr, Term::Const(0)),
                ])
            } else {
                values_differ
            };
            Formula::and(vec![def_int(lhs, &cx), def_int(rhs, &cx), body])
        }
        OpClass::Lcr => {
            // The site's recorded evaluation skips the right operand when
            // the original operator short-circuits, so the right side may be
            // unavailable; an unavailable right side infects whenever the
            // replacement needs it.
            let fl = formula_of(lhs, &cx);
            let fr = formula_of(rhs, &cx);
            Formula::and(vec![
                def_bool(lhs, &cx),
                Formula::or(vec![
                    Formula::not(def_bool(rhs, &cx)),
                    Formula::xor(fl, fr),
                ]),
            ])
        }
    }
}

fn outermost_fragment(
    cp: &CheckedProgram,
    mutant: &Mutant,
    types: &BTreeMap<String, Type>,
) -> Formula {
    let site = mutant.site.node;
    let stmt = cp.program.hosting_stmt(site).expect("mutated site has a hosting statement");
    let top = stmt.top_expr();
    let cx_orig = Cx::new(types);
    let cx_mut = Cx::with_swap(types, site, mutant.replacement_op);
    let (def_orig, def_mut, values_differ) = match cp.expr_type(top.id) {
        Type::Bool => (
            def_bool(top, &cx_orig),
            def_bool(top, &cx_mut),
            Formula::xor(formula_of(top, &cx_orig), formula_of(top, &cx_mut)),
        ),
        Type::Int => (
            def_int(top, &cx_orig),
            def_int(top, &cx_mut),
            Formula::cmp(BinOp::Ne, term_of(top, &cx_orig), term_of(top, &cx_mut)),
        ),
    };
    Formula::or(vec![
        Formula::and(vec![def_orig.clone(), def_mut.clone(), values_differ]),
        Formula::and(vec![def_orig.clone(), Formula::not(def_mut.clone())]),
        Formula::and(vec![Formula::not(def_orig), def_mut]),
    ])
}
