//! Canonical source printer: four-space indentation, one statement per line,
//! minimal parentheses. Printing then reparsing yields the same text again,
//! which the tests lean on.

use std::fmt::Write;

use super::ast::*;

fn prec(op: BinOp) -> u8 {
    match op {
        BinOp::Or => 1,
        BinOp::And => 2,
        BinOp::Eq | BinOp::Ne => 3,
        BinOp::Lt | BinOp::Le | BinOp::Gt | BinOp::Ge => 4,
        BinOp::Add | BinOp::Sub => 5,
        BinOp::Mul | BinOp::Div | BinOp::Mod => 6,
    }
}

const UNARY_PREC: u8 = 7;

pub fn expr_to_string(e: &Expr) -> String {
    let mut s = String::new();
    write_expr(&mut s, e, 0);
    s
}

fn write_expr(out: &mut String, e: &Expr, min_prec: u8) {
    match &e.kind {
        ExprKind::IntLit(n) => {
            let _ = write!(out, "{n}");
        }
        ExprKind::BoolLit(b) => {
            let _ = write!(out, "{b}");
        }
        ExprKind::Var(name) => out.push_str(name),
        ExprKind::Unary { op, operand } => {
            let parens = UNARY_PREC < min_prec;
            if parens {
                out.push('(');
            }
            out.push_str(op.symbol());
            write_expr(out, operand, UNARY_PREC);
            if parens {
                out.push(')');
            }
        }
        ExprKind::Binary { op, lhs, rhs } => {
            let p = prec(*op);
            let parens = p < min_prec;
            if parens {
                out.push('(');
            }
            write_expr(out, lhs, p);
            let _ = write!(out, " {} ", op.symbol());
            write_expr(out, rhs, p + 1);
            if parens {
                out.push(')');
            }
        }
    }
}

pub fn program_to_string(p: &Program) -> String {
    let mut out = String::new();
    for (i, f) in p.functions.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        write_function(&mut out, f);
    }
    out
}

fn write_function(out: &mut String, f: &FunctionDef) {
    let _ = write!(out, "fn {}(", f.name);
    for (i, p) in f.params.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        let _ = write!(out, "{}: {}", p.name, p.ty);
    }
    let _ = writeln!(out, ") -> {} {{", f.ret);
    write_block(out, &f.body, 1);
    out.push_str("}\n");
}

fn write_block(out: &mut String, stmts: &[Stmt], depth: usize) {
    for s in stmts {
        write_stmt(out, s, depth);
    }
}

fn write_stmt(out: &mut String, s: &Stmt, depth: usize) {
    let pad = "    ".repeat(depth);
    match &s.kind {
        StmtKind::Assign { target, value } => {
            let _ = writeln!(out, "{pad}{target} = {};", expr_to_string(value));
        }
        StmtKind::If { cond, then_body, else_body } => {
            let _ = writeln!(out, "{pad}if ({}) {{", expr_to_string(cond));
            write_block(out, then_body, depth + 1);
            if else_body.is_empty() {
                let _ = writeln!(out, "{pad}}}");
            } else {
                let _ = writeln!(out, "{pad}}} else {{");
                write_block(out, else_body, depth + 1);
                let _ = writeln!(out, "{pad}}}");
            }
        }
        StmtKind::While { cond, body } => {
            let _ = writeln!(out, "{pad}while ({}) {{", expr_to_string(cond));
            write_block(out, body, depth + 1);
            let _ = writeln!(out, "{pad}}}");
        }
        StmtKind::Return(e) => {
            let _ = writeln!(out, "{pad}return {};", expr_to_string(e));
        }
    }
}
