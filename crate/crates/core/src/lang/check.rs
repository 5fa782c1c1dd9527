//! Static checks: typing, definite assignment, and all-paths-return.
//!
//! Locals take the type of their first assignment and keep it for the whole
//! function. Relational operators, including `==` and `!=`, compare integers
//! only. A variable read is legal only when every path reaching it performs
//! an assignment first; paths that already returned do not constrain this.

use std::collections::{BTreeMap, BTreeSet};

use super::ast::*;
use crate::error::CheckError;

/// A program that passed all static checks, along with inferred types.
#[derive(Debug, Clone)]
pub struct CheckedProgram {
    pub program: Program,
    /// Type of every expression node.
    pub expr_types: BTreeMap<NodeId, Type>,
    /// Per function: type of every parameter and local.
    pub var_types: BTreeMap<String, BTreeMap<String, Type>>,
}

impl CheckedProgram {
    pub fn expr_type(&self, id: NodeId) -> Type {
        self.expr_types[&id]
    }
}

pub fn check(program: Program) -> Result<CheckedProgram, CheckError> {
    if program.functions.is_empty() {
        return Err(CheckError::EmptyProgram);
    }
    let mut expr_types = BTreeMap::new();
    let mut var_types = BTreeMap::new();
    for f in &program.functions {
        let mut cx = FnCx {
            ret: f.ret,
            env: f.params.iter().map(|p| (p.name.clone(), p.ty)).collect(),
            expr_types: &mut expr_types,
        };
        let mut assigned: BTreeSet<String> = f.params.iter().map(|p| p.name.clone()).collect();
        let returns = cx.block(&f.body, &mut assigned)?;
        if !returns {
            return Err(CheckError::MissingReturn { name: f.name.clone() });
        }
        var_types.insert(f.name.clone(), cx.env);
    }
    Ok(CheckedProgram { program, expr_types, var_types })
}

struct FnCx<'a> {
    ret: Type,
    env: BTreeMap<String, Type>,
    expr_types: &'a mut BTreeMap<NodeId, Type>,
}

impl FnCx<'_> {
    fn block(&mut self, stmts: &[Stmt], assigned: &mut BTreeSet<String>) -> Result<bool, CheckError> {
        let mut returned = false;
        for s in stmts {
            returned |= self.stmt(s, assigned)?;
        }
        Ok(returned)
    }

    fn stmt(&mut self, s: &Stmt, assigned: &mut BTreeSet<String>) -> Result<bool, CheckError> {
        match &s.kind {
            StmtKind::Assign { target, value } => {
                let vt = self.expr(value, assigned)?;
                match self.env.get(target) {
                    Some(&t) if t != vt => {
                        return Err(CheckError::AssignTypeConflict {
                            name: target.clone(),
                            first: t.to_string(),
                            second: vt.to_string(),
                            line: s.loc.line,
                            col: s.loc.col,
                        });
                    }
                    Some(_) => {}
                    None => {
                        self.env.insert(target.clone(), vt);
                    }
                }
                assigned.insert(target.clone());
                Ok(false)
            }
            StmtKind::If { cond, then_body, else_body } => {
                self.expect_bool(cond, assigned)?;
                let mut then_assigned = assigned.clone();
                let mut else_assigned = assigned.clone();
                let then_ret = self.block(then_body, &mut then_assigned)?;
                let else_ret = self.block(else_body, &mut else_assigned)?;
                *assigned = match (then_ret, else_ret) {
                    (true, true) => then_assigned.union(&else_assigned).cloned().collect(),
                    (true, false) => else_assigned,
                    (false, true) => then_assigned,
                    (false, false) => then_assigned.intersection(&else_assigned).cloned().collect(),
                };
                Ok(then_ret && else_ret)
            }
            StmtKind::While { cond, body } => {
                self.expect_bool(cond, assigned)?;
                let mut body_assigned = assigned.clone();
                self.block(body, &mut body_assigned)?;
                Ok(false)
            }
            StmtKind::Return(e) => {
                let t = self.expr(e, assigned)?;
                if t != self.ret {
                    return Err(CheckError::TypeMismatch {
                        expected: self.ret.to_string(),
                        found: t.to_string(),
                        line: e.loc.line,
                        col: e.loc.col,
                    });
                }
                Ok(true)
            }
        }
    }

    fn expect_bool(&mut self, e: &Expr, assigned: &BTreeSet<String>) -> Result<(), CheckError> {
        let t = self.expr(e, assigned)?;
        if t != Type::Bool {
            return Err(CheckError::TypeMismatch {
                expected: Type::Bool.to_string(),
                found: t.to_string(),
                line: e.loc.line,
                col: e.loc.col,
            });
        }
        Ok(())
    }

    fn expr(&mut self, e: &Expr, assigned: &BTreeSet<String>) -> Result<Type, CheckError> {
        let t = match &e.kind {
            ExprKind::IntLit(_) => Type::Int,
            ExprKind::BoolLit(_) => Type::Bool,
            ExprKind::Var(name) => match self.env.get(name) {
                Some(&t) => {
                    if !assigned.contains(name) {
                        return Err(CheckError::MaybeUnassigned {
                            name: name.clone(),
                            line: e.loc.line,
                            col: e.loc.col,
                        });
                    }
                    t
                }
                None => {
                    return Err(CheckError::UnknownVariable {
                        name: name.clone(),
                        line: e.loc.line,
                        col: e.loc.col,
                    });
                }
            },
            ExprKind::Unary { op, operand } => {
                let ot = self.expr(operand, assigned)?;
                let want = match op {
                    UnOp::Neg => Type::Int,
                    UnOp::Not => Type::Bool,
                };
                if ot != want {
                    return Err(CheckError::TypeMismatch {
                        expected: want.to_string(),
                        found: ot.to_string(),
                        line: operand.loc.line,
                        col: operand.loc.col,
                    });
                }
                want
            }
            ExprKind::Binary { op, lhs, rhs } => {
                let want = if op.is_logical() { Type::Bool } else { Type::Int };
                for side in [lhs, rhs] {
                    let st = self.expr(side, assigned)?;
                    if st != want {
                        return Err(CheckError::TypeMismatch {
                            expected: want.to_string(),
                            found: st.to_string(),
                            line: side.loc.line,
                            col: side.loc.col,
                        });
                    }
                }
                if op.is_arithmetic() {
                    Type::Int
                } else {
                    Type::Bool
                }
            }
        };
        self.expr_types.insert(e.id, t);
        Ok(t)
    }
}
