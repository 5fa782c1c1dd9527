//! Mutant generation by operator replacement at binary expression sites.
//!
//! Sites are every Binary node, enumerated in pre-order (ascending NodeId).
//! Replacements per class, in fixed order: relational sites take the other
//! five of `< <= > >= == !=`, arithmetic sites the other four of
//! `+ - * / %`, and logical sites the opposite connector. Mutant ids are
//! dense positions in this enumeration, so identical source always yields
//! identical ids.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::UnknownMutant;
use crate::lang::ast::{walk_stmts, BinOp, ExprKind, NodeId, SourceLoc};
use crate::lang::CheckedProgram;

pub type MutantId = u32;

pub const ROR_ORDER: [BinOp; 6] = [BinOp::Lt, BinOp::Le, BinOp::Gt, BinOp::Ge, BinOp::Eq, BinOp::Ne];
pub const AOR_ORDER: [BinOp; 5] = [BinOp::Add, BinOp::Sub, BinOp::Mul, BinOp::Div, BinOp::Mod];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OpClass {
    Ror,
    Aor,
    Lcr,
}

impl OpClass {
    pub fn of(op: BinOp) -> OpClass {
        if op.is_relational() {
            OpClass::Ror
        } else if op.is_arithmetic() {
            OpClass::Aor
        } else {
            OpClass::Lcr
        }
    }

    pub fn replacements(self, original: BinOp) -> Vec<BinOp> {
        let all: &[BinOp] = match self {
            OpClass::Ror => &ROR_ORDER,
            OpClass::Aor => &AOR_ORDER,
            OpClass::Lcr => &[BinOp::And, BinOp::Or],
        };
        all.iter().copied().filter(|op| *op != original).collect()
    }
}

impl fmt::Display for OpClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OpClass::Ror => "ROR",
            OpClass::Aor => "AOR",
            OpClass::Lcr => "LCR",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MutationSite {
    pub node: NodeId,
    pub loc: SourceLoc,
    pub original_op: BinOp,
    pub op_class: OpClass,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Mutant {
    pub id: MutantId,
    pub site: MutationSite,
    pub replacement_op: BinOp,
}

#[derive(Debug, Clone)]
pub struct MutantTable {
    pub source_name: String,
    pub mutants: Vec<Mutant>,
    by_site: BTreeMap<NodeId, Vec<MutantId>>,
}

impl MutantTable {
    pub fn len(&self) -> usize {
        self.mutants.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mutants.is_empty()
    }

    pub fn get(&self, id: MutantId) -> Result<&Mutant, UnknownMutant> {
        self.mutants.get(id as usize).ok_or(UnknownMutant { id })
    }

    /// Mutant ids seeded at the given expression node, in ascending order.
    pub fn at_site(&self, node: NodeId) -> &[MutantId] {
        self.by_site.get(&node).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn all_ids(&self) -> impl Iterator<Item = MutantId> + '_ {
        self.mutants.iter().map(|m| m.id)
    }
}

/// All mutation sites of a program: one per Binary expression node, in
/// pre-order, which by construction is ascending NodeId order.
pub fn expression_sites(p: &CheckedProgram) -> Vec<MutationSite> {
    let mut sites = Vec::new();
    for f in &p.program.functions {
        walk_stmts(&f.body, &mut |s| {
            s.top_expr().walk(&mut |e| {
                if let ExprKind::Binary { op, .. } = &e.kind {
                    sites.push(MutationSite {
                        node: e.id,
                        loc: e.loc,
                        original_op: *op,
                        op_class: OpClass::of(*op),
                    });
                }
            });
        });
    }
    sites
}

pub fn generate_mutants(p: &CheckedProgram) -> MutantTable {
    let mut mutants = Vec::new();
    let mut by_site: BTreeMap<NodeId, Vec<MutantId>> = BTreeMap::new();
    for site in expression_sites(p) {
        for replacement_op in site.op_class.replacements(site.original_op) {
            let id = mutants.len() as MutantId;
            mutants.push(Mutant { id, site, replacement_op });
            by_site.entry(site.node).or_default().push(id);
        }
    }
    MutantTable { source_name: p.program.source_name.clone(), mutants, by_site }
}

/// A copy of the program with the one operator at the mutant's site swapped.
/// NodeIds and all types are preserved (replacements stay within class).
pub fn apply_mutant(p: &CheckedProgram, table: &MutantTable, id: MutantId) -> Result<CheckedProgram, UnknownMutant> {
    let m = table.get(id)?;
    let mut out = p.clone();
    let mut replaced = false;
    for f in &mut out.program.functions {
        replace_in_block(&mut f.body, m.site.node, m.replacement_op, &mut replaced);
    }
    debug_assert!(replaced, "site node missing from program");
    Ok(out)
}

fn replace_in_block(stmts: &mut [crate::lang::ast::Stmt], node: NodeId, op: BinOp, replaced: &mut bool) {
    use crate::lang::ast::StmtKind;
    for s in stmts {
        match &mut s.kind {
            StmtKind::Assign { value, .. } => replace_in_expr(value, node, op, replaced),
            StmtKind::If { cond, then_body, else_body } => {
                replace_in_expr(cond, node, op, replaced);
                replace_in_block(then_body, node, op, replaced);
                replace_in_block(else_body, node, op, replaced);
            }
            StmtKind::While { cond, body } => {
                replace_in_expr(cond, node, op, replaced);
                replace_in_block(body, node, op, replaced);
            }
            StmtKind::Return(e) => replace_in_expr(e, node, op, replaced),
        }
    }
}

fn replace_in_expr(e: &mut crate::lang::ast::Expr, node: NodeId, op: BinOp, replaced: &mut bool) {
    match &mut e.kind {
        ExprKind::Binary { op: slot, lhs, rhs } => {
            if e.id == node {
                *slot = op;
                *replaced = true;
            }
            replace_in_expr(lhs, node, op, replaced);
            replace_in_expr(rhs, node, op, replaced);
        }
        ExprKind::Unary { operand, .. } => replace_in_expr(operand, node, op, replaced),
        _ => {}
    }
}

/// One-line report form: `file:line:col OP -> OP' (CLASS)`.
pub fn mutant_descriptor(table: &MutantTable, id: MutantId) -> Result<String, UnknownMutant> {
    let m = table.get(id)?;
    Ok(format!(
        "{}:{}:{} {} -> {} ({})",
        table.source_name,
        m.site.loc.line,
        m.site.loc.col,
        m.site.original_op.symbol(),
        m.replacement_op.symbol(),
        m.site.op_class
    ))
}

/// The `mutants.json` payload: an array of one object per mutant.
pub fn table_to_json(table: &MutantTable) -> serde_json::Value {
    serde_json::Value::Array(
        table
            .mutants
            .iter()
            .map(|m| {
                serde_json::json!({
                    "id": m.id,
                    "line": m.site.loc.line,
                    "col": m.site.loc.col,
                    "class": m.site.op_class.to_string(),
                    "original": m.site.original_op.symbol(),
                    "replacement": m.replacement_op.symbol(),
                })
            })
            .collect(),
    )
}
