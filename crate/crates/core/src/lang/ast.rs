//! Abstract syntax for MiniLang.
//!
//! Every expression and statement node carries a [`NodeId`] that is unique
//! within its program and a [`SourceLoc`] pointing at the token that
//! introduced it (for binary expressions, the operator token). Node ids are
//! assigned by the parser in a deterministic order, so parsing the same text
//! twice yields identical ids.

use std::fmt;

/// Identifier of an AST node, unique within one [`Program`].
pub type NodeId = u32;

/// 1-based line/column position in the source text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct SourceLoc {
    pub line: u32,
    pub col: u32,
}

impl fmt::Display for SourceLoc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

/// The two value types of the language.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Type {
    Int,
    Bool,
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Type::Int => "int",
            Type::Bool => "bool",
        })
    }
}

/// Unary operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnOp {
    /// Integer negation, `-x`.
    Neg,
    /// Boolean negation, `!x`.
    Not,
}

impl UnOp {
    pub fn symbol(self) -> &'static str {
        match self {
            UnOp::Neg => "-",
            UnOp::Not => "!",
        }
    }
}

/// Binary operators. Relational operators (including `==`/`!=`) compare
/// integers only; `&&` and `||` short-circuit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Mod,
    Lt,
    Le,
    Gt,
    Ge,
    Eq,
    Ne,
    And,
    Or,
}

impl BinOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::Mod => "%",
            BinOp::Lt => "<",
            BinOp::Le => "<=",
            BinOp::Gt => ">",
            BinOp::Ge => ">=",
            BinOp::Eq => "==",
            BinOp::Ne => "!=",
            BinOp::And => "&&",
            BinOp::Or => "||",
        }
    }

    pub fn is_arithmetic(self) -> bool {
        matches!(self, BinOp::Add | BinOp::Sub | BinOp::Mul | BinOp::Div | BinOp::Mod)
    }

    pub fn is_relational(self) -> bool {
        matches!(self, BinOp::Lt | BinOp::Le | BinOp::Gt | BinOp::Ge | BinOp::Eq | BinOp::Ne)
    }

    pub fn is_logical(self) -> bool {
        matches!(self, BinOp::And | BinOp::Or)
    }
}

impl fmt::Display for BinOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExprKind {
    IntLit(i64),
    BoolLit(bool),
    Var(String),
    Unary { op: UnOp, operand: Box<Expr> },
    Binary { op: BinOp, lhs: Box<Expr>, rhs: Box<Expr> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Expr {
    pub id: NodeId,
    pub loc: SourceLoc,
    pub kind: ExprKind,
}

impl Expr {
    /// Pre-order walk: this node first, then children left to right.
    pub fn walk<'a>(&'a self, f: &mut impl FnMut(&'a Expr)) {
        f(self);
        match &self.kind {
            ExprKind::Unary { operand, .. } => operand.walk(f),
            ExprKind::Binary { lhs, rhs, .. } => {
                lhs.walk(f);
                rhs.walk(f);
            }
            _ => {}
        }
    }

    /// True if this subtree contains the node with the given id.
    pub fn contains(&self, id: NodeId) -> bool {
        let mut found = false;
        self.walk(&mut |e| found |= e.id == id);
        found
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum StmtKind {
    Assign { target: String, value: Expr },
    If { cond: Expr, then_body: Vec<Stmt>, else_body: Vec<Stmt> },
    While { cond: Expr, body: Vec<Stmt> },
    Return(Expr),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Stmt {
    pub id: NodeId,
    pub loc: SourceLoc,
    pub kind: StmtKind,
}

impl Stmt {
    /// The statement's top-level expression: assignment right-hand side,
    /// branch/loop condition, or return operand.
    pub fn top_expr(&self) -> &Expr {
        match &self.kind {
            StmtKind::Assign { value, .. } => value,
            StmtKind::If { cond, .. } => cond,
            StmtKind::While { cond, .. } => cond,
            StmtKind::Return(e) => e,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Param {
    pub name: String,
    pub ty: Type,
    pub loc: SourceLoc,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FunctionDef {
    pub name: String,
    pub params: Vec<Param>,
    pub ret: Type,
    pub body: Vec<Stmt>,
    pub loc: SourceLoc,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Program {
    /// File name the program was parsed from; used in mutant descriptors.
    pub source_name: String,
    pub functions: Vec<FunctionDef>,
}

/// Pre-order walk over statements of a block: each statement, then the
/// statements of its nested blocks.
pub fn walk_stmts<'a>(stmts: &'a [Stmt], f: &mut impl FnMut(&'a Stmt)) {
    for s in stmts {
        f(s);
        match &s.kind {
            StmtKind::If { then_body, else_body, .. } => {
                walk_stmts(then_body, f);
                walk_stmts(else_body, f);
            }
            StmtKind::While { body, .. } => walk_stmts(body, f),
            _ => {}
        }
    }
}

impl Program {
    pub fn function(&self, name: &str) -> Option<&FunctionDef> {
        self.functions.iter().find(|f| f.name == name)
    }

    /// The function whose body contains the expression node `id`, if any.
    pub fn function_of_node(&self, id: NodeId) -> Option<&FunctionDef> {
        self.functions.iter().find(|f| {
            let mut found = false;
            walk_stmts(&f.body, &mut |s| {
                found |= s.id == id || s.top_expr().contains(id);
            });
            found
        })
    }

    /// The expression node with the given id, if any.
    pub fn expr(&self, id: NodeId) -> Option<&Expr> {
        let mut found = None;
        for f in &self.functions {
            walk_stmts(&f.body, &mut |s| {
                s.top_expr().walk(&mut |e| {
                    if e.id == id {
                        found = Some(e);
                    }
                });
            });
        }
        found
    }

    /// The statement node with the given id, if any.
    pub fn stmt(&self, id: NodeId) -> Option<&Stmt> {
        let mut found = None;
        for f in &self.functions {
            walk_stmts(&f.body, &mut |s| {
                if s.id == id {
                    found = found.or(Some(s));
                }
            });
        }
        found
    }

    /// The statement hosting the expression node `id` (the statement whose
    /// top-level expression contains it), if any.
    pub fn hosting_stmt(&self, id: NodeId) -> Option<&Stmt> {
        let mut found = None;
        for f in &self.functions {
            walk_stmts(&f.body, &mut |s| {
                if s.top_expr().contains(id) {
                    found = found.or(Some(s));
                }
            });
        }
        found
    }
}
