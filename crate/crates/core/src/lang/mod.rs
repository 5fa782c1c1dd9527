//! MiniLang front end: lexer, parser, static checks, and printer.

pub mod ast;
pub mod check;
pub mod lexer;
pub mod parser;
pub mod pretty;

pub use ast::{BinOp, Expr, ExprKind, FunctionDef, NodeId, Param, Program, SourceLoc, Stmt, StmtKind, Type, UnOp};
pub use check::{check, CheckedProgram};
pub use parser::parse_program;
pub use pretty::{expr_to_string, program_to_string};
