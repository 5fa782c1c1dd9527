//! Recursive-descent parser.
//!
//! Precedence, loosest first: `||`, `&&`, `==`/`!=`, `<`/`<=`/`>`/`>=`,
//! `+`/`-`, `*`/`/`/`%`, unary `-`/`!`. All binary levels associate left.
//! Node ids are handed out from a single counter in parse order, so parsing
//! identical text always produces identical ids.

use super::ast::*;
use super::lexer::{lex, Tok, Token};
use crate::error::ParseError;

pub fn parse_program(src: &str, source_name: &str) -> Result<Program, ParseError> {
    let tokens = lex(src)?;
    let mut p = Parser { tokens, pos: 0, next_id: 0 };
    let mut functions = Vec::new();
    while p.peek() != &Tok::Eof {
        let f = p.function()?;
        if functions.iter().any(|g: &FunctionDef| g.name == f.name) {
            return Err(ParseError::DuplicateFunction {
                name: f.name,
                line: f.loc.line,
                col: f.loc.col,
            });
        }
        functions.push(f);
    }
    let mut program = Program { source_name: source_name.to_string(), functions };
    renumber(&mut program);
    Ok(program)
}

/// Reassigns NodeIds in pre-order (statement before its expression, parents
/// before children, left before right, outer blocks before nested ones), so
/// that ascending NodeId order and pre-order traversal coincide.
fn renumber(p: &mut Program) {
    let mut next: NodeId = 0;
    for f in &mut p.functions {
        renumber_block(&mut f.body, &mut next);
    }
}

fn renumber_block(stmts: &mut [Stmt], next: &mut NodeId) {
    for s in stmts {
        s.id = *next;
        *next += 1;
        match &mut s.kind {
            StmtKind::Assign { value, .. } => renumber_expr(value, next),
            StmtKind::If { cond, then_body, else_body } => {
                renumber_expr(cond, next);
                renumber_block(then_body, next);
                renumber_block(else_body, next);
            }
            StmtKind::While { cond, body } => {
                renumber_expr(cond, next);
                renumber_block(body, next);
            }
            StmtKind::Return(e) => renumber_expr(e, next),
        }
    }
}

fn renumber_expr(e: &mut Expr, next: &mut NodeId) {
    e.id = *next;
    *next += 1;
    match &mut e.kind {
        ExprKind::Unary { operand, .. } => renumber_expr(operand, next),
        ExprKind::Binary { lhs, rhs, .. } => {
            renumber_expr(lhs, next);
            renumber_expr(rhs, next);
        }
        _ => {}
    }
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    next_id: NodeId,
}

impl Parser {
    fn fresh_id(&mut self) -> NodeId {
        let id = self.next_id;
        self.next_id += 1;
        id
    }

    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    fn loc(&self) -> SourceLoc {
        self.tokens[self.pos].loc
    }

    fn advance(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, expected: &str) -> Result<Token, ParseError> {
        if self.peek() == &want {
            Ok(self.advance())
        } else {
            Err(self.unexpected(expected))
        }
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        let t = &self.tokens[self.pos];
        ParseError::UnexpectedToken {
            expected: expected.to_string(),
            found: t.tok.describe(),
            line: t.loc.line,
            col: t.loc.col,
        }
    }

    fn ident(&mut self, expected: &str) -> Result<(String, SourceLoc), ParseError> {
        let loc = self.loc();
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.advance();
                Ok((name, loc))
            }
            _ => Err(self.unexpected(expected)),
        }
    }

    fn ty(&mut self) -> Result<Type, ParseError> {
        match self.peek() {
            Tok::KwInt => {
                self.advance();
                Ok(Type::Int)
            }
            Tok::KwBool => {
                self.advance();
                Ok(Type::Bool)
            }
            _ => Err(self.unexpected("a type (`int` or `bool`)")),
        }
    }

    fn function(&mut self) -> Result<FunctionDef, ParseError> {
        self.expect(Tok::KwFn, "`fn`")?;
        let (name, loc) = self.ident("a function name")?;
        self.expect(Tok::LParen, "`(`")?;
        let mut params: Vec<Param> = Vec::new();
        if self.peek() != &Tok::RParen {
            loop {
                let (pname, ploc) = self.ident("a parameter name")?;
                self.expect(Tok::Colon, "`:`")?;
                let pty = self.ty()?;
                if params.iter().any(|q| q.name == pname) {
                    return Err(ParseError::DuplicateParam {
                        name: pname,
                        line: ploc.line,
                        col: ploc.col,
                    });
                }
                params.push(Param { name: pname, ty: pty, loc: ploc });
                if self.peek() == &Tok::Comma {
                    self.advance();
                } else {
                    break;
                }
            }
        }
        self.expect(Tok::RParen, "`)`")?;
        self.expect(Tok::Arrow, "`->`")?;
        let ret = self.ty()?;
        let body = self.block()?;
        Ok(FunctionDef { name, params, ret, body, loc })
    }

    fn block(&mut self) -> Result<Vec<Stmt>, ParseError> {
        self.expect(Tok::LBrace, "`{`")?;
        let mut stmts = Vec::new();
        while self.peek() != &Tok::RBrace {
            stmts.push(self.stmt()?);
        }
        self.expect(Tok::RBrace, "`}`")?;
        Ok(stmts)
    }

    fn stmt(&mut self) -> Result<Stmt, ParseError> {
        let loc = self.loc();
        match self.peek().clone() {
            Tok::KwIf => {
                self.advance();
                let id = self.fresh_id();
                self.expect(Tok::LParen, "`(`")?;
                let cond = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                let then_body = self.block()?;
                let else_body = if self.peek() == &Tok::KwElse {
                    self.advance();
                    self.block()?
                } else {
                    Vec::new()
                };
                Ok(Stmt { id, loc, kind: StmtKind::If { cond, then_body, else_body } })
            }
            Tok::KwWhile => {
                self.advance();
                let id = self.fresh_id();
                self.expect(Tok::LParen, "`(`")?;
                let cond = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                let body = self.block()?;
                Ok(Stmt { id, loc, kind: StmtKind::While { cond, body } })
            }
            Tok::KwReturn => {
                self.advance();
                let id = self.fresh_id();
                let e = self.expr()?;
                self.expect(Tok::Semi, "`;`")?;
                Ok(Stmt { id, loc, kind: StmtKind::Return(e) })
            }
            Tok::Ident(name) => {
                self.advance();
                let id = self.fresh_id();
                self.expect(Tok::Assign, "`=`")?;
                let value = self.expr()?;
                self.expect(Tok::Semi, "`;`")?;
                Ok(Stmt { id, loc, kind: StmtKind::Assign { target: name, value } })
            }
            _ => Err(self.unexpected("a statement")),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        self.or_expr()
    }

    fn binary_level(
        &mut self,
        ops: &[(Tok, BinOp)],
        next: fn(&mut Self) -> Result<Expr, ParseError>,
    ) -> Result<Expr, ParseError> {
        let mut lhs = next(self)?;
        loop {
            let Some((_, op)) = ops.iter().find(|(t, _)| t == self.peek()) else {
                return Ok(lhs);
            };
            let op = *op;
            let op_loc = self.loc();
            self.advance();
            let id = self.fresh_id();
            let rhs = next(self)?;
            lhs = Expr {
                id,
                loc: op_loc,
                kind: ExprKind::Binary { op, lhs: Box::new(lhs), rhs: Box::new(rhs) },
            };
        }
    }

    fn or_expr(&mut self) -> Result<Expr, ParseError> {
        self.binary_level(&[(Tok::OrOr, BinOp::Or)], Self::and_expr)
    }

    fn and_expr(&mut self) -> Result<Expr, ParseError> {
        self.binary_level(&[(Tok::AndAnd, BinOp::And)], Self::equality_expr)
    }

    fn equality_expr(&mut self) -> Result<Expr, ParseError> {
        self.binary_level(&[(Tok::EqEq, BinOp::Eq), (Tok::NotEq, BinOp::Ne)], Self::rel_expr)
    }

    fn rel_expr(&mut self) -> Result<Expr, ParseError> {
        self.binary_level(
            &[(Tok::Lt, BinOp::Lt), (Tok::Le, BinOp::Le), (Tok::Gt, BinOp::Gt), (Tok::Ge, BinOp::Ge)],
            Self::add_expr,
        )
    }

    fn add_expr(&mut self) -> Result<Expr, ParseError> {
        self.binary_level(&[(Tok::Plus, BinOp::Add), (Tok::Minus, BinOp::Sub)], Self::mul_expr)
    }

    fn mul_expr(&mut self) -> Result<Expr, ParseError> {
        self.binary_level(
            &[(Tok::Star, BinOp::Mul), (Tok::Slash, BinOp::Div), (Tok::Percent, BinOp::Mod)],
            Self::unary_expr,
        )
    }

    fn unary_expr(&mut self) -> Result<Expr, ParseError> {
        let loc = self.loc();
        let op = match self.peek() {
            Tok::Minus => Some(UnOp::Neg),
            Tok::Bang => Some(UnOp::Not),
            _ => None,
        };
        if let Some(op) = op {
            self.advance();
            let id = self.fresh_id();
            let operand = self.unary_expr()?;
            return Ok(Expr { id, loc, kind: ExprKind::Unary { op, operand: Box::new(operand) } });
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        let loc = self.loc();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.advance();
                let id = self.fresh_id();
                Ok(Expr { id, loc, kind: ExprKind::IntLit(n) })
            }
            Tok::KwTrue => {
                self.advance();
                let id = self.fresh_id();
                Ok(Expr { id, loc, kind: ExprKind::BoolLit(true) })
            }
            Tok::KwFalse => {
                self.advance();
                let id = self.fresh_id();
                Ok(Expr { id, loc, kind: ExprKind::BoolLit(false) })
            }
            Tok::Ident(name) => {
                self.advance();
                let id = self.fresh_id();
                Ok(Expr { id, loc, kind: ExprKind::Var(name) })
            }
            Tok::LParen => {
                self.advance();
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            _ => Err(self.unexpected("an expression")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(src: &str) -> Program {
        parse_program(src, "test.ml0").unwrap()
    }

    fn body_expr(p: &Program) -> &Expr {
        match &p.functions[0].body[0].kind {
            StmtKind::Return(e) => e,
            _ => panic!("expected return"),
        }
    }

    #[test]
    fn precedence_mul_over_add() {
        let p = parse("fn f(a: int, b: int, c: int) -> int { return a + b * c; }");
        let e = body_expr(&p);
        match &e.kind {
            ExprKind::Binary { op: BinOp::Add, rhs, .. } => {
                assert!(matches!(rhs.kind, ExprKind::Binary { op: BinOp::Mul, .. }));
            }
            other => panic!("got {other:?}"),
        }
    }

    #[test]
    fn precedence_and_over_or_and_eq_over_and() {
        let p = parse("fn f(a: int, b: int) -> bool { return a == 1 || a == 2 && b == 3; }");
        let e = body_expr(&p);
        match &e.kind {
            ExprKind::Binary { op: BinOp::Or, rhs, .. } => {
                assert!(matches!(rhs.kind, ExprKind::Binary { op: BinOp::And, .. }));
            }
            other => panic!("got {other:?}"),
        }
    }

    #[test]
    fn left_associative_subtraction() {
        let p = parse("fn f(a: int, b: int, c: int) -> int { return a - b - c; }");
        let e = body_expr(&p);
        match &e.kind {
            ExprKind::Binary { op: BinOp::Sub, lhs, rhs } => {
                assert!(matches!(lhs.kind, ExprKind::Binary { op: BinOp::Sub, .. }));
                assert!(matches!(rhs.kind, ExprKind::Var(ref v) if v == "c"));
            }
            other => panic!("got {other:?}"),
        }
    }

    #[test]
    fn binary_loc_is_operator_token() {
        let p = parse("fn f(a: int, b: int) -> bool { return a <= b; }");
        let e = body_expr(&p);
        assert_eq!(e.loc, SourceLoc { line: 1, col: 41 });
    }

    #[test]
    fn parens_group_without_extra_nodes() {
        let a = parse("fn f(a: int, b: int, c: int) -> int { return (a + b) * c; }");
        match &body_expr(&a).kind {
            ExprKind::Binary { op: BinOp::Mul, lhs, .. } => {
                assert!(matches!(lhs.kind, ExprKind::Binary { op: BinOp::Add, .. }));
            }
            other => panic!("got {other:?}"),
        }
    }

    #[test]
    fn node_ids_are_stable_across_parses() {
        let src = "fn f(a: int) -> int { if (a < 0) { return -a; } return a; }";
        let p1 = parse(src);
        let p2 = parse(src);
        assert_eq!(p1, p2);
    }

    #[test]
    fn node_ids_are_unique() {
        let src = "fn f(a: int, b: int) -> int { x = a + b; while (x > 0) { x = x - 1; } return x; }";
        let p = parse(src);
        let mut ids = Vec::new();
        crate::lang::ast::walk_stmts(&p.functions[0].body, &mut |s| {
            ids.push(s.id);
            s.top_expr().walk(&mut |e| ids.push(e.id));
        });
        let mut sorted = ids.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), ids.len());
    }

    #[test]
    fn node_ids_follow_preorder() {
        let src = "fn f(a: int) -> int { if (a < 1 + 2) { return a * 3; } return 0; }";
        let p = parse(src);
        let mut ids = Vec::new();
        crate::lang::ast::walk_stmts(&p.functions[0].body, &mut |s| {
            ids.push(s.id);
            s.top_expr().walk(&mut |e| ids.push(e.id));
        });
        let expected: Vec<u32> = (0..ids.len() as u32).collect();
        assert_eq!(ids, expected);
    }

    #[test]
    fn else_is_optional() {
        let p = parse("fn f(a: int) -> int { if (a > 0) { return 1; } return 0; }");
        match &p.functions[0].body[0].kind {
            StmtKind::If { else_body, .. } => assert!(else_body.is_empty()),
            other => panic!("got {other:?}"),
        }
    }

    #[test]
    fn rejects_duplicates_and_garbage() {
        assert!(parse_program("fn f() -> int { return 1; } fn f() -> int { return 2; }", "t").is_err());
        assert!(parse_program("fn f(a: int, a: int) -> int { return a; }", "t").is_err());
        assert!(parse_program("fn f() -> int { return 1 }", "t").is_err());
        assert!(parse_program("fn f() -> int { return; }", "t").is_err());
    }
}
