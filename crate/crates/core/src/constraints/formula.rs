//! Quantifier-free formulas over integer terms and boolean atoms.
//!
//! Formulas serialize to a parenthesized prefix form, for example
//! `(and (!= (== a c) (<= a c)) (== a b) (not (or (<= a 0) (<= b 0) (<= c 0))))`.
//! Boolean inequality (exclusive or) prints as `!=` just like the integer
//! comparison; the operand kind disambiguates. The `and`/`or` constructors
//! flatten nested connectives and drop constant units, so built formulas
//! print without redundant nesting.

use std::collections::BTreeSet;
use std::fmt;

use crate::lang::ast::BinOp;

/// Integer-valued expression over parameters and constants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Term {
    Const(i64),
    Var(String),
    Neg(Box<Term>),
    /// Arithmetic only: `+ - * / %`.
    Bin(BinOp, Box<Term>, Box<Term>),
}

impl Term {
    pub fn bin(op: BinOp, lhs: Term, rhs: Term) -> Term {
        debug_assert!(op.is_arithmetic());
        Term::Bin(op, Box::new(lhs), Box::new(rhs))
    }

    pub fn subst(&self, var: &str, replacement: &Term) -> Term {
        match self {
            Term::Const(_) => self.clone(),
            Term::Var(v) => {
                if v == var {
                    replacement.clone()
                } else {
                    self.clone()
                }
            }
            Term::Neg(t) => Term::Neg(Box::new(t.subst(var, replacement))),
            Term::Bin(op, l, r) => Term::bin(*op, l.subst(var, replacement), r.subst(var, replacement)),
        }
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Const(_) => {}
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Neg(t) => t.collect_vars(out),
            Term::Bin(_, l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Const(n) => write!(f, "{n}"),
            Term::Var(v) => f.write_str(v),
            Term::Neg(t) => write!(f, "(neg {t})"),
            Term::Bin(op, l, r) => write!(f, "({} {l} {r})", op.symbol()),
        }
    }
}

/// What a substituted variable stands for: a term if the variable is an
/// integer, a formula if it is a boolean.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Binding {
    Int(Term),
    Bool(Formula),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Formula {
    Const(bool),
    BoolVar(String),
    /// Relational comparison of two terms: `< <= > >= == !=`.
    Cmp(BinOp, Term, Term),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    /// Boolean inequality.
    Xor(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub const TRUE: Formula = Formula::Const(true);
    pub const FALSE: Formula = Formula::Const(false);

    pub fn cmp(op: BinOp, lhs: Term, rhs: Term) -> Formula {
        debug_assert!(op.is_relational());
        Formula::Cmp(op, lhs, rhs)
    }

    /// Conjunction; flattens nested `and`s, drops `true`, collapses on
    /// `false`. Order of the surviving conjuncts is preserved, which
    /// matters: definedness guards are placed before the atoms they guard
    /// and evaluation is left to right.
    pub fn and(parts: Vec<Formula>) -> Formula {
        let mut out = Vec::new();
        for part in parts {
            match part {
                Formula::Const(true) => {}
                Formula::Const(false) => return Formula::FALSE,
                Formula::And(inner) => out.extend(inner),
                other => out.push(other),
            }
        }
        match out.len() {
            0 => Formula::TRUE,
            1 => out.pop().unwrap(),
            _ => Formula::And(out),
        }
    }

    /// Disjunction, dual to [`Formula::and`].
    pub fn or(parts: Vec<Formula>) -> Formula {
        let mut out = Vec::new();
        for part in parts {
            match part {
                Formula::Const(false) => {}
                Formula::Const(true) => return Formula::TRUE,
                Formula::Or(inner) => out.extend(inner),
                other => out.push(other),
            }
        }
        match out.len() {
            0 => Formula::FALSE,
            1 => out.pop().unwrap(),
            _ => Formula::Or(out),
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        match f {
            Formula::Const(b) => Formula::Const(!b),
            other => Formula::Not(Box::new(other)),
        }
    }

    pub fn xor(a: Formula, b: Formula) -> Formula {
        match (a, b) {
            (Formula::Const(x), Formula::Const(y)) => Formula::Const(x != y),
            (a, b) => Formula::Xor(Box::new(a), Box::new(b)),
        }
    }

    /// Replaces every occurrence of `var` and rebuilds through the smart
    /// constructors, so the result stays flat.
    pub fn subst(&self, var: &str, binding: &Binding) -> Formula {
        match self {
            Formula::Const(_) => self.clone(),
            Formula::BoolVar(v) => match binding {
                Binding::Bool(f) if v == var => f.clone(),
                _ => self.clone(),
            },
            Formula::Cmp(op, l, r) => match binding {
                Binding::Int(t) => Formula::Cmp(*op, l.subst(var, t), r.subst(var, t)),
                Binding::Bool(_) => self.clone(),
            },
            Formula::Not(f) => Formula::not(f.subst(var, binding)),
            Formula::And(fs) => Formula::and(fs.iter().map(|f| f.subst(var, binding)).collect()),
            Formula::Or(fs) => Formula::or(fs.iter().map(|f| f.subst(var, binding)).collect()),
            Formula::Xor(a, b) => Formula::xor(a.subst(var, binding), b.subst(var, binding)),
        }
    }

    /// Free variables, integer and boolean alike.
    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Const(_) => {}
            Formula::BoolVar(v) => {
                out.insert(v.clone());
            }
            Formula::Cmp(_, l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
            Formula::Not(f) => f.collect_vars(out),
            Formula::And(fs) | Formula::Or(fs) => {
                for f in fs {
                    f.collect_vars(out);
                }
            }
            Formula::Xor(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Const(b) => write!(f, "{b}"),
            Formula::BoolVar(v) => f.write_str(v),
            Formula::Cmp(op, l, r) => write!(f, "({} {l} {r})", op.symbol()),
            Formula::Not(inner) => write!(f, "(not {inner})"),
            Formula::And(fs) => {
                f.write_str("(and")?;
                for part in fs {
                    write!(f, " {part}")?;
                }
                f.write_str(")")
            }
            Formula::Or(fs) => {
                f.write_str("(or")?;
                for part in fs {
                    write!(f, " {part}")?;
                }
                f.write_str(")")
            }
            Formula::Xor(a, b) => write!(f, "(!= {a} {b})"),
        }
    }
}
