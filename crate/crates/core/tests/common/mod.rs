//! Seeded generators for the acceptance corpus: loop-free MiniLang
//! programs, argument suites for them, and solver formulas. Everything is
//! deterministic in the seed so failures replay exactly.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use infectest_core::constraints::{Formula, Term};
use infectest_core::lang::ast::BinOp;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

const ARITH: [&str; 5] = ["+", "-", "*", "/", "%"];
const REL: [&str; 6] = ["<", "<=", ">", ">=", "==", "!="];

fn pick<'a>(rng: &mut ChaCha8Rng, items: &[&'a str]) -> &'a str {
    items[rng.gen_range(0..items.len())]
}

fn int_leaf(rng: &mut ChaCha8Rng, vars: &[String]) -> String {
    if rng.gen_bool(0.7) {
        vars[rng.gen_range(0..vars.len())].clone()
    } else {
        rng.gen_range(-3..=3i64).to_string()
    }
}

fn int_expr(rng: &mut ChaCha8Rng, vars: &[String], depth: usize) -> String {
    if depth == 0 || rng.gen_bool(0.35) {
        int_leaf(rng, vars)
    } else if rng.gen_bool(0.12) {
        format!("-{}", int_leaf(rng, vars))
    } else {
        let op = pick(rng, &ARITH);
        format!("({} {} {})", int_expr(rng, vars, depth - 1), op, int_expr(rng, vars, depth - 1))
    }
}

fn bool_expr(rng: &mut ChaCha8Rng, vars: &[String], depth: usize) -> String {
    if depth == 0 || rng.gen_bool(0.45) {
        let op = pick(rng, &REL);
        format!("{} {} {}", int_expr(rng, vars, 1), op, int_expr(rng, vars, 1))
    } else {
        match rng.gen_range(0..3) {
            0 => format!(
                "({}) && ({})",
                bool_expr(rng, vars, depth - 1),
                bool_expr(rng, vars, depth - 1)
            ),
            1 => format!(
                "({}) || ({})",
                bool_expr(rng, vars, depth - 1),
                bool_expr(rng, vars, depth - 1)
            ),
            _ => format!("!({})", bool_expr(rng, vars, depth - 1)),
        }
    }
}

fn assignment(rng: &mut ChaCha8Rng, vars: &[String], locals: &[String], indent: usize) -> String {
    let target = &locals[rng.gen_range(0..locals.len())];
    format!("{}{} = {};\n", "    ".repeat(indent), target, int_expr(rng, vars, 2))
}

fn if_stmt(rng: &mut ChaCha8Rng, vars: &[String], locals: &[String], depth: usize, indent: usize) -> String {
    let pad = "    ".repeat(indent);
    let mut out = format!("{pad}if ({}) {{\n", bool_expr(rng, vars, 2));
    out.push_str(&branch_body(rng, vars, locals, depth, indent + 1));
    if rng.gen_bool(0.5) {
        out.push_str(&format!("{pad}}} else {{\n"));
        out.push_str(&branch_body(rng, vars, locals, depth, indent + 1));
    }
    out.push_str(&format!("{pad}}}\n"));
    out
}

fn branch_body(
    rng: &mut ChaCha8Rng,
    vars: &[String],
    locals: &[String],
    depth: usize,
    indent: usize,
) -> String {
    let mut out = String::new();
    for _ in 0..rng.gen_range(1..=2) {
        if depth > 0 && rng.gen_bool(0.3) {
            out.push_str(&if_stmt(rng, vars, locals, depth - 1, indent));
        } else {
            out.push_str(&assignment(rng, vars, locals, indent));
        }
    }
    if rng.gen_bool(0.2) {
        out.push_str(&format!("{}return {};\n", "    ".repeat(indent), int_expr(rng, vars, 1)));
    }
    out
}

/// A random loop-free program with int parameters only. Locals are defined
/// at the top level before any branch touches them, every conditional
/// nests at most twice, and a trailing return makes all paths return, so
/// the result always parses and checks. Returns the source and its
/// parameter count.
pub fn random_loopfree_program(rng: &mut ChaCha8Rng) -> (String, usize) {
    let n_params = rng.gen_range(1..=3);
    let params: Vec<String> = ["a", "b", "c"][..n_params].iter().map(|s| s.to_string()).collect();
    let locals: Vec<String> =
        (0..rng.gen_range(1..=2)).map(|i| format!("x{i}")).collect();

    let sig: Vec<String> = params.iter().map(|p| format!("{p}: int")).collect();
    let mut src = format!("fn f({}) -> int {{\n", sig.join(", "));

    let mut vars = params.clone();
    for local in &locals {
        src.push_str(&format!("    {local} = {};\n", int_expr(rng, &vars, 1)));
        vars.push(local.clone());
    }
    for _ in 0..rng.gen_range(1..=3) {
        if rng.gen_bool(0.75) {
            src.push_str(&if_stmt(rng, &vars, &locals, 1, 1));
        } else {
            src.push_str(&assignment(rng, &vars, &locals, 1));
        }
    }
    src.push_str(&format!("    return {};\n}}\n", int_expr(rng, &vars, 2)));
    (src, n_params)
}

/// A suite of random argument tuples in [-4, 4] for a single function.
pub fn random_suite_text(rng: &mut ChaCha8Rng, fname: &str, n_params: usize, n_tests: usize) -> String {
    let mut out = String::new();
    for i in 1..=n_tests {
        let args: Vec<String> =
            (0..n_params).map(|_| rng.gen_range(-4..=4i64).to_string()).collect();
        out.push_str(&format!("r{i} {fname}({})\n", args.join(",")));
    }
    out
}

pub fn random_term(rng: &mut ChaCha8Rng, vars: &[&str], depth: usize) -> Term {
    if depth == 0 || rng.gen_bool(0.4) {
        if rng.gen_bool(0.6) {
            Term::Var(vars[rng.gen_range(0..vars.len())].to_string())
        } else {
            Term::Const(rng.gen_range(-4..=4))
        }
    } else if rng.gen_bool(0.12) {
        Term::Neg(Box::new(random_term(rng, vars, depth - 1)))
    } else {
        let ops = [BinOp::Add, BinOp::Sub, BinOp::Mul, BinOp::Div, BinOp::Mod];
        let op = ops[rng.gen_range(0..ops.len())];
        Term::bin(op, random_term(rng, vars, depth - 1), random_term(rng, vars, depth - 1))
    }
}

pub fn random_formula(rng: &mut ChaCha8Rng, vars: &[&str], depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.3) {
        let ops = [BinOp::Lt, BinOp::Le, BinOp::Gt, BinOp::Ge, BinOp::Eq, BinOp::Ne];
        let op = ops[rng.gen_range(0..ops.len())];
        Formula::cmp(op, random_term(rng, vars, 2), random_term(rng, vars, 2))
    } else {
        match rng.gen_range(0..4) {
            0 => Formula::and(vec![
                random_formula(rng, vars, depth - 1),
                random_formula(rng, vars, depth - 1),
            ]),
            1 => Formula::or(vec![
                random_formula(rng, vars, depth - 1),
                random_formula(rng, vars, depth - 1),
            ]),
            2 => Formula::not(random_formula(rng, vars, depth - 1)),
            _ => Formula::xor(
                random_formula(rng, vars, depth - 1),
                random_formula(rng, vars, depth - 1),
            ),
        }
    }
}
