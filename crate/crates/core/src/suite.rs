//! Test suites: a named list of function invocations.
//!
//! The on-disk format is line oriented: `id function(arg,arg,...)`, with
//! `#` comments and blank lines ignored. Expected outcomes are never stored;
//! they are recomputed from the original program at load time, because the
//! original is by definition the oracle.

use crate::error::SuiteError;
use crate::interp::{run, Outcome, Value};
use crate::lang::{CheckedProgram, Type};

#[derive(Debug, Clone, PartialEq)]
pub struct TestCase {
    pub id: String,
    pub function: String,
    pub args: Vec<Value>,
    pub expected: Outcome,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TestSuite {
    pub name: String,
    pub tests: Vec<TestCase>,
}

impl TestSuite {
    pub fn len(&self) -> usize {
        self.tests.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tests.is_empty()
    }
}

pub fn load_suite(text: &str, name: &str, p: &CheckedProgram) -> Result<TestSuite, SuiteError> {
    let mut tests: Vec<TestCase> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (id, call) = line.split_once(char::is_whitespace).ok_or_else(|| SuiteError::Malformed {
            line: lineno,
            msg: "expected `id function(args)`".to_string(),
        })?;
        if tests.iter().any(|t| t.id == id) {
            return Err(SuiteError::DuplicateId { line: lineno, id: id.to_string() });
        }
        let call: String = call.chars().filter(|c| !c.is_whitespace()).collect();
        let (fname, rest) = call.split_once('(').ok_or_else(|| SuiteError::Malformed {
            line: lineno,
            msg: "missing `(` in call".to_string(),
        })?;
        let inner = rest.strip_suffix(')').ok_or_else(|| SuiteError::Malformed {
            line: lineno,
            msg: "missing `)` in call".to_string(),
        })?;
        let args = parse_args(inner, lineno)?;
        let f = p
            .program
            .function(fname)
            .ok_or_else(|| SuiteError::UnknownFunction { line: lineno, name: fname.to_string() })?;
        if args.len() != f.params.len() {
            return Err(SuiteError::ArityMismatch {
                line: lineno,
                name: fname.to_string(),
                expected: f.params.len(),
                got: args.len(),
            });
        }
        for (arg, param) in args.iter().zip(&f.params) {
            let ok = matches!(
                (arg, param.ty),
                (Value::Int(_), Type::Int) | (Value::Bool(_), Type::Bool)
            );
            if !ok {
                return Err(SuiteError::Malformed {
                    line: lineno,
                    msg: format!("argument for `{}` has the wrong type", param.name),
                });
            }
        }
        let expected = run(p, fname, &args).expect("arity and types were checked");
        tests.push(TestCase { id: id.to_string(), function: fname.to_string(), args, expected });
    }
    Ok(TestSuite { name: name.to_string(), tests })
}

fn parse_args(inner: &str, lineno: usize) -> Result<Vec<Value>, SuiteError> {
    if inner.is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|tok| match tok {
            "true" => Ok(Value::Bool(true)),
            "false" => Ok(Value::Bool(false)),
            _ => tok.parse::<i64>().map(Value::Int).map_err(|_| SuiteError::Malformed {
                line: lineno,
                msg: format!("bad argument `{tok}`"),
            }),
        })
        .collect()
}

pub fn suite_to_text(suite: &TestSuite) -> String {
    let mut out = String::new();
    for t in &suite.tests {
        let args: Vec<String> = t.args.iter().map(|v| v.to_string()).collect();
        out.push_str(&format!("{} {}({})\n", t.id, t.function, args.join(",")));
    }
    out
}
