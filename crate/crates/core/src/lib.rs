//! Mutation analysis for MiniLang.
//!
//! The crate walks the whole chain: parse and check a program, seed operator
//! replacement mutants, record one instrumented run per test to learn which
//! mutants are covered and which infect the program state, filter strong
//! mutation runs by those sets, and prove the leftovers equivalent over a
//! finite input domain by backward symbolic execution plus bounded
//! exhaustive solving. Satisfiable constraints yield models that become new
//! test inputs.

pub mod constraints;
pub mod equiv;
pub mod error;
pub mod interp;
pub mod lang;
pub mod mutanalysis;
pub mod mutgen;
pub mod oracle;
pub mod preprocess;
pub mod solver;
pub mod suite;
