//! Command-line front end for MiniLang mutation analysis.
//!
//! Subcommands cover the individual stages (parse, mutants, preprocess,
//! analyze, equiv, augment) and a `pipeline` command that chains them:
//! instrumented preprocessing, filtered strong mutation under all three
//! filters, equivalence classification over a finite domain, suite
//! augmentation from solver models, and re-analysis of the grown suite.
//!
//! Exit codes: 0 on success, 2 on usage or input errors, 3 when an internal
//! invariant is violated (nested infection sets, kill-set agreement across
//! filters, closed path formulas, oracle confirmation).

use std::collections::BTreeSet;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value as Json;

use infectest_core::constraints::Mode;
use infectest_core::equiv::{
    augment_suite, classify_equivalence, ClassifyOptions, EquivalenceReport, EquivalenceVerdict,
    VerdictStatus, DEFAULT_PATH_BOUND,
};
use infectest_core::error::{CompareError, InvariantError};
use infectest_core::lang::{check, parse_program, program_to_string, CheckedProgram};
use infectest_core::mutanalysis::{compare_filters, run_analysis, AnalysisReport, Filter};
use infectest_core::mutgen::{generate_mutants, mutant_descriptor, table_to_json, MutantTable};
use infectest_core::oracle::{brute_force_oracle, cross_check, OracleReport};
use infectest_core::preprocess::{preprocess, PreprocessReport};
use infectest_core::solver::{DEFAULT_DOMAIN_HI, DEFAULT_DOMAIN_LO, DEFAULT_SOLVER_BUDGET};
use infectest_core::suite::{load_suite, suite_to_text, TestSuite};

#[derive(Parser)]
#[command(
    name = "infectest",
    version,
    about = "Mutation analysis for MiniLang: infection-filtered execution and \
             domain-bounded equivalence detection"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and check a program, printing its canonical form.
    Parse {
        #[command(flatten)]
        program: ProgramOpt,
    },
    /// Enumerate all mutants; writes mutants.json.
    Mutants {
        #[command(flatten)]
        program: ProgramOpt,
        #[command(flatten)]
        out: OutOpt,
    },
    /// Run every test once against the instrumented original to learn
    /// covered and state-infected mutants; writes preprocess.json.
    Preprocess {
        #[command(flatten)]
        program: ProgramOpt,
        #[command(flatten)]
        suite: SuiteOpt,
        #[command(flatten)]
        out: OutOpt,
    },
    /// Strong mutation analysis under an execution filter; writes
    /// analysis-<filter>.json.
    Analyze {
        #[command(flatten)]
        program: ProgramOpt,
        #[command(flatten)]
        suite: SuiteOpt,
        /// Which (mutant, test) pairs to execute.
        #[arg(long, value_enum, default_value_t = FilterArg::Infection)]
        filter: FilterArg,
        #[command(flatten)]
        out: OutOpt,
    },
    /// Classify candidate mutants as equivalent-over-domain, killable, or
    /// unknown; writes equivalence.json.
    Equiv {
        #[command(flatten)]
        program: ProgramOpt,
        #[command(flatten)]
        suite: SuiteOpt,
        #[command(flatten)]
        opts: EquivOpts,
        /// Also run the brute-force oracle and confirm every equivalence
        /// verdict against it; writes oracle.json.
        #[arg(long)]
        oracle: bool,
        #[command(flatten)]
        out: OutOpt,
    },
    /// Extend a suite with tests built from killable verdicts' models;
    /// writes <suite>-augmented.tests.
    Augment {
        #[command(flatten)]
        program: ProgramOpt,
        #[command(flatten)]
        suite: SuiteOpt,
        #[command(flatten)]
        opts: EquivOpts,
        #[command(flatten)]
        out: OutOpt,
    },
    /// The full workflow: preprocess, analysis under all three filters,
    /// equivalence classification, suite augmentation, re-analysis of the
    /// augmented suite. Writes every report plus t2.tests.
    Pipeline {
        #[command(flatten)]
        program: ProgramOpt,
        #[command(flatten)]
        suite: SuiteOpt,
        #[command(flatten)]
        opts: EquivOpts,
        /// Also run the brute-force oracle and confirm every equivalence
        /// verdict against it; writes oracle.json.
        #[arg(long)]
        oracle: bool,
        #[command(flatten)]
        out: OutOpt,
    },
}

#[derive(Args)]
struct ProgramOpt {
    /// MiniLang source file.
    #[arg(long, value_name = "FILE")]
    program: PathBuf,
}

#[derive(Args)]
struct SuiteOpt {
    /// Test suite file, one `id function(arg,...)` per line.
    #[arg(long, value_name = "FILE")]
    suite: PathBuf,
}

#[derive(Args)]
struct OutOpt {
    /// Directory report files are written to.
    #[arg(long, value_name = "DIR", default_value = ".")]
    out: PathBuf,
}

#[derive(Args)]
struct EquivOpts {
    /// Where the infection condition is asserted: at the mutated operator
    /// or over the whole statement expression hosting it.
    #[arg(long, value_enum, default_value_t = ModeArg::Local)]
    mode: ModeArg,
    /// Inclusive range every int parameter sweeps over.
    #[arg(
        long,
        value_name = "LO..HI",
        default_value_t = DomainRange::default(),
        value_parser = parse_domain,
        allow_hyphen_values = true
    )]
    domain: DomainRange,
    /// Most acyclic entry-to-site paths enumerated per candidate.
    #[arg(long, value_name = "N", default_value_t = DEFAULT_PATH_BOUND)]
    path_bound: usize,
    /// Most domain assignments the solver may evaluate per formula.
    #[arg(long, value_name = "N", default_value_t = DEFAULT_SOLVER_BUDGET)]
    budget: u64,
}

impl EquivOpts {
    fn classify_options(&self) -> ClassifyOptions {
        ClassifyOptions {
            mode: self.mode.into(),
            lo: self.domain.lo,
            hi: self.domain.hi,
            path_bound: self.path_bound,
            solver_budget: self.budget,
        }
    }
}

#[derive(Clone, Copy)]
struct DomainRange {
    lo: i64,
    hi: i64,
}

impl Default for DomainRange {
    fn default() -> Self {
        DomainRange { lo: DEFAULT_DOMAIN_LO, hi: DEFAULT_DOMAIN_HI }
    }
}

impl fmt::Display for DomainRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Local,
    Outermost,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Local => Mode::Local,
            ModeArg::Outermost => Mode::Outermost,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FilterArg {
    None,
    Coverage,
    Infection,
}

impl From<FilterArg> for Filter {
    fn from(f: FilterArg) -> Filter {
        match f {
            FilterArg::None => Filter::None,
            FilterArg::Coverage => Filter::Coverage,
            FilterArg::Infection => Filter::Infection,
        }
    }
}

fn parse_domain(s: &str) -> Result<DomainRange, String> {
    let (lo, hi) = s.split_once("..").ok_or_else(|| format!("expected LO..HI, got `{s}`"))?;
    let lo: i64 = lo.trim().parse().map_err(|_| format!("bad lower bound `{lo}`"))?;
    let hi: i64 = hi.trim().parse().map_err(|_| format!("bad upper bound `{hi}`"))?;
    if lo > hi {
        return Err(format!("domain {lo}..{hi} is empty"));
    }
    Ok(DomainRange { lo, hi })
}

enum CliError {
    Input(String),
    Invariant(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Invariant(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(msg) | CliError::Invariant(msg) => f.write_str(msg),
        }
    }
}

impl From<InvariantError> for CliError {
    fn from(e: InvariantError) -> CliError {
        CliError::Invariant(e.to_string())
    }
}

impl From<CompareError> for CliError {
    fn from(e: CompareError) -> CliError {
        match e {
            CompareError::Invariant(inv) => inv.into(),
            CompareError::Analysis(other) => CliError::Input(other.to_string()),
        }
    }
}

fn input(e: impl fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

fn main() -> ExitCode {
    match dispatch(Cli::parse().command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

fn dispatch(command: Command) -> Result<(), CliError> {
    match command {
        Command::Parse { program } => cmd_parse(&program.program),
        Command::Mutants { program, out } => cmd_mutants(&program.program, &out.out),
        Command::Preprocess { program, suite, out } => {
            cmd_preprocess(&program.program, &suite.suite, &out.out)
        }
        Command::Analyze { program, suite, filter, out } => {
            cmd_analyze(&program.program, &suite.suite, filter.into(), &out.out)
        }
        Command::Equiv { program, suite, opts, oracle, out } => {
            cmd_equiv(&program.program, &suite.suite, &opts, oracle, &out.out)
        }
        Command::Augment { program, suite, opts, out } => {
            cmd_augment(&program.program, &suite.suite, &opts, &out.out)
        }
        Command::Pipeline { program, suite, opts, oracle, out } => {
            cmd_pipeline(&program.program, &suite.suite, &opts, oracle, &out.out)
        }
    }
}

fn load_program(path: &Path) -> Result<CheckedProgram, CliError> {
    let src = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read `{}`: {e}", path.display())))?;
    let name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string());
    let program =
        parse_program(&src, &name).map_err(|e| CliError::Input(format!("{name}: {e}")))?;
    check(program).map_err(|e| CliError::Input(format!("{name}: {e}")))
}

fn load_suite_file(path: &Path, cp: &CheckedProgram) -> Result<TestSuite, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read `{}`: {e}", path.display())))?;
    let name = path
        .file_stem()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| "suite".to_string());
    load_suite(&text, &name, cp)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn write_text(dir: &Path, file: &str, text: &str) -> Result<(), CliError> {
    fs::create_dir_all(dir)
        .map_err(|e| CliError::Input(format!("cannot create `{}`: {e}", dir.display())))?;
    let path = dir.join(file);
    fs::write(&path, text)
        .map_err(|e| CliError::Input(format!("cannot write `{}`: {e}", path.display())))
}

fn write_json(dir: &Path, file: &str, value: &Json) -> Result<(), CliError> {
    let pretty = serde_json::to_string_pretty(value).expect("reports serialize");
    write_text(dir, file, &format!("{pretty}\n"))
}

fn site_count(table: &MutantTable) -> usize {
    table.mutants.iter().map(|m| m.site.node).collect::<BTreeSet<_>>().len()
}

fn cmd_parse(program: &Path) -> Result<(), CliError> {
    let cp = load_program(program)?;
    print!("{}", program_to_string(&cp.program));
    Ok(())
}

fn cmd_mutants(program: &Path, out: &Path) -> Result<(), CliError> {
    let cp = load_program(program)?;
    let table = generate_mutants(&cp);
    for m in &table.mutants {
        let descriptor = mutant_descriptor(&table, m.id).expect("own table ids");
        println!("{:>4} {descriptor}", m.id);
    }
    write_json(out, "mutants.json", &table_to_json(&table))?;
    println!("{} mutants at {} sites", table.len(), site_count(&table));
    Ok(())
}

fn preprocess_summary(suite: &TestSuite, pre: &PreprocessReport) -> String {
    format!(
        "suite {}: {} tests; covered {}/{}, infected {}, probe errors {}, candidates {}",
        suite.name,
        suite.len(),
        pre.covered.len(),
        pre.mutant_count,
        pre.infected.len(),
        pre.probe_errors.len(),
        pre.potentially_equivalent().len()
    )
}

fn cmd_preprocess(program: &Path, suite: &Path, out: &Path) -> Result<(), CliError> {
    let cp = load_program(program)?;
    let suite = load_suite_file(suite, &cp)?;
    let table = generate_mutants(&cp);
    let pre = preprocess(&cp, &table, &suite).map_err(input)?;
    pre.check_nested()?;
    write_json(out, "preprocess.json", &pre.to_json())?;
    println!("{}", preprocess_summary(&suite, &pre));
    Ok(())
}

fn analysis_summary(report: &AnalysisReport) -> String {
    format!(
        "filter {}: killed {}/{}, executed {} pairs across {} mutants",
        report.filter,
        report.killed().len(),
        report.mutant_count,
        report.executed_pairs,
        report.executed_mutants
    )
}

fn cmd_analyze(program: &Path, suite: &Path, filter: Filter, out: &Path) -> Result<(), CliError> {
    let cp = load_program(program)?;
    let suite = load_suite_file(suite, &cp)?;
    let table = generate_mutants(&cp);
    let pre = match filter {
        Filter::None => None,
        _ => {
            let pre = preprocess(&cp, &table, &suite).map_err(input)?;
            pre.check_nested()?;
            Some(pre)
        }
    };
    let report = run_analysis(&cp, &table, &suite, filter, pre.as_ref()).map_err(input)?;
    write_json(out, &format!("analysis-{filter}.json"), &report.to_json())?;
    println!("{}", analysis_summary(&report));
    Ok(())
}

fn classify(
    cp: &CheckedProgram,
    table: &MutantTable,
    suite: &TestSuite,
    opts: &EquivOpts,
) -> Result<(PreprocessReport, EquivalenceReport), CliError> {
    let pre = preprocess(cp, table, suite).map_err(input)?;
    pre.check_nested()?;
    let analysis = match opts.mode {
        ModeArg::Local => None,
        ModeArg::Outermost => Some(
            run_analysis(cp, table, suite, Filter::Infection, Some(&pre)).map_err(input)?,
        ),
    };
    let report =
        classify_equivalence(cp, table, suite, &pre, analysis.as_ref(), &opts.classify_options())?;
    Ok((pre, report))
}

fn verdict_line(v: &EquivalenceVerdict) -> String {
    let detail = match &v.status {
        VerdictStatus::Killable { model, path } => {
            let args: Vec<String> =
                model.iter().map(|(name, value)| format!("{name}={value}")).collect();
            format!(" via path {path} with {}", args.join(", "))
        }
        VerdictStatus::Unknown(cause) => format!(" ({})", cause.as_str()),
        VerdictStatus::EquivalentOverDomain => String::new(),
    };
    format!("m{} {}: {}{detail}", v.mutant, v.descriptor, v.status.as_str())
}

fn equivalence_summary(report: &EquivalenceReport) -> String {
    let (mut equivalent, mut killable, mut unknown) = (0, 0, 0);
    for v in &report.verdicts {
        match v.status {
            VerdictStatus::EquivalentOverDomain => equivalent += 1,
            VerdictStatus::Killable { .. } => killable += 1,
            VerdictStatus::Unknown(_) => unknown += 1,
        }
    }
    format!(
        "equivalence ({} mode, domain [{}, {}]): {} candidates -> {} equivalent-over-domain, {} killable, {} unknown",
        report.mode, report.lo, report.hi, report.verdicts.len(), equivalent, killable, unknown
    )
}

fn run_oracle_check(
    cp: &CheckedProgram,
    table: &MutantTable,
    equivalence: &EquivalenceReport,
    lo: i64,
    hi: i64,
    out: &Path,
) -> Result<OracleReport, CliError> {
    let report = brute_force_oracle(cp, table, lo, hi).map_err(input)?;
    write_json(out, "oracle.json", &report.to_json())?;
    cross_check(equivalence, &report)?;
    println!(
        "oracle over [{lo}, {hi}]: {} equivalent mutants; every equivalence verdict confirmed",
        report.equivalent_ids().len()
    );
    Ok(report)
}

fn cmd_equiv(
    program: &Path,
    suite: &Path,
    opts: &EquivOpts,
    oracle: bool,
    out: &Path,
) -> Result<(), CliError> {
    let cp = load_program(program)?;
    let suite = load_suite_file(suite, &cp)?;
    let table = generate_mutants(&cp);
    let (_, report) = classify(&cp, &table, &suite, opts)?;
    write_json(out, "equivalence.json", &report.to_json())?;
    for v in &report.verdicts {
        println!("{}", verdict_line(v));
    }
    println!("{}", equivalence_summary(&report));
    if oracle {
        run_oracle_check(&cp, &table, &report, opts.domain.lo, opts.domain.hi, out)?;
    }
    Ok(())
}

fn cmd_augment(program: &Path, suite: &Path, opts: &EquivOpts, out: &Path) -> Result<(), CliError> {
    let cp = load_program(program)?;
    let suite = load_suite_file(suite, &cp)?;
    let table = generate_mutants(&cp);
    let (_, report) = classify(&cp, &table, &suite, opts)?;
    let augmented = augment_suite(&cp, &suite, &report);
    for t in &augmented.tests[suite.len()..] {
        let args: Vec<String> = t.args.iter().map(|v| v.to_string()).collect();
        println!("added {} {}({})", t.id, t.function, args.join(","));
    }
    let file = format!("{}.tests", augmented.name);
    write_text(out, &file, &suite_to_text(&augmented))?;
    println!(
        "suite {}: {} tests ({} added)",
        augmented.name,
        augmented.len(),
        augmented.len() - suite.len()
    );
    Ok(())
}

fn cmd_pipeline(
    program: &Path,
    suite: &Path,
    opts: &EquivOpts,
    oracle: bool,
    out: &Path,
) -> Result<(), CliError> {
    let cp = load_program(program)?;
    let suite1 = load_suite_file(suite, &cp)?;
    let table = generate_mutants(&cp);
    println!(
        "{}: {} functions, {} sites, {} mutants",
        table.source_name,
        cp.program.functions.len(),
        site_count(&table),
        table.len()
    );
    write_json(out, "mutants.json", &table_to_json(&table))?;

    let pre = preprocess(&cp, &table, &suite1).map_err(input)?;
    pre.check_nested()?;
    write_json(out, "preprocess.json", &pre.to_json())?;
    println!("{}", preprocess_summary(&suite1, &pre));

    let savings = compare_filters(&cp, &table, &suite1, &pre)?;
    write_json(out, "analysis-none.json", &savings.none.to_json())?;
    write_json(out, "analysis-coverage.json", &savings.coverage.to_json())?;
    write_json(out, "analysis-infection.json", &savings.infection.to_json())?;
    println!("{}", savings.summary());

    let copts = opts.classify_options();
    let analysis = match opts.mode {
        ModeArg::Local => None,
        ModeArg::Outermost => Some(&savings.infection),
    };
    let equivalence = classify_equivalence(&cp, &table, &suite1, &pre, analysis, &copts)?;
    write_json(out, "equivalence.json", &equivalence.to_json())?;
    println!("{}", equivalence_summary(&equivalence));

    let mut t2 = augment_suite(&cp, &suite1, &equivalence);
    t2.name = "t2".to_string();
    write_text(out, "t2.tests", &suite_to_text(&t2))?;
    let pre2 = preprocess(&cp, &table, &t2).map_err(input)?;
    pre2.check_nested()?;
    let analysis2 =
        run_analysis(&cp, &table, &t2, Filter::Infection, Some(&pre2)).map_err(input)?;
    write_json(out, "analysis-t2.json", &analysis2.to_json())?;
    println!(
        "suite t2: {} tests ({} added); killed {} -> {} of {}",
        t2.len(),
        t2.len() - suite1.len(),
        savings.infection.killed().len(),
        analysis2.killed().len(),
        table.len()
    );

    if oracle {
        run_oracle_check(&cp, &table, &equivalence, copts.lo, copts.hi, out)?;
    }
    println!("reports written to {}", out.display());
    Ok(())
}
