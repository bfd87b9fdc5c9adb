//! `ruleblame` — measure and localize inconsistency in business rule bases.
//!
//! Subcommands: `analyze`, `measures`, `shapley`, `rank`, `check`,
//! `generate`.  Inputs are rule-base files in the DSL (`-` reads standard
//! input).  `--json` switches to key-sorted, byte-stable JSON reports.
//!
//! Exit codes: 0 success (inconsistency is a result, not an error),
//! 1 parse error, 2 size limit exceeded, 3 unknown measure or postulate,
//! 4 infeasible generator shape, 64 usage error, 66 unreadable input.

use std::fmt;
use std::io::Read;
use std::str::FromStr;
use std::time::Instant;

use clap::{ArgAction, Args, CommandFactory, Parser, Subcommand};
use num_rational::BigRational;

use ruleblame_core::campaign::{run_campaign, CampaignOutcome};
use ruleblame_core::generate::{generate, GeneratorConfig};
use ruleblame_core::measures::Measure;
use ruleblame_core::mis::{
    minimal_inconsistent_subsets, minimal_inconsistent_subsets_without_facts, MiFamily,
};
use ruleblame_core::postulates::{Postulate, PostulateCheck};
use ruleblame_core::rational::{decimal_string, fraction_string};
use ruleblame_core::report;
use ruleblame_core::semantics::is_consistent;
use ruleblame_core::shapley::{
    adjusted_shapley_vector, culpability_ranking, max_adjusted, shapley_vector, ShapleyVector,
};
use ruleblame_core::{Error, Limits, RuleBase};

#[derive(Parser)]
#[command(
    name = "ruleblame",
    version,
    about = "Measure and localize inconsistency in business rule bases",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Full analysis: conflict listings, measures, Shapley vectors, ranking
    Analyze(AnalyzeArgs),
    /// Print the measure value table
    Measures(MeasuresArgs),
    /// Print Shapley and adjusted Shapley vectors of rule-based measures
    Shapley(ShapleyArgs),
    /// Print the culpability ranking for one rule-based measure
    Rank(RankArgs),
    /// Run a seeded postulate campaign for a (measure, postulate) pair
    Check(CheckArgs),
    /// Generate a random rule base in the DSL
    Generate(GenerateArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Rule-base file in the DSL; "-" reads standard input
    input: String,

    /// Emit a key-sorted JSON report (byte-stable for identical inputs)
    #[arg(long)]
    json: bool,

    /// Allow subset enumeration over bases with up to N elements
    /// (exponential cost — every subset is visited)
    #[arg(long = "limit-subsets", value_name = "N")]
    limit_subsets: Option<usize>,

    /// Allow contension search over signatures with up to N atoms
    /// (exponential cost — every three-valued interpretation is visited)
    #[arg(long = "limit-atoms", value_name = "N")]
    limit_atoms: Option<usize>,
}

#[derive(Args)]
struct MeasureSelection {
    /// Restrict to this measure (repeatable; default: all eight)
    #[arg(long = "measure", value_name = "NAME", action = ArgAction::Append)]
    measures: Vec<String>,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    selection: MeasureSelection,
    /// Also compute classical Shapley vectors for the rule-based measures
    #[arg(long = "classical-shapley")]
    classical_shapley: bool,
    /// Omit facts from ranking output (they always rank last, at zero)
    #[arg(long = "hide-facts")]
    hide_facts: bool,
}

#[derive(Args)]
struct MeasuresArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    selection: MeasureSelection,
}

#[derive(Args)]
struct ShapleyArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    selection: MeasureSelection,
    /// Also compute classical Shapley vectors
    #[arg(long = "classical-shapley")]
    classical_shapley: bool,
}

#[derive(Args)]
struct RankArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Measure to rank by (required; must be rule-based for nonzero ranks)
    #[arg(long = "measure", value_name = "NAME")]
    measure: String,
    /// Omit facts from the ranking (they always rank last, at zero)
    #[arg(long = "hide-facts")]
    hide_facts: bool,
}

#[derive(Args)]
struct CheckArgs {
    /// Measure name (e.g. rb-drastic)
    measure: String,
    /// Postulate name or short code (e.g. rule-emphasis, RE)
    postulate: String,
    /// Number of campaign instances (fixtures first, then generated)
    #[arg(long, value_name = "N", default_value_t = 1000)]
    budget: usize,
    /// Campaign seed; instance i draws from seed + i
    #[arg(long, value_name = "N", default_value_t = 7)]
    seed: u64,
    /// Emit a key-sorted JSON report
    #[arg(long)]
    json: bool,
    /// Allow subset enumeration over bases with up to N elements
    #[arg(long = "limit-subsets", value_name = "N")]
    limit_subsets: Option<usize>,
    /// Allow contension search over signatures with up to N atoms
    #[arg(long = "limit-atoms", value_name = "N")]
    limit_atoms: Option<usize>,
}

#[derive(Args)]
struct GenerateArgs {
    /// Number of distinct atoms to draw names from
    #[arg(long, value_name = "N", default_value_t = 4)]
    atoms: usize,
    /// Number of facts
    #[arg(long, value_name = "N", default_value_t = 3)]
    facts: usize,
    /// Number of proper rules
    #[arg(long, value_name = "N", default_value_t = 4)]
    rules: usize,
    /// Maximum body size of a rule
    #[arg(long = "max-body", value_name = "N", default_value_t = 2)]
    max_body: usize,
    /// Probability that a drawn literal is negative, as a fraction N/D
    #[arg(long = "neg-prob", value_name = "N/D", default_value = "1/2")]
    neg_prob: NegProb,
    /// Generator seed
    #[arg(long, value_name = "N", default_value_t = 0)]
    seed: u64,
    /// Emit a key-sorted JSON report instead of bare DSL text
    #[arg(long)]
    json: bool,
}

/// An exact probability, parsed from "N/D" or an integer.
#[derive(Clone, Copy)]
struct NegProb {
    num: u32,
    den: u32,
}

impl FromStr for NegProb {
    type Err = String;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let (num, den) = match text.split_once('/') {
            Some((num, den)) => (num.trim(), den.trim()),
            None => (text.trim(), "1"),
        };
        let num: u32 = num
            .parse()
            .map_err(|_| format!("invalid numerator {num:?}"))?;
        let den: u32 = den
            .parse()
            .map_err(|_| format!("invalid denominator {den:?}"))?;
        if den == 0 {
            return Err("denominator must be nonzero".to_string());
        }
        if num > den {
            return Err(format!("{num}/{den} is greater than one"));
        }
        Ok(NegProb { num, den })
    }
}

/// Anything the pipeline can fail with, tagged with its exit code.
enum CliError {
    Core(Error),
    Io(String, std::io::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(err) => write!(f, "{err}"),
            CliError::Io(path, err) => write!(f, "cannot read {path}: {err}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        CliError::Core(err)
    }
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(Error::Parse(_)) => 1,
            CliError::Core(Error::SizeLimitExceeded { .. }) => 2,
            CliError::Core(Error::UnknownMeasure { .. }) => 3,
            CliError::Core(Error::UnknownPostulate { .. }) => 3,
            CliError::Core(Error::ShapeInfeasible { .. }) => 4,
            CliError::Core(_) => 1,
            CliError::Io(..) => 66,
        }
    }
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 64,
            };
            let _ = err.print();
            return code;
        }
    };
    let Some(command) = cli.command else {
        let _ = Cli::command().print_help();
        return 64;
    };
    let started = Instant::now();
    match dispatch(command) {
        Ok(timed) => {
            if timed {
                eprintln!("elapsed: {:?}", started.elapsed());
            }
            0
        }
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    }
}

/// Run one subcommand; `Ok(true)` asks for an elapsed-time line on stderr
/// (text mode only — JSON reports carry no volatile fields).
fn dispatch(command: Command) -> Result<bool, CliError> {
    match command {
        Command::Analyze(args) => {
            let base = read_base(&args.input.input)?;
            let limits = limits_of(args.input.limit_subsets, args.input.limit_atoms);
            let measures = selected_measures(&args.selection.measures)?;
            if args.input.json {
                let value = report::analysis_report(
                    &base,
                    &measures,
                    args.classical_shapley,
                    args.hide_facts,
                    &limits,
                )?;
                print!("{}", report::to_json_string(&value));
                return Ok(false);
            }
            print_input(&base);
            println!();
            let mi = minimal_inconsistent_subsets(&base, &limits)?;
            let mi_rb = minimal_inconsistent_subsets_without_facts(&base, &limits)?;
            print_family("minimal inconsistent subsets", &mi);
            print_family(
                "minimal inconsistent subsets without pure fact sets",
                &mi_rb,
            );
            print_measures(&base, &measures, &limits)?;
            print_shapley(&base, &measures, args.classical_shapley, &limits)?;
            print_rankings(&base, &measures, args.hide_facts, &limits)?;
            Ok(true)
        }
        Command::Measures(args) => {
            let base = read_base(&args.input.input)?;
            let limits = limits_of(args.input.limit_subsets, args.input.limit_atoms);
            let measures = selected_measures(&args.selection.measures)?;
            if args.input.json {
                let value = report::measures_report(&base, &measures, &limits)?;
                print!("{}", report::to_json_string(&value));
                return Ok(false);
            }
            print_input(&base);
            println!();
            print_measures(&base, &measures, &limits)?;
            Ok(true)
        }
        Command::Shapley(args) => {
            let base = read_base(&args.input.input)?;
            let limits = limits_of(args.input.limit_subsets, args.input.limit_atoms);
            let measures = selected_measures(&args.selection.measures)?;
            if args.input.json {
                let value =
                    report::shapley_report(&base, &measures, args.classical_shapley, &limits)?;
                print!("{}", report::to_json_string(&value));
                return Ok(false);
            }
            print_input(&base);
            print_shapley(&base, &measures, args.classical_shapley, &limits)?;
            Ok(true)
        }
        Command::Rank(args) => {
            let base = read_base(&args.input.input)?;
            let limits = limits_of(args.input.limit_subsets, args.input.limit_atoms);
            let measure = Measure::from_name(&args.measure)?;
            if !measure.is_rule_based() {
                return Err(CliError::Core(Error::UnknownMeasure {
                    name: args.measure.clone(),
                    known: Measure::ALL
                        .into_iter()
                        .filter(|m| m.is_rule_based())
                        .map(Measure::name)
                        .collect::<Vec<_>>()
                        .join(", "),
                }));
            }
            if args.input.json {
                let value = report::rank_report(&base, measure, args.hide_facts, &limits)?;
                print!("{}", report::to_json_string(&value));
                return Ok(false);
            }
            print_input(&base);
            print_rankings(&base, &[measure], args.hide_facts, &limits)?;
            Ok(true)
        }
        Command::Check(args) => {
            let measure = Measure::from_name(&args.measure)?;
            let postulate = Postulate::from_name(&args.postulate)?;
            let limits = limits_of(args.limit_subsets, args.limit_atoms);
            let shape = GeneratorConfig::with_seed(0);
            let outcome =
                run_campaign(measure, postulate, args.budget, args.seed, &shape, &limits)?;
            if args.json {
                let value = report::check_report(&outcome);
                print!("{}", report::to_json_string(&value));
                return Ok(false);
            }
            print_campaign(&outcome);
            Ok(true)
        }
        Command::Generate(args) => {
            let config = GeneratorConfig {
                seed: args.seed,
                atoms: args.atoms,
                facts: args.facts,
                rules: args.rules,
                max_body: args.max_body,
                negation_num: args.neg_prob.num,
                negation_den: args.neg_prob.den,
            };
            let base = generate(&config)?;
            if args.json {
                let value = report::generate_report(&config, &base);
                print!("{}", report::to_json_string(&value));
            } else {
                print!("{}", base.to_text());
            }
            Ok(false)
        }
    }
}

fn read_base(path: &str) -> Result<RuleBase, CliError> {
    let text = if path == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|err| CliError::Io("standard input".to_string(), err))?;
        text
    } else {
        std::fs::read_to_string(path).map_err(|err| CliError::Io(path.to_string(), err))?
    };
    Ok(RuleBase::parse(&text).map_err(Error::from)?)
}

fn limits_of(limit_subsets: Option<usize>, limit_atoms: Option<usize>) -> Limits {
    let mut limits = Limits::default();
    if let Some(max_elements) = limit_subsets {
        limits.max_elements = max_elements;
    }
    if let Some(max_atoms) = limit_atoms {
        limits.max_atoms = max_atoms;
    }
    limits
}

fn selected_measures(names: &[String]) -> Result<Vec<Measure>, Error> {
    if names.is_empty() {
        return Ok(Measure::ALL.to_vec());
    }
    names.iter().map(|name| Measure::from_name(name)).collect()
}

fn format_value(value: &BigRational) -> String {
    let fraction = fraction_string(value);
    let decimal = decimal_string(value);
    if fraction == decimal {
        fraction
    } else {
        format!("{fraction} ({decimal})")
    }
}

fn print_input(base: &RuleBase) {
    let verdict = if is_consistent(base) {
        "consistent"
    } else {
        "inconsistent"
    };
    println!(
        "input: {} elements ({} facts, {} rules), {} atoms - {}",
        base.len(),
        base.facts().count(),
        base.rules_only().count(),
        base.signature().len(),
        verdict
    );
    for rule in base.elements() {
        println!("  {rule}");
    }
}

fn print_family(label: &str, family: &MiFamily) {
    println!("{label} ({}):", family.len());
    for (index, member) in family.members().iter().enumerate() {
        let elements: Vec<String> = member.elements().iter().map(|r| r.to_string()).collect();
        println!("  {}. {{ {} }}", index + 1, elements.join(" "));
    }
    println!();
}

fn print_measures(base: &RuleBase, measures: &[Measure], limits: &Limits) -> Result<(), CliError> {
    println!("measures:");
    for measure in measures {
        let value = measure.evaluate(base, limits)?;
        println!("  {:<16} {}", measure.name(), format_value(&value));
    }
    Ok(())
}

fn print_vector(label: &str, vector: &ShapleyVector) {
    println!("{label}:");
    for (element, value) in vector.entries() {
        println!("  {:<40} {}", element.to_string(), format_value(value));
    }
}

fn print_shapley(
    base: &RuleBase,
    measures: &[Measure],
    classical: bool,
    limits: &Limits,
) -> Result<(), CliError> {
    for measure in measures.iter().filter(|m| m.is_rule_based()) {
        println!();
        if classical {
            let vector = shapley_vector(*measure, base, limits)?;
            print_vector(&format!("classical Shapley ({})", measure.name()), &vector);
        }
        let vector = adjusted_shapley_vector(*measure, base, limits)?;
        print_vector(&format!("adjusted Shapley ({})", measure.name()), &vector);
        let max = max_adjusted(*measure, base, limits)?;
        println!("  max adjusted: {}", format_value(&max));
    }
    Ok(())
}

fn print_rankings(
    base: &RuleBase,
    measures: &[Measure],
    hide_facts: bool,
    limits: &Limits,
) -> Result<(), CliError> {
    for measure in measures.iter().filter(|m| m.is_rule_based()) {
        println!();
        println!("culpability ranking ({}):", measure.name());
        let ranking = culpability_ranking(*measure, base, limits)?;
        let mut position = 0;
        for (element, value) in ranking.entries() {
            if hide_facts && element.is_fact() {
                continue;
            }
            position += 1;
            println!(
                "  {position}. {:<40} {}",
                element.to_string(),
                format_value(value)
            );
        }
    }
    Ok(())
}

fn print_check(check: &PostulateCheck) {
    println!("  base:");
    for rule in check.base().elements() {
        println!("    {rule}");
    }
    if let Some(alpha) = check.alpha() {
        println!("  alpha: {alpha}");
    }
    if let Some(element) = check.element() {
        println!("  element: {element}");
    }
    if let Some(companion) = check.companion() {
        println!("  companion:");
        for rule in companion.elements() {
            println!("    {rule}");
        }
    }
    for (key, value) in check.details() {
        println!("  {key} = {value}");
    }
}

fn print_campaign(outcome: &CampaignOutcome) {
    let code = outcome
        .postulate()
        .short_code()
        .map(|code| format!(" ({code})"))
        .unwrap_or_default();
    println!(
        "campaign: {} x {}{}, budget {}, seed {}",
        outcome.measure().name(),
        outcome.postulate().name(),
        code,
        outcome.budget(),
        outcome.seed()
    );
    println!(
        "{} instances: {} hold, {} violations, {} inapplicable",
        outcome.budget(),
        outcome.holds(),
        outcome.violated(),
        outcome.inapplicable()
    );
    match (outcome.first_violation(), outcome.first_violation_index()) {
        (Some(check), Some(index)) => {
            println!("first violation at instance {index}:");
            print_check(check);
        }
        _ => println!("no violation found"),
    }
}
