//! Subcommand definitions and dispatch.

use crate::config::{records_to_csv, OutputFormat, ProblemKind, RunConfig, RunRecord};
use crate::instances::{
    default_solution, evaluate_solution, fmt_num, parse_solution, pb_error, perm_error,
    LoadedProblem, Solution,
};
use crate::run::{random_solution, run_hillclimb, run_ils, stream_seed, PHASE_INIT};
use crate::{read_input, write_output, CliError};
use clap::{Args, Parser, Subcommand};
use graybox::group_fourier::{walsh_noninteracting, BitString};
use graybox::perm_operators::{decompose_parents, px_perm_detailed};
use graybox::perm_problems::{format_lop, format_smtwtp, generate_lop, generate_smtwtp};
use graybox::pseudo_boolean::{
    build_vig, decompose_move, format_kbounded, generate_nk, px_binary_with_vig, WalshExpansion,
    MAX_SUBFUNCTION_ARITY,
};
use graybox::util::TokenCursor;
use graybox::Tolerance;
use rayon::prelude::*;
use std::fmt::Write as _;
use std::path::PathBuf;

/// Largest n accepted by the table form of `fourier-check`, which reads
/// 2^n function values.
const MAX_TABLE_BITS: usize = 20;

#[derive(Parser)]
#[command(
    name = "graybox",
    version,
    about = "Gray-box optimization harness: evaluation, hill climbing, crossover, and spectral move analysis"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Evaluate a solution on an instance
    Eval(EvalArgs),
    /// Seeded hill climb from a random start
    Hillclimb(RunArgs),
    /// Partition crossover of two parents
    Px(PxArgs),
    /// Iterated local search with crossover against the best-so-far
    Ils(RunArgs),
    /// Classify move pairs as interacting or not from the spectrum
    FourierCheck(FourierArgs),
    /// Split a move or a parent pair into independent parts
    Decompose(DecomposeArgs),
    /// Write a random instance
    Generate(GenerateArgs),
}

#[derive(Args)]
pub struct EvalArgs {
    #[arg(long, value_enum)]
    pub problem: ProblemKind,
    /// Instance file
    #[arg(long)]
    pub instance: PathBuf,
    /// Solution text: one-based images for permutations, a 0/1 string for
    /// pseudo-Boolean functions. Identity or all-zeros when omitted.
    #[arg(long)]
    pub solution: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct RunArgs {
    #[arg(long, value_enum)]
    pub problem: ProblemKind,
    /// Instance file
    #[arg(long)]
    pub instance: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Window widths for permutation moves: 2, 3, or 2,3
    #[arg(long, default_value = "2,3")]
    pub widths: String,
    /// Perturbation strength as a fraction of n, in (0, 1]
    #[arg(long, default_value_t = 0.25)]
    pub alpha: f64,
    /// Accepted-move budget; hill climbs run to a local optimum without one
    #[arg(long)]
    pub budget: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub replications: usize,
    /// Run replications concurrently; output order stays by replication
    #[arg(long)]
    pub parallel: bool,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct PxArgs {
    #[arg(long, value_enum)]
    pub problem: ProblemKind,
    /// Instance file
    #[arg(long)]
    pub instance: PathBuf,
    /// First parent as solution text; random when omitted
    #[arg(long)]
    pub parent_a: Option<String>,
    /// Second parent as solution text; random when omitted
    #[arg(long)]
    pub parent_b: Option<String>,
    /// Seed for randomly drawn parents
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct FourierArgs {
    /// Function file: "walsh n" with mask/weight lines, or "table n" with
    /// 2^n values
    #[arg(long)]
    pub function: PathBuf,
    /// Move pair file: two 0/1 strings per line
    #[arg(long)]
    pub moves: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct DecomposeArgs {
    #[arg(long, value_enum)]
    pub problem: ProblemKind,
    /// Instance file
    #[arg(long)]
    pub instance: PathBuf,
    /// Bit-flip move to split (pseudo-Boolean problems)
    #[arg(long = "move")]
    pub mv: Option<String>,
    /// First parent as solution text (permutation problems)
    #[arg(long)]
    pub parent_a: Option<String>,
    /// Second parent as solution text (permutation problems)
    #[arg(long)]
    pub parent_b: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct GenerateArgs {
    #[arg(long, value_enum)]
    pub problem: ProblemKind,
    #[arg(long)]
    pub size: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Subfunction arity for pseudo-Boolean instances
    #[arg(long, default_value_t = 3)]
    pub k: usize,
    /// Tardiness factor for scheduling instances, in [0, 1]
    #[arg(long, default_value_t = 0.5)]
    pub tardiness: f64,
    /// Due date range for scheduling instances, in [0, 1]
    #[arg(long, default_value_t = 0.5)]
    pub due_range: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn dispatch(command: Command) -> Result<(), CliError> {
    match command {
        Command::Eval(args) => cmd_eval(args),
        Command::Hillclimb(args) => cmd_run(args, run_hillclimb),
        Command::Px(args) => cmd_px(args),
        Command::Ils(args) => cmd_run(args, run_ils),
        Command::FourierCheck(args) => cmd_fourier_check(args),
        Command::Decompose(args) => cmd_decompose(args),
        Command::Generate(args) => cmd_generate(args),
    }
}

fn parse_widths(text: &str) -> Result<Vec<usize>, CliError> {
    let mut widths = Vec::new();
    for tok in text.split(',') {
        let w: usize = tok
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("bad width {tok:?}, expected 2 or 3")))?;
        if w != 2 && w != 3 {
            return Err(CliError::Usage(format!("width {w} not supported, expected 2 or 3")));
        }
        if widths.contains(&w) {
            return Err(CliError::Usage(format!("width {w} given twice")));
        }
        widths.push(w);
    }
    if widths.is_empty() {
        return Err(CliError::Usage("at least one width is required".to_string()));
    }
    Ok(widths)
}

fn cmd_eval(args: EvalArgs) -> Result<(), CliError> {
    let problem = LoadedProblem::load(args.problem, &args.instance)?;
    let solution = match &args.solution {
        Some(text) => parse_solution(&problem, text)?,
        None => default_solution(&problem),
    };
    let fitness = evaluate_solution(&problem, &solution)?;
    write_output(&args.out, &format!("{}\n", fmt_num(fitness)))
}

fn cmd_run(
    args: RunArgs,
    runner: fn(&LoadedProblem, &RunConfig, usize) -> Result<RunRecord, CliError>,
) -> Result<(), CliError> {
    if !(args.alpha > 0.0 && args.alpha <= 1.0) {
        return Err(CliError::Usage(format!("alpha {} not in (0, 1]", args.alpha)));
    }
    if args.replications == 0 {
        return Err(CliError::Usage("replications must be at least 1".to_string()));
    }
    let widths = parse_widths(&args.widths)?;
    let problem = LoadedProblem::load(args.problem, &args.instance)?;
    let config = RunConfig {
        problem: args.problem,
        instance: args.instance.display().to_string(),
        seed: args.seed,
        widths,
        alpha: args.alpha,
        budget: args.budget,
        replications: args.replications,
    };

    let records: Vec<RunRecord> = if args.parallel {
        (0..args.replications)
            .into_par_iter()
            .map(|rep| runner(&problem, &config, rep))
            .collect::<Result<_, _>>()?
    } else {
        (0..args.replications)
            .map(|rep| runner(&problem, &config, rep))
            .collect::<Result<_, _>>()?
    };

    let text = match args.format {
        OutputFormat::Json => {
            let json = if records.len() == 1 {
                serde_json::to_string_pretty(&records[0])
            } else {
                serde_json::to_string_pretty(&records)
            }
            .expect("run records serialize");
            format!("{json}\n")
        }
        OutputFormat::Csv => records_to_csv(&records),
    };
    write_output(&args.out, &text)
}

fn mask_vars(mask: u64) -> String {
    let mut out = String::from("{");
    let mut scan = mask;
    let mut first = true;
    while scan != 0 {
        let i = scan.trailing_zeros();
        scan &= scan - 1;
        if !first {
            out.push(',');
        }
        let _ = write!(out, "{i}");
        first = false;
    }
    out.push('}');
    out
}

fn cmd_px(args: PxArgs) -> Result<(), CliError> {
    let problem = LoadedProblem::load(args.problem, &args.instance)?;
    let parent = |text: &Option<String>, salt: usize| -> Result<Solution, CliError> {
        match text {
            Some(t) => parse_solution(&problem, t),
            None => Ok(random_solution(&problem, stream_seed(args.seed, 0, PHASE_INIT, salt))),
        }
    };
    let a = parent(&args.parent_a, 1)?;
    let b = parent(&args.parent_b, 2)?;
    let fit_a = evaluate_solution(&problem, &a)?;
    let fit_b = evaluate_solution(&problem, &b)?;

    let mut report = String::new();
    let _ = writeln!(report, "parent a fitness: {}", fmt_num(fit_a));
    let _ = writeln!(report, "parent b fitness: {}", fmt_num(fit_b));
    let offspring_fitness = match (&a, &b) {
        (Solution::Perm(p1), Solution::Perm(p2)) => {
            let perm = problem.as_perm().expect("perm solutions imply a perm problem");
            let result = px_perm_detailed(perm, p1, p2).map_err(perm_error)?;
            let _ = writeln!(
                report,
                "components: {} total, {} active",
                result.components.len(),
                result.q()
            );
            for c in &result.components {
                if c.trivial {
                    let _ = writeln!(report, "  window {}..{} trivial", c.lo, c.hi);
                } else {
                    let verdict = if c.applied { "applied" } else { "skipped" };
                    let _ = writeln!(
                        report,
                        "  window {}..{} delta {} {}",
                        c.lo,
                        c.hi,
                        fmt_num(c.delta),
                        verdict
                    );
                }
            }
            evaluate_solution(&problem, &Solution::Perm(result.offspring))?
        }
        (Solution::Bits(x1), Solution::Bits(x2)) => {
            let f = problem.as_pb().expect("bit solutions imply a pb problem");
            let vig = build_vig(&WalshExpansion::decompose(f));
            let result = px_binary_with_vig(f, &vig, x1, x2).map_err(pb_error)?;
            let _ = writeln!(
                report,
                "components: {} total, {} active",
                result.components.len(),
                result.q()
            );
            for c in &result.components {
                let verdict = if c.applied { "applied" } else { "skipped" };
                let _ = writeln!(
                    report,
                    "  vars {} delta {} {}",
                    mask_vars(c.mask),
                    fmt_num(c.delta),
                    verdict
                );
            }
            evaluate_solution(&problem, &Solution::Bits(result.offspring))?
        }
        _ => return Err(CliError::Usage("parent kinds do not match the problem".to_string())),
    };
    let _ = writeln!(report, "offspring fitness: {}", fmt_num(offspring_fitness));
    write_output(&args.out, &report)
}

fn cursor_err(e: (usize, String)) -> CliError {
    CliError::Parse(format!("line {}: {}", e.0, e.1))
}

/// Reads a function file into Walsh terms. The `walsh` form lists the
/// spectrum directly; the `table` form lists all 2^n values and is
/// transformed here. Either way the sign test below only needs term
/// masks and weights, so the spectrum stays unnormalized.
fn load_walsh_terms(text: &str) -> Result<(usize, Vec<(u64, f64)>), CliError> {
    let mut cur = TokenCursor::new(text);
    let (_, form) = cur.next_token("function form").map_err(cursor_err)?;
    let form = form.to_string();
    let n: usize = cur.parse_next("variable count").map_err(cursor_err)?;
    match form.as_str() {
        "walsh" => {
            if n > graybox::group_fourier::MAX_BITS {
                return Err(CliError::Capacity(format!(
                    "{n} variables exceed the {} bit limit",
                    graybox::group_fourier::MAX_BITS
                )));
            }
            let mut terms = Vec::new();
            while cur.peek().is_some() {
                let (line, bits) = cur.next_token("term mask").map_err(cursor_err)?;
                let mask = BitString::parse(bits).map_err(crate::instances::bit_error)?;
                if mask.len() != n {
                    return Err(CliError::Parse(format!(
                        "line {line}: mask {bits} has {} bits, expected {n}",
                        mask.len()
                    )));
                }
                let weight: f64 = cur.parse_next("term weight").map_err(cursor_err)?;
                if !weight.is_finite() {
                    return Err(CliError::Parse(format!("line {line}: weight is not finite")));
                }
                terms.push((mask.mask(), weight));
            }
            Ok((n, terms))
        }
        "table" => {
            if n > MAX_TABLE_BITS {
                return Err(CliError::Capacity(format!(
                    "table form supports at most {MAX_TABLE_BITS} variables, got {n}"
                )));
            }
            let len = 1usize << n;
            let mut values = Vec::with_capacity(len);
            for _ in 0..len {
                let v: f64 = cur.parse_next("function value").map_err(cursor_err)?;
                if !v.is_finite() {
                    return Err(CliError::Parse(format!(
                        "line {}: function value is not finite",
                        cur.line()
                    )));
                }
                values.push(v);
            }
            cur.finish().map_err(cursor_err)?;
            let spectrum = graybox::group_fourier::walsh_spectrum(&values)
                .map_err(|e| CliError::Parse(e.to_string()))?;
            let terms = spectrum
                .into_iter()
                .enumerate()
                .filter(|(_, w)| *w != 0.0)
                .map(|(lambda, w)| (lambda as u64, w))
                .collect();
            Ok((n, terms))
        }
        other => Err(CliError::Parse(format!(
            "unknown function form {other:?}, expected walsh or table"
        ))),
    }
}

fn cmd_fourier_check(args: FourierArgs) -> Result<(), CliError> {
    let function_text = read_input(&args.function)?;
    let (n, terms) = load_walsh_terms(&function_text)?;
    let moves_text = read_input(&args.moves)?;

    let mut cur = TokenCursor::new(&moves_text);
    let mut report = String::new();
    while cur.peek().is_some() {
        let mut pair = [0u64; 2];
        let mut shown = [String::new(), String::new()];
        for (slot, side) in ["first move", "second move"].iter().enumerate() {
            let (line, bits) = cur.next_token(side).map_err(cursor_err)?;
            let h = BitString::parse(bits).map_err(crate::instances::bit_error)?;
            if h.len() != n {
                return Err(CliError::Parse(format!(
                    "line {line}: move {bits} has {} bits, expected {n}",
                    h.len()
                )));
            }
            pair[slot] = h.mask();
            shown[slot] = h.to_string();
        }
        let clear = walsh_noninteracting(&terms, pair[0], pair[1], Tolerance::Absolute(1e-9));
        let verdict = if clear { "non-interacting" } else { "interacting" };
        let _ = writeln!(report, "{} {} {verdict}", shown[0], shown[1]);
    }
    write_output(&args.out, &report)
}

fn cmd_decompose(args: DecomposeArgs) -> Result<(), CliError> {
    let problem = LoadedProblem::load(args.problem, &args.instance)?;
    match &problem {
        LoadedProblem::Pb(f) => {
            let Some(mv) = &args.mv else {
                return Err(CliError::Usage(
                    "decompose on a pb problem needs --move".to_string(),
                ));
            };
            let g = BitString::parse(mv).map_err(crate::instances::bit_error)?;
            if g.len() != f.n() {
                return Err(CliError::Parse(format!(
                    "move has {} bits, function needs {}",
                    g.len(),
                    f.n()
                )));
            }
            let w = WalshExpansion::decompose(f);
            let text = match decompose_move(&g, &w).map_err(pb_error)? {
                Some((a, b)) => format!("split {a} {b}\n"),
                None => "none\n".to_string(),
            };
            write_output(&args.out, &text)
        }
        _ => {
            let (Some(ta), Some(tb)) = (&args.parent_a, &args.parent_b) else {
                return Err(CliError::Usage(
                    "decompose on a permutation problem needs --parent-a and --parent-b"
                        .to_string(),
                ));
            };
            let Solution::Perm(p1) = parse_solution(&problem, ta)? else { unreachable!() };
            let Solution::Perm(p2) = parse_solution(&problem, tb)? else { unreachable!() };
            let perm = problem.as_perm().expect("perm problem");
            let decomposition = decompose_parents(perm, &p1, &p2).map_err(perm_error)?;
            let mut report = String::new();
            let _ = writeln!(
                report,
                "components: {} total, {} nontrivial, delta sum {}",
                decomposition.components().len(),
                decomposition.q(),
                fmt_num(decomposition.delta_sum())
            );
            for c in decomposition.components() {
                if c.is_trivial() {
                    let _ = writeln!(report, "  window {}..{} trivial", c.lo, c.hi);
                } else {
                    let _ = writeln!(
                        report,
                        "  window {}..{} delta {} active",
                        c.lo,
                        c.hi,
                        fmt_num(c.delta)
                    );
                }
            }
            write_output(&args.out, &report)
        }
    }
}

fn cmd_generate(args: GenerateArgs) -> Result<(), CliError> {
    let text = match args.problem {
        ProblemKind::Lop => {
            if args.size < 2 {
                return Err(CliError::Usage("lop instances need size at least 2".to_string()));
            }
            format_lop(&generate_lop(args.size, args.seed), None)
        }
        ProblemKind::Smtwtp => {
            if args.size < 1 {
                return Err(CliError::Usage("smtwtp instances need size at least 1".to_string()));
            }
            let inst = generate_smtwtp(args.size, args.seed, args.tardiness, args.due_range)
                .map_err(perm_error)?;
            format_smtwtp(&inst)
        }
        ProblemKind::Pb => {
            if args.size < 1 {
                return Err(CliError::Usage("pb instances need size at least 1".to_string()));
            }
            if args.size > graybox::group_fourier::MAX_BITS {
                return Err(CliError::Capacity(format!(
                    "pb size {} exceeds the {} variable limit",
                    args.size,
                    graybox::group_fourier::MAX_BITS
                )));
            }
            if args.k < 1 || args.k > args.size {
                return Err(CliError::Usage(format!(
                    "arity {} not in 1..={}",
                    args.k, args.size
                )));
            }
            if args.k > MAX_SUBFUNCTION_ARITY {
                return Err(CliError::Capacity(format!(
                    "arity {} exceeds the {MAX_SUBFUNCTION_ARITY} limit",
                    args.k
                )));
            }
            format_kbounded(&generate_nk(args.size, args.k, args.seed))
        }
    };
    write_output(&args.out, &text)
}
