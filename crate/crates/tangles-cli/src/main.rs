//! Command-line interface for the tangles toolkit.
//!
//! Exit codes are the machine contract: 0 for success / feasible, 1 for a
//! negative verdict (infeasible, violation, not unique, not NAE), 2 when a
//! verdict is unknown (budget or limit exhausted), 64 for usage errors and
//! 65 for unreadable or malformed input files. Stdout carries
//! human-readable detail on top. `-` stands for stdin or stdout.

use std::collections::BTreeMap;
use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use tangles::explore::test_conjecture;
use tangles::formats::{parse_list, parse_tangle, write_list, write_tangle};
use tangles::reduction::{
    build_list_with, embed_assignment, parse_nae, parse_positive_diff, to_positive_diff,
    write_positive_diff, Assignment, EmbedError, LoopPlan, PositiveDiffFormula,
    VariablePairSwaps,
};
use tangles::render::{render_tangle, RenderFormat, RenderOptions};
use tangles::search::{
    check_unique_swap_order, decide_feasible, enumerate_realizations, minimize_height,
    EnumerateError, SearchError, SearchOptions, UniqueOrderError, DEFAULT_NODE_BUDGET,
};
use tangles::simple::{odd_even_realize, target_permutation};
use tangles::tangle::{verify_realizes, Layer};

const EXIT_UNKNOWN: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_DATA: u8 = 65;

#[derive(Parser)]
#[command(
    name = "tangles",
    version,
    about = "Decide, construct, enumerate and draw tangles realizing swap lists"
)]
struct Cli {
    /// Worker threads (default: TANGLES_THREADS or all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct BudgetArgs {
    /// Search node budget; exceeding it reports UNKNOWN, never a wrong verdict.
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    max_nodes: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether any tangle realizes the list (exit 0 feasible, 1 infeasible).
    Check {
        /// List file.
        list: String,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Find a realizing tangle and write it out.
    Solve {
        /// List file.
        list: String,
        /// Guarantee the witness has minimum height.
        #[arg(long)]
        min_height: bool,
        /// Output tangle file.
        #[arg(short, long, default_value = "-")]
        out: String,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Count (and optionally print) every realization of the list.
    Enumerate {
        /// List file.
        list: String,
        /// Stop after this many realizations.
        #[arg(long)]
        limit: Option<u64>,
        /// Print each realization.
        #[arg(long)]
        print: bool,
    },
    /// Check whether all realizations share the same swap order per wire.
    UniqueOrder {
        /// List file.
        list: String,
        /// Stop after this many realizations.
        #[arg(long)]
        limit: Option<u64>,
    },
    /// Realize a simple list by odd-even transposition sort.
    Simple {
        /// List file.
        list: String,
        /// Output tangle file.
        #[arg(short, long, default_value = "-")]
        out: String,
    },
    /// Write the rigid n-wire family list.
    GenLn {
        /// Wire count (at least 3).
        #[arg(long)]
        n: u16,
        /// Output list file.
        #[arg(short, long, default_value = "-")]
        out: String,
    },
    /// Transform an NAE 3-SAT formula into positive distinct-variable form.
    Reduce {
        /// Formula file (DIMACS-flavored, `p nae3` header).
        formula: String,
        /// Output formula file.
        #[arg(short, long, default_value = "-")]
        out: String,
    },
    /// Build the reduction swap list for a positive distinct-variable formula.
    BuildGadgets {
        /// Formula file (positive, three distinct variables per clause).
        formula: String,
        /// Output list file with a role table.
        #[arg(short, long, default_value = "-")]
        out: String,
        /// Swaps reserved per variable-wire pair.
        #[arg(long, value_enum, default_value_t = VvArg::Eight)]
        variable_pair_swaps: VvArg,
    },
    /// Embed an assignment into the loop structure of the reduction.
    Embed {
        /// Formula file (positive, three distinct variables per clause).
        formula: String,
        /// Assignment file: signed variable numbers, `+v` true, `-v` false.
        assignment: String,
    },
    /// Test the non-separable even list conjecture exhaustively at one size.
    Explore {
        /// Wire count (at least 2).
        #[arg(long)]
        wires: u16,
        /// Largest multiplicity to enumerate (even).
        #[arg(long)]
        max_mult: u32,
        /// Report output file.
        #[arg(short, long, default_value = "-")]
        out: String,
        /// Directory for counterexample list files.
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Draw a tangle.
    Render {
        /// Tangle file.
        tangle: String,
        #[arg(long, value_enum, default_value_t = FormatArg::Ascii)]
        format: FormatArg,
        /// List file with `# role` comments used to label wires.
        #[arg(long)]
        roles: Option<String>,
        /// Comma-separated wire numbers to highlight.
        #[arg(long, value_delimiter = ',')]
        highlight: Vec<u16>,
        #[arg(long, default_value_t = 36)]
        col_width: u32,
        #[arg(long, default_value_t = 28)]
        row_height: u32,
        /// Output file.
        #[arg(short, long, default_value = "-")]
        out: String,
    },
    /// Check that a tangle realizes a list (exit 0 yes, 1 violation).
    Verify {
        /// Tangle file.
        tangle: String,
        /// List file.
        list: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Ascii,
    Svg,
}

#[derive(Clone, Copy, ValueEnum)]
enum VvArg {
    #[value(name = "8")]
    Eight,
    #[value(name = "6")]
    Six,
}

enum AppError {
    Usage(String),
    Data(String),
}

impl AppError {
    fn code(&self) -> u8 {
        match self {
            AppError::Usage(_) => EXIT_USAGE,
            AppError::Data(_) => EXIT_DATA,
        }
    }

    fn message(&self) -> &str {
        match self {
            AppError::Usage(m) | AppError::Data(m) => m,
        }
    }
}

fn read_input(path: &str) -> Result<String, AppError> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| AppError::Data(format!("stdin: {e}")))?;
        return Ok(buf);
    }
    fs::read_to_string(path).map_err(|e| AppError::Data(format!("{path}: {e}")))
}

fn write_output(path: &str, content: &str) -> Result<(), AppError> {
    if path == "-" {
        std::io::stdout()
            .write_all(content.as_bytes())
            .map_err(|e| AppError::Data(format!("stdout: {e}")))?;
        return Ok(());
    }
    fs::write(path, content).map_err(|e| AppError::Data(format!("{path}: {e}")))
}

fn load_list(path: &str) -> Result<tangles::SwapList, AppError> {
    parse_list(&read_input(path)?).map_err(|e| AppError::Data(format!("{path}: {e}")))
}

fn load_tangle(path: &str) -> Result<tangles::Tangle, AppError> {
    parse_tangle(&read_input(path)?).map_err(|e| AppError::Data(format!("{path}: {e}")))
}

fn load_positive_diff(path: &str) -> Result<PositiveDiffFormula, AppError> {
    parse_positive_diff(&read_input(path)?).map_err(|e| AppError::Data(format!("{path}: {e}")))
}

/// Assignment files carry whitespace-separated signed variable numbers;
/// `+v` sets variable v true, `-v` false. An optional trailing 0 and `#` or
/// `c` comment lines are ignored. Every variable must be set exactly once.
fn load_assignment(path: &str, vars: u32) -> Result<Assignment, AppError> {
    let text = read_input(path)?;
    let bad = |m: String| AppError::Data(format!("{path}: {m}"));
    let mut values: Vec<Option<bool>> = vec![None; vars as usize];
    'lines: for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with('c') {
            continue;
        }
        for token in line.split_whitespace() {
            let code: i64 = token
                .parse()
                .map_err(|_| bad(format!("bad token `{token}`")))?;
            if code == 0 {
                break 'lines;
            }
            let var = code.unsigned_abs();
            if var > vars as u64 {
                return Err(bad(format!("variable {var} out of range")));
            }
            let slot = &mut values[var as usize - 1];
            if slot.is_some() {
                return Err(bad(format!("variable {var} set twice")));
            }
            *slot = Some(code > 0);
        }
    }
    let values = values
        .into_iter()
        .enumerate()
        .map(|(i, v)| v.ok_or_else(|| bad(format!("variable {} not set", i + 1))))
        .collect::<Result<Vec<bool>, _>>()?;
    Ok(Assignment::new(values))
}

fn print_plan(plan: &LoopPlan) {
    for (index, &value) in plan.sides.iter().enumerate() {
        println!("side {} {}", index + 1, if value { "true" } else { "false" });
    }
    for (index, loops) in plan.clause_loops.iter().enumerate() {
        for (slot, looop) in loops.iter().enumerate() {
            println!("clause {} occurrence {} loop {}", index + 1, slot + 1, looop);
        }
    }
    for (index, arms) in plan.arm_orders.iter().enumerate() {
        let order: Vec<String> = arms.iter().map(|c| c.to_string()).collect();
        println!("loop {} arms {}", index + 1, order.join(" "));
    }
}

fn run(command: Command) -> Result<u8, AppError> {
    match command {
        Command::Check { list, budget } => {
            let l = load_list(&list)?;
            let opts = SearchOptions {
                node_budget: Some(budget.max_nodes),
                ..SearchOptions::default()
            };
            match decide_feasible(&l, &opts) {
                Ok(result) if result.is_feasible() => {
                    println!("FEASIBLE");
                    eprintln!(
                        "nodes {} states {} elapsed {:?}",
                        result.stats.nodes_expanded,
                        result.stats.states_memoized,
                        result.stats.elapsed
                    );
                    Ok(0)
                }
                Ok(_) => {
                    println!("INFEASIBLE");
                    Ok(1)
                }
                Err(SearchError::BudgetExhausted { stats }) => {
                    println!("UNKNOWN");
                    eprintln!("node budget exhausted after {}", stats.nodes_expanded);
                    Ok(EXIT_UNKNOWN)
                }
            }
        }
        Command::Solve {
            list,
            min_height,
            out,
            budget,
        } => {
            let l = load_list(&list)?;
            let opts = SearchOptions {
                node_budget: Some(budget.max_nodes),
                ..SearchOptions::default()
            };
            let solved = if min_height {
                minimize_height(&l, &opts)
            } else {
                decide_feasible(&l, &opts)
            };
            match solved {
                Ok(result) if result.is_feasible() => {
                    let witness = result.witness.expect("feasible carries witness");
                    let text = write_tangle(&witness);
                    if out == "-" {
                        println!("# height {}", witness.height());
                        write_output(&out, &text)?;
                    } else {
                        write_output(&out, &text)?;
                        println!("height {}", witness.height());
                    }
                    Ok(0)
                }
                Ok(_) => {
                    println!("INFEASIBLE");
                    Ok(1)
                }
                Err(SearchError::BudgetExhausted { stats }) => {
                    println!("UNKNOWN");
                    eprintln!("node budget exhausted after {}", stats.nodes_expanded);
                    Ok(EXIT_UNKNOWN)
                }
            }
        }
        Command::Enumerate { list, limit, print } => {
            let l = load_list(&list)?;
            let mut index = 0u64;
            let outcome = enumerate_realizations(
                &l,
                |t| {
                    index += 1;
                    if print {
                        println!("# tangle {index}");
                        print!("{}", write_tangle(t));
                    }
                },
                limit,
            );
            match outcome {
                Ok(count) => {
                    println!("count {count}");
                    Ok(0)
                }
                Err(EnumerateError::LimitReached { visited }) => {
                    println!("count {visited} (limit reached)");
                    Ok(EXIT_UNKNOWN)
                }
            }
        }
        Command::UniqueOrder { list, limit } => {
            let l = load_list(&list)?;
            match check_unique_swap_order(&l, limit) {
                Ok(report) => {
                    println!("realizations {}", report.realizations);
                    println!("distinct-signatures {}", report.distinct_signatures);
                    println!("unique {}", report.unique);
                    Ok(if report.unique { 0 } else { 1 })
                }
                Err(UniqueOrderError::InfeasibleList) => {
                    println!("INFEASIBLE");
                    Ok(1)
                }
                Err(UniqueOrderError::LimitReached { visited }) => {
                    println!("UNKNOWN after {visited} realizations");
                    Ok(EXIT_UNKNOWN)
                }
            }
        }
        Command::Simple { list, out } => {
            let l = load_list(&list)?;
            let target = target_permutation(&l).map_err(|e| AppError::Data(e.to_string()))?;
            let tangle = odd_even_realize(&Layer::identity(l.wires()), &target.target)
                .expect("start and target share the wire count");
            let text = write_tangle(&tangle);
            if out == "-" {
                println!("# height {}", tangle.height());
                write_output(&out, &text)?;
            } else {
                write_output(&out, &text)?;
                println!("height {}", tangle.height());
            }
            Ok(0)
        }
        Command::GenLn { n, out } => {
            let l = tangles::gen_ln(n).map_err(|e| AppError::Usage(format!("--n {n}: {e}")))?;
            write_output(&out, &write_list(&l))?;
            Ok(0)
        }
        Command::Reduce { formula, out } => {
            let f = parse_nae(&read_input(&formula)?)
                .map_err(|e| AppError::Data(format!("{formula}: {e}")))?;
            let (g, trace) = to_positive_diff(&f);
            let mut text = String::new();
            for (index, (&x, &y)) in trace.x.iter().zip(&trace.y).enumerate() {
                text.push_str(&format!("c variable {} -> x {} y {}\n", index + 1, x, y));
            }
            text.push_str(&format!(
                "c triple a {} b {} d {}\n",
                trace.a, trace.b, trace.d
            ));
            if let Some(helper) = trace.helper {
                text.push_str(&format!("c helper variable {helper}\n"));
            }
            text.push_str(&write_positive_diff(&g));
            write_output(&out, &text)?;
            Ok(0)
        }
        Command::BuildGadgets {
            formula,
            out,
            variable_pair_swaps,
        } => {
            let f = load_positive_diff(&formula)?;
            let vv = match variable_pair_swaps {
                VvArg::Eight => VariablePairSwaps::ReservedEight,
                VvArg::Six => VariablePairSwaps::BlanketSix,
            };
            let instance = build_list_with(&f, vv);
            write_output(&out, &instance.to_text())?;
            Ok(0)
        }
        Command::Embed {
            formula,
            assignment,
        } => {
            let f = load_positive_diff(&formula)?;
            let a = load_assignment(&assignment, f.vars())?;
            match embed_assignment(&f, &a) {
                Ok(plan) => {
                    print_plan(&plan);
                    Ok(0)
                }
                Err(e @ EmbedError::NotNae { .. }) => {
                    println!("NOT-NAE: {e}");
                    Ok(1)
                }
                Err(e @ EmbedError::ArmInterleaving { .. }) => {
                    println!("INTERLEAVING: {e}");
                    Ok(1)
                }
            }
        }
        Command::Explore {
            wires,
            max_mult,
            out,
            out_dir,
            budget,
        } => {
            if wires < 2 {
                return Err(AppError::Usage("--wires must be at least 2".to_string()));
            }
            if max_mult % 2 != 0 {
                return Err(AppError::Usage("--max-mult must be even".to_string()));
            }
            let opts = SearchOptions {
                node_budget: Some(budget.max_nodes),
                ..SearchOptions::default()
            };
            let report = test_conjecture(wires, max_mult, &opts);
            write_output(&out, &report.to_string())?;
            for (index, counterexample) in report.counterexamples.iter().enumerate() {
                let path = out_dir.join(format!("counterexample-{}.list", index + 1));
                fs::write(&path, write_list(counterexample))
                    .map_err(|e| AppError::Data(format!("{}: {e}", path.display())))?;
                eprintln!("wrote {}", path.display());
            }
            Ok(if report.unknowns.is_empty() { 0 } else { EXIT_UNKNOWN })
        }
        Command::Render {
            tangle,
            format,
            roles,
            highlight,
            col_width,
            row_height,
            out,
        } => {
            let t = load_tangle(&tangle)?;
            let mut opts = RenderOptions::new(match format {
                FormatArg::Ascii => RenderFormat::Ascii,
                FormatArg::Svg => RenderFormat::Svg,
            });
            opts.col_width = col_width;
            opts.row_height = row_height;
            opts.highlight = highlight.into_iter().collect();
            if let Some(path) = roles {
                opts.labels = parse_roles(&read_input(&path)?);
            }
            let text = render_tangle(&t, &opts).map_err(|e| AppError::Usage(e.to_string()))?;
            write_output(&out, &text)?;
            Ok(0)
        }
        Command::Verify { tangle, list } => {
            let t = load_tangle(&tangle)?;
            let l = load_list(&list)?;
            let verdict = verify_realizes(&t, &l).map_err(|e| AppError::Data(e.to_string()))?;
            match verdict.violation() {
                None => {
                    println!("OK");
                    Ok(0)
                }
                Some(violation) => {
                    println!("VIOLATION: {violation}");
                    Ok(1)
                }
            }
        }
    }
}

/// Extracts `# role <wire> <name>` comments from a list file.
fn parse_roles(text: &str) -> BTreeMap<u16, String> {
    let mut labels = BTreeMap::new();
    for line in text.lines() {
        let mut tokens = line.split_whitespace();
        if tokens.next() != Some("#") || tokens.next() != Some("role") {
            continue;
        }
        if let (Some(wire), Some(name)) = (tokens.next(), tokens.next()) {
            if let Ok(wire) = wire.parse::<u16>() {
                labels.insert(wire, name.to_string());
            }
        }
    }
    labels
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(error)
            if matches!(
                error.kind(),
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion
            ) =>
        {
            let _ = error.print();
            return ExitCode::SUCCESS;
        }
        Err(error) => {
            let _ = error.print();
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let threads = cli.threads.or_else(|| {
        std::env::var("TANGLES_THREADS")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    if let Some(threads) = threads {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(error) => {
            eprintln!("error: {}", error.message());
            ExitCode::from(error.code())
        }
    }
}
