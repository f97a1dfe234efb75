mod input;

use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use homodec::algorithms::{is_trivial, mhs, shs};
use homodec::axioms::{
    check_axiom, check_base, check_family_closure, check_submodularity, Axiom, AxiomReport, ClosureLevel,
    SubmodularMode, Witness,
};
use homodec::generate;
use homodec::instances::GraphKind;
use homodec::oracle;
use homodec::strong::{check_overlap_union_closure, decompose, strong_bimodules, type_nodes, TreeError, Typing};
use homodec::{ElementSet, Relation, StrongTree};
use serde_json::json;

use input::{load, load_triples, parse_ids, read_text, InputOpts, Loaded};

#[derive(Debug)]
pub enum Failure {
    CheckFailed,
    Parse(String),
    Runtime(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::CheckFailed => 1,
            Failure::Parse(_) => 2,
            Failure::Runtime(_) => 3,
        }
    }
}

fn runtime(e: impl std::fmt::Display) -> Failure {
    Failure::Runtime(e.to_string())
}

#[derive(Parser)]
#[command(name = "homodec", version, about = "Decompose homogeneous relations into strong sets")]
struct Cli {
    /// Worker threads for the per-element MHS runs; 0 uses every core.
    #[arg(long, global = true, env = "HOMODEC_THREADS", default_value_t = 1)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the strong-set tree.
    Decompose {
        #[command(flatten)]
        input: InputOpts,
        #[arg(long, value_enum, default_value = "auto")]
        type_nodes: TypeNodes,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Write to a file instead of stdout.
        #[arg(long)]
        out: Option<String>,
    },
    /// Answer one query about the input.
    Query {
        #[command(flatten)]
        input: InputOpts,
        #[arg(value_enum)]
        op: QueryOp,
        /// Element ids, comma or space separated.
        ids: Vec<String>,
    },
    /// Check axioms; exits 1 when any fails.
    Check {
        #[command(flatten)]
        input: InputOpts,
        /// Checks to run, comma separated.
        #[arg(long, value_enum, value_delimiter = ',', default_values = ["a1", "a2", "a3", "a4"])]
        axiom: Vec<CheckName>,
        /// Enumerate every overlapping pair for submodularity (n <= 12).
        #[arg(long)]
        exhaustive: bool,
        #[arg(long, default_value_t = SubmodularMode::DEFAULT_PAIRS)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print a random instance in edge-list format.
    Generate {
        #[arg(long, value_parser = parse_kind)]
        kind: GraphKind,
        #[arg(long)]
        n: usize,
        /// Edge probability.
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        /// Colour count for 2-structures.
        #[arg(long, default_value_t = 2)]
        colors: usize,
        /// Directed graphs: one arc per pair instead of independent arcs.
        #[arg(long)]
        tournament: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<String>,
    },
    /// Brute-force answers by subset enumeration (small n only).
    Oracle {
        #[command(flatten)]
        input: InputOpts,
        #[arg(value_enum)]
        op: OracleOp,
        ids: Vec<String>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TypeNodes {
    Off,
    /// Trust graph inputs; check A2 for relation JSON.
    Auto,
    /// Check A2 and fail if typing is impossible.
    Strict,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum QueryOp {
    Shs,
    Mhs,
    Trivial,
    Strong,
    Splitters,
    Homogeneous,
    Classes,
    Holds,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckName {
    Base,
    A1,
    A2,
    A3,
    A4,
    Submodularity,
    WeaklyPartitive,
    Partitive,
    Closure,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OracleOp {
    Homogeneous,
    Shs,
    Mhs,
    Strong,
    Trivial,
}

fn parse_kind(s: &str) -> Result<GraphKind, String> {
    s.parse()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    let threads = match cli.threads {
        0 => std::thread::available_parallelism().map_or(1, |n| n.get()),
        t => t,
    };
    match run(cli.command, threads) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            match &failure {
                Failure::CheckFailed => {}
                Failure::Parse(m) => eprintln!("parse error: {m}"),
                Failure::Runtime(m) => eprintln!("error: {m}"),
            }
            ExitCode::from(failure.code())
        }
    }
}

fn run(command: Command, threads: usize) -> Result<(), Failure> {
    match command {
        Command::Decompose { input, type_nodes, format, out } => {
            let tree = decompose_input(&input, type_nodes, threads)?;
            let text = match format {
                Format::Json => tree.to_json() + "\n",
                Format::Text => tree.to_text(),
            };
            emit(&text, out.as_deref())
        }
        Command::Query { input, op, ids } => {
            let value = query(&load(&input)?, op, &ids)?;
            emit(&format!("{value}\n"), None)
        }
        Command::Check { input, axiom, exhaustive, samples, seed } => {
            let mode = if exhaustive { SubmodularMode::Exhaustive } else { SubmodularMode::Sampled { pairs: samples, seed } };
            check(&input, &axiom, mode)
        }
        Command::Generate { kind, n, p, colors, tournament, seed, out } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(Failure::Parse(format!("probability {p} outside [0, 1]")));
            }
            let g = match kind {
                GraphKind::Undirected => generate::gnp(n, p, seed),
                GraphKind::Directed if tournament => generate::tournament(n, seed),
                GraphKind::Directed => generate::digraph(n, p, seed),
                GraphKind::Bipartite => generate::bipartite(n, p, seed),
                GraphKind::TwoStructure => generate::two_structure(n, colors, seed),
            };
            emit(&g.to_edge_list(), out.as_deref())
        }
        Command::Oracle { input, op, ids } => {
            let value = oracle_query(&load(&input)?, op, &ids)?;
            emit(&format!("{value}\n"), None)
        }
    }
}

fn emit(text: &str, out: Option<&str>) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Runtime(format!("writing {path}: {e}"))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn decompose_input(input: &InputOpts, mode: TypeNodes, threads: usize) -> Result<StrongTree, Failure> {
    match load(input)? {
        Loaded::Bimodules { instance, .. } => {
            if mode == TypeNodes::Strict {
                return Err(Failure::Runtime("node kinds are not defined for bimodule trees".into()));
            }
            let strong = strong_bimodules(&instance).map_err(runtime)?;
            StrongTree::build(instance.len(), &strong).map_err(runtime)
        }
        Loaded::Relation { relation, kind } => {
            // graph inputs satisfy A2, except colour pairs of ordered 2-structures
            let trusted = matches!(kind, Some(GraphKind::Undirected | GraphKind::Directed))
                || (kind == Some(GraphKind::TwoStructure) && !input.ordered_colors);
            match mode {
                TypeNodes::Off => decompose(&relation, Typing::Off, threads).map_err(runtime),
                TypeNodes::Auto if trusted => decompose(&relation, Typing::Assume, threads).map_err(runtime),
                TypeNodes::Auto => decompose(&relation, Typing::CheckA2, threads).map_err(runtime),
                TypeNodes::Strict => {
                    let report = check_axiom(&relation, Axiom::A2);
                    if !report.holds {
                        let witness = serde_json::to_string(&report.witness).unwrap_or_default();
                        return Err(Failure::Runtime(format!("relation fails A2 (witness {witness}); cannot type nodes")));
                    }
                    let mut tree = decompose(&relation, Typing::Off, threads).map_err(runtime)?;
                    type_nodes(&mut tree, &relation).map_err(|e: TreeError| runtime(e))?;
                    Ok(tree)
                }
            }
        }
    }
}

fn single(ids: &[usize], what: &str) -> Result<usize, Failure> {
    match ids {
        [x] => Ok(*x),
        _ => Err(Failure::Parse(format!("{what} takes exactly one element id"))),
    }
}

fn seed_set(n: usize, ids: &[usize]) -> Result<ElementSet, Failure> {
    if ids.is_empty() {
        return Err(Failure::Parse("expected at least one element id".into()));
    }
    Ok(ElementSet::new(n, ids.iter().copied()))
}

fn query(loaded: &Loaded, op: QueryOp, raw: &[String]) -> Result<serde_json::Value, Failure> {
    match loaded {
        Loaded::Relation { relation: r, .. } => {
            let n = r.len();
            let ids = parse_ids(raw, n)?;
            Ok(match op {
                QueryOp::Shs => json!(shs(r, &seed_set(n, &ids)?).map_err(runtime)?),
                QueryOp::Mhs => json!(mhs(r, single(&ids, "mhs")?)),
                QueryOp::Trivial => json!(is_trivial(r)),
                QueryOp::Strong => json!(homodec::strong::strong_sets(r)),
                QueryOp::Splitters => json!(r.splitters(&seed_set(n, &ids)?).map_err(runtime)?),
                QueryOp::Homogeneous => json!(r.is_homogeneous_set(&seed_set(n, &ids)?).map_err(runtime)?),
                QueryOp::Classes => json!(r.classes(single(&ids, "classes")?)),
                QueryOp::Holds => match ids[..] {
                    [s, x, y] => json!(r.holds(s, x, y).map_err(runtime)?),
                    _ => return Err(Failure::Parse("holds takes three ids: s x y".into())),
                },
            })
        }
        Loaded::Bimodules { instance, .. } => {
            let n = instance.len();
            let ids = parse_ids(raw, n)?;
            Ok(match op {
                QueryOp::Shs => json!(instance.smallest_bimodule(&seed_set(n, &ids)?)),
                QueryOp::Strong => json!(strong_bimodules(instance).map_err(runtime)?),
                QueryOp::Homogeneous => json!(instance.is_bimodule(&seed_set(n, &ids)?)),
                _ => return Err(Failure::Runtime("query not available for bipartite input".into())),
            })
        }
    }
}

fn oracle_query(loaded: &Loaded, op: OracleOp, raw: &[String]) -> Result<serde_json::Value, Failure> {
    match loaded {
        Loaded::Relation { relation: r, .. } => {
            let n = r.len();
            let ids = parse_ids(raw, n)?;
            Ok(match op {
                OracleOp::Homogeneous => json!(oracle::enumerate_homogeneous_sets(r).map_err(runtime)?),
                OracleOp::Shs => json!(oracle::brute_shs(r, &seed_set(n, &ids)?).map_err(runtime)?),
                OracleOp::Mhs => json!(oracle::brute_mhs(r, single(&ids, "mhs")?).map_err(runtime)?),
                OracleOp::Strong => json!(oracle::brute_strong_sets(r).map_err(runtime)?),
                OracleOp::Trivial => json!(oracle::brute_is_trivial(r).map_err(runtime)?),
            })
        }
        Loaded::Bimodules { graph, .. } => Ok(match op {
            OracleOp::Homogeneous => json!(oracle::brute_bimodules(graph).map_err(runtime)?),
            OracleOp::Strong => json!(oracle::brute_strong_bimodules(graph).map_err(runtime)?),
            _ => return Err(Failure::Runtime("oracle query not available for bipartite input".into())),
        }),
    }
}

fn print_report(report: &AxiomReport) {
    println!("{}", serde_json::to_string(report).expect("report serializes"));
}

fn check(input: &InputOpts, names: &[CheckName], mode: SubmodularMode) -> Result<(), Failure> {
    let text = read_text(&input.input)?;
    // raw triples get the base axioms first; the rest needs partitions
    if text.contains("\"triples\"") {
        let triples = load_triples(&text)?;
        let base = check_base(&triples);
        if !base.holds || names.contains(&CheckName::Base) {
            print_report(&base);
        }
        if !base.holds {
            return Err(Failure::CheckFailed);
        }
    }
    let mut failed = false;
    match load(input)? {
        Loaded::Bimodules { .. } if names.iter().any(|&c| c != CheckName::Closure) => {
            return Err(Failure::Runtime("bipartite input only supports --axiom closure".into()));
        }
        Loaded::Bimodules { instance, .. } => {
            let report = closure_report(check_overlap_union_closure(&instance))?;
            failed |= !report.holds;
            print_report(&report);
        }
        Loaded::Relation { relation, .. } => {
            for &name in names {
                let report = relation_check(&relation, name, mode)?;
                failed |= !report.holds;
                print_report(&report);
            }
        }
    }
    if failed {
        Err(Failure::CheckFailed)
    } else {
        Ok(())
    }
}

fn relation_check(r: &Relation, name: CheckName, mode: SubmodularMode) -> Result<AxiomReport, Failure> {
    Ok(match name {
        CheckName::Base => check_base(r),
        CheckName::A1 => check_axiom(r, Axiom::A1),
        CheckName::A2 => check_axiom(r, Axiom::A2),
        CheckName::A3 => check_axiom(r, Axiom::A3),
        CheckName::A4 => check_axiom(r, Axiom::A4),
        CheckName::Submodularity => check_submodularity(r, mode).map_err(runtime)?,
        CheckName::WeaklyPartitive => check_family_closure(r, ClosureLevel::WeaklyPartitive).map_err(runtime)?,
        CheckName::Partitive => check_family_closure(r, ClosureLevel::Partitive).map_err(runtime)?,
        CheckName::Closure => closure_report(check_overlap_union_closure(r))?,
    })
}

fn closure_report(result: Result<(), TreeError>) -> Result<AxiomReport, Failure> {
    let (holds, witness) = match result {
        Ok(()) => (true, None),
        Err(TreeError::ClosureViolation { a, b }) => (false, Some(Witness::Sets(vec![a, b]))),
        Err(e) => return Err(runtime(e)),
    };
    Ok(AxiomReport { axiom: "closure".into(), holds, witness })
}
