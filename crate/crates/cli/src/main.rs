use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use orbigroupoid_cli::ggx::{from_ggraph, parse_ggx, print_ggx};
use orbigroupoid_cli::report::{check_report, functor_manifest, skeleton_report, Format};
use orbigroupoid_cli::{apply_move, hint, load_ggraph, read_input, Fixture, MoveSpec};
use orbigroupoid_core::equivalence::{weak_equivalence, EquivVerdict, SearchBounds, Strategy};
use orbigroupoid_core::pi::PiCategory;

const EXIT_ERROR: u8 = 3;

#[derive(Parser)]
#[command(name = "orbigroupoid", version, about = "Equivariant fundamental categories of finite group actions on graphs")]
struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: FormatArg,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    JsonLines,
}

#[derive(Clone, Copy, ValueEnum)]
enum FixtureArg {
    C4refl,
    Hex6,
    IndZ4,
    C4,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Certified,
    Generic,
}

#[derive(Args)]
struct Input {
    /// A .ggx file.
    file: Option<PathBuf>,
    /// A built-in example instead of a file.
    #[arg(long, value_enum, conflicts_with = "file")]
    fixture: Option<FixtureArg>,
}

#[derive(Args)]
struct MoveArgs {
    /// Divide by a normal subgroup: `full`, `trivial` or generator names `a,b`.
    #[arg(long, conflicts_with_all = ["induce", "collapse"])]
    quotient: Option<String>,
    /// Induce up to a group: `z4` or a .ggx file whose [group] is used.
    #[arg(long, requires = "via", conflicts_with = "collapse")]
    induce: Option<String>,
    /// Generator images for --induce, as `t=r2,...`.
    #[arg(long, requires = "induce")]
    via: Option<String>,
    /// Map everything to a point.
    #[arg(long)]
    collapse: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Isomorphism classes, automorphism groups and hom-set shapes.
    Skeleton(Input),
    /// Apply a move and write the resulting G-graph.
    Move {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        mv: MoveArgs,
        /// Where to write the .ggx output (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide whether the functor induced by a move is an equivalence.
    /// Exit status 0, 1 or 2 for Equivalent, NotEquivalent or Unknown.
    Check {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        mv: MoveArgs,
        #[arg(long, value_enum, default_value = "certified")]
        strategy: StrategyArg,
        #[arg(long, default_value_t = 8)]
        max_word_length: usize,
        /// Write the verdict with its witness or counterexample as JSON.
        #[arg(long)]
        emit_witness: Option<PathBuf>,
    },
    /// Barycentric subdivision, which removes edge inversions.
    Subdivide {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn fixture(f: FixtureArg) -> Fixture {
    match f {
        FixtureArg::C4refl => Fixture::C4refl,
        FixtureArg::Hex6 => Fixture::Hex6,
        FixtureArg::IndZ4 => Fixture::IndZ4,
        FixtureArg::C4 => Fixture::C4,
    }
}

fn move_spec(mv: &MoveArgs, fixture: Option<Fixture>) -> Result<MoveSpec> {
    if let Some(n) = &mv.quotient {
        return Ok(MoveSpec::Quotient(n.clone()));
    }
    if let (Some(group), Some(via)) = (&mv.induce, &mv.via) {
        return Ok(MoveSpec::Induce { group: group.clone(), via: via.clone() });
    }
    if mv.collapse {
        return Ok(MoveSpec::Collapse);
    }
    match fixture.and_then(Fixture::default_move) {
        Some(spec) => Ok(spec),
        None => bail!("give a move: --quotient, --induce with --via, or --collapse"),
    }
}

/// Writes to stdout, treating a closed pipe as success.
fn emit(text: &str) -> Result<()> {
    match std::io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn write_or_print(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => Ok(std::fs::write(path, text)?),
        None => emit(text),
    }
}

fn run(cli: Cli) -> Result<u8> {
    let format = match cli.format {
        FormatArg::Text => Format::Text,
        FormatArg::JsonLines => Format::JsonLines,
    };
    match cli.command {
        Command::Skeleton(input) => {
            let fx = input.fixture.map(fixture);
            let x = load_ggraph(&read_input(input.file.as_deref(), fx)?)?;
            emit(&skeleton_report(&PiCategory::new(x), format)?)?;
            Ok(0)
        }
        Command::Move { input, mv, out } => {
            let fx = input.fixture.map(fixture);
            let x = load_ggraph(&read_input(input.file.as_deref(), fx)?)?;
            let (map, functor) = apply_move(&x, &move_spec(&mv, fx)?)?;
            let ggx = print_ggx(&from_ggraph(map.target()));
            let manifest = functor_manifest(&functor, format)?;
            match (&out, format) {
                (Some(_), _) => {
                    write_or_print(&out, &ggx)?;
                    emit(&manifest)?;
                }
                (None, Format::Text) => {
                    let comments: String = manifest.lines().map(|l| format!("# {l}\n")).collect();
                    emit(&(ggx + &comments))?;
                }
                (None, Format::JsonLines) => {
                    emit(&format!("{manifest}{}\n", serde_json::json!({ "kind": "ggx", "detail": ggx })))?;
                }
            }
            Ok(0)
        }
        Command::Check { input, mv, strategy, max_word_length, emit_witness } => {
            let fx = input.fixture.map(fixture);
            let x = load_ggraph(&read_input(input.file.as_deref(), fx)?)?;
            let (_, functor) = apply_move(&x, &move_spec(&mv, fx)?)?;
            let (strategy, name) = match strategy {
                StrategyArg::Certified => (Strategy::Certified, "certified"),
                StrategyArg::Generic => (Strategy::Generic(SearchBounds { word_length: max_word_length }), "generic"),
            };
            let verdict = weak_equivalence(&functor, strategy)?;
            if let Some(path) = emit_witness {
                std::fs::write(path, serde_json::to_string_pretty(&verdict)?)?;
            }
            emit(&check_report(&functor, &verdict, name, format))?;
            Ok(match verdict {
                EquivVerdict::Equivalent(_) => 0,
                EquivVerdict::NotEquivalent(_) => 1,
                EquivVerdict::Unknown { .. } => 2,
            })
        }
        Command::Subdivide { file, out } => {
            let doc = parse_ggx(&read_input(Some(&file), None)?)?;
            let x = Arc::new(doc.resolve()?.subdivided()?);
            write_or_print(&out, &print_ggx(&from_ggraph(&x)))?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_ERROR } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            if let Some(h) = hint(&e) {
                eprintln!("hint: {h}");
            }
            ExitCode::from(EXIT_ERROR)
        }
    }
}
