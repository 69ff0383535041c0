//! Command-line front end for `pivotal`.
//!
//! Each subcommand reads one graph (edge list or graph6, from `--input` or
//! standard input), calls a single library function and prints the result in
//! a canonical text form. Exit status: 0 on success, 1 when the operation is
//! not defined on the given graph (not applicable, determinant 0), 2 for
//! usage, input and parse errors.

pub mod format;

use std::ffi::OsString;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use pivotal::{DoubleOccurrenceWord, Graph, Vertex};
use thiserror::Error;

use crate::format::{parse_graph, parse_seq, parse_set, serialize_graph, FormatError, GraphFormat};

#[derive(Parser, Debug)]
#[command(
    name = "pivotal",
    version,
    about = "Pivots, local complementation and GF(2) determinants of graphs"
)]
struct Cli {
    /// Read the graph from this file instead of standard input.
    #[arg(long, global = true, value_name = "FILE")]
    input: Option<PathBuf>,

    /// Input graph format.
    #[arg(long, global = true, value_enum, default_value_t = GraphFormat::EdgeList)]
    format: GraphFormat,

    /// Worker threads for subset enumeration (orbit, count-supports). Ignored
    /// when built without the `parallel` feature.
    #[arg(long, global = true, value_name = "N", value_parser = clap::value_parser!(u16).range(1..))]
    threads: Option<u16>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Determinant of the adjacency matrix over GF(2): 0 or 1.
    Det,
    /// Parity of the number of perfect matchings (loops may cover their vertex).
    Pm,
    /// Pivot on the edge U V.
    Pivot { u: String, v: String },
    /// Local complementation at U (the loop variant when U carries a loop).
    Lc { u: String },
    /// Apply a sequence such as "[u v][w]" left to right.
    Apply {
        #[arg(long)]
        seq: String,
    },
    /// The graph reached by any applicable sequence with the given support.
    ApplySupport {
        #[arg(long, allow_hyphen_values = true)]
        set: String,
    },
    /// Whether a sequence, or some sequence with a given support, is applicable.
    Applicable(ApplicableArgs),
    /// Synthesize a reduced applicable sequence with the given support.
    Reduce {
        #[arg(long, allow_hyphen_values = true)]
        set: String,
        /// Vertex that the first operation must touch.
        #[arg(long)]
        anchor: Option<String>,
    },
    /// A sequence of assembly rules (loops mark positive vertices) that empties the graph.
    ReduceToEmpty,
    /// Every graph reachable by applicable sequences, separated by blank lines.
    Orbit,
    /// Number of vertex subsets S with det A[S] = 1.
    CountSupports,
    /// Overlap graph of a double-occurrence word; reads no input.
    Overlap {
        #[arg(long)]
        word: String,
    },
    /// A nonempty vertex set meeting every neighbourhood evenly, or `none`.
    Witness,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct ApplicableArgs {
    #[arg(long)]
    seq: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    set: Option<String>,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{}: {source}", path.as_ref().map_or("<stdin>".into(), |p| p.display().to_string()))]
    Io {
        path: Option<PathBuf>,
        source: io::Error,
    },
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("{command}: {source}")]
    Lib {
        command: &'static str,
        source: pivotal::Error,
    },
    #[cfg(feature = "parallel")]
    #[error("thread pool: {0}")]
    Threads(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Lib { source, .. } if source.is_domain() => 1,
            _ => 2,
        }
    }
}

/// Runs the command line `args` (including the program name) and returns the
/// exit status.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = if e.use_stderr() {
                write!(stderr, "{}", e.render())
            } else {
                write!(stdout, "{}", e.render())
            };
            return e.exit_code();
        }
    };
    let result =
        input_graph(&cli, stdin).and_then(|g| with_threads(cli.threads, || execute(&cli, g)));
    match result {
        Ok(text) => match stdout
            .write_all(text.as_bytes())
            .and_then(|_| stdout.flush())
        {
            Ok(()) => 0,
            Err(e) => {
                let _ = writeln!(stderr, "pivotal: {e}");
                2
            }
        },
        Err(e) => {
            let _ = writeln!(stderr, "pivotal: {e}");
            e.exit_code()
        }
    }
}

#[cfg(feature = "parallel")]
fn with_threads<R: Send>(
    threads: Option<u16>,
    f: impl FnOnce() -> Result<R, CliError> + Send,
) -> Result<R, CliError> {
    match threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.into())
            .build()
            .map_err(|e| CliError::Threads(e.to_string()))?
            .install(f),
        None => f(),
    }
}

#[cfg(not(feature = "parallel"))]
fn with_threads<R>(
    _threads: Option<u16>,
    f: impl FnOnce() -> Result<R, CliError>,
) -> Result<R, CliError> {
    f()
}

/// The input graph, or `None` for subcommands that read no input.
fn input_graph(cli: &Cli, stdin: &mut dyn Read) -> Result<Option<Graph>, CliError> {
    if matches!(cli.command, Command::Overlap { .. }) {
        return Ok(None);
    }
    let text = match &cli.input {
        Some(path) => std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: Some(path.clone()),
            source,
        })?,
        None => {
            let mut s = String::new();
            stdin
                .read_to_string(&mut s)
                .map_err(|source| CliError::Io { path: None, source })?;
            s
        }
    };
    Ok(Some(parse_graph(cli.format, &text)?))
}

fn bit(b: bool) -> String {
    format!("{}\n", u8::from(b))
}

fn execute(cli: &Cli, g: Option<Graph>) -> Result<String, CliError> {
    let command = command_name(&cli.command);
    let lib = |source| CliError::Lib { command, source };

    let Some(g) = g else {
        let Command::Overlap { word } = &cli.command else {
            unreachable!("only overlap reads no input")
        };
        let w = DoubleOccurrenceWord::parse(word).map_err(lib)?;
        return Ok(serialize_graph(&w.overlap_graph()));
    };
    Ok(match &cli.command {
        Command::Det => bit(g.adjacency().det()),
        Command::Pm => bit(if g.is_simple() {
            pivotal::pm_parity(&g).map_err(lib)?
        } else {
            pivotal::general_pm_parity(&g)
        }),
        Command::Pivot { u, v } => serialize_graph(&g.pivot(&u.into(), &v.into()).map_err(lib)?),
        Command::Lc { u } => {
            let u = Vertex::from(u);
            let h = if g.has_loop(&u).map_err(lib)? {
                g.loop_complement(&u)
            } else {
                g.local_complement(&u)
            };
            serialize_graph(&h.map_err(lib)?)
        }
        Command::Apply { seq } => {
            serialize_graph(&pivotal::apply(&g, &parse_seq(seq)?).map_err(lib)?)
        }
        Command::ApplySupport { set } => {
            serialize_graph(&pivotal::apply_support(&g, &parse_set(set)?).map_err(lib)?)
        }
        Command::Applicable(ApplicableArgs { seq, set }) => {
            let ok = match (seq, set) {
                (Some(seq), _) => pivotal::is_applicable(&g, &parse_seq(seq)?),
                (_, Some(set)) => pivotal::is_support_applicable(&g, &parse_set(set)?),
                (None, None) => unreachable!("clap requires one of --seq/--set"),
            };
            format!("{}\n", ok.map_err(lib)?)
        }
        Command::Reduce { set, anchor } => {
            let anchor = anchor.as_deref().map(Vertex::from);
            let seq =
                pivotal::synthesize_reduced(&g, &parse_set(set)?, anchor.as_ref()).map_err(lib)?;
            format!("{seq}\n")
        }
        Command::ReduceToEmpty => {
            let seq = pivotal::reduce_to_empty(&g).ok_or(lib(pivotal::Error::NoSequence))?;
            format!("{seq}\n")
        }
        Command::Orbit => {
            let members: Vec<String> = pivotal::orbit(&g)
                .map_err(lib)?
                .iter()
                .map(serialize_graph)
                .collect();
            members.join("\n")
        }
        Command::CountSupports => {
            format!("{}\n", pivotal::count_applicable_supports(&g).map_err(lib)?)
        }
        Command::Witness => match g.adjacency().kernel_witness() {
            Some(w) => format!("{w}\n"),
            None => "none\n".into(),
        },
        Command::Overlap { .. } => unreachable!("handled before reading input"),
    })
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Det => "det",
        Command::Pm => "pm",
        Command::Pivot { .. } => "pivot",
        Command::Lc { .. } => "lc",
        Command::Apply { .. } => "apply",
        Command::ApplySupport { .. } => "apply-support",
        Command::Applicable(_) => "applicable",
        Command::Reduce { .. } => "reduce",
        Command::ReduceToEmpty => "reduce-to-empty",
        Command::Orbit => "orbit",
        Command::CountSupports => "count-supports",
        Command::Overlap { .. } => "overlap",
        Command::Witness => "witness",
    }
}
