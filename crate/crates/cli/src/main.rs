//! `swcanon`: canonical simplicial-walk invariants and their reference oracles.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use swcanon::automaton::SwAutomaton;
use swcanon::graph::{parse_graph, Format};
use swcanon::invariant::{invariant_from_basis, sw_forward_basis};
use swcanon::mia::Variant;
use swcanon::oracles::{
    decomposing_walk_search, hom_count, sw_refinement, walk_census, WordCounts, DEFAULT_CAP,
};
use swcanon::wl::{wl_colors, Digest};
use swcanon::{Error, Graph};

#[derive(Parser)]
#[command(
    name = "swcanon",
    version,
    about = "Canonical simplicial-walk invariants of graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the canonical invariant of a graph.
    Canon {
        graph: String,
        #[command(flatten)]
        level: Level,
        #[command(flatten)]
        reduction: Reduction,
        #[command(flatten)]
        io: Io,
        /// Also write the walk automaton to stderr.
        #[arg(long)]
        dump_automaton: bool,
    },
    /// Decide whether two graphs have byte-identical invariants.
    Indist {
        first: String,
        second: String,
        #[command(flatten)]
        level: Level,
        #[command(flatten)]
        reduction: Reduction,
        #[command(flatten)]
        io: Io,
    },
    /// Weisfeiler-Leman color class histograms per round.
    Wl {
        graph: String,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        k: u32,
        #[arg(long, default_value_t = 2)]
        rounds: usize,
        #[command(flatten)]
        io: Io,
    },
    /// Color-word counts of simplicial walks with 1..=t simplices.
    Census {
        graph: String,
        #[command(flatten)]
        level: Level,
        #[arg(long, default_value_t = 4)]
        t: usize,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
        #[command(flatten)]
        io: Io,
    },
    /// Word multisets of the walk refinement for steps 0..=t.
    Swref {
        graph: String,
        #[command(flatten)]
        level: Level,
        #[arg(long, default_value_t = 4)]
        t: usize,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
        #[command(flatten)]
        io: Io,
    },
    /// Number of homomorphisms from a pattern into a target graph.
    Hom {
        pattern: String,
        target: String,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
        #[command(flatten)]
        io: Io,
    },
    /// Search a pattern for a decomposing k-simplicial walk.
    Pwcheck {
        pattern: String,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        k: u32,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
        #[command(flatten)]
        io: Io,
    },
}

#[derive(Args)]
struct Level {
    /// Simplex dimension bound.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    k: u32,
    /// Color height.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    height: u32,
}

#[derive(Args)]
struct Reduction {
    /// Initialization of the forward reduction.
    #[arg(long, value_enum, default_value_t = VariantArg::B3)]
    variant: VariantArg,
    /// Disable the color-blocked fast path.
    #[arg(long)]
    generic: bool,
}

#[derive(Args)]
struct Io {
    /// Input format; sniffed from the first byte when omitted.
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Write the report here (atomically) instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    #[value(name = "3a")]
    A3,
    #[value(name = "3b")]
    B3,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Edgelist,
    Graph6,
}

/// Exit statuses: the verdict codes come from the command itself.
const EXIT_USAGE: u8 = 2;
const EXIT_CAP: u8 = 3;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("swcanon: {e:#}");
            let capped = e
                .chain()
                .any(|c| matches!(c.downcast_ref::<Error>(), Some(Error::ResourceCap { .. })));
            ExitCode::from(if capped { EXIT_CAP } else { EXIT_USAGE })
        }
    }
}

fn run(command: Command) -> anyhow::Result<u8> {
    match command {
        Command::Canon {
            graph,
            level,
            reduction,
            io,
            dump_automaton,
        } => {
            let g = read_graph(&graph, &io)?;
            let aut = SwAutomaton::build(&g, level.k as usize, level.height as usize);
            if dump_automaton {
                eprint!("{}", aut.dump());
            }
            emit(&io, &invariant_text(&aut, &reduction)?)?;
            Ok(0)
        }
        Command::Indist {
            first,
            second,
            level,
            reduction,
            io,
        } => {
            check_single_stdin(&[&first, &second])?;
            let (k, h) = (level.k as usize, level.height as usize);
            let a = SwAutomaton::build(&read_graph(&first, &io)?, k, h);
            let b = SwAutomaton::build(&read_graph(&second, &io)?, k, h);
            let (sa, sb) = (
                invariant_text(&a, &reduction)?,
                invariant_text(&b, &reduction)?,
            );
            let same = sa == sb;
            let verdict = if same {
                "indistinguishable"
            } else {
                "distinguishable"
            };
            emit(
                &io,
                &format!(
                    "{verdict} k={k} h={h} |S|={} |S|={}\n",
                    rank_of(&sa),
                    rank_of(&sb)
                ),
            )?;
            Ok(if same { 0 } else { 1 })
        }
        Command::Wl {
            graph,
            k,
            rounds,
            io,
        } => {
            let g = read_graph(&graph, &io)?;
            let table = wl_colors(&g, k as usize, rounds);
            let mut out = String::new();
            for r in 0..=rounds {
                let hist = table.histogram(r)?;
                let _ = writeln!(out, "round {r} classes {}", hist.len());
                for (d, c) in hist {
                    let _ = writeln!(out, "{d} {c}");
                }
            }
            emit(&io, &out)?;
            Ok(0)
        }
        Command::Census {
            graph,
            level,
            t,
            cap,
            io,
        } => {
            let g = read_graph(&graph, &io)?;
            let census = walk_census(&g, level.k as usize, level.height as usize, t, cap)?;
            emit(
                &io,
                &word_report(census.iter().enumerate().map(|(i, w)| (i + 1, w))),
            )?;
            Ok(0)
        }
        Command::Swref {
            graph,
            level,
            t,
            cap,
            io,
        } => {
            let g = read_graph(&graph, &io)?;
            let sw = sw_refinement(&g, level.k as usize, level.height as usize, t, cap)?;
            emit(&io, &word_report(sw.iter().enumerate()))?;
            Ok(0)
        }
        Command::Hom {
            pattern,
            target,
            cap,
            io,
        } => {
            check_single_stdin(&[&pattern, &target])?;
            let f = read_graph(&pattern, &io)?;
            let g = read_graph(&target, &io)?;
            emit(&io, &format!("{}\n", hom_count(&f, &g, cap)?))?;
            Ok(0)
        }
        Command::Pwcheck {
            pattern,
            k,
            cap,
            io,
        } => {
            let f = read_graph(&pattern, &io)?;
            match decomposing_walk_search(&f, k as usize, cap)? {
                Some(walk) => {
                    let mut out = format!(
                        "decomposing {k}-simplicial walk: {} steps, width {}\n",
                        walk.len(),
                        walk.width()
                    );
                    for step in &walk.steps {
                        let names: Vec<String> = step.iter().map(usize::to_string).collect();
                        let _ = writeln!(out, "{{{}}}", names.join(" "));
                    }
                    emit(&io, &out)?;
                    Ok(0)
                }
                None => {
                    emit(&io, &format!("no decomposing {k}-simplicial walk\n"))?;
                    Ok(1)
                }
            }
        }
    }
}

fn invariant_text(aut: &SwAutomaton, reduction: &Reduction) -> anyhow::Result<String> {
    let variant = match reduction.variant {
        VariantArg::A3 => Variant::A3,
        VariantArg::B3 => Variant::B3,
    };
    let basis = sw_forward_basis(aut, variant, !reduction.generic);
    Ok(invariant_from_basis(aut, &basis, variant)?.serialize())
}

/// |S| as recorded in a serialized invariant; 0 for the empty sentinel.
fn rank_of(serialized: &str) -> usize {
    serialized
        .lines()
        .find_map(|l| l.strip_prefix("S "))
        .and_then(|r| r.parse().ok())
        .unwrap_or(0)
}

/// One header per step, then `count digest` per word in word order. A word
/// is named by the digest of its concatenated color digests.
fn word_report<'a>(steps: impl Iterator<Item = (usize, &'a WordCounts)>) -> String {
    let mut out = String::new();
    for (t, words) in steps {
        let total: u128 = words.values().map(|&c| u128::from(c)).sum();
        let _ = writeln!(out, "t {t} total {total} words {}", words.len());
        for (word, count) in words {
            let bytes: Vec<u8> = word.iter().flat_map(|d| d.0).collect();
            let _ = writeln!(out, "{count} {}", Digest::of(&bytes));
        }
    }
    out
}

fn check_single_stdin(inputs: &[&String]) -> anyhow::Result<()> {
    if inputs.iter().filter(|s| s.as_str() == "-").count() > 1 {
        bail!("only one input may be read from stdin");
    }
    Ok(())
}

fn read_graph(source: &str, io: &Io) -> anyhow::Result<Graph> {
    let text = if source == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .context("reading stdin")?;
        s
    } else {
        fs::read_to_string(source).with_context(|| format!("reading {source}"))?
    };
    let format = io.format.map(|f| match f {
        FormatArg::Edgelist => Format::EdgeList,
        FormatArg::Graph6 => Format::Graph6,
    });
    parse_graph(&text, format).with_context(|| format!("parsing {source}"))
}

fn emit(io: &Io, text: &str) -> anyhow::Result<()> {
    match &io.out {
        Some(path) => write_atomic(path, text.as_bytes()),
        None => {
            io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

/// Writes a sibling temporary file, syncs it, then renames it over `path`.
fn write_atomic(path: &Path, bytes: &[u8]) -> anyhow::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let name = path
        .file_name()
        .with_context(|| format!("{} is not a file path", path.display()))?;
    let tmp = dir.join(format!(
        ".{}.{}.tmp",
        name.to_string_lossy(),
        std::process::id()
    ));
    let result = (|| -> io::Result<()> {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    result.with_context(|| format!("writing {}", path.display()))
}
