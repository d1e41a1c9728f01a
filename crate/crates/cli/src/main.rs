//! `gallai`: construct, verify, decompose and search Gallai colorings.
//!
//! Exit codes: 0 success, 1 violation or refutation (certificate on stdout),
//! 2 malformed input or failed validation, 3 search limit reached.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gallai::format::{ColoringDocument, Format, Provenance};
use gallai::structure::validate_apex_sequence;
use gallai::{
    build_lower_bound_witness, check_apex_color_distinctness, find_gallai_partition, find_mono, find_rainbow_triangle,
    peel_apex_sequence, random_gallai, search_witness_parallel, verify_gallai_partition, Color, EdgeOrder, Forbidden,
    PatternSpec, Scope, SearchStatus, SearchTask, Symmetry,
};
use serde_json::json;

#[derive(Parser)]
#[command(name = "gallai", version, about = "Edge-colorings of complete graphs without rainbow triangles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the k-colored lower-bound witness from a 2-colored base.
    Construct {
        #[arg(long)]
        k: usize,
        /// Base coloring; defaults to the pinned W4-free coloring of K14.
        #[arg(long)]
        base: Option<PathBuf>,
        /// Rim size of the wheel the base avoids.
        #[arg(long, default_value_t = 4)]
        rim: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Check a coloring for monochromatic patterns and rainbow triangles.
    Verify {
        input: PathBuf,
        #[arg(long)]
        pattern: Option<String>,
        /// Only look for the pattern in this color.
        #[arg(long)]
        color: Option<Color>,
        /// Also require a Gallai coloring (no rainbow triangle).
        #[arg(long)]
        gallai: bool,
    },
    /// Compute a Gallai partition and its reduced graph.
    Partition { input: PathBuf },
    /// Peel a maximal sequence of monochromatic-complete apex vertices.
    Peel { input: PathBuf },
    /// Search for a coloring avoiding a pattern.
    Search(SearchArgs),
    /// Generate a seeded random Gallai coloring.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Re-encode a coloring file.
    Convert {
        input: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Print the canonical digest of a coloring.
    Digest { input: PathBuf },
}

#[derive(Args)]
struct Output {
    #[arg(long, default_value = "grc")]
    format: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SearchArgs {
    /// A JSON search task; overrides the task flags.
    #[arg(long)]
    task: Option<PathBuf>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 2)]
    k: usize,
    #[arg(long, default_value = "w4")]
    pattern: String,
    /// Forbid the pattern only in this color.
    #[arg(long)]
    color: Option<Color>,
    /// Also forbid rainbow triangles.
    #[arg(long)]
    gallai: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1 << 32)]
    node_limit: u64,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    #[arg(long, value_enum, default_value_t = SymmetryArg::ColorSwap)]
    symmetry: SymmetryArg,
    #[arg(long, value_enum, default_value_t = OrderArg::Colex)]
    edge_order: OrderArg,
    #[command(flatten)]
    output: Output,
}

#[derive(Clone, Copy, ValueEnum)]
enum SymmetryArg {
    None,
    ColorSwap,
    VertexOrder,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    Colex,
    Lex,
}

/// A failure with its exit code; the message goes to stderr.
struct Failure {
    code: u8,
    msg: String,
}

fn malformed(e: impl std::fmt::Display) -> Failure {
    Failure { code: 2, msg: e.to_string() }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Construct { k, base, rim, output } => construct(k, base.as_deref(), rim, &output),
        Command::Verify { input, pattern, color, gallai } => verify(&input, pattern.as_deref(), color, gallai),
        Command::Partition { input } => partition(&input),
        Command::Peel { input } => peel(&input),
        Command::Search(args) => search(&args),
        Command::Random { n, k, seed, output } => {
            let c = random_gallai(n, k, seed).map_err(malformed)?;
            write(&ColoringDocument::with_provenance(c, Provenance::Random { n, k, seed }), &output)?;
            Ok(0)
        }
        Command::Convert { input, output } => {
            write(&read(&input)?, &output)?;
            Ok(0)
        }
        Command::Digest { input } => {
            emit(&format!("{}\n", read(&input)?.coloring.canonical_digest()));
            Ok(0)
        }
    }
}

fn read(path: &Path) -> Result<ColoringDocument, Failure> {
    let text = fs::read_to_string(path).map_err(|e| malformed(format!("{}: {e}", path.display())))?;
    ColoringDocument::parse(&text).map_err(|e| malformed(format!("{}: {e}", path.display())))
}

fn parse_pattern(s: &str) -> Result<PatternSpec, Failure> {
    match s.strip_prefix("explicit:") {
        Some(file) => {
            let text = fs::read_to_string(file).map_err(|e| malformed(format!("{file}: {e}")))?;
            PatternSpec::parse_explicit(&text).map_err(|e| malformed(format!("{file}: {e}")))
        }
        None => s.parse().map_err(malformed),
    }
}

fn write_text(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| malformed(format!("{}: {e}", path.display())))
}

/// Writes `doc` to `--out` (or stdout) in `--format`.
fn write(doc: &ColoringDocument, output: &Output) -> Result<(), Failure> {
    let format: Format = output.format.parse().map_err(malformed)?;
    let text = doc.render(format);
    match &output.out {
        Some(path) => write_text(path, &text),
        None => {
            emit(&text);
            Ok(())
        }
    }
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = std::io::stdout().write_all(text.as_bytes());
}

fn print_json(value: &impl serde::Serialize) {
    emit(&(serde_json::to_string_pretty(value).expect("results serialize") + "\n"));
}

fn construct(k: usize, base: Option<&Path>, rim: usize, output: &Output) -> Outcome {
    let base = match base {
        Some(path) => read(path)?.coloring,
        None => gallai::base14(),
    };
    let (witness, trace) = build_lower_bound_witness(k, &base, rim).map_err(malformed)?;
    let doc = ColoringDocument::with_provenance(witness, Provenance::Construction(trace.clone()));
    write(&doc, output)?;
    if let (Some(path), Ok(Format::Grc)) = (&output.out, output.format.parse::<Format>()) {
        let mut sidecar = path.clone().into_os_string();
        sidecar.push(".trace.json");
        let trace = serde_json::to_string_pretty(&trace).expect("traces serialize") + "\n";
        write_text(Path::new(&sidecar), &trace)?;
    }
    let summary = format!("n={} k={} digest={}", doc.coloring.n(), k, doc.coloring.canonical_digest());
    if output.out.is_some() {
        emit(&format!("{summary}\n"));
    } else {
        eprintln!("{summary}");
    }
    Ok(0)
}

fn verify(input: &Path, pattern: Option<&str>, color: Option<Color>, gallai: bool) -> Outcome {
    let pattern = pattern.map(parse_pattern).transpose()?;
    let c = read(input)?.coloring;
    if let Some(col) = color {
        if col == 0 || col as usize > c.k() {
            return Err(malformed(format!("color {col} outside 1..={}", c.k())));
        }
    }
    if gallai {
        if let Some(t) = find_rainbow_triangle(&c) {
            print_json(&t);
            return Ok(1);
        }
    }
    if let Some(p) = &pattern {
        if let Some(e) = find_mono(&c, p, color) {
            print_json(&e);
            return Ok(1);
        }
    }
    emit("ok\n");
    Ok(0)
}

fn partition(input: &Path) -> Outcome {
    let c = read(input)?.coloring;
    if let Some(t) = find_rainbow_triangle(&c) {
        print_json(&json!({ "gallai": false, "rainbow_triangle": t }));
        return Ok(1);
    }
    let p = find_gallai_partition(&c).map_err(malformed)?;
    let report = verify_gallai_partition(&c, &p).map_err(malformed)?;
    print_json(&json!({ "p": p.p(), "partition": p, "report": report }));
    Ok(if report.valid { 0 } else { 1 })
}

fn peel(input: &Path) -> Outcome {
    let c = read(input)?.coloring;
    let seq = peel_apex_sequence(&c);
    validate_apex_sequence(&c, &seq).map_err(malformed)?;
    let distinct = check_apex_color_distinctness(&c, &seq).map_err(malformed)?;
    print_json(&json!({ "sequence": seq, "colors_distinct": distinct }));
    Ok(0)
}

fn search(args: &SearchArgs) -> Outcome {
    let task = match &args.task {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| malformed(format!("{}: {e}", path.display())))?;
            serde_json::from_str(&text).map_err(|e| malformed(format!("{}: {e}", path.display())))?
        }
        None => SearchTask {
            n: args.n.ok_or_else(|| malformed("search needs --n or --task"))?,
            k: args.k,
            forbidden: vec![Forbidden {
                pattern: parse_pattern(&args.pattern)?,
                scope: args.color.map_or(Scope::Every, Scope::Color),
            }],
            forbid_rainbow_triangle: args.gallai,
            symmetry: match args.symmetry {
                SymmetryArg::None => Symmetry::None,
                SymmetryArg::ColorSwap => Symmetry::ColorSwap,
                SymmetryArg::VertexOrder => Symmetry::VertexOrder,
            },
            edge_order: match args.edge_order {
                OrderArg::Colex => EdgeOrder::Colex,
                OrderArg::Lex => EdgeOrder::Lex,
            },
            node_limit: args.node_limit,
            seed: args.seed,
        },
    };
    let outcome = search_witness_parallel(&task, args.threads).map_err(malformed)?;
    let code = match &outcome.status {
        SearchStatus::Witness { coloring } => {
            if args.output.out.is_some() {
                let doc = ColoringDocument::with_provenance(coloring.clone(), Provenance::Search(task.clone()));
                write(&doc, &args.output)?;
            }
            0
        }
        SearchStatus::Exhausted => 1,
        SearchStatus::LimitReached { .. } => 3,
    };
    print_json(&outcome);
    Ok(code)
}
