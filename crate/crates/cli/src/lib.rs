//! Command-line front end for `bracketeer`.
//!
//! Exit codes: 0 success, 1 bad input, 2 internal invariant failure, 64 usage.

mod selftest;

use std::fmt;
use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;

use bracketeer::bracket::{compute_bracket, jones_from_bracket, BracketConfig, BracketError, EngineChoice};
use bracketeer::census::{self, CensusError, GraphKind, Variant};
use bracketeer::graph::{Family, GraphError, LoopedGraph};
use bracketeer::knot::{eulerian_check, knot_invariants, parse_gauss, GaussError};
use bracketeer::poly::MultiPoly;
use bracketeer::reidemeister::{
    apply_move, equivalence_search, legal_moves, MoveDescriptor, ReidemeisterError, SearchBounds, SearchOutcome,
};
use clap::{Args, Parser, Subcommand, ValueEnum};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_INTERNAL: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

pub const THREADS_VAR: &str = "BRACKETEER_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Records,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EngineArg {
    Auto,
    StateSum,
    Recursive,
    BothAndCompare,
}

impl From<EngineArg> for EngineChoice {
    fn from(e: EngineArg) -> Self {
        match e {
            EngineArg::Auto => EngineChoice::Auto,
            EngineArg::StateSum => EngineChoice::StateSum,
            EngineArg::Recursive => EngineChoice::Recursive,
            EngineArg::BothAndCompare => EngineChoice::BothAndCompare,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CensusKind {
    Looped,
    Simple,
    Tree,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CensusVariant {
    Full,
    OneVar,
}

#[derive(Debug, Parser)]
#[command(name = "bracketeer", version, about = "Graph bracket and Jones polynomials of looped graphs")]
struct Cli {
    #[command(flatten)]
    config: CliConfig,
    #[command(subcommand)]
    command: Command,
}

/// Settings shared by all subcommands.
#[derive(Debug, Clone, Args)]
pub struct CliConfig {
    /// Output style: plain text or `<id>\t<invariant>\t<polynomial>` records.
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: OutputFormat,
    #[arg(long, value_enum, default_value = "auto", global = true)]
    pub engine: EngineArg,
    /// Largest graph accepted by the state sum.
    #[arg(long, default_value_t = bracketeer::bracket::DEFAULT_STATE_SUM_CAP, value_parser = positive, global = true)]
    pub state_sum_cap: usize,
    /// Entries kept in the recursion memo.
    #[arg(long, default_value_t = bracketeer::bracket::DEFAULT_MEMO_CAP, value_parser = positive, global = true)]
    pub memo_cap: usize,
}

impl CliConfig {
    fn bracket_config(&self) -> BracketConfig {
        BracketConfig { engine: self.engine.into(), state_sum_cap: self.state_sum_cap, memo_cap: self.memo_cap }
    }
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Debug, Clone, Args)]
struct GraphInput {
    /// `.lg` files, or `-` for standard input.
    inputs: Vec<String>,
    /// Built-in family instead of a file: E, K, P, L or K+I.
    #[arg(long, requires = "n")]
    family: Option<String>,
    /// Size of the built-in family.
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Three-variable graph bracket [G](A, B, d).
    Bracket(GraphInput),
    /// Reduced bracket <G>(A).
    Reduced(GraphInput),
    /// Graph Jones polynomial, of a graph or of a Gauss code.
    Jones {
        #[command(flatten)]
        graph: GraphInput,
        /// Signed Gauss code, e.g. "a+ b+ c+ a+ b+ c+".
        #[arg(long, conflicts_with_all = ["inputs", "family"])]
        gauss: Option<String>,
    },
    /// Interlacement graph and invariants of a signed Gauss code.
    Gauss {
        /// The code itself, or `@FILE`, or `-` for standard input.
        code: String,
    },
    /// List the legal moves on a graph, or apply a sequence of moves.
    Moves {
        #[command(flatten)]
        graph: GraphInput,
        /// Move to apply, e.g. "O3 0 1 2"; repeat to apply several in order.
        #[arg(long = "apply")]
        apply: Vec<String>,
        /// 0: no insertions, 1: Ω1 insertions, 2: Ω1 and Ω2 insertions.
        #[arg(long, default_value_t = 2)]
        insert_budget: usize,
    },
    /// Bounded search for a move sequence between two graphs.
    Equiv {
        first: String,
        second: String,
        #[arg(long)]
        max_vertices: Option<usize>,
        #[arg(long, default_value_t = 100_000)]
        max_expansions: usize,
    },
    /// Isomorphism-class census and bracket collision counts.
    Census {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "looped")]
        kind: CensusKind,
        #[arg(long, value_enum, default_value = "full")]
        variant: CensusVariant,
        /// TSV cache: written when absent, verified when present.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the built-in property suites.
    Selftest,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(String),
    Internal(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Domain(_) => EXIT_DOMAIN,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Domain(m) => f.write_str(m),
            CliError::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<GaussError> for CliError {
    fn from(e: GaussError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<BracketError> for CliError {
    fn from(e: BracketError) -> Self {
        if e.is_internal() {
            CliError::Internal(e.to_string())
        } else {
            CliError::Domain(e.to_string())
        }
    }
}

impl From<ReidemeisterError> for CliError {
    fn from(e: ReidemeisterError) -> Self {
        if e.is_internal() {
            CliError::Internal(e.to_string())
        } else {
            CliError::Domain(e.to_string())
        }
    }
}

impl From<CensusError> for CliError {
    fn from(e: CensusError) -> Self {
        match e {
            CensusError::Bracket(b) => b.into(),
            other => CliError::Domain(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

/// Command state. Standard input is read up front and output is buffered so
/// that commands can run inside a rayon pool.
struct Context {
    config: CliConfig,
    stdin: Option<String>,
    out: Vec<u8>,
}

impl Context {
    fn read_source(&mut self, source: &str) -> Result<String, CliError> {
        if source == "-" {
            self.stdin.clone().ok_or_else(|| CliError::Usage("standard input is not available".into()))
        } else {
            fs::read_to_string(source).map_err(|e| CliError::Domain(format!("{source}: {e}")))
        }
    }

    fn graphs(&mut self, input: &GraphInput) -> Result<Vec<(String, LoopedGraph)>, CliError> {
        let mut out = Vec::new();
        if let Some(family) = &input.family {
            let kind: Family = family.parse().map_err(CliError::Usage)?;
            let n = input.n.expect("clap enforces --n");
            out.push((format!("{}_{n}", kind.name()), LoopedGraph::family(kind, n)?));
        }
        for source in &input.inputs {
            let text = self.read_source(source)?;
            let g: LoopedGraph = text.parse().map_err(|e: GraphError| CliError::Domain(format!("{source}: {e}")))?;
            out.push((source.clone(), g));
        }
        if out.is_empty() {
            return Err(CliError::Usage("no graph given; pass a file, `-`, or --family and --n".into()));
        }
        Ok(out)
    }

    fn graph(&mut self, input: &GraphInput) -> Result<(String, LoopedGraph), CliError> {
        let mut all = self.graphs(input)?;
        if all.len() != 1 {
            return Err(CliError::Usage("expected exactly one graph".into()));
        }
        Ok(all.remove(0))
    }

    fn bracket(&self, g: &LoopedGraph) -> Result<MultiPoly, CliError> {
        Ok(compute_bracket(g, &self.config.bracket_config())?.poly)
    }

    fn emit(&mut self, id: &str, name: &str, value: &dyn fmt::Display) -> Result<(), CliError> {
        match self.config.format {
            OutputFormat::Text => writeln!(self.out, "{value}")?,
            OutputFormat::Records => writeln!(self.out, "{id}\t{name}\t{value}")?,
        }
        Ok(())
    }
}

fn execute(ctx: &mut Context, command: Command) -> Result<(), CliError> {
    match command {
        Command::Bracket(input) => {
            for (id, g) in ctx.graphs(&input)? {
                let p = ctx.bracket(&g)?;
                ctx.emit(&id, "bracket", &p)?;
            }
        }
        Command::Reduced(input) => {
            for (id, g) in ctx.graphs(&input)? {
                let p = ctx.bracket(&g)?.reduce_single().map_err(BracketError::from)?;
                ctx.emit(&id, "reduced", &p)?;
            }
        }
        Command::Jones { graph, gauss } => {
            if let Some(code) = gauss {
                let inv = knot_invariants(&parse_gauss(&code)?)?;
                ctx.emit(&code, "jones", &inv.jones)?;
            } else {
                for (id, g) in ctx.graphs(&graph)? {
                    let p = ctx.bracket(&g)?;
                    let v = jones_from_bracket(&p, g.n(), g.loop_count())?;
                    ctx.emit(&id, "jones", &v)?;
                }
            }
        }
        Command::Gauss { code } => gauss(ctx, &code)?,
        Command::Moves { graph, apply, insert_budget } => {
            let (_, g) = ctx.graph(&graph)?;
            if apply.is_empty() {
                for m in legal_moves(&g, insert_budget, bracketeer::graph::MAX_VERTICES) {
                    writeln!(ctx.out, "{m}")?;
                }
            } else {
                let mut current = g;
                for text in &apply {
                    let m: MoveDescriptor = text.parse()?;
                    current = apply_move(&current, &m)?;
                }
                write!(ctx.out, "{current}")?;
            }
        }
        Command::Equiv { first, second, max_vertices, max_expansions } => {
            let g1 = ctx.graph(&GraphInput { inputs: vec![first], family: None, n: None })?.1;
            let g2 = ctx.graph(&GraphInput { inputs: vec![second], family: None, n: None })?.1;
            let mut bounds = SearchBounds::for_pair(&g1, &g2);
            bounds.max_expansions = max_expansions;
            if let Some(m) = max_vertices {
                bounds.max_vertices = m;
            }
            match equivalence_search(&g1, &g2, bounds)? {
                SearchOutcome::Found { path, expansions } => {
                    for m in &path {
                        writeln!(ctx.out, "{m}")?;
                    }
                    writeln!(ctx.out, "# path of {} moves found after {expansions} expansions", path.len())?;
                }
                SearchOutcome::NotFound { expansions } => {
                    writeln!(ctx.out, "no path within bounds ({expansions} expansions)")?;
                }
            }
        }
        Command::Census { n, kind, variant, out } => run_census(ctx, n, kind, variant, out)?,
        Command::Selftest => {
            let failures = selftest::run(&mut ctx.out)?;
            if failures > 0 {
                return Err(CliError::Internal(format!("{failures} self-test suite(s) failed")));
            }
        }
    }
    Ok(())
}

fn gauss(ctx: &mut Context, source: &str) -> Result<(), CliError> {
    let text = if source == "-" {
        ctx.read_source("-")?
    } else if let Some(path) = source.strip_prefix('@') {
        ctx.read_source(path)?
    } else {
        source.to_string()
    };
    let code = parse_gauss(&text)?;
    let inv = knot_invariants(&code)?;
    let reduced = inv.bracket.reduce_single().map_err(BracketError::from)?;
    match ctx.config.format {
        OutputFormat::Text => {
            writeln!(ctx.out, "crossings {}", code.crossings())?;
            writeln!(ctx.out, "writhe {}", code.writhe())?;
            writeln!(ctx.out, "eulerian {}", eulerian_check(&inv.graph))?;
            writeln!(ctx.out, "bracket {}", inv.bracket)?;
            writeln!(ctx.out, "reduced {reduced}")?;
            writeln!(ctx.out, "jones {}", inv.jones)?;
            write!(ctx.out, "{}", inv.graph)?;
        }
        OutputFormat::Records => {
            let id = text.split_whitespace().collect::<Vec<_>>().join(" ");
            ctx.emit(&id, "bracket", &inv.bracket)?;
            ctx.emit(&id, "reduced", &reduced)?;
            ctx.emit(&id, "jones", &inv.jones)?;
        }
    }
    Ok(())
}

fn run_census(
    ctx: &mut Context,
    n: usize,
    kind: CensusKind,
    variant: CensusVariant,
    out: Option<PathBuf>,
) -> Result<(), CliError> {
    let graph_kind = match kind {
        CensusKind::Tree => {
            let r = census::tree_census(n)?;
            writeln!(ctx.out, "trees {}", r.trees)?;
            writeln!(ctx.out, "distinct brackets {}", r.distinct_brackets)?;
            writeln!(ctx.out, "distinct jones {}", r.distinct_jones)?;
            writeln!(ctx.out, "pairs separated by jones {}", r.jones_separated_pairs)?;
            return Ok(());
        }
        CensusKind::Looped => GraphKind::Looped,
        CensusKind::Simple => GraphKind::Simple,
    };
    let variant = match variant {
        CensusVariant::Full => Variant::Full,
        CensusVariant::OneVar => Variant::OneVariable,
    };
    let records = census::census_records(n, graph_kind)?;
    let report = census::summarize(&records, variant);
    writeln!(ctx.out, "classes {}", report.classes)?;
    writeln!(ctx.out, "distinct {}", report.distinct)?;
    writeln!(ctx.out, "collision groups {}", report.collisions.len())?;
    if variant == Variant::Full {
        let mixed = census::mixed_connectivity_collisions(&records);
        writeln!(ctx.out, "mixed-connectivity pairs {}", mixed.len())?;
    }
    if let Some(path) = out {
        if path.exists() {
            let stored = fs::read_to_string(&path)?;
            census::verify_tsv(&stored, &records)?;
            writeln!(ctx.out, "verified {}", path.display())?;
        } else {
            fs::write(&path, census::to_tsv(&records))?;
            writeln!(ctx.out, "wrote {}", path.display())?;
        }
    }
    Ok(())
}

fn thread_pool() -> Result<rayon::ThreadPool, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(value) = std::env::var(THREADS_VAR) {
        let threads = value
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&t| t > 0)
            .ok_or_else(|| CliError::Usage(format!("{THREADS_VAR} must be a positive integer, got `{value}`")))?;
        builder = builder.num_threads(threads);
    }
    builder.build().map_err(|e| CliError::Internal(e.to_string()))
}

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ =
                if code == EXIT_OK { out.write_all(rendered.as_bytes()) } else { err.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    let stdin_text = if args.iter().skip(1).any(|a| a == "-") {
        let mut text = String::new();
        if let Err(e) = stdin.read_to_string(&mut text) {
            let _ = writeln!(err, "error: standard input: {e}");
            return EXIT_DOMAIN;
        }
        Some(text)
    } else {
        None
    };
    let mut ctx = Context { config: cli.config, stdin: stdin_text, out: Vec::new() };
    let result = thread_pool().and_then(|pool| pool.install(|| execute(&mut ctx, cli.command)));
    if out.write_all(&ctx.out).and_then(|()| out.flush()).is_err() {
        return EXIT_INTERNAL;
    }
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.code()
        }
    }
}
