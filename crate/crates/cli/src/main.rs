//! `domq`: build, measure and check graphs from the command line.
//!
//! Exit codes: 0 all PASS, 1 a counterexample, 2 an INCONCLUSIVE result,
//! 64 a usage or input error.

mod output;

use std::io::{self, Read, Write};
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use domq::enumeration::{Engine, EnumError, UniverseKind, UniverseSpec};
use domq::families::{make, FamilySpec};
use domq::graph::{from_graph6, to_graph6, Graph};
use domq::report::{Status, VerificationReport};

use output::{Format, GraphRecord, SearchRecord};

const USAGE: u8 = 64;

#[derive(Parser, Debug)]
#[command(name = "domq", version, about = "Domination number and least signless Laplacian eigenvalue of small graphs")]
struct Cli {
    /// Eigen-solver residual tolerance.
    #[arg(long, global = true, default_value_t = 1e-10)]
    tol: f64,
    /// Resolution for strict comparisons and uniqueness.
    #[arg(long, global = true, default_value_t = 1e-8)]
    margin: f64,
    /// Orders to cover, as `a..b`, `a..=b` (both inclusive) or `a`.
    #[arg(long = "n", global = true, value_parser = parse_range)]
    n: Option<RangeInclusive<usize>>,
    /// Worker threads for sweeps.
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// JSON-lines measurement cache, read on start and appended on exit.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a family member from its JSON spec.
    Family { spec: String },
    /// Measure graph6 strings given as arguments or one per line on stdin.
    Measure { graphs: Vec<String> },
    /// Run theorem or lemma checks, e.g. `Thm4.8` or `Lemma3.3`.
    Verify {
        #[arg(required = true)]
        ids: Vec<String>,
    },
    /// Minimum q_min over a universe, for each order in `--n`.
    Search {
        #[arg(long, value_enum, default_value_t = Kind::Unicyclic)]
        kind: Kind,
        #[arg(long)]
        girth: Option<usize>,
        #[arg(long)]
        max_girth: Option<usize>,
        #[arg(long)]
        max_odd_girth: Option<usize>,
        #[arg(long)]
        gamma: Option<usize>,
    },
    /// Compare every graph in the γ window with `𝓗_{3,α}`.
    Conjecture {
        /// Restrict to unicyclic graphs (orders up to 11 by default).
        #[arg(long)]
        unicyclic: bool,
    },
    /// graph6 lines to DOT, or DOT text to graph6, read from stdin.
    Convert,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Unicyclic,
    Nonbipartite,
    All,
}

fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("bad order {t:?}"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
        None => (num(s)?, num(s)?),
    };
    if a > b {
        return Err(format!("empty range {s}"));
    }
    Ok(a..=b)
}

enum Failure {
    Usage(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(status) => ExitCode::from(status.exit_code() as u8),
        Err(Failure::Usage(msg)) => {
            eprintln!("domq: {msg}");
            ExitCode::from(USAGE)
        }
    }
}

fn engine(cli: &Cli) -> Result<Engine, Failure> {
    let mut e = Engine::new().with_margin(cli.margin);
    if let Some(w) = cli.workers {
        e = e.with_workers(w);
    }
    if let Some(p) = &cli.cache {
        e = e.with_cache_file(p)?;
    }
    Ok(e)
}

fn stdin_text() -> Result<String, Failure> {
    let mut s = String::new();
    io::stdin().read_to_string(&mut s)?;
    Ok(s)
}

fn emit(text: &str) -> Result<(), Failure> {
    let mut out = io::stdout().lock();
    out.write_all(text.as_bytes())?;
    out.flush()?;
    Ok(())
}

fn run(cli: &Cli) -> Result<Status, Failure> {
    if !(cli.tol > 0.0 && cli.tol < cli.margin) {
        return Err(Failure::Usage(format!("need 0 < tol < margin, got tol={} margin={}", cli.tol, cli.margin)));
    }
    match &cli.command {
        Command::Family { spec } => {
            let spec: FamilySpec = serde_json::from_str(spec).map_err(|e| format!("bad family spec: {e}"))?;
            let (g, labels) = make(&spec)?;
            let rec = GraphRecord::new(&g, cli.tol, Some(spec.kind()), Some(labels.names()))?;
            emit(&output::graphs(&[rec], cli.format))?;
            Ok(Status::Pass)
        }
        Command::Measure { graphs } => {
            let text;
            let lines: Vec<&str> = if graphs.is_empty() {
                text = stdin_text()?;
                text.lines().map(str::trim).filter(|l| !l.is_empty()).collect()
            } else {
                graphs.iter().map(String::as_str).collect()
            };
            let mut recs = Vec::new();
            for l in lines {
                let g = from_graph6(l)?;
                recs.push(GraphRecord::new(&g, cli.tol, None, None)?);
            }
            emit(&output::graphs(&recs, cli.format))?;
            Ok(Status::Pass)
        }
        Command::Verify { ids } => {
            let e = engine(cli)?;
            let mut status = Status::Pass;
            for id in ids {
                let rep = e.verify_theorem(id, cli.n.clone()).map_err(usage)?;
                status = status.merge(rep.status());
                report(&rep, cli.format)?;
            }
            e.flush()?;
            Ok(status)
        }
        Command::Search { kind, girth, max_girth, max_odd_girth, gamma } => {
            let e = engine(cli)?;
            let range = cli.n.clone().ok_or("search needs --n")?;
            let mut recs = Vec::new();
            let mut status = Status::Pass;
            for n in range {
                let kind = match kind {
                    Kind::Unicyclic => UniverseKind::UnicyclicNonbipartite,
                    Kind::Nonbipartite => UniverseKind::ConnectedNonbipartite,
                    Kind::All => UniverseKind::ConnectedAll,
                };
                let spec = UniverseSpec {
                    girth: *girth,
                    max_girth: *max_girth,
                    max_odd_girth: *max_odd_girth,
                    gamma_min: *gamma,
                    gamma_max: *gamma,
                    ..UniverseSpec::new(kind, n)
                };
                match e.extremal_search(&spec) {
                    Ok(r) => recs.push(SearchRecord::new(&spec, &r)),
                    Err(EnumError::EmptyUniverse) => {
                        eprintln!("domq: {}: no graph satisfies the filters", spec.describe());
                        status = status.merge(Status::Inconclusive);
                    }
                    Err(err) => return Err(usage(err)),
                }
            }
            emit(&output::searches(&recs, cli.format))?;
            e.flush()?;
            Ok(status)
        }
        Command::Conjecture { unicyclic } => {
            let e = engine(cli)?;
            let range = cli.n.clone().unwrap_or(if *unicyclic { 4..=11 } else { 4..=8 });
            let rep = e.explore_conjecture(range, *unicyclic).map_err(usage)?;
            report(&rep, cli.format)?;
            e.flush()?;
            Ok(rep.status())
        }
        Command::Convert => {
            let text = stdin_text()?;
            emit(&convert(&text, cli.format)?)?;
            Ok(Status::Pass)
        }
    }
}

fn usage(e: EnumError) -> Failure {
    Failure::Usage(e.to_string())
}

fn report(rep: &VerificationReport, format: Format) -> Result<(), Failure> {
    emit(&output::report(rep, format))?;
    eprintln!("{}", rep.summary());
    for f in rep.failures().take(5) {
        eprintln!("  counterexample: {}", f.graph6.as_deref().unwrap_or("-"));
    }
    Ok(())
}

/// DOT input becomes graph6; graph6 lines become DOT unless `--format
/// graph6` asks to normalise them.
fn convert(text: &str, format: Format) -> Result<String, Failure> {
    if text.contains('{') {
        let g = Graph::from_dot(text)?;
        return Ok(match format {
            Format::Dot => g.to_dot(None),
            _ => format!("{}\n", to_graph6(&g)),
        });
    }
    let mut out = String::new();
    for l in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
        let g = from_graph6(l)?;
        match format {
            Format::Graph6 => out += &format!("{}\n", to_graph6(&g)),
            _ => out += &g.to_dot(None),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::parse_range;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("6..10"), Ok(6..=10));
        assert_eq!(parse_range("6..=10"), Ok(6..=10));
        assert_eq!(parse_range("7"), Ok(7..=7));
        assert!(parse_range("9..3").is_err());
        assert!(parse_range("x").is_err());
    }
}
