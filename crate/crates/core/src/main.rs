use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use spectral_rank::graph::Structure;
use spectral_rank::io::{
    emit_report, emit_structure, parse_edges, parse_games, parse_matrix, Format, StructureDocument,
};
use spectral_rank::tournament::default_schedule;
use spectral_rank::{
    kendall_score, landau_score, pagerank, row_sum_score, validate_round_robin, wei_score, GoogleParams, LandauOptions,
    Method, PowerOptions, RankReport, ScoringScheme, Tournament,
};

const EXIT_INPUT: u8 = 1;
const EXIT_NO_CONVERGENCE: u8 = 2;

/// Spectral rankings for tournaments and link graphs.
#[derive(Parser)]
#[command(name = "rank", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    global: GlobalArgs,
}

#[derive(Args)]
struct GlobalArgs {
    /// Output format.
    #[arg(long, global = true, default_value = "table", value_parser = parse_format)]
    format: Format,

    /// Power-iteration stopping tolerance (1-norm between iterates).
    #[arg(long, global = true, default_value_t = 1e-12)]
    tol: f64,

    #[arg(long, global = true, default_value_t = 100_000)]
    max_iter: usize,

    /// Relative tolerance under which two scores tie.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tie_tol: f64,

    /// Comma-separated, strictly decreasing ε values for reducible tournaments.
    #[arg(long, global = true, value_delimiter = ',')]
    epsilon_schedule: Option<Vec<f64>>,

    /// Distance between consecutive ε-scores accepted as the limit.
    #[arg(long, global = true, default_value_t = 1e-10)]
    limit_tol: f64,

    /// Reject repeated pairings in game lists (default).
    #[arg(long, global = true, overrides_with = "no_strict")]
    strict: bool,

    /// Sum points over repeated pairings, e.g. for double round robins.
    #[arg(long, global = true, overrides_with = "strict")]
    no_strict: bool,

    /// Read input from this file instead of stdin.
    #[arg(long, global = true)]
    input_file: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Rank the players of a tournament.
    Tournament {
        /// rowsum, wei, iterate:<k> or landau.
        #[arg(long, default_value = "landau", value_parser = parse_method)]
        method: Method,
        /// chess, football or win,draw,loss.
        #[arg(long, default_value = "chess")]
        scheme: ScoringScheme,
        #[arg(long, value_enum, default_value_t = TournamentInput::Games)]
        input: TournamentInput,
    },
    /// PageRank of an edge list. The damping factor d of the usual PageRank
    /// formulation is 1 - alpha.
    Web {
        /// Teleport weight in G = (1 - alpha) S + alpha/n J.
        #[arg(long, default_value_t = 0.15)]
        alpha: f64,
    },
    /// Structural diagnostics only.
    Analyze {
        #[arg(long, value_enum, default_value_t = AnalyzeInput::Games)]
        input: AnalyzeInput,
        #[arg(long, default_value = "chess")]
        scheme: ScoringScheme,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TournamentInput {
    Games,
    Matrix,
}

#[derive(Clone, Copy, ValueEnum)]
enum AnalyzeInput {
    Games,
    Matrix,
    Edges,
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse()
}

fn parse_method(s: &str) -> Result<Method, String> {
    match s.parse()? {
        Method::PageRank => Err("pagerank is the `web` subcommand".into()),
        m => Ok(m),
    }
}

enum Failure {
    Input(String),
    NoConvergence(String),
}

impl From<spectral_rank::Error> for Failure {
    fn from(e: spectral_rank::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn read_input(path: Option<&PathBuf>) -> Result<String, Failure> {
    let mut text = String::new();
    match path {
        Some(p) => {
            text = std::fs::read_to_string(p).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?;
        }
        None => {
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| Failure::Input(format!("stdin: {e}")))?;
        }
    }
    Ok(text)
}

fn load_tournament(
    text: &str,
    input: TournamentInput,
    scheme: ScoringScheme,
    g: &GlobalArgs,
) -> Result<Tournament, Failure> {
    let t = match input {
        TournamentInput::Games => parse_games(text, scheme, !g.no_strict)?,
        TournamentInput::Matrix => Tournament::new(parse_matrix(text)?).with_scheme(scheme),
    };
    Ok(t.with_tie_tol(g.tie_tol))
}

fn finish(report: &RankReport, format: Format) -> Result<String, Failure> {
    let out = emit_report(report, format)?;
    if report.convergence.converged() {
        Ok(out)
    } else {
        print!("{out}");
        Err(Failure::NoConvergence(format!(
            "{} did not converge after {} iterations",
            report.method, report.convergence.iterations
        )))
    }
}

fn run(cli: Cli) -> Result<String, Failure> {
    let g = &cli.global;
    let text = read_input(g.input_file.as_ref())?;
    let power = PowerOptions::default().with_tol(g.tol).with_max_iter(g.max_iter);

    match cli.command {
        Command::Tournament { method, scheme, input } => {
            let t = load_tournament(&text, input, scheme, g)?;
            let report = match method {
                Method::RowSum => row_sum_score(&t),
                Method::Wei => wei_score(&t),
                Method::Iterate(k) => kendall_score(&t, k)?,
                Method::Landau => {
                    let opts = LandauOptions {
                        power,
                        schedule: g.epsilon_schedule.clone().unwrap_or_else(default_schedule),
                        limit_tol: g.limit_tol,
                    };
                    landau_score(&t, &opts)?
                }
                Method::PageRank => unreachable!("rejected by the argument parser"),
            };
            finish(&report, g.format)
        }
        Command::Web { alpha } => {
            let graph = parse_edges(&text)?;
            if graph.dropped_self_links() > 0 {
                eprintln!("warning: dropped {} self-link(s)", graph.dropped_self_links());
            }
            let params = GoogleParams {
                alpha,
                tol: g.tol,
                max_iter: g.max_iter,
                tie_tol: g.tie_tol,
            };
            finish(&pagerank(&graph, &params)?, g.format)
        }
        Command::Analyze { input, scheme } => {
            let doc = match input {
                AnalyzeInput::Edges => {
                    let graph = parse_edges(&text)?;
                    let h = spectral_rank::hyperlink_matrix(&graph)?;
                    StructureDocument::new(&Structure::of(&h), graph.pages(), None)
                }
                AnalyzeInput::Games | AnalyzeInput::Matrix => {
                    let input = match input {
                        AnalyzeInput::Games => TournamentInput::Games,
                        _ => TournamentInput::Matrix,
                    };
                    let t = load_tournament(&text, input, scheme, g)?;
                    let validation = validate_round_robin(&t.matrix, &t.scheme);
                    StructureDocument::new(&Structure::of(&t.matrix), &t.labels, Some(validation))
                }
            };
            Ok(emit_structure(&doc, g.format)?)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
        Err(Failure::NoConvergence(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_NO_CONVERGENCE)
        }
    }
}
