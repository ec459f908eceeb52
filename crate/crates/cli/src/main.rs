use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use tokens_core::canon::canonical_form;
use tokens_core::classify::{classify_planarity, classify_regularity};
use tokens_core::graph::graph6;
use tokens_core::minor::{apply_and_verify, lift_script, LiftedScript, MinorScript};
use tokens_core::planarity::{is_planar, Method};
use tokens_core::search::{edge_maximal_search, edge_maximal_search_from_graphs, SearchConfig, SearchReport};
use tokens_core::token::build_token_graph;
use tokens_core::Graph;

#[derive(Debug, Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] tokens_core::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{0}")]
    Usage(String),
}

type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "tokens", version, about = "Token graphs of simple graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct Input {
    /// A single graph in graph6 format.
    #[arg(long)]
    graph6: Option<String>,
    /// A file with one graph6 string per line; `-` reads standard input.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BuildFormat {
    Json,
    G6,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VerdictFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Property {
    Regularity,
    Planarity,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build F_k(G).
    Build {
        #[arg(short)]
        k: usize,
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "json")]
        out: BuildFormat,
    },
    /// Classify regularity or planarity of F_k(G).
    Classify {
        #[arg(value_enum)]
        property: Property,
        #[arg(short)]
        k: usize,
        #[command(flatten)]
        input: Input,
    },
    /// Planarity of each input graph.
    Planar {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "text")]
        out: VerdictFormat,
    },
    /// Canonical graph6 string of each input graph.
    Canon {
        #[command(flatten)]
        input: Input,
    },
    /// Lift a minor script on G to F_k(G) and verify the result.
    Lift {
        #[arg(short)]
        k: usize,
        #[command(flatten)]
        input: Input,
        /// Lines `dv V`, `de U V` or `ce U V`; `#` starts a comment.
        #[arg(long)]
        script: PathBuf,
    },
    /// Search for connected graphs edge-maximal with planar F_k.
    Search {
        #[arg(short)]
        k: usize,
        #[arg(long)]
        n_min: Option<usize>,
        #[arg(long)]
        n_max: Option<usize>,
        /// Worker threads.
        #[arg(long)]
        jobs: Option<usize>,
        /// Stop after this many seconds and report what was finished.
        #[arg(long, env = "TOKENS_BUDGET_SECS")]
        budget_secs: Option<f64>,
        /// Read candidate graphs from a graph6 file instead of generating them.
        #[arg(long)]
        from_file: Option<PathBuf>,
        /// Write the JSON report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Serialize)]
struct BuildSummary {
    k: usize,
    base: String,
    n: usize,
    m: usize,
    regular: bool,
    min_degree: usize,
    max_degree: usize,
    planar: bool,
    graph6: String,
}

#[derive(Debug, Serialize)]
struct PlanarLine {
    graph6: String,
    planar: bool,
    method: Method,
}

#[derive(Debug, Serialize)]
struct LiftOutput {
    lifted: LiftedScript,
    minor: String,
    result_order: usize,
    result_size: usize,
    isomorphic: bool,
    identical: bool,
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.display().to_string(),
        source,
    }
}

fn read_graphs(path: &Path) -> CliResult<Vec<Graph>> {
    let reader: Box<dyn BufRead> = if path == Path::new("-") {
        Box::new(BufReader::new(io::stdin()))
    } else {
        Box::new(BufReader::new(File::open(path).map_err(io_err(path))?))
    };
    Ok(graph6::read_stream(reader).collect::<Result<_, _>>()?)
}

impl Input {
    fn graphs(&self) -> CliResult<Vec<Graph>> {
        match (&self.graph6, &self.file) {
            (Some(s), _) => Ok(vec![graph6::decode_str(s)?]),
            (None, Some(p)) => read_graphs(p),
            (None, None) => Err(CliError::Usage("one of --graph6 or --file is required".into())),
        }
    }

    fn single(&self) -> bool {
        self.graph6.is_some()
    }

    fn one(&self) -> CliResult<Graph> {
        let mut gs = self.graphs()?;
        if gs.len() != 1 {
            return Err(CliError::Usage(format!("expected exactly one graph, found {}", gs.len())));
        }
        Ok(gs.remove(0))
    }
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("output types serialize")
}

/// Success or a negative single-graph verdict.
enum Outcome {
    Ok,
    Negative,
}

fn verdict(single: bool, all_positive: bool) -> Outcome {
    if single && !all_positive {
        Outcome::Negative
    } else {
        Outcome::Ok
    }
}

fn run(cli: Cli, out: &mut impl Write) -> CliResult<Outcome> {
    let w = |out: &mut dyn Write, s: &str| {
        writeln!(out, "{s}").map_err(|source| CliError::Io {
            path: "<stdout>".into(),
            source,
        })
    };
    match cli.command {
        Command::Build { k, input, out: fmt } => {
            for g in input.graphs()? {
                let tg = build_token_graph(&g, k)?;
                let h = tg.graph();
                match fmt {
                    BuildFormat::G6 => w(out, &graph6::encode(h))?,
                    BuildFormat::Dot => write!(out, "{}", tg.to_dot()).map_err(io_err(Path::new("<stdout>")))?,
                    BuildFormat::Json => w(
                        out,
                        &json(&BuildSummary {
                            k,
                            base: graph6::encode(&g),
                            n: h.order(),
                            m: h.size(),
                            regular: h.is_regular(),
                            min_degree: h.min_degree(),
                            max_degree: h.max_degree(),
                            planar: is_planar(h).planar,
                            graph6: graph6::encode(h),
                        }),
                    )?,
                }
            }
            Ok(Outcome::Ok)
        }
        Command::Classify { property, k, input } => {
            let mut positive = true;
            for g in input.graphs()? {
                let line = match property {
                    Property::Regularity => {
                        let v = classify_regularity(&g, k)?;
                        positive &= v.regular;
                        json(&v)
                    }
                    Property::Planarity => {
                        let v = classify_planarity(&g, k)?;
                        positive &= v.is_planar();
                        json(&v)
                    }
                };
                w(out, &line)?;
            }
            Ok(verdict(input.single(), positive))
        }
        Command::Planar { input, out: fmt } => {
            let mut positive = true;
            for g in input.graphs()? {
                let v = is_planar(&g);
                positive &= v.planar;
                let s = graph6::encode(&g);
                let line = match fmt {
                    VerdictFormat::Text => format!("{s} {}", if v.planar { "planar" } else { "non-planar" }),
                    VerdictFormat::Json => json(&PlanarLine {
                        graph6: s,
                        planar: v.planar,
                        method: v.method,
                    }),
                };
                w(out, &line)?;
            }
            Ok(verdict(input.single(), positive))
        }
        Command::Canon { input } => {
            for g in input.graphs()? {
                w(out, &canonical_form(&g)?.graph6)?;
            }
            Ok(Outcome::Ok)
        }
        Command::Lift { k, input, script } => {
            let g = input.one()?;
            let text = std::fs::read_to_string(&script).map_err(io_err(&script))?;
            let script: MinorScript = text.parse()?;
            let lifted = lift_script(&g, k, &script)?;
            let v = apply_and_verify(&g, k, &script)?;
            let ok = v.isomorphic;
            w(
                out,
                &json(&LiftOutput {
                    lifted,
                    minor: graph6::encode(&v.minor),
                    result_order: v.result.order(),
                    result_size: v.result.size(),
                    isomorphic: v.isomorphic,
                    identical: v.identical,
                }),
            )?;
            Ok(verdict(true, ok))
        }
        Command::Search {
            k,
            n_min,
            n_max,
            jobs,
            budget_secs,
            from_file,
            out: path,
        } => {
            let defaults = SearchConfig::new(k);
            let budget = match budget_secs {
                Some(s) if !(s >= 0.0 && s.is_finite()) => {
                    return Err(CliError::Usage(format!("invalid budget {s}")));
                }
                Some(s) => Some(Duration::from_secs_f64(s)),
                None => None,
            };
            let config = SearchConfig {
                n_min: n_min.unwrap_or(defaults.n_min),
                n_max: n_max.unwrap_or(defaults.n_max),
                jobs,
                budget,
                ..defaults
            };
            if config.n_min > config.n_max {
                return Err(CliError::Usage(format!(
                    "--n-min {} exceeds --n-max {}",
                    config.n_min, config.n_max
                )));
            }
            let report: SearchReport = match from_file {
                Some(p) => edge_maximal_search_from_graphs(&config, read_graphs(&p)?)?,
                None => edge_maximal_search(&config)?,
            };
            let body = serde_json::to_string_pretty(&report).expect("report serializes");
            match path {
                Some(p) => {
                    std::fs::write(&p, body + "\n").map_err(io_err(&p))?;
                    w(
                        out,
                        &format!(
                            "k={} maximal={} partial={} elapsed={:.1}s",
                            report.k,
                            report.maximal.len(),
                            report.partial,
                            report.elapsed_secs
                        ),
                    )?;
                }
                None => w(out, &body)?,
            }
            Ok(Outcome::Ok)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    match run(cli, &mut lock) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Negative) => ExitCode::from(1),
        Err(e) => {
            eprintln!("tokens: {e}");
            ExitCode::from(2)
        }
    }
}
