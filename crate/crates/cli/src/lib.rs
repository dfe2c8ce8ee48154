//! `maxahp` command-line driver.
//!
//! Exit status: 0 success, 1 invalid input, 2 infeasible request, 3
//! numerical failure. Output for a fixed input and seed is byte-identical
//! across runs.

use std::ffi::OsString;
use std::io::Write;
use std::net::{IpAddr, SocketAddr};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use maxahp_core::ahp::ParetoOptions;
use maxahp_core::Tolerances;
use maxahp_io::api::{self, AnalyzeRequest, Limits, ParetoRequest};
use maxahp_io::report::{build_report, write_report, ReportOptions};
use maxahp_io::{load_matrix_document, load_problem_document, Entry, Error, ProblemDocument};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(
    name = "maxahp",
    version,
    about = "Max-algebra ranking from pairwise comparison matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Print the full result as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Relative tolerance for critical cycles and eigenvector checks.
    #[arg(long, global = true)]
    algebraic: Option<f64>,
    /// Allowed |a_ij a_ji - 1| when checking reciprocity.
    #[arg(long, global = true)]
    reciprocity: Option<f64>,
    /// Slack on the normalized radius test for a global optimum.
    #[arg(long, global = true)]
    normalized_radius: Option<f64>,
    /// Relative gap below which two weights rank as tied.
    #[arg(long, global = true)]
    tie: Option<f64>,
}

impl Common {
    fn apply(&self, base: Option<Tolerances>) -> Result<Tolerances, Error> {
        let mut t = base.unwrap_or_default();
        if let Some(v) = self.algebraic {
            t.algebraic = v;
        }
        if let Some(v) = self.reciprocity {
            t.reciprocity = v;
        }
        if let Some(v) = self.normalized_radius {
            t.normalized_radius = v;
        }
        if let Some(v) = self.tie {
            t.tie = v;
        }
        if t.is_valid() {
            Ok(t)
        } else {
            Err(Error::Schema(format!(
                "tolerances must be finite and nonnegative: {t:?}"
            )))
        }
    }

    fn problem(&self, path: &PathBuf) -> Result<ProblemDocument, Error> {
        let mut doc = load_problem_document(path)?;
        doc.tolerances = Some(self.apply(doc.tolerances)?);
        Ok(doc)
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Spectral profile of one matrix document.
    Analyze {
        #[arg(short, long)]
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// SR diagnostics for every matrix of a problem.
    Validate {
        #[arg(short, long)]
        problem: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Min-max optimal weights and the global optimum if one exists.
    Multi {
        #[arg(short, long)]
        problem: PathBuf,
        /// Exit with status 2 when no globally optimal vector exists.
        #[arg(long)]
        require_global: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Pareto optimal weights minimising the alpha-weighted error sum.
    Pareto {
        #[arg(short, long)]
        problem: PathBuf,
        /// Comma-separated weights, e.g. `1,1/2,2`; defaults to the criteria.
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        starts: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Perron eigenvector pipeline.
    Classical {
        #[arg(short, long)]
        problem: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Weight, error, ranking and scatter tables.
    Report {
        #[arg(short, long)]
        problem: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long, default_value_t = ReportOptions::default().seed)]
        seed: u64,
        /// Samples per scatter set.
        #[arg(long, default_value_t = ReportOptions::default().samples)]
        samples: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Serve the JSON endpoints.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: IpAddr,
        #[arg(long, default_value_t = Limits::default().max_n)]
        max_n: usize,
        #[arg(long, default_value_t = Limits::default().max_m)]
        max_m: usize,
    },
}

fn vector(v: &[f64]) -> String {
    v.iter()
        .map(|x| format!("{x:.6}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn edges(e: &[[usize; 2]]) -> String {
    e.iter()
        .map(|[i, j]| format!("({i},{j})"))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Either JSON or the text rendering.
fn emit<T: Serialize>(
    out: &mut dyn Write,
    json: bool,
    value: &T,
    text: impl FnOnce(&T) -> String,
) -> std::io::Result<()> {
    if json {
        let s = serde_json::to_string_pretty(value).expect("responses serialise");
        writeln!(out, "{s}")
    } else {
        write!(out, "{}", text(value))
    }
}

enum Failure {
    Error(Error),
    /// Computed fine but the caller asked for something that does not hold.
    Unmet(String),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<(), Failure> {
    let unbounded = Limits::UNBOUNDED;
    match command {
        Command::Analyze { input, common } => {
            let matrix = load_matrix_document(&input)?;
            let req = AnalyzeRequest {
                matrix,
                tolerances: Some(common.apply(None)?),
            };
            let r = api::analyze(&req, &unbounded)?;
            emit(out, common.json, &r, |r| {
                let mut s = format!(
                    "n {}\nmu {:.6}\nirreducible {}\nsr {}\n",
                    r.n,
                    r.mu,
                    yes(r.irreducible),
                    yes(r.sr)
                );
                match (&r.eigenvector, &r.ranking) {
                    (Some(x), Some(rank)) => {
                        s += &format!("eigenvector {}\nranking {rank}\n", vector(x))
                    }
                    _ => s += "eigenvector none\n",
                }
                s += &format!(
                    "subeigenvector {}\ncriticalNodes {}\ncriticalEdges {}\nanticriticalEdges {}\nunique {}\n",
                    vector(&r.principal_subeigenvector),
                    r.critical_nodes.iter().map(usize::to_string).collect::<Vec<_>>().join(" "),
                    edges(&r.critical_edges),
                    edges(&r.anticritical_edges),
                    yes(r.unique),
                );
                s
            })?;
        }
        Command::Validate { problem, common } => {
            let r = api::validate(&common.problem(&problem)?, &unbounded)?;
            emit(out, common.json, &r, |r| {
                let mut s = format!("valid {}\nn {}\nm {}\n", yes(r.valid), r.n, r.m);
                for d in r.matrices.iter().chain(&r.criteria) {
                    s += &format!(
                        "matrix {} sr {} mu {:.6} reciprocityDefect {:.3e} violations {}\n",
                        d.name,
                        yes(d.sr),
                        d.mu,
                        d.max_reciprocity_defect,
                        edges(&d.reciprocity_violations),
                    );
                }
                for i in &r.issues {
                    s += &format!("issue {i}\n");
                }
                s
            })?;
            if !r.valid {
                return Err(Failure::Error(Error::Schema("problem is not valid".into())));
            }
        }
        Command::Multi {
            problem,
            require_global,
            common,
        } => {
            let r = api::multi(&common.problem(&problem)?, &unbounded)?;
            emit(out, common.json, &r, |r| {
                let mut s = format!(
                    "n {}\nm {}\nmuHat {:.6}\nnormalizedRadius {:.6}\n",
                    r.n, r.m, r.mu_hat, r.normalized_radius
                );
                match (&r.global_optimum, &r.global_ranking) {
                    (Some(x), Some(rank)) => {
                        s += &format!("globalOptimum {}\nglobalRanking {rank}\n", vector(x))
                    }
                    _ => s += "globalOptimum none\n",
                }
                s += &format!(
                    "minmax {}\nminmaxRanking {}\nuniqueMinmax {}\n",
                    vector(&r.minmax),
                    r.minmax_ranking,
                    yes(r.unique_minmax)
                );
                for c in &r.criteria {
                    s += &format!(
                        "criterion {} mu {:.6} errorAtMinmax {:.6}\n",
                        c.name, c.mu, c.error_at_minmax
                    );
                }
                s
            })?;
            if require_global && !r.global_exists {
                return Err(Failure::Unmet(format!(
                    "no globally optimal vector: normalized radius {:.6} > 1",
                    r.normalized_radius
                )));
            }
        }
        Command::Pareto {
            problem,
            alpha,
            starts,
            seed,
            common,
        } => {
            let defaults = ParetoOptions::default();
            let options = ParetoOptions {
                starts,
                seed: seed.unwrap_or(defaults.seed),
                ..defaults
            };
            let req = ParetoRequest {
                problem: common.problem(&problem)?,
                alpha: alpha.map(|a| a.split(',').map(|t| Entry::new(t.trim())).collect()),
                options: Some(options),
            };
            let r = api::pareto(&req, &unbounded)?;
            emit(out, common.json, &r, |r| {
                let mut s = format!(
                    "alpha {}\nmuHat {:.6}\npoints {}\n",
                    vector(&r.alpha),
                    r.mu_hat,
                    r.points.len()
                );
                for (k, p) in r.points.iter().enumerate() {
                    s += &format!(
                        "point {} {}\n  ranking {}\n  weightedValue {:.6}\n  maxError {:.6}\n  errors {}\n  certificate samples {} weaklyDominated {} dominated {}\n",
                        k + 1,
                        vector(&p.point),
                        p.ranking,
                        p.weighted_value,
                        p.max_error,
                        vector(&p.objective_values),
                        p.certificate_samples,
                        yes(p.weakly_dominated),
                        yes(p.dominated),
                    );
                }
                s += &format!(
                    "rankings {}\n",
                    r.rankings
                        .iter()
                        .map(ToString::to_string)
                        .collect::<Vec<_>>()
                        .join(" ")
                );
                s
            })?;
        }
        Command::Classical { problem, common } => {
            let r = api::classical(&common.problem(&problem)?, &unbounded)?;
            emit(out, common.json, &r, |r| {
                let mut s = format!("criteriaWeights {}\n", vector(&r.criteria_weights));
                for c in &r.criteria {
                    s += &format!(
                        "criterion {} rho {:.6} vector {} ranking {}\n",
                        c.name,
                        c.rho,
                        vector(&c.vector),
                        c.ranking
                    );
                }
                s += &format!("weights {}\nranking {}\n", vector(&r.weights), r.ranking);
                s
            })?;
        }
        Command::Report {
            problem,
            output,
            format: Format::Csv,
            seed,
            samples,
            common,
        } => {
            let doc = common.problem(&problem)?;
            let opts = ReportOptions {
                seed,
                samples,
                ..ReportOptions::default()
            };
            let tables = build_report(&doc.to_problem()?, &doc.tolerances()?, &opts)?;
            for file in write_report(&output, &tables)? {
                writeln!(out, "{}", output.join(file).display())?;
            }
        }
        Command::Serve {
            port,
            host,
            max_n,
            max_m,
        } => {
            let config = maxahp_service::Config {
                limits: Limits { max_n, max_m },
                ..Default::default()
            };
            let addr = SocketAddr::new(host, port);
            writeln!(out, "listening on http://{addr}")?;
            out.flush()?;
            maxahp_service::serve_blocking(addr, config)?;
        }
    }
    Ok(())
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(()) => 0,
        Err(Failure::Error(e)) => {
            let kind = e.kind();
            let _ = writeln!(err, "error[{kind}]: {e}");
            kind.exit_code()
        }
        Err(Failure::Unmet(msg)) => {
            let _ = writeln!(err, "error[infeasible]: {msg}");
            2
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}
