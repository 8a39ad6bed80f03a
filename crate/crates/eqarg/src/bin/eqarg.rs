use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use eqarg::commands::{self, Limits, Outcome};
use eqarg::io::{self, InstantiatedNetworkJson};
use eqarg::{gallery, parallel};
use eqarg_core::distribution::DEFAULT_MODEL_CAP;
use eqarg_core::method2::VERTEX_ENUMERATION_CAP;
use eqarg_core::{EquationKind, SolveConfig};

/// Equational and probabilistic semantics for argumentation frameworks.
#[derive(Parser)]
#[command(name = "eqarg", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Solver tolerance: both the Newton step and residual thresholds.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Damping factor in (0, 1].
    #[arg(long, global = true)]
    alpha: Option<f64>,
    #[arg(long, global = true)]
    max_iter: Option<usize>,
    /// Largest framework enumerated by brute force.
    #[arg(long, global = true)]
    cap: Option<usize>,
    /// Random seed for solver starting points.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Inv,
    Max,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the product (inv) or max equations.
    Solve {
        kind: Kind,
        file: PathBuf,
        /// Enumerate exact {0, 1/2, 1} solutions (max only).
        #[arg(long)]
        exact: bool,
    },
    /// List complete labellings, tagging preferred and grounded.
    Extensions { file: PathBuf },
    /// Check atom probabilities, or list product-form solutions.
    Method1 {
        file: PathBuf,
        /// Atom probabilities, e.g. `a=1/2,b=1/4`.
        #[arg(long)]
        probabilities: Option<String>,
        /// Seed the solver on a grid with this many levels per axis.
        #[arg(long)]
        grid: Option<usize>,
    },
    /// Distributions over models.
    Method2 {
        #[command(subcommand)]
        action: Method2,
    },
    /// Approximately legitimate distribution for a complete labelling.
    Approximate {
        file: PathBuf,
        /// Labelling, e.g. `a=in,b=out,c=und`.
        #[arg(long)]
        label: String,
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
    /// p-justifiability of a distribution, next to legitimacy.
    Thimm {
        file: PathBuf,
        distribution: PathBuf,
    },
    /// Constraints of an instantiated network, and a feasible distribution.
    Instantiate {
        /// JSON with `framework`, `atoms` and `instantiation`.
        network: PathBuf,
        /// Marginal pin `formula=value` over the atoms; repeatable.
        #[arg(long)]
        pin: Vec<String>,
    },
    /// Render the framework as Graphviz DOT.
    ExportDot {
        file: PathBuf,
        /// Values to print on nodes, e.g. `a=1/2,b=0`.
        #[arg(long)]
        values: Option<String>,
    },
    /// Regenerate the worked-example fixtures into a directory.
    Gallery { dir: PathBuf },
}

#[derive(Subcommand)]
enum Method2 {
    /// Check a distribution JSON for legitimacy.
    Check {
        file: PathBuf,
        distribution: PathBuf,
    },
    /// Find a legitimate distribution, or an infeasibility certificate.
    Find {
        file: PathBuf,
        /// Marginal pin `formula=value`; repeatable.
        #[arg(long)]
        pin: Vec<String>,
    },
    /// Enumerate vertices of the legitimate polytope.
    Vertices {
        file: PathBuf,
        #[arg(long, default_value_t = 64)]
        limit: usize,
    },
    /// The distribution built from a complete labelling.
    Plambda {
        file: PathBuf,
        #[arg(long)]
        label: String,
    },
    /// The labelling read off a legitimate distribution.
    GrLabel {
        file: PathBuf,
        distribution: PathBuf,
    },
}

fn config(g: &Global) -> anyhow::Result<SolveConfig> {
    let mut cfg = SolveConfig::default();
    if let Some(t) = g.tol {
        cfg.tolerance = t;
        cfg.residual_tolerance = t;
    }
    if let Some(a) = g.alpha {
        cfg.damping = a;
    }
    if let Some(m) = g.max_iter {
        cfg.max_iterations = m;
    }
    if let Some(s) = g.seed {
        cfg.rng_seed = s;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn limits(g: &Global) -> anyhow::Result<Limits> {
    let mut l = Limits {
        threads: parallel::thread_limit(),
        ..Limits::default()
    };
    if let Some(c) = g.cap {
        if c == 0 {
            bail!("--cap must be at least 1");
        }
        l.cap = c;
    }
    Ok(l)
}

fn pins(
    texts: &[String],
    names: &[String],
) -> anyhow::Result<Vec<(eqarg_core::Formula, eqarg_core::rational::Rational)>> {
    texts.iter().map(|t| io::parse_pin(t, names)).collect()
}

enum Rendered {
    Report(Outcome),
    Dot(String),
    Gallery(gallery::GallerySummary),
}

fn run(cli: &Cli) -> anyhow::Result<Rendered> {
    let g = &cli.global;
    let cfg = config(g)?;
    let limits = limits(g)?;
    let model_cap = g.cap.unwrap_or(DEFAULT_MODEL_CAP);
    let read = |p: &Path| io::read_framework(p);
    let dist = |af: &eqarg_core::ArgumentationFramework, p: &Path| {
        io::read_distribution(p, af.len(), limits.denominator_bound)
    };
    let report = match &cli.command {
        Command::Solve { kind, file, exact } => {
            let af = read(file)?;
            let kind = match kind {
                Kind::Inv => EquationKind::Inv,
                Kind::Max => EquationKind::Max,
            };
            if g.format == Format::Dot {
                return Ok(Rendered::Dot(commands::solve_dot(
                    &af, kind, &cfg, &limits,
                )?));
            }
            commands::solve(&af, kind, *exact, &cfg, &limits)?
        }
        Command::Extensions { file } => commands::extensions(&read(file)?, &limits)?,
        Command::Method1 {
            file,
            probabilities,
            grid,
        } => commands::method1(&read(file)?, probabilities.as_deref(), *grid, &cfg)?,
        Command::Method2 { action } => match action {
            Method2::Check { file, distribution } => {
                let af = read(file)?;
                let (d, conv) = dist(&af, distribution)?;
                commands::method2_check(&af, &d, conv)?
            }
            Method2::Find { file, pin } => {
                let af = read(file)?;
                commands::method2_find(&af, &pins(pin, af.names())?, model_cap)?
            }
            Method2::Vertices { file, limit } => {
                let af = read(file)?;
                if af.len() > VERTEX_ENUMERATION_CAP {
                    bail!(
                        "vertex enumeration is limited to {VERTEX_ENUMERATION_CAP} arguments, got {}",
                        af.len()
                    );
                }
                commands::method2_vertices(&af, *limit)?
            }
            Method2::Plambda { file, label } => {
                let af = read(file)?;
                commands::method2_plambda(&af, &commands::parse_labelling(&af, label)?)?
            }
            Method2::GrLabel { file, distribution } => {
                let af = read(file)?;
                let (d, conv) = dist(&af, distribution)?;
                commands::method2_gr_label(&af, &d, conv)?
            }
        },
        Command::Approximate { file, label, n } => {
            let af = read(file)?;
            let lab = commands::parse_labelling(&af, label)?;
            commands::approximate(&af, &lab, *n, &cfg, &limits)?
        }
        Command::Thimm { file, distribution } => {
            let af = read(file)?;
            let (d, conv) = dist(&af, distribution)?;
            commands::thimm(&af, &d, conv)?
        }
        Command::Instantiate { network, pin } => {
            let text = std::fs::read_to_string(network)
                .with_context(|| format!("reading {}", network.display()))?;
            let json: InstantiatedNetworkJson = serde_json::from_str(&text)
                .with_context(|| format!("parsing {}", network.display()))?;
            let net = json.to_network()?;
            commands::instantiate(&net, &pins(pin, &net.atoms)?, model_cap)?
        }
        Command::ExportDot { file, values } => {
            return Ok(Rendered::Dot(commands::export_dot(
                &read(file)?,
                values.as_deref(),
            )?));
        }
        Command::Gallery { dir } => return Ok(Rendered::Gallery(gallery::run(dir, &cfg)?)),
    };
    Ok(Rendered::Report(report))
}

fn emit(g: &Global, body: &str) -> anyhow::Result<()> {
    match &g.output {
        Some(p) => std::fs::write(p, body).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|r| {
        let (body, passed) = match r {
            Rendered::Dot(s) => (s, true),
            Rendered::Report(o) => match cli.global.format {
                Format::Text => (o.text, o.passed),
                Format::Json | Format::Dot => {
                    (serde_json::to_string_pretty(&o.json)? + "\n", o.passed)
                }
            },
            Rendered::Gallery(s) => {
                let body = match cli.global.format {
                    Format::Text => {
                        let mut t = String::new();
                        for f in &s.fixtures {
                            t +=
                                &format!("{} {}\n", if f.passed { "PASS" } else { "FAIL" }, f.name);
                            for c in &f.failed_checks {
                                t += &format!("    failed: {c}\n");
                            }
                        }
                        t + &format!(
                            "{}/{} fixtures passed\n",
                            s.fixture_count - s.failed_count,
                            s.fixture_count
                        )
                    }
                    _ => serde_json::to_string_pretty(&s)? + "\n",
                };
                (body, s.passed)
            }
        };
        emit(&cli.global, &body)?;
        Ok(passed)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
