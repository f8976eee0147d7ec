use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use deckit::apps::{self, format_value, DarcyBoundary, DarcyConfig, DEFAULT_SEED};
use deckit::io::{load_edges, load_mesh, load_points};
use deckit::Error;

#[derive(Parser)]
#[command(name = "deckit", version, about = "Discrete exterior calculus example drivers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Mesh {
    /// One vertex per line.
    #[arg(long)]
    vertices: PathBuf,
    /// One triangle per line, 0-based vertex indices.
    #[arg(long)]
    elements: PathBuf,
}

#[derive(Args)]
struct Common {
    /// Directory for result files; nothing is written without it.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Resonant modes of a square cavity.
    Cavity {
        #[command(flatten)]
        mesh: Mesh,
        /// Number of nonzero eigenpairs to report.
        #[arg(long, default_value_t = 5)]
        eigs: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Darcy flow with uniform inflow through the boundary.
    Darcy {
        #[command(flatten)]
        mesh: Mesh,
        #[arg(long, default_value_t = 1.0)]
        kappa: f64,
        #[arg(long, default_value_t = 1.0)]
        mu: f64,
        /// Velocity whose normal component is imposed on the boundary.
        #[arg(long, num_args = 2, default_values_t = [1.0, 0.0], allow_negative_numbers = true)]
        inflow: Vec<f64>,
        #[command(flatten)]
        common: Common,
    },
    /// Harmonic 1-cochain basis of a planar mesh.
    Cohomology {
        #[command(flatten)]
        mesh: Mesh,
        #[command(flatten)]
        common: Common,
    },
    /// Coverage holes of a sensor network.
    Sensor {
        #[arg(long)]
        points: PathBuf,
        #[arg(long)]
        radius: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Least squares ranking from pairwise comparisons.
    Rank {
        /// Lines of `i j value`.
        #[arg(long)]
        edges: PathBuf,
        #[command(flatten)]
        common: Common,
    },
}

fn warn(messages: &[String]) {
    for m in messages {
        eprintln!("warning: {m}");
    }
}

fn values(v: &[f64]) -> String {
    v.iter().map(|&x| format_value(x)).collect::<Vec<_>>().join(" ")
}

fn maybe_write(out: &Option<PathBuf>, write: impl FnOnce(&Path) -> deckit::Result<()>) -> deckit::Result<()> {
    match out {
        Some(dir) => write(dir),
        None => Ok(()),
    }
}

fn run(command: Command) -> deckit::Result<()> {
    match command {
        Command::Cavity { mesh, eigs, common } => {
            let c = load_mesh(&mesh.vertices, &mesh.elements)?;
            let r = apps::cavity(&c, eigs)?;
            println!("zero eigenvalues: {}", r.zero_count);
            let shown = &r.nonzero_eigenvalues()[..eigs.min(r.nonzero_eigenvalues().len())];
            println!("smallest nonzero eigenvalues: {}", values(shown));
            maybe_write(&common.out, |d| r.write_to(d))
        }
        Command::Darcy { mesh, kappa, mu, inflow, common } => {
            let c = load_mesh(&mesh.vertices, &mesh.elements)?;
            let cfg = DarcyConfig {
                kappa,
                mu,
                boundary: DarcyBoundary::UniformVelocity([inflow[0], inflow[1]]),
                ..DarcyConfig::default()
            };
            let r = apps::darcy(&c, &cfg)?;
            let (lo, hi) = r.pressure.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &p| (a.min(p), b.max(p)));
            println!("pressure range: {}", values(&[lo, hi]));
            maybe_write(&common.out, |d| r.write_to(&c, d))
        }
        Command::Cohomology { mesh, common } => {
            let c = load_mesh(&mesh.vertices, &mesh.elements)?;
            let r = apps::cohomology(&c, common.seed, 1e-14)?;
            warn(&r.warnings);
            println!("expected rank: {}", r.expected_rank);
            println!("harmonic rank: {}", r.rank);
            println!("laplacian residuals: {}", values(&r.laplacian_residuals));
            maybe_write(&common.out, |d| r.write_to(d))
        }
        Command::Sensor { points, radius, common } => {
            if !(radius > 0.0 && radius.is_finite()) {
                return Err(Error::InvalidArgument(format!("radius must be positive, got {radius}")));
            }
            let r = apps::sensor(load_points(&points)?, radius, common.seed, 1e-12)?;
            println!("harmonic norm ratio: {}", format_value(r.harmonic_ratio));
            maybe_write(&common.out, |d| r.write_to(d))
        }
        Command::Rank { edges, common } => {
            let r = apps::rank(&load_edges(&edges)?, 1e-14)?;
            warn(&r.warnings);
            for (l, a) in r.labels.iter().zip(&r.alpha) {
                println!("{l} {}", format_value(*a));
            }
            println!("residual: {}", format_value(r.residual));
            maybe_write(&common.out, |d| r.write_to(d))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_solver_failure() { 2 } else { 1 })
        }
    }
}
