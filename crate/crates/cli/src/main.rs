//! `cluster-lattice`: build and verify the quivers of a finite-type cluster
//! algebra from the command line.
//!
//! Exit codes: 0 pass, 1 a verification failed, 2 bad input or vertex cap
//! exceeded, 3 internal error.

mod export;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cluster_lattice::cambrian::{build_cambrian_hasse, enumerate_sortables};
use cluster_lattice::quivers::{
    build_c_cluster_quiver, build_tau_tilting_quiver, ExchangeQuiver, Sign, DEFAULT_VERTEX_CAP,
};
use cluster_lattice::rootsys::{cartan_matrix, CoxeterDynamics, CoxeterElement, DynkinType, RootSystem};
use cluster_lattice::verify::{all_report, flip_report, iso_report, lattice_report, signs_report, Instance};
use cluster_lattice::Error;
use serde::Serialize;

#[derive(Parser)]
#[command(name = "cluster-lattice", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exchange quiver of the cluster algebra with initial matrix B^c.
    Exchange(Config),
    /// Quiver of c-clusters.
    Cclusters(Config),
    /// Hasse quiver of the c-Cambrian lattice.
    Cambrian(Config),
    /// Rank-vector shadow of the support τ-tilting quiver.
    Tautilt(Config),
    /// Check the quiver maps between all four quivers.
    VerifyIso(Config),
    /// Check that the exchange, Cambrian, c-cluster and τ-tilting quivers are lattices.
    VerifyLattice(Config),
    /// Check sign coherence, duality and tropical coefficients at every seed.
    VerifySigns(Config),
    /// Check arrow flips between B^c and -B^c and the τ_c^-1 C-matrix identity.
    VerifyFlip(Config),
    /// Run every check.
    VerifyAll(Config),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Args)]
struct Config {
    /// Dynkin type (A-G).
    #[arg(long = "type")]
    dynkin_type: DynkinType,
    #[arg(long)]
    rank: usize,
    /// Coxeter element as a comma-separated permutation of 1..rank.
    /// Defaults to 1,2,...,rank.
    #[arg(long, value_delimiter = ',')]
    coxeter: Option<Vec<usize>>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// Include full Laurent polynomials in exchange-quiver payloads.
    #[arg(long, short)]
    verbose: bool,
    #[arg(long, env = "CAMBRIAN_VERTEX_CAP", default_value_t = DEFAULT_VERTEX_CAP)]
    vertex_cap: usize,
}

impl Config {
    fn dynamics(&self) -> Result<CoxeterDynamics, Error> {
        let spec = cartan_matrix(self.dynkin_type, self.rank)?;
        let c = match &self.coxeter {
            Some(order) => CoxeterElement::from_one_based(order)?,
            None => CoxeterElement::standard(self.rank),
        };
        if c.rank() != self.rank {
            return Err(Error::Input(format!("Coxeter element {c} is not a permutation of 1..{}", self.rank)));
        }
        CoxeterDynamics::new(RootSystem::new(spec)?, c)
    }

    fn instance(&self) -> Result<Instance, Error> {
        let dy = self.dynamics()?;
        Instance::build(dy.spec().clone(), dy.coxeter().clone(), self.vertex_cap)
    }

    fn emit(&self, text: &str) -> Result<(), Error> {
        match &self.output {
            Some(path) => {
                std::fs::write(path, text).map_err(|e| Error::Input(format!("cannot write {}: {e}", path.display())))
            }
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

enum Outcome {
    Pass,
    Fail,
}

fn cap(count: usize, cap: usize) -> Result<(), Error> {
    if count > cap {
        return Err(Error::CapExceeded { cap });
    }
    Ok(())
}

fn build(cmd: &Command, cfg: &Config) -> Result<Outcome, Error> {
    let dy = cfg.dynamics()?;
    let export = match cmd {
        Command::Exchange(_) => export::exchange(&ExchangeQuiver::build(&dy, Sign::Plus, cfg.vertex_cap)?, cfg.verbose),
        Command::Cclusters(_) => {
            let q = build_c_cluster_quiver(&dy)?;
            cap(q.vertex_count(), cfg.vertex_cap)?;
            export::c_clusters(&q)
        }
        Command::Cambrian(_) => {
            let sortables = enumerate_sortables(dy.root_system(), dy.coxeter())?;
            cap(sortables.len(), cfg.vertex_cap)?;
            export::cambrian(&build_cambrian_hasse(dy.root_system(), sortables))
        }
        Command::Tautilt(_) => {
            let ex = ExchangeQuiver::build(&dy, Sign::Plus, cfg.vertex_cap)?;
            export::tau_tilting(&build_tau_tilting_quiver(&ex)?.quiver)
        }
        _ => unreachable!("not a build command"),
    };
    let text = match cfg.format {
        Format::Json => export.to_json(),
        Format::Dot => export.to_dot(),
    };
    cfg.emit(&text)?;
    Ok(Outcome::Pass)
}

fn report<R: Serialize>(cfg: &Config, r: &R, passed: bool) -> Result<Outcome, Error> {
    let mut text = serde_json::to_string_pretty(r).map_err(|e| Error::Internal(e.to_string()))?;
    text.push('\n');
    cfg.emit(&text)?;
    Ok(if passed { Outcome::Pass } else { Outcome::Fail })
}

fn verify(cmd: &Command, cfg: &Config) -> Result<Outcome, Error> {
    let inst = cfg.instance()?;
    match cmd {
        Command::VerifyIso(_) => {
            let r = iso_report(&inst)?;
            report(cfg, &r, r.passed)
        }
        Command::VerifyLattice(_) => {
            let r = lattice_report(&inst);
            report(cfg, &r, r.passed)
        }
        Command::VerifySigns(_) => {
            let r = signs_report(&inst)?;
            report(cfg, &r, r.passed)
        }
        Command::VerifyFlip(_) => {
            let r = flip_report(&inst)?;
            report(cfg, &r, r.passed)
        }
        Command::VerifyAll(_) => {
            let r = all_report(&inst)?;
            report(cfg, &r, r.passed)
        }
        _ => unreachable!("not a verify command"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Exchange(cfg) | Command::Cclusters(cfg) | Command::Cambrian(cfg) | Command::Tautilt(cfg) => {
            build(&cli.command, cfg)
        }
        Command::VerifyIso(cfg)
        | Command::VerifyLattice(cfg)
        | Command::VerifySigns(cfg)
        | Command::VerifyFlip(cfg)
        | Command::VerifyAll(cfg) => verify(&cli.command, cfg),
    };
    match result {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Input(_) | Error::CapExceeded { .. } => 2,
                Error::Internal(_) => 3,
            })
        }
    }
}
