//! Command-line surface. Every value arrives as text and is validated by
//! the same typed layer that reads config files, so flag and file values
//! get identical checking and error messages.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::errors::CliError;

#[derive(Parser)]
#[command(
    name = "fewmode",
    version,
    about = "Few-mode quantum interference experiments: sweeps in, CSV out"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Mach-Zehnder interferometer (open, closed, or delayed-choice)
    Mz(MzArgs),
    /// Entangled photon-pair correlations vs phase difference
    Rto(RtoArgs),
    /// Double-slit screen profile and impact sampling
    DoubleSlit(DoubleSlitArgs),
    /// Decay detector and cat as a measurement correlation table
    Cat(CatArgs),
    /// CHSH score against the exhaustive local-strategy bound
    Bell(BellArgs),
    /// Simple vs entangled superposition, side by side over five phases
    TableOne(TableOneArgs),
}

#[derive(Args)]
pub struct CommonArgs {
    /// Flat `key = value` config file; explicit flags override it
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Phase sweep `start:stop:steps` (start inclusive, stop exclusive)
    #[arg(long, value_name = "START:STOP:STEPS")]
    pub sweep: Option<String>,
    /// Monte Carlo trials per point (0 = analytic)
    #[arg(long)]
    pub shots: Option<String>,
    /// 64-bit seed for sampled runs
    #[arg(long)]
    pub seed: Option<String>,
    /// CSV destination (`-` = stdout)
    #[arg(long, short)]
    pub output: Option<String>,
    /// Outcome record CSV destination
    #[arg(long)]
    pub record: Option<String>,
}

impl CommonArgs {
    fn lower(&self, pairs: &mut Vec<(&'static str, String)>) {
        push(pairs, "sweep", &self.sweep);
        push(pairs, "shots", &self.shots);
        push(pairs, "seed", &self.seed);
        push(pairs, "output", &self.output);
        push(pairs, "record", &self.record);
    }
}

fn push(pairs: &mut Vec<(&'static str, String)>, key: &'static str, value: &Option<String>) {
    if let Some(v) = value {
        pairs.push((key, v.clone()));
    }
}

#[derive(Args)]
pub struct MzArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Open configuration: no recombining splitter
    #[arg(long)]
    pub open: bool,
    /// Closed configuration: second splitter in place
    #[arg(long)]
    pub closed: bool,
    /// Delayed choice with the given front fraction in [0, 1]
    #[arg(long, value_name = "R")]
    pub delayed: Option<String>,
    /// Path-1 phase in radians (sweeps override this per point)
    #[arg(long)]
    pub phi1: Option<String>,
    /// Path-2 phase in radians
    #[arg(long)]
    pub phi2: Option<String>,
}

#[derive(Args)]
pub struct RtoArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Side-A phase in radians
    #[arg(long = "phi-a")]
    pub phi_a: Option<String>,
    /// Side-B phase in radians (sweeps override this per point)
    #[arg(long = "phi-b")]
    pub phi_b: Option<String>,
}

#[derive(Args)]
pub struct DoubleSlitArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Wavelength in meters
    #[arg(long)]
    pub wavelength: Option<String>,
    /// Center-to-center slit separation in meters
    #[arg(long = "slit-separation")]
    pub slit_separation: Option<String>,
    /// Single slit width in meters
    #[arg(long = "slit-width")]
    pub slit_width: Option<String>,
    /// Slits-to-screen distance in meters
    #[arg(long)]
    pub distance: Option<String>,
    /// Screen half-width in meters
    #[arg(long = "half-width")]
    pub half_width: Option<String>,
    /// Number of screen bins (at least 16)
    #[arg(long)]
    pub bins: Option<String>,
    /// Which slits are open: both, slit1, slit2
    #[arg(long)]
    pub slits: Option<String>,
    /// Impact coordinate CSV destination (sampled runs)
    #[arg(long)]
    pub impacts: Option<String>,
}

#[derive(Args)]
pub struct CatArgs {
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Args)]
pub struct BellArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// The settings that maximize the quantum score (a=0, a'=π/2, b=π/4, b'=3π/4)
    #[arg(long)]
    pub canonical: bool,
    /// Build settings from one phase difference: {±Δ, 3Δ}
    #[arg(long)]
    pub delta: Option<String>,
    /// Explicit analyzer phase a
    #[arg(long)]
    pub a: Option<String>,
    /// Explicit analyzer phase a'
    #[arg(long = "a-prime")]
    pub a_prime: Option<String>,
    /// Explicit analyzer phase b
    #[arg(long)]
    pub b: Option<String>,
    /// Explicit analyzer phase b'
    #[arg(long = "b-prime")]
    pub b_prime: Option<String>,
}

#[derive(Args)]
pub struct TableOneArgs {
    #[command(flatten)]
    pub common: CommonArgs,
}

/// What a subcommand reduces to: its registry name, the optional config
/// file, and flag values as text pairs.
pub struct LoweredArgs {
    pub experiment: &'static str,
    pub config: Option<PathBuf>,
    pub pairs: Vec<(&'static str, String)>,
}

impl Command {
    pub fn lower(&self) -> Result<LoweredArgs, CliError> {
        match self {
            Command::Mz(args) => {
                let mut pairs = Vec::new();
                args.common.lower(&mut pairs);
                let mode_flags = [
                    (args.open, "--open"),
                    (args.closed, "--closed"),
                    (args.delayed.is_some(), "--delayed"),
                ];
                let set: Vec<&'static str> = mode_flags
                    .iter()
                    .filter(|(on, _)| *on)
                    .map(|(_, name)| *name)
                    .collect();
                if set.len() > 1 {
                    return Err(CliError::MutuallyExclusive(set[0], set[1]));
                }
                if args.open {
                    pairs.push(("mode", "open".into()));
                }
                if args.closed {
                    pairs.push(("mode", "closed".into()));
                }
                if let Some(r) = &args.delayed {
                    pairs.push(("mode", "delayed".into()));
                    pairs.push(("front-fraction", r.clone()));
                }
                push(&mut pairs, "phi1", &args.phi1);
                push(&mut pairs, "phi2", &args.phi2);
                Ok(LoweredArgs {
                    experiment: "mz",
                    config: args.common.config.clone(),
                    pairs,
                })
            }
            Command::Rto(args) => {
                let mut pairs = Vec::new();
                args.common.lower(&mut pairs);
                push(&mut pairs, "phi-a", &args.phi_a);
                push(&mut pairs, "phi-b", &args.phi_b);
                Ok(LoweredArgs {
                    experiment: "rto",
                    config: args.common.config.clone(),
                    pairs,
                })
            }
            Command::DoubleSlit(args) => {
                let mut pairs = Vec::new();
                args.common.lower(&mut pairs);
                push(&mut pairs, "wavelength", &args.wavelength);
                push(&mut pairs, "slit-separation", &args.slit_separation);
                push(&mut pairs, "slit-width", &args.slit_width);
                push(&mut pairs, "distance", &args.distance);
                push(&mut pairs, "half-width", &args.half_width);
                push(&mut pairs, "bins", &args.bins);
                push(&mut pairs, "slits", &args.slits);
                push(&mut pairs, "impacts", &args.impacts);
                Ok(LoweredArgs {
                    experiment: "double-slit",
                    config: args.common.config.clone(),
                    pairs,
                })
            }
            Command::Cat(args) => {
                let mut pairs = Vec::new();
                args.common.lower(&mut pairs);
                Ok(LoweredArgs {
                    experiment: "cat",
                    config: args.common.config.clone(),
                    pairs,
                })
            }
            Command::Bell(args) => {
                let mut pairs = Vec::new();
                args.common.lower(&mut pairs);
                if args.canonical {
                    pairs.push(("canonical", "true".into()));
                }
                push(&mut pairs, "delta", &args.delta);
                push(&mut pairs, "a", &args.a);
                push(&mut pairs, "a-prime", &args.a_prime);
                push(&mut pairs, "b", &args.b);
                push(&mut pairs, "b-prime", &args.b_prime);
                Ok(LoweredArgs {
                    experiment: "bell",
                    config: args.common.config.clone(),
                    pairs,
                })
            }
            Command::TableOne(args) => {
                let mut pairs = Vec::new();
                args.common.lower(&mut pairs);
                Ok(LoweredArgs {
                    experiment: "table-one",
                    config: args.common.config.clone(),
                    pairs,
                })
            }
        }
    }
}
