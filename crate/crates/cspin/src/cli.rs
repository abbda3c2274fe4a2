use std::f64::consts::FRAC_PI_2;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cspin_core::dynamics::Propagation;
use cspin_core::ModelKind;

use crate::grid::GridSpec;
use crate::output::Format;

#[derive(Debug, Parser)]
#[command(name = "cspin", version, about = "Central spin and LMG squeezing, dynamics and QFI sweeps")]
pub struct Cli {
    /// Hamiltonian to use.
    #[arg(long, value_enum, default_value_t = ModelArg::Central, global = true)]
    pub model: ModelArg,
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    pub format: Format,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Bath frequency, the energy unit.
    #[arg(long, default_value_t = 1.0, global = true)]
    pub omega: f64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    Central,
    Lmg,
}

impl From<ModelArg> for ModelKind {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::Central => ModelKind::Central,
            ModelArg::Lmg => ModelKind::Lmg,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Analytic,
    Exact,
    Numeric,
}

impl From<MethodArg> for Propagation {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Analytic => Propagation::Analytic,
            MethodArg::Exact => Propagation::Exact,
            MethodArg::Numeric => Propagation::Numeric,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Ground-state squeezing, energy and gap over a coupling grid.
    Ground(GroundArgs),
    /// Squeezing dynamics from a spin coherent state.
    Dynamics(DynamicsArgs),
    /// Ground-state QFI curves, peaks and the size exponent.
    Qfi(QfiArgs),
    /// Residuals of the effective LMG mapping over frequency ratios.
    Swcheck(SwcheckArgs),
}

#[derive(Debug, Args)]
pub struct GroundArgs {
    #[arg(long = "N")]
    pub n_bath: usize,
    #[arg(long, default_value_t = 1e5)]
    pub eta: f64,
    #[arg(long, default_value_t = 0.0)]
    pub lambda: f64,
    /// Coupling grid `start:stop:count`.
    #[arg(long)]
    pub g: GridSpec,
}

#[derive(Debug, Args)]
pub struct DynamicsArgs {
    #[arg(long = "N")]
    pub n_bath: usize,
    #[arg(long, default_value_t = 1e5)]
    pub eta: f64,
    #[arg(long, default_value_t = 2.0)]
    pub g: f64,
    #[arg(long, default_value_t = 0.0)]
    pub lambda: f64,
    /// Polar angle of the initial bath coherent state.
    #[arg(long, default_value_t = FRAC_PI_2)]
    pub theta0: f64,
    /// Propagation route; exact for the isotropic central model, numeric otherwise.
    #[arg(long, value_enum)]
    pub method: Option<MethodArg>,
    /// Time grid `start:stop:count`; defaults to twice the twisting optimum.
    #[arg(long)]
    pub t: Option<GridSpec>,
    /// Emit only the optimum and the twisting predictions as JSON.
    #[arg(long)]
    pub summary: bool,
}

#[derive(Debug, Args)]
pub struct QfiArgs {
    /// Comma-separated bath sizes.
    #[arg(long = "N", value_delimiter = ',', num_args = 1.., required = true)]
    pub n_list: Vec<usize>,
    #[arg(long, default_value_t = 1e5)]
    pub eta: f64,
    #[arg(long, default_value_t = 1.0)]
    pub lambda: f64,
    #[arg(long, default_value = "0.8:1.2:100")]
    pub g: GridSpec,
    /// Emit peaks and the fitted size exponent as JSON.
    #[arg(long)]
    pub exponent: bool,
}

#[derive(Debug, Args)]
pub struct SwcheckArgs {
    #[arg(long = "N")]
    pub n_bath: usize,
    #[arg(long, default_value_t = 1.0)]
    pub g: f64,
    #[arg(long, default_value_t = 1.0)]
    pub lambda: f64,
    /// Comma-separated frequency ratios.
    #[arg(long, value_delimiter = ',', num_args = 1.., required = true)]
    pub eta: Vec<f64>,
}
