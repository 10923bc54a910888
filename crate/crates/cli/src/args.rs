use clap::{ArgGroup, Args, Parser, Subcommand};
use serde::Serialize;
use std::path::PathBuf;

/// Polar code construction, BLER estimation and Monte Carlo validation for
/// the BI-AWGN channel. All SNRs are Es/N0 in dB.
#[derive(Debug, Parser)]
#[command(name = "polarforge", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a construction and write it as JSON plus a frozen mask.
    Construct(ConstructArgs),
    /// Tabulate the analytical BLER estimate over a channel SNR sweep.
    Estimate(EstimateArgs),
    /// Measure BLER by SC decoding over a channel SNR sweep.
    Simulate(SimulateArgs),
    /// Tabulate approximation errors of the capacity formulas.
    CapacityReport(CapacityReportArgs),
}

#[derive(Debug, Args, Serialize)]
#[command(group(ArgGroup::new("size").required(true).args(["rate", "k"])))]
#[command(group(ArgGroup::new("design").required(true).args(["design_snr_db", "per_channel_snrs"])))]
pub struct ConstructArgs {
    /// log2 of the block length.
    #[arg(long)]
    pub n: u32,
    /// Code rate K/N.
    #[arg(long)]
    pub rate: Option<f64>,
    /// Number of information bits.
    #[arg(long)]
    pub k: Option<usize>,
    /// Design SNR shared by every channel.
    #[arg(long, allow_hyphen_values = true)]
    pub design_snr_db: Option<f64>,
    /// CSV of N per-channel SNRs in dB, one per coded bit. An optional
    /// header row is skipped.
    #[arg(long)]
    pub per_channel_snrs: Option<PathBuf>,
    /// Output JSON path. The mask goes next to it with extension `.mask`.
    #[arg(long)]
    pub out: PathBuf,
}

/// Where the code comes from: a construction file or inline parameters.
#[derive(Debug, Args, Serialize)]
pub struct CodeArgs {
    /// Construction JSON written by `construct`.
    #[arg(long, conflicts_with_all = ["n", "rate", "k", "design_snr_db"])]
    pub construction: Option<PathBuf>,
    /// log2 of the block length.
    #[arg(long)]
    pub n: Option<u32>,
    /// Code rate K/N.
    #[arg(long, conflicts_with = "k")]
    pub rate: Option<f64>,
    /// Number of information bits.
    #[arg(long)]
    pub k: Option<usize>,
    /// Design SNR for a fixed inline construction.
    #[arg(long, allow_hyphen_values = true)]
    pub design_snr_db: Option<f64>,
    /// Redesign the code at every channel SNR of the sweep.
    #[arg(long)]
    pub redesign_each_point: bool,
}

#[derive(Debug, Args, Serialize)]
pub struct SweepArgs {
    /// First channel SNR.
    #[arg(long, allow_hyphen_values = true)]
    pub snr_start: f64,
    /// Last channel SNR. Defaults to the start.
    #[arg(long, allow_hyphen_values = true)]
    pub snr_stop: Option<f64>,
    /// Sweep step. Zero gives the single point `snr_start`.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub snr_step: f64,
}

#[derive(Debug, Args, Serialize)]
pub struct EstimateArgs {
    #[command(flatten)]
    pub code: CodeArgs,
    #[command(flatten)]
    pub sweep: SweepArgs,
    /// Per-bit `index,xi_hat,p_bit` CSV, single-point sweeps only.
    #[arg(long)]
    pub per_bit: Option<PathBuf>,
    /// Output CSV path.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args, Serialize)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub code: CodeArgs,
    #[command(flatten)]
    pub sweep: SweepArgs,
    /// RNG seed.
    #[arg(long, env = "POLARFORGE_SEED")]
    pub seed: u64,
    /// Trial budget per sweep point.
    #[arg(long, default_value_t = 1_000_000)]
    pub max_trials: u64,
    /// Stop a point once this many block errors are seen.
    #[arg(long, default_value_t = polarforge::sim::DEFAULT_TARGET_BLOCK_ERRORS)]
    pub target_errors: u64,
    /// Number of independent RNG streams.
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    /// Send the all-zero codeword instead of random messages.
    #[arg(long)]
    pub all_zero: bool,
    /// Output CSV path; rows are appended.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args, Serialize)]
pub struct CapacityReportArgs {
    #[arg(long, default_value_t = -20.0, allow_hyphen_values = true)]
    pub grid_db_start: f64,
    #[arg(long, default_value_t = 15.0, allow_hyphen_values = true)]
    pub grid_db_stop: f64,
    #[arg(long, default_value_t = 701)]
    pub grid_db_points: usize,
    /// Output CSV path.
    #[arg(long)]
    pub out: PathBuf,
}
