//! Monte Carlo validation: polar encoder, BPSK over AWGN, SC decoding and
//! block-error counting with confidence intervals.

mod channel;
mod decoder;
mod encoder;
mod monte_carlo;

pub use channel::{awgn_llrs, AwgnChannel};
pub use decoder::{f_exact, g, ScDecoder};
pub use encoder::{embed_message, encode, polar_transform};
pub use monte_carlo::{
    append_sim_csv, binomial_ci95, run_monte_carlo, run_monte_carlo_with_bit_errors, sim_csv_row,
    Interval, SimConfig, SimResult, DEFAULT_TARGET_BLOCK_ERRORS, SIM_CSV_HEADER,
};
