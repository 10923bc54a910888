//! Polar code construction for the binary-input AWGN channel by reciprocal
//! channel approximation.
//!
//! * [`capacity`]: closed-form BI-AWGN capacity approximation, its inverse,
//!   and a quadrature reference.
//! * [`rca`]: the reciprocal SNR map in the log domain and the node combiners.
//! * [`polarization`]: polarized bit-channel SNRs and information-set choice.
//! * [`bler`]: analytical block-error estimate and design-SNR search.
//! * [`sim`]: encoder, SC decoder and Monte Carlo harness.
//!
//! ```
//! use polarforge::polarization::construct_rca;
//! use polarforge::bler::estimate_at_design;
//!
//! let code = construct_rca(6, 16, -2.53)?;
//! assert_eq!(code.k(), 16);
//! let bler = estimate_at_design(6, 16, -2.53)?;
//! assert!((bler - 0.01).abs() < 5e-4);
//! # Ok::<(), polarforge::Error>(())
//! ```

pub mod bler;
pub mod capacity;
mod error;
mod exec;
pub mod polarization;
pub mod rca;
pub mod sim;

pub use error::{Error, Result};
pub use exec::Execution;
