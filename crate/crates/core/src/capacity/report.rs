//! Approximation-error table: the proposed `Ĉ` against the numerical
//! capacity, alongside two older closed forms of the J-function.

use super::{u_hat_raw, u_oracle, LinearSnr};
use crate::error::Result;
use crate::exec::Execution;
use serde::Serialize;
use std::io::Write;

pub const ERROR_REPORT_HEADER: &str = "gamma_db,eps_proposed,eps_tenbrink,eps_brannstrom";

/// Signed errors `ε = approximation − C` at one SNR.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ErrorRow {
    pub gamma_db: f64,
    pub eps_proposed: f64,
    pub eps_tenbrink: f64,
    pub eps_brannstrom: f64,
}

const TB_SPLIT: f64 = 1.6363;
const TB_SAT: f64 = 10.0;

/// `1 − J(x)` for the three-piece polynomial/exponential fit.
fn ten_brink_complement(x: f64) -> f64 {
    const A1: f64 = -0.0421061;
    const B1: f64 = 0.209252;
    const C1: f64 = -0.00640081;
    const A2: f64 = 0.00181491;
    const B2: f64 = -0.142675;
    const C2: f64 = -0.0822054;
    const D: f64 = 0.0549608;
    if x <= TB_SPLIT {
        1.0 - (A1 * x * x * x + B1 * x * x + C1 * x)
    } else if x <= TB_SAT {
        (A2 * x * x * x + B2 * x * x + C2 * x + D).exp()
    } else {
        0.0
    }
}

/// `1 − (1 − 2^{−H₁ x^{2H₂}})^{H₃}`.
fn brannstrom_complement(x: f64) -> f64 {
    const H1: f64 = 0.3073;
    const H2: f64 = 0.8935;
    const H3: f64 = 1.1064;
    let t = (-H1 * x.powf(2.0 * H2)).exp2();
    -(H3 * (-t).ln_1p()).exp_m1()
}

/// Piecewise J-function fit with breakpoints at `x = 1.6363` and `x = 10`.
pub fn ten_brink_j(x: f64) -> f64 {
    1.0 - ten_brink_complement(x)
}

/// Single-expression J-function fit `(1 − 2^{−H₁x^{2H₂}})^{H₃}`.
pub fn brannstrom_j(x: f64) -> f64 {
    1.0 - brannstrom_complement(x)
}

/// `points` SNRs evenly spaced in dB over `[start_db, stop_db]`.
/// A single point yields `start_db`.
pub fn db_grid(start_db: f64, stop_db: f64, points: usize) -> Result<Vec<LinearSnr>> {
    let step = if points > 1 {
        (stop_db - start_db) / (points - 1) as f64
    } else {
        0.0
    };
    (0..points)
        .map(|i| LinearSnr::from_db(start_db + step * i as f64))
        .collect()
}

fn row(gamma: LinearSnr) -> Result<ErrorRow> {
    let g = gamma.get();
    let u = u_oracle(gamma)?;
    // x is the LLR standard deviation
    let x = (8.0 * g).sqrt();
    Ok(ErrorRow {
        gamma_db: gamma.db(),
        eps_proposed: u - u_hat_raw(g),
        eps_tenbrink: u - ten_brink_complement(x),
        eps_brannstrom: u - brannstrom_complement(x),
    })
}

pub fn error_report(grid: &[LinearSnr]) -> Result<Vec<ErrorRow>> {
    error_report_with(grid, Execution::default())
}

/// Error table over `grid`, one row per point in grid order.
pub fn error_report_with(grid: &[LinearSnr], exec: Execution) -> Result<Vec<ErrorRow>> {
    exec.map(grid, |&g| row(g)).into_iter().collect()
}

/// CSV with a header row and 12 significant digits per value.
pub fn write_error_report_csv<W: Write>(rows: &[ErrorRow], mut out: W) -> std::io::Result<()> {
    writeln!(out, "{ERROR_REPORT_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{:.11e},{:.11e},{:.11e},{:.11e}",
            r.gamma_db, r.eps_proposed, r.eps_tenbrink, r.eps_brannstrom
        )?;
    }
    Ok(())
}
