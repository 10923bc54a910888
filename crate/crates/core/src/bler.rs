//! Analytical block-error estimate for SC decoding under the Gaussian-LLR
//! model, and design-SNR search.
//!
//! A bit channel of SNR `γ̂` carries LLRs distributed as `N(4γ̂, 8γ̂)`, so a
//! hard decision errs with probability `Q(4γ̂ / √(8γ̂)) = Q(√(2γ̂))`.

use crate::error::{Error, Result};
use crate::polarization::{construct_rca, select_information_set, PolarizationProfile};
use crate::rca::LogSnr;
use serde::Serialize;
use std::f64::consts::SQRT_2;
use std::io::Write;

/// Gaussian tail probability `Q(x) = ½ erfc(x/√2)`.
pub fn q_function(x: f64) -> f64 {
    0.5 * libm::erfc(x / SQRT_2)
}

/// Hard-decision error probability of a bit channel with log-SNR `xi_hat`.
pub fn bit_error_prob(xi_hat: LogSnr) -> f64 {
    if xi_hat.is_neg_inf() {
        return 0.5;
    }
    q_function((2.0 * xi_hat.linear()).sqrt())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BitError {
    pub index: usize,
    pub xi_hat: f64,
    pub p_bit: f64,
}

/// `bler = 1 − ∏(1 − p_bit)` over the information set.
#[derive(Clone, Debug, PartialEq)]
pub struct BlerEstimate {
    pub bler: f64,
    pub per_bit: Vec<BitError>,
}

#[derive(Serialize)]
struct BlerJson<'a> {
    bler: f64,
    per_bit: &'a [BitError],
}

/// Rounds to `digits` significant decimal digits.
pub(crate) fn round_sig(x: f64, digits: usize) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", digits - 1, x).parse().unwrap_or(x)
}

impl BlerEstimate {
    /// JSON with `bler` rounded to six significant digits.
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&BlerJson {
            bler: round_sig(self.bler, 6),
            per_bit: &self.per_bit,
        })?)
    }

    /// CSV with header `index,xi_hat,p_bit`.
    pub fn write_per_bit_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "index,xi_hat,p_bit")?;
        for b in &self.per_bit {
            writeln!(out, "{},{:e},{:e}", b.index, b.xi_hat, b.p_bit)?;
        }
        Ok(())
    }

    /// Union bound `Σ p_bit`.
    pub fn union_bound(&self) -> f64 {
        self.per_bit.iter().map(|b| b.p_bit).sum()
    }
}

/// Estimate over the `k` best positions of `profile`.
pub fn estimate_bler(profile: &PolarizationProfile, k: usize) -> Result<BlerEstimate> {
    if k == 0 {
        return Err(Error::InfoSizeOutOfRange {
            k,
            len: profile.len(),
        });
    }
    let info = select_information_set(profile, k)?;
    estimate_bler_for_set(profile, &info)
}

/// Estimate over an explicit information set.
pub fn estimate_bler_for_set(
    profile: &PolarizationProfile,
    info_set: &[usize],
) -> Result<BlerEstimate> {
    let values = profile.values();
    let mut log_success = 0.0;
    let mut per_bit = Vec::with_capacity(info_set.len());
    for &index in info_set {
        let xi = *values.get(index).ok_or_else(|| {
            Error::InvalidConstruction(format!(
                "index {index} outside profile of length {}",
                values.len()
            ))
        })?;
        let p_bit = bit_error_prob(xi);
        log_success += (-p_bit).ln_1p();
        per_bit.push(BitError {
            index,
            xi_hat: xi.0,
            p_bit,
        });
    }
    Ok(BlerEstimate {
        bler: -log_success.exp_m1(),
        per_bit,
    })
}

/// Estimated BLER of the RCA construction redesigned at `design_snr_db`.
pub fn estimate_at_design(n: u32, k: usize, design_snr_db: f64) -> Result<f64> {
    let profile = crate::polarization::polarize_uniform(n, LogSnr::from_db(design_snr_db))?;
    Ok(estimate_bler(&profile, k)?.bler)
}

const BRACKET_WIDTH_DB: f64 = 0.01;
const RELATIVE_TOLERANCE: f64 = 1e-3;

/// Design SNR in dB at which the redesigned code's estimate hits `target`.
///
/// Bisects until the bracket is narrower than 0.01 dB or the estimate is
/// within 0.1 % of `target`.
pub fn find_design_snr(n: u32, k: usize, target: f64, lo_db: f64, hi_db: f64) -> Result<f64> {
    if !(target > 0.0 && target < 1.0) {
        return Err(Error::Domain {
            what: "target BLER",
            value: target,
        });
    }
    if lo_db >= hi_db || lo_db.is_nan() || hi_db.is_nan() {
        return Err(Error::Domain {
            what: "lower bracket bound",
            value: lo_db,
        });
    }
    // validates (n, k) once up front
    construct_rca(n, k, lo_db)?;
    let (mut lo, mut hi) = (lo_db, hi_db);
    let bler_lo = estimate_at_design(n, k, lo)?;
    let bler_hi = estimate_at_design(n, k, hi)?;
    if !(bler_lo >= target && bler_hi <= target) {
        return Err(Error::NotBracketed {
            target,
            lo_db,
            hi_db,
            bler_lo,
            bler_hi,
        });
    }
    while hi - lo > BRACKET_WIDTH_DB {
        let mid = 0.5 * (lo + hi);
        let est = estimate_at_design(n, k, mid)?;
        if (est - target).abs() <= RELATIVE_TOLERANCE * target {
            return Ok(mid);
        }
        if est > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
