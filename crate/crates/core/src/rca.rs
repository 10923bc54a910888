//! Reciprocal channel mapping in the log-SNR domain, and the check/variable
//! node SNR combiners built on it.
//!
//! For a BI-AWGN channel of SNR `γ`, the reciprocal SNR `Ψ(γ)` satisfies
//! `C(Ψ(γ)) = 1 − C(γ)`. Variable nodes add SNRs; check nodes add reciprocal
//! SNRs. Everything is carried as `ξ = ln γ` so deeply polarized channels
//! stay representable, and [`lambda_log`] evaluates `Λ(ξ) = ln Ψ(e^ξ)` in
//! closed form.

use crate::capacity::constants::*;
use crate::capacity::{
    c_hat_inverse, cubic_inverse, ln_moderate_inverse, u_cubic, u_moderate2, u_moderate3, u_oracle,
    CapacityValue, LinearSnr, Region,
};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::{LN_10, LN_2};

/// Natural log of a linear SNR. `NEG_INF` stands for a fully erased channel.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LogSnr(pub f64);

impl LogSnr {
    pub const NEG_INF: LogSnr = LogSnr(f64::NEG_INFINITY);

    pub fn from_db(db: f64) -> Self {
        LogSnr(db * LN_10 / 10.0)
    }

    pub fn from_linear(gamma: LinearSnr) -> Self {
        LogSnr(gamma.get().ln())
    }

    pub fn get(self) -> f64 {
        self.0
    }

    pub fn db(self) -> f64 {
        self.0 * 10.0 / LN_10
    }

    /// `e^ξ`, which may underflow to zero or overflow to infinity.
    pub fn linear(self) -> f64 {
        self.0.exp()
    }

    pub fn is_neg_inf(self) -> bool {
        self.0 == f64::NEG_INFINITY
    }
}

/// `Λ(ξ) = ln Ψ(e^ξ)`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct ReciprocalLogSnr(pub f64);

impl ReciprocalLogSnr {
    pub fn get(self) -> f64 {
        self.0
    }

    /// Maps back to the SNR domain. `Ψ` is its own inverse, so this is `Λ`
    /// applied once more.
    pub fn to_log_snr(self) -> LogSnr {
        LogSnr(lambda(self.0))
    }
}

/// Linear SNRs are capped here before the high-SNR branch so that
/// `e^ξ` never overflows.
const GAMMA_CAP: f64 = 1e300;

/// Closed-form `Λ` on raw floats.
#[inline]
pub(crate) fn lambda(xi: f64) -> f64 {
    if xi.is_nan() {
        return xi;
    }
    if xi < XI_0 {
        if xi == f64::NEG_INFINITY {
            return f64::INFINITY;
        }
        let b = LN_2 + 2.0 * (ALPHA.ln() + LN_2.ln()) - 2.0 * xi;
        return (b + (1.0 / b - 1.0) * b.ln()).ln() - LN_2;
    }
    let gamma = xi.exp().min(GAMMA_CAP);
    if gamma > GAMMA_3 {
        return LN_2.ln() + ALPHA.ln() - gamma - 0.5 * xi;
    }
    let u = match Region::of_snr(gamma) {
        Region::Cubic => u_cubic(gamma),
        Region::Moderate2 => u_moderate2(gamma),
        _ => u_moderate3(gamma),
    };
    if u < C_1 {
        cubic_inverse(u).ln()
    } else if u < C_2 {
        ln_moderate_inverse(u.ln(), H21, H22, H23)
    } else {
        ln_moderate_inverse(u.ln(), H31, H32, H33)
    }
}

/// `ln(eᵃ + eᵇ)`, exact for infinite arguments.
#[inline]
pub(crate) fn log_sum_exp(a: f64, b: f64) -> f64 {
    let hi = a.max(b);
    if hi.is_infinite() {
        return hi;
    }
    hi + (-(a - b).abs()).exp().ln_1p()
}

/// Reciprocal channel mapping `Λ(ξ)`.
///
/// Below `Ξ₀` the Lambert-W branch is replaced by its large-argument
/// asymptote; above `Γ₃` the cubic inverse is replaced by its small-argument
/// asymptote. In between, `Û` and `Ĉ⁻¹` are evaluated branch by branch.
/// `NEG_INF` maps to `+∞`.
pub fn lambda_log(xi: LogSnr) -> ReciprocalLogSnr {
    ReciprocalLogSnr(lambda(xi.0))
}

/// `ln Ĉ⁻¹(Û(e^ξ))` without either asymptotic shortcut.
///
/// Needs `e^ξ` to be representable and `Û(e^ξ) < 1`, so it is limited to
/// roughly `ξ ∈ [−36, 6]`. It exists to cross-check [`lambda_log`].
pub fn lambda_log_direct(xi: LogSnr) -> Result<ReciprocalLogSnr> {
    let gamma = LinearSnr::new(xi.0.exp())?;
    let u = crate::capacity::u_hat(gamma);
    let psi = c_hat_inverse(CapacityValue::new(u)?)?;
    Ok(ReciprocalLogSnr(psi.get().ln()))
}

/// `Λ(ξ)` for the exact BI-AWGN capacity. Slow: numerical integration nested
/// inside bisection. Accurate while `C(e^ξ)` and `U(e^ξ)` stay well above
/// 1e−10, i.e. roughly `ξ ∈ [−20, 3]`.
pub fn lambda_log_oracle(xi: LogSnr) -> Result<f64> {
    let gamma = LinearSnr::new(xi.0.exp())?;
    // Ψ(γ) solves U(λ) = C(γ) = 1 − U(γ)
    let target = 1.0 - u_oracle(gamma)?;
    let (mut lo, mut hi) = (-60.0f64, 8.0f64);
    for _ in 0..90 {
        let mid = 0.5 * (lo + hi);
        if u_oracle(LinearSnr::new(mid.exp())?)? > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mid = 0.5 * (lo + hi);
    if mid <= -59.9 || mid >= 7.9 {
        return Err(Error::Domain {
            what: "log SNR for the reciprocal oracle",
            value: xi.0,
        });
    }
    Ok(mid)
}

/// The check-node sum in the reciprocal domain:
/// `ln(e^{Λ(ξ₀)} + e^{Λ(ξ₁)})`.
pub fn reciprocal_sum(xi0: LogSnr, xi1: LogSnr) -> ReciprocalLogSnr {
    ReciprocalLogSnr(log_sum_exp(lambda(xi0.0), lambda(xi1.0)))
}

/// Output log-SNR of a check node fed by channels of log-SNR `xi0`, `xi1`.
/// An erased input erases the output.
#[inline]
pub fn check_node_combine(xi0: LogSnr, xi1: LogSnr) -> LogSnr {
    if xi0.is_neg_inf() || xi1.is_neg_inf() {
        return LogSnr::NEG_INF;
    }
    // Λ is only approximately self-inverse; a nearly perfect partner can
    // otherwise lift the output a little above the weaker input
    let out = reciprocal_sum(xi0, xi1).to_log_snr().0;
    LogSnr(out.min(xi0.0).min(xi1.0))
}

/// Output log-SNR of a variable node: `ln(γ₀ + γ₁)`. An erased input is the
/// identity.
#[inline]
pub fn variable_node_combine(xi0: LogSnr, xi1: LogSnr) -> LogSnr {
    LogSnr(log_sum_exp(xi0.0, xi1.0))
}
