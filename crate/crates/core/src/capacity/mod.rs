//! Closed-form piecewise approximation of the BI-AWGN mutual information.
//!
//! Everything here is expressed through `U(γ) = 1 − C(γ)`, the complement of
//! the BPSK capacity at linear SNR `γ = Es/N0`. Working with `U` keeps full
//! relative precision at high SNR, where `C` rounds to one.
//!
//! The approximation `Û` has four regions:
//!
//! | region              | form                                    |
//! |---------------------|-----------------------------------------|
//! | `γ < Γ₁`            | cubic Maclaurin complement              |
//! | `Γ₁ ≤ γ < Γ₂`       | `1 − (1 − exp(−H₂₁ γ^H₂₂))^H₂₃`          |
//! | `Γ₂ ≤ γ < Γ₃`       | `1 − (1 − exp(−H₃₁ γ^H₃₂))^H₃₃`          |
//! | `γ ≥ Γ₃`            | `α exp(−γ) / √γ`                         |
//!
//! and each region has a closed-form inverse, so `Ĉ⁻¹` needs no iteration
//! apart from the Lambert W function on the last branch.

mod lambert;
mod oracle;
mod report;

pub use lambert::lambert_w0;
pub use oracle::{capacity_oracle, u_oracle};
pub use report::{
    brannstrom_j, db_grid, error_report, error_report_with, ten_brink_j, write_error_report_csv,
    ErrorRow, ERROR_REPORT_HEADER,
};

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::LN_2;

/// Published constants of the piecewise approximation, stored at their
/// printed precision.
pub mod constants {
    /// Upper edge of the cubic region.
    pub const GAMMA_1: f64 = 0.04;
    /// Boundary between the two moderate-SNR regions.
    pub const GAMMA_2: f64 = 1.0;
    /// Lower edge of the exponential tail region.
    pub const GAMMA_3: f64 = 10.0;

    /// Coefficient of the high-SNR tail `α e^{−γ}/√γ`.
    pub const ALPHA: f64 = 1.16125142;

    pub const H21: f64 = 1.396634;
    pub const H22: f64 = 0.872764;
    pub const H23: f64 = 1.148562;
    pub const H31: f64 = 1.266967;
    pub const H32: f64 = 0.938175;
    pub const H33: f64 = 0.986830;

    /// `U` at the three region boundaries.
    pub const U_1: f64 = 0.9444774;
    pub const U_2: f64 = 0.2785484;
    pub const U_3: f64 = 1.667e-5;

    /// `C = 1 − U` at the three region boundaries, as printed.
    pub const C_1: f64 = 0.055523;
    pub const C_2: f64 = 0.721452;
    pub const C_3: f64 = 0.999983;

    /// SNR below which the check-node reciprocal lands on the Lambert-W
    /// branch, and its natural log.
    pub const GAMMA_0: f64 = 1.21974e-5;
    pub const XI_0: f64 = -11.3143;
}

use constants::*;

/// Linear SNR `γ = Es/N0`. Always positive and finite.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct LinearSnr(f64);

impl LinearSnr {
    pub fn new(gamma: f64) -> Result<Self> {
        if gamma > 0.0 && gamma.is_finite() {
            Ok(Self(gamma))
        } else {
            Err(Error::Domain {
                what: "linear SNR",
                value: gamma,
            })
        }
    }

    pub fn from_db(db: f64) -> Result<Self> {
        Self::new(10f64.powf(db / 10.0))
    }

    pub fn get(self) -> f64 {
        self.0
    }

    pub fn db(self) -> f64 {
        10.0 * self.0.log10()
    }
}

impl TryFrom<f64> for LinearSnr {
    type Error = Error;

    fn try_from(gamma: f64) -> Result<Self> {
        Self::new(gamma)
    }
}

impl From<LinearSnr> for f64 {
    fn from(g: LinearSnr) -> f64 {
        g.0
    }
}

/// Mutual information in bits per channel use, `0 ≤ c < 1`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct CapacityValue(f64);

impl CapacityValue {
    pub fn new(c: f64) -> Result<Self> {
        if (0.0..1.0).contains(&c) {
            Ok(Self(c))
        } else {
            Err(Error::Domain {
                what: "capacity",
                value: c,
            })
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for CapacityValue {
    type Error = Error;

    fn try_from(c: f64) -> Result<Self> {
        Self::new(c)
    }
}

impl From<CapacityValue> for f64 {
    fn from(c: CapacityValue) -> f64 {
        c.0
    }
}

/// Which piece of `Û` (and of `Ĉ⁻¹`) applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Region {
    Cubic,
    Moderate2,
    Moderate3,
    Tail,
}

impl Region {
    /// Half-open regions, lower bound inclusive.
    pub fn of_snr(gamma: f64) -> Self {
        if gamma < GAMMA_1 {
            Region::Cubic
        } else if gamma < GAMMA_2 {
            Region::Moderate2
        } else if gamma < GAMMA_3 {
            Region::Moderate3
        } else {
            Region::Tail
        }
    }

    /// Branch of `Ĉ⁻¹` for a capacity value.
    pub fn of_capacity(c: f64) -> Self {
        if c < C_1 {
            Region::Cubic
        } else if c < C_2 {
            Region::Moderate2
        } else if c < C_3 {
            Region::Moderate3
        } else {
            Region::Tail
        }
    }
}

/// `f(γ) = γ − γ² + (4/3)γ³`, the truncated Maclaurin polynomial of `C ln 2`.
#[inline]
pub(crate) fn cubic_poly(gamma: f64) -> f64 {
    gamma * (1.0 - gamma * (1.0 - 4.0 / 3.0 * gamma))
}

#[inline]
pub(crate) fn u_cubic(gamma: f64) -> f64 {
    1.0 - cubic_poly(gamma) / LN_2
}

/// `1 − (1 − exp(−h1 γ^h2))^h3`, evaluated without cancellation near zero.
#[inline]
fn u_moderate(gamma: f64, h1: f64, h2: f64, h3: f64) -> f64 {
    -(h3 * (-(-h1 * gamma.powf(h2)).exp()).ln_1p()).exp_m1()
}

#[inline]
pub(crate) fn u_moderate2(gamma: f64) -> f64 {
    u_moderate(gamma, H21, H22, H23)
}

#[inline]
pub(crate) fn u_moderate3(gamma: f64) -> f64 {
    u_moderate(gamma, H31, H32, H33)
}

#[inline]
pub(crate) fn u_tail(gamma: f64) -> f64 {
    ALPHA * (-gamma).exp() / gamma.sqrt()
}

/// `Û(γ)` for a raw positive `γ`.
#[inline]
pub(crate) fn u_hat_raw(gamma: f64) -> f64 {
    match Region::of_snr(gamma) {
        Region::Cubic => u_cubic(gamma),
        Region::Moderate2 => u_moderate2(gamma),
        Region::Moderate3 => u_moderate3(gamma),
        Region::Tail => u_tail(gamma),
    }
}

/// Approximate complement of the BI-AWGN capacity, `Û(γ) ∈ (0, 1]`.
pub fn u_hat(gamma: LinearSnr) -> f64 {
    u_hat_raw(gamma.0)
}

#[inline]
fn c_moderate(gamma: f64, h1: f64, h2: f64, h3: f64) -> f64 {
    (h3 * (-(-h1 * gamma.powf(h2)).exp()).ln_1p()).exp()
}

/// Approximate BI-AWGN capacity `Ĉ(γ) = 1 − Û(γ)`.
///
/// Each branch is evaluated directly rather than as `1 − Û`, so very small
/// capacities do not lose precision.
pub fn c_hat(gamma: LinearSnr) -> CapacityValue {
    let g = gamma.0;
    let c = match Region::of_snr(g) {
        Region::Cubic => cubic_poly(g) / LN_2,
        Region::Moderate2 => c_moderate(g, H21, H22, H23),
        Region::Moderate3 => c_moderate(g, H31, H32, H33),
        // 1 − Û rounds to one above γ ≈ 37
        Region::Tail => (1.0 - u_tail(g)).min(LARGEST_BELOW_ONE),
    };
    CapacityValue(c)
}

const LARGEST_BELOW_ONE: f64 = 1.0 - f64::EPSILON / 2.0;

/// Positive real root `A₀` of `A² + A − 3`, i.e. `A(0)`.
const A_ZERO: f64 = 1.302_775_637_731_994_7;

/// Inverse of the cubic branch, `(1 − 3/A + A) / 4`.
///
/// Written as `(A − A₀)(A + A₀ + 1) / (4A)` with `A − A₀` obtained from the
/// difference of cubes, so small capacities keep full relative precision.
pub(crate) fn cubic_inverse(c: f64) -> f64 {
    let lc = LN_2 * c;
    let s = 13.0 + 12.0 * lc * (12.0 * lc - 5.0);
    let root = s.sqrt();
    let a = (-5.0 + 24.0 * lc + 2.0 * root).cbrt();
    // A³ − A₀³ = 24 lc + 2(√s − √13)
    let cube_diff = 24.0 * lc * (1.0 + (12.0 * lc - 5.0) / (root + 13f64.sqrt()));
    let a_minus = cube_diff / (a * a + a * A_ZERO + A_ZERO * A_ZERO);
    a_minus * (a + A_ZERO + 1.0) / (4.0 * a)
}

/// Inverse of a moderate branch, `[−ln(1 − c^{1/h3}) / h1]^{1/h2}`.
#[inline]
fn moderate_inverse(c: f64, h1: f64, h2: f64, h3: f64) -> f64 {
    (-(-(c.ln() / h3).exp_m1()).ln() / h1).powf(1.0 / h2)
}

/// `ln` of [`moderate_inverse`], taking `ln c` so callers holding either
/// `c` or `1 − c` can pass it without cancellation.
#[inline]
pub(crate) fn ln_moderate_inverse(ln_c: f64, h1: f64, h2: f64, h3: f64) -> f64 {
    ((-(-(ln_c / h3).exp_m1()).ln()).ln() - h1.ln()) / h2
}

/// Inverse of the tail branch, `½ W₀(2 (α / (1 − c))²)`.
fn tail_inverse(one_minus_c: f64) -> Result<f64> {
    let r = ALPHA / one_minus_c;
    Ok(0.5 * lambert_w0(2.0 * r * r)?)
}

/// Closed-form inverse `Ĉ⁻¹(c)` of the piecewise capacity approximation.
pub fn c_hat_inverse(c: CapacityValue) -> Result<LinearSnr> {
    let c = c.0;
    if c <= 0.0 {
        return Err(Error::Domain {
            what: "capacity for inversion",
            value: c,
        });
    }
    let gamma = match Region::of_capacity(c) {
        Region::Cubic => cubic_inverse(c),
        Region::Moderate2 => moderate_inverse(c, H21, H22, H23),
        Region::Moderate3 => moderate_inverse(c, H31, H32, H33),
        Region::Tail => tail_inverse(1.0 - c)?,
    };
    LinearSnr::new(gamma)
}

/// Inverse of `Û` taking the capacity complement `u = 1 − c`.
///
/// Unlike [`c_hat_inverse`] this resolves SNRs whose capacity is within a
/// few ulps of one.
pub fn u_hat_inverse(u: f64) -> Result<LinearSnr> {
    if !(u > 0.0 && u < 1.0) {
        return Err(Error::Domain {
            what: "capacity complement for inversion",
            value: u,
        });
    }
    let gamma = if u > U_1 {
        cubic_inverse(1.0 - u)
    } else if u > U_2 {
        ln_moderate_inverse((-u).ln_1p(), H21, H22, H23).exp()
    } else if u > U_3 {
        ln_moderate_inverse((-u).ln_1p(), H31, H32, H33).exp()
    } else {
        tail_inverse(u)?
    };
    LinearSnr::new(gamma)
}
