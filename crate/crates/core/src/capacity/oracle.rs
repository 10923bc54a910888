//! Slow reference evaluation of `U(γ)` by numerical integration.
//!
//! `U(γ) = E[log₂(1 + e^{−L})]` with `L ~ N(4γ, 8γ)`, the LLR of a
//! transmitted zero. After standardising `L = 4γ + √(8γ) z` the integrand is
//! `φ(z) softplus(−L)/ln 2`, which has its only sharp feature where `L = 0`.
//! That point is used as a breakpoint for globally adaptive 7/15-point
//! Gauss–Kronrod quadrature over `z ∈ [−38, 38]`.

use super::{CapacityValue, LinearSnr};
use crate::error::{Error, Result};
use std::f64::consts::{LN_2, PI};

const Z_LIMIT: f64 = 38.0;
const REL_TOL: f64 = 1e-12;
/// Floor for the error target once `U` itself is subnormal.
const ABS_FLOOR: f64 = 1e-310;
const MAX_INTERVALS: usize = 4000;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// `ln(1 + eᵛ)` without overflow.
#[inline]
fn softplus(v: f64) -> f64 {
    v.max(0.0) + (-v.abs()).exp().ln_1p()
}

/// One Gauss–Kronrod panel: `(kronrod, |kronrod − gauss|)`.
fn gk15(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for (i, (&x, &w)) in XGK[..7].iter().zip(&WGK[..7]).enumerate() {
        let s = f(c - h * x) + f(c + h * x);
        k += w * s;
        if i % 2 == 1 {
            g += WG[i / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

/// Globally adaptive integration over consecutive breakpoints.
fn integrate(f: impl Fn(f64) -> f64, breaks: &[f64]) -> std::result::Result<f64, f64> {
    let mut panels: Vec<(f64, f64, f64, f64)> = breaks
        .windows(2)
        .map(|w| {
            let (v, e) = gk15(&f, w[0], w[1]);
            (w[0], w[1], v, e)
        })
        .collect();
    loop {
        let err: f64 = panels.iter().map(|p| p.3).sum();
        let total: f64 = panels.iter().map(|p| p.2).sum();
        if err <= (REL_TOL * total.abs()).max(ABS_FLOOR) {
            return Ok(total);
        }
        if panels.len() >= MAX_INTERVALS {
            return Err(err);
        }
        let worst = panels
            .iter()
            .enumerate()
            .max_by(|a, b| a.1 .3.total_cmp(&b.1 .3))
            .map(|(i, _)| i)
            .expect("at least one panel");
        let (a, b, _, _) = panels.swap_remove(worst);
        let m = 0.5 * (a + b);
        let (vl, el) = gk15(&f, a, m);
        let (vr, er) = gk15(&f, m, b);
        panels.push((a, m, vl, el));
        panels.push((m, b, vr, er));
    }
}

/// `U(γ) = 1 − C(γ)` by numerical integration, relative error ≲ 1e−12.
pub fn u_oracle(gamma: LinearSnr) -> Result<f64> {
    let g = gamma.get();
    let mean = 4.0 * g;
    let sd = (8.0 * g).sqrt();
    let norm = 1.0 / ((2.0 * PI).sqrt() * LN_2);
    let integrand = |z: f64| (-0.5 * z * z).exp() * softplus(-(mean + sd * z)) * norm;

    let kink = -mean / sd;
    let mut breaks = vec![-Z_LIMIT];
    if kink > -Z_LIMIT {
        breaks.push(kink);
    }
    if kink < 0.0 {
        breaks.push(0.0);
    }
    breaks.push(Z_LIMIT);

    integrate(integrand, &breaks).map_err(|error| Error::Convergence { gamma: g, error })
}

/// BI-AWGN capacity `C(γ)` by numerical integration.
pub fn capacity_oracle(gamma: LinearSnr) -> Result<CapacityValue> {
    CapacityValue::new(1.0 - u_oracle(gamma)?)
}
