use crate::error::{Error, Result};
use std::f64::consts::E;

const MAX_ITER: usize = 64;

/// Principal branch `W₀(x)` for `x > 0`: the `w > 0` with `w eʷ = x`.
///
/// Halley iteration seeded with `ln x − ln ln x` above `e`, and `x` below.
pub fn lambert_w0(x: f64) -> Result<f64> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::Domain {
            what: "Lambert W argument",
            value: x,
        });
    }
    let mut w = if x > E {
        let l = x.ln();
        l - l.ln()
    } else {
        x
    };
    for _ in 0..MAX_ITER {
        let ew = w.exp();
        let f = w * ew - x;
        let wp1 = w + 1.0;
        let step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
        w -= step;
        if step.abs() <= 4.0 * f64::EPSILON * w.abs().max(f64::MIN_POSITIVE) {
            return Ok(w);
        }
    }
    Err(Error::NoConvergence {
        what: "Lambert W",
        value: x,
    })
}
