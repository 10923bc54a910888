mod common;

use common::logspace;
use polarforge::capacity::constants::{GAMMA_1, GAMMA_2, GAMMA_3};
use polarforge::capacity::{
    c_hat, c_hat_inverse, lambert_w0, u_hat, u_hat_inverse, u_oracle, LinearSnr, Region,
};
use proptest::prelude::*;

fn snr(g: f64) -> LinearSnr {
    LinearSnr::new(g).unwrap()
}

fn near_boundary(g: f64) -> bool {
    [GAMMA_1, GAMMA_2, GAMMA_3]
        .iter()
        .any(|b| (g - b).abs() <= 1e-3 * b)
}

#[test]
fn continuous_at_boundaries() {
    for b in [GAMMA_1, GAMMA_2, GAMMA_3] {
        let eps = 1e-9 * b;
        let gap = (u_hat(snr(b - eps)) - u_hat(snr(b + eps))).abs();
        assert!(gap < 1e-6, "Γ = {b}: {gap:e}");
    }
}

#[test]
fn monotone_on_dense_grid() {
    let grid = logspace(1e-7, 50.0, 10_000);
    for w in grid.windows(2) {
        let (u0, u1) = (u_hat(snr(w[0])), u_hat(snr(w[1])));
        assert!(u1 < u0, "Û not decreasing at {}", w[1]);
        let (c0, c1) = (c_hat(snr(w[0])).get(), c_hat(snr(w[1])).get());
        // past γ ≈ 37 the capacity is the largest double below one
        if u0 - u1 > f64::EPSILON {
            assert!(c1 > c0, "Ĉ not increasing at {}", w[1]);
        } else {
            assert!(c1 >= c0);
        }
        assert!(c1 > 0.0 && c1 < 1.0);
    }
}

#[test]
fn round_trip_on_dense_grid() {
    for g in logspace(1e-7, 50.0, 10_000) {
        if near_boundary(g) {
            continue;
        }
        let back = u_hat_inverse(u_hat(snr(g))).unwrap().get();
        assert!((back - g).abs() / g < 1e-5, "complement γ = {g}: {back}");
        // c itself only pins γ down while 1 − c keeps enough digits, and the
        // rounded C₃ threshold sends a sliver just below Γ₃ to the tail
        let c = c_hat(snr(g));
        if g < 19.0 && Region::of_capacity(c.get()) == Region::of_snr(g) {
            let back = c_hat_inverse(c).unwrap().get();
            assert!((back - g).abs() / g < 1e-5, "γ = {g}: {back}");
        }
    }
}

#[test]
fn oracle_bound_low_snr() {
    for g in logspace(1e-6, GAMMA_1, 300) {
        let e = (u_hat(snr(g)) - u_oracle(snr(g)).unwrap()).abs();
        assert!(e < 1.1e-5, "γ = {g}: {e:e}");
    }
}

#[test]
fn misassigned_sliver_is_narrow() {
    let mut worst: f64 = 0.0;
    for g in logspace(1e-7, 19.0, 10_000) {
        let c = c_hat(snr(g));
        if Region::of_capacity(c.get()) != Region::of_snr(g) {
            worst = worst.max((GAMMA_3 - g) / GAMMA_3);
            let back = c_hat_inverse(c).unwrap().get();
            assert!((back - g).abs() / g < 1e-4);
        }
    }
    assert!(worst < 2.5e-3, "{worst}");
}

#[test]
fn lambert_residuals() {
    for x in [1e-3, 1.0, 1e3, 1e9] {
        let w = lambert_w0(x).unwrap();
        assert!((w * w.exp() - x).abs() / x < 1e-10, "x = {x}");
    }
}

proptest! {
    #[test]
    fn capacity_in_unit_interval(ln_g in -16.0f64..6.0) {
        let c = c_hat(snr(ln_g.exp())).get();
        prop_assert!(c > 0.0 && c < 1.0);
    }

    #[test]
    fn capacity_plus_complement_is_one(ln_g in -16.0f64..3.5) {
        let g = snr(ln_g.exp());
        prop_assert!((c_hat(g).get() + u_hat(g) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn lambert_residual_random(ln_x in -300.0f64..300.0) {
        let x = ln_x.exp();
        let w = lambert_w0(x).unwrap();
        prop_assert!((w * w.exp() / x - 1.0).abs() < 1e-12);
    }
}
