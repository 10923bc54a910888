#![allow(dead_code)]

use polarforge::rca::{lambda_log, lambda_log_oracle, LogSnr};
use serde::{Deserialize, Serialize};

pub const SELF_INVERSE_GRID: (f64, f64, usize) = (-9.0, 2.3, 200);

pub fn linspace(start: f64, stop: f64, points: usize) -> Vec<f64> {
    if points == 1 {
        return vec![start];
    }
    let step = (stop - start) / (points - 1) as f64;
    (0..points).map(|i| start + step * i as f64).collect()
}

pub fn logspace(start: f64, stop: f64, points: usize) -> Vec<f64> {
    linspace(start.ln(), stop.ln(), points)
        .into_iter()
        .map(f64::exp)
        .collect()
}

/// Ranks with ties sharing their average rank.
fn ranks(xs: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..xs.len()).collect();
    order.sort_by(|&a, &b| xs[a].total_cmp(&xs[b]));
    let mut out = vec![0.0; xs.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && xs[order[j + 1]] == xs[order[i]] {
            j += 1;
        }
        let avg = (i + j) as f64 / 2.0;
        for &k in &order[i..=j] {
            out[k] = avg;
        }
        i = j + 1;
    }
    out
}

fn pearson(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len() as f64;
    let ma = a.iter().sum::<f64>() / n;
    let mb = b.iter().sum::<f64>() / n;
    let cov: f64 = a.iter().zip(b).map(|(x, y)| (x - ma) * (y - mb)).sum();
    let va: f64 = a.iter().map(|x| (x - ma).powi(2)).sum();
    let vb: f64 = b.iter().map(|y| (y - mb).powi(2)).sum();
    cov / (va * vb).sqrt()
}

pub fn spearman(a: &[f64], b: &[f64]) -> f64 {
    pearson(&ranks(a), &ranks(b))
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct DeltaFixture {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    pub delta: f64,
}

pub const DELTA_FIXTURE: &str = concat!(
    env!("CARGO_MANIFEST_DIR"),
    "/tests/fixtures/self_inverse_delta"
);

/// Largest deviation of the closed-form `Λ` from the quadrature reference
/// over the grid and over the grid's image under `Λ`.
pub fn calibrate_delta() -> f64 {
    let (start, stop, points) = SELF_INVERSE_GRID;
    let mut worst: f64 = 0.0;
    for xi in linspace(start, stop, points) {
        let image = lambda_log(LogSnr(xi)).get();
        for x in [xi, image] {
            let approx = lambda_log(LogSnr(x)).get();
            let exact = lambda_log_oracle(LogSnr(x)).expect("oracle converges");
            worst = worst.max((approx - exact).abs());
        }
    }
    worst
}

pub fn load_delta() -> DeltaFixture {
    let text = std::fs::read_to_string(DELTA_FIXTURE).expect("fixture present");
    serde_json::from_str(&text).expect("fixture parses")
}
