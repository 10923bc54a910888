//! Channel polarization by reciprocal channel approximation, and
//! information-set selection.
//!
//! Profile index `k` addresses input bit `u_k` of the encoder in
//! [`crate::sim::encode`]: stage `i` of the recursion pairs positions that
//! differ in bit `i − 1` of their index, with the lower position taking the
//! check-node (worse) output. Stage 1 acts on the physical channels.

use crate::error::{Error, Result};
use crate::exec::{Execution, MIN_PARALLEL_LEN};
use crate::rca::{check_node_combine, lambda, variable_node_combine, LogSnr};
use serde::{Deserialize, Serialize};
use std::f64::consts::LN_2;
use std::fmt::Write as _;

/// Largest supported `n = log₂ N`.
pub const MAX_LOG2_LEN: u32 = 24;

/// Polarized log-SNR of every input bit, indexed by bit position.
#[derive(Clone, Debug, PartialEq)]
pub struct PolarizationProfile {
    values: Vec<LogSnr>,
}

impl PolarizationProfile {
    fn from_vec(values: Vec<LogSnr>) -> Self {
        debug_assert!(values.len().is_power_of_two());
        Self { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn log2_len(&self) -> u32 {
        self.values.len().trailing_zeros()
    }

    pub fn values(&self) -> &[LogSnr] {
        &self.values
    }

    pub fn into_vec(self) -> Vec<LogSnr> {
        self.values
    }
}

fn check_log2_len(n: u32) -> Result<usize> {
    if n > MAX_LOG2_LEN {
        return Err(Error::BlockTooLong {
            n,
            max: MAX_LOG2_LEN,
        });
    }
    Ok(1usize << n)
}

pub fn polarize_uniform(n: u32, xi0: LogSnr) -> Result<PolarizationProfile> {
    polarize_uniform_with(n, xi0, Execution::default())
}

/// Polarizes `2ⁿ` copies of a channel with log-SNR `xi0`.
///
/// Stage `i` only touches the first `2ⁱ` entries: entry `j` becomes
/// `Λ(Λ(ξ[j]) + ln 2)`, capped at `ξ[j]`, and entry `j + 2^{i−1}` becomes `ξ[j] + ln 2`.
pub fn polarize_uniform_with(n: u32, xi0: LogSnr, exec: Execution) -> Result<PolarizationProfile> {
    let len = check_log2_len(n)?;
    let mut xs = vec![0.0f64; len];
    xs[0] = xi0.0;
    for stage in 1..=n {
        let half = 1usize << (stage - 1);
        let (lo, hi) = xs[..2 * half].split_at_mut(half);
        exec.for_each_pair(lo, hi, |a, b| {
            let x0 = *a;
            *a = lambda(lambda(x0) + LN_2).min(x0);
            *b = x0 + LN_2;
        });
    }
    Ok(PolarizationProfile::from_vec(
        xs.into_iter().map(LogSnr).collect(),
    ))
}

pub fn polarize_distinct(xs: Vec<LogSnr>) -> Result<PolarizationProfile> {
    polarize_distinct_with(xs, Execution::default())
}

/// Polarizes channels with individual log-SNRs, `xs[i]` being the channel
/// that carries coded bit `x_i`.
pub fn polarize_distinct_with(mut xs: Vec<LogSnr>, exec: Execution) -> Result<PolarizationProfile> {
    let len = xs.len();
    if !len.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(len));
    }
    check_log2_len(len.trailing_zeros())?;
    let kernel = |a: &mut LogSnr, b: &mut LogSnr| {
        let (x0, x1) = (*a, *b);
        *a = check_node_combine(x0, x1);
        *b = variable_node_combine(x0, x1);
    };
    let mut block = 2;
    while block <= len {
        let half = block / 2;
        if half >= MIN_PARALLEL_LEN {
            for chunk in xs.chunks_mut(block) {
                let (lo, hi) = chunk.split_at_mut(half);
                exec.for_each_pair(lo, hi, kernel);
            }
        } else {
            exec.for_each_chunk(&mut xs, block, |chunk| {
                let (lo, hi) = chunk.split_at_mut(half);
                Execution::Sequential.for_each_pair(lo, hi, kernel);
            });
        }
        block *= 2;
    }
    Ok(PolarizationProfile::from_vec(xs))
}

/// The `k` positions with the largest polarized SNR, ascending. Ties go to
/// the smaller index.
pub fn select_information_set(profile: &PolarizationProfile, k: usize) -> Result<Vec<usize>> {
    let v = profile.values();
    if k > v.len() {
        return Err(Error::InfoSizeOutOfRange { k, len: v.len() });
    }
    let mut order: Vec<usize> = (0..v.len()).collect();
    order.sort_by(|&a, &b| v[b].0.total_cmp(&v[a].0).then(a.cmp(&b)));
    order.truncate(k);
    order.sort_unstable();
    Ok(order)
}

/// How a construction was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Rca,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Method::Rca => f.write_str("rca"),
        }
    }
}

/// A source of polarization profiles. Alternative SNR trackers plug in here.
pub trait Constructor {
    fn method(&self) -> Method;

    fn polarize_uniform(&self, n: u32, xi0: LogSnr) -> Result<PolarizationProfile>;

    fn polarize_distinct(&self, xs: Vec<LogSnr>) -> Result<PolarizationProfile>;

    /// Profile at `design_snr_db`, then its best `k` positions.
    fn construct(&self, n: u32, k: usize, design_snr_db: f64) -> Result<CodeConstruction> {
        let profile = self.polarize_uniform(n, LogSnr::from_db(design_snr_db))?;
        CodeConstruction::from_profile(&profile, k, Some(design_snr_db), self.method())
    }
}

/// Reciprocal-channel-approximation constructor.
#[derive(Clone, Copy, Debug, Default)]
pub struct Rca {
    pub exec: Execution,
}

impl Constructor for Rca {
    fn method(&self) -> Method {
        Method::Rca
    }

    fn polarize_uniform(&self, n: u32, xi0: LogSnr) -> Result<PolarizationProfile> {
        polarize_uniform_with(n, xi0, self.exec)
    }

    fn polarize_distinct(&self, xs: Vec<LogSnr>) -> Result<PolarizationProfile> {
        polarize_distinct_with(xs, self.exec)
    }
}

/// Shorthand for an RCA construction at a uniform design SNR.
pub fn construct_rca(n: u32, k: usize, design_snr_db: f64) -> Result<CodeConstruction> {
    Rca::default().construct(n, k, design_snr_db)
}

#[derive(Deserialize)]
struct RawConstruction {
    n: u32,
    k: usize,
    design_snr_db: Option<f64>,
    method: Method,
    info_set: Vec<usize>,
}

/// A polar code: block length `2ⁿ` and the set of information positions.
/// Every other position is frozen to zero.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawConstruction")]
pub struct CodeConstruction {
    n: u32,
    k: usize,
    design_snr_db: Option<f64>,
    method: Method,
    info_set: Vec<usize>,
}

impl TryFrom<RawConstruction> for CodeConstruction {
    type Error = Error;

    fn try_from(raw: RawConstruction) -> Result<Self> {
        let c = CodeConstruction::new(raw.n, raw.info_set, raw.design_snr_db, raw.method)?;
        if c.k != raw.k {
            return Err(Error::InvalidConstruction(format!(
                "k = {} but info_set has {} entries",
                raw.k, c.k
            )));
        }
        Ok(c)
    }
}

impl CodeConstruction {
    /// Validates and sorts `info_set`.
    pub fn new(
        n: u32,
        mut info_set: Vec<usize>,
        design_snr_db: Option<f64>,
        method: Method,
    ) -> Result<Self> {
        let len = check_log2_len(n)?;
        info_set.sort_unstable();
        if let Some(&last) = info_set.last() {
            if last >= len {
                return Err(Error::InvalidConstruction(format!(
                    "index {last} outside block of length {len}"
                )));
            }
        }
        if info_set.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidConstruction(
                "duplicate information index".into(),
            ));
        }
        Ok(Self {
            n,
            k: info_set.len(),
            design_snr_db,
            method,
            info_set,
        })
    }

    pub fn from_profile(
        profile: &PolarizationProfile,
        k: usize,
        design_snr_db: Option<f64>,
        method: Method,
    ) -> Result<Self> {
        let info_set = select_information_set(profile, k)?;
        Self::new(profile.log2_len(), info_set, design_snr_db, method)
    }

    pub fn log2_len(&self) -> u32 {
        self.n
    }

    pub fn block_len(&self) -> usize {
        1 << self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn rate(&self) -> f64 {
        self.k as f64 / self.block_len() as f64
    }

    pub fn design_snr_db(&self) -> Option<f64> {
        self.design_snr_db
    }

    pub fn method(&self) -> Method {
        self.method
    }

    /// Information positions, ascending.
    pub fn info_set(&self) -> &[usize] {
        &self.info_set
    }

    /// `true` at information positions.
    pub fn info_mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.block_len()];
        for &i in &self.info_set {
            mask[i] = true;
        }
        mask
    }

    pub fn frozen_set(&self) -> Vec<usize> {
        let mask = self.info_mask();
        (0..mask.len()).filter(|&i| !mask[i]).collect()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// One line per position: `1` for information, `0` for frozen.
    pub fn to_mask_text(&self) -> String {
        let mut out = String::with_capacity(2 * self.block_len());
        for info in self.info_mask() {
            let _ = writeln!(out, "{}", u8::from(info));
        }
        out
    }

    pub fn from_mask_text(text: &str, design_snr_db: Option<f64>, method: Method) -> Result<Self> {
        let mut info_set = Vec::new();
        let mut len = 0usize;
        for (i, line) in text.lines().enumerate() {
            match line.trim() {
                "1" => info_set.push(i),
                "0" => {}
                other => {
                    return Err(Error::InvalidConstruction(format!(
                        "line {}: expected 0 or 1, found {other:?}",
                        i + 1
                    )))
                }
            }
            len += 1;
        }
        if !len.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(len));
        }
        Self::new(len.trailing_zeros(), info_set, design_snr_db, method)
    }
}
