use super::channel::AwgnChannel;
use super::decoder::ScDecoder;
use super::encoder::polar_transform;
use crate::capacity::LinearSnr;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::polarization::CodeConstruction;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::io::Write;
use std::time::Instant;

/// Trials handed to each worker per round. Early stopping is checked
/// between rounds, so the stopping point does not depend on scheduling.
const TRIALS_PER_WORKER_ROUND: u64 = 256;

const Z95: f64 = 1.959_963_984_540_054;

pub const DEFAULT_TARGET_BLOCK_ERRORS: u64 = 100;

fn default_target() -> u64 {
    DEFAULT_TARGET_BLOCK_ERRORS
}

fn default_workers() -> usize {
    1
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub construction: CodeConstruction,
    pub channel_snr_db: f64,
    pub max_trials: u64,
    #[serde(default = "default_target")]
    pub target_block_errors: u64,
    pub seed: u64,
    #[serde(default = "default_workers")]
    pub workers: usize,
    /// Transmit the all-zero codeword instead of random messages.
    #[serde(default)]
    pub all_zero: bool,
    #[serde(skip)]
    pub execution: Execution,
}

impl SimConfig {
    pub fn new(
        construction: CodeConstruction,
        channel_snr_db: f64,
        max_trials: u64,
        seed: u64,
    ) -> Self {
        Self {
            construction,
            channel_snr_db,
            max_trials,
            target_block_errors: DEFAULT_TARGET_BLOCK_ERRORS,
            seed,
            workers: 1,
            all_zero: false,
            execution: Execution::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_trials == 0 {
            return Err(Error::InvalidConfig("max_trials must be at least 1"));
        }
        if self.target_block_errors == 0 {
            return Err(Error::InvalidConfig(
                "target_block_errors must be at least 1",
            ));
        }
        if self.workers == 0 {
            return Err(Error::InvalidConfig("workers must be at least 1"));
        }
        if !self.channel_snr_db.is_finite() {
            return Err(Error::InvalidConfig("channel SNR must be finite"));
        }
        Ok(())
    }
}

/// 95 % interval for a binomial proportion.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub low: f64,
    pub high: f64,
    pub halfwidth: f64,
}

/// Normal approximation, switching to the Wilson score interval below ten
/// errors.
pub fn binomial_ci95(errors: u64, trials: u64) -> Interval {
    let n = trials as f64;
    let p = errors as f64 / n;
    if errors >= 10 {
        let h = Z95 * (p * (1.0 - p) / n).sqrt();
        return Interval {
            low: (p - h).max(0.0),
            high: (p + h).min(1.0),
            halfwidth: h,
        };
    }
    let z2 = Z95 * Z95;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let h = Z95 / denom * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    Interval {
        low: if errors == 0 {
            0.0
        } else {
            (center - h).max(0.0)
        },
        high: (center + h).min(1.0),
        halfwidth: h,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimResult {
    pub trials_run: u64,
    pub block_errors: u64,
    pub bler_point: f64,
    pub ci95_halfwidth: f64,
    pub ci95_low: f64,
    pub ci95_high: f64,
    pub elapsed_seconds: f64,
    pub seed: u64,
    pub workers: usize,
}

impl SimResult {
    /// Equal apart from wall-clock time.
    pub fn same_outcome(&self, other: &SimResult) -> bool {
        let strip = |r: &SimResult| SimResult {
            elapsed_seconds: 0.0,
            ..r.clone()
        };
        strip(self) == strip(other)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }
}

pub const SIM_CSV_HEADER: &str =
    "n,k,method,design_snr_db,channel_snr_db,trials,block_errors,bler,ci95,seed";

/// One CSV row in [`SIM_CSV_HEADER`] layout, without a trailing newline.
pub fn sim_csv_row(config: &SimConfig, result: &SimResult) -> String {
    let c = &config.construction;
    let design = c.design_snr_db().map(|d| d.to_string()).unwrap_or_default();
    format!(
        "{},{},{},{},{},{},{},{:e},{:e},{}",
        c.log2_len(),
        c.k(),
        c.method(),
        design,
        config.channel_snr_db,
        result.trials_run,
        result.block_errors,
        result.bler_point,
        result.ci95_halfwidth,
        result.seed
    )
}

/// Appends a row, writing the header first when `write_header` is set.
pub fn append_sim_csv<W: Write>(
    mut out: W,
    config: &SimConfig,
    result: &SimResult,
    write_header: bool,
) -> std::io::Result<()> {
    if write_header {
        writeln!(out, "{SIM_CSV_HEADER}")?;
    }
    writeln!(out, "{}", sim_csv_row(config, result))
}

struct Worker {
    rng: ChaCha8Rng,
    decoder: ScDecoder,
    channel: AwgnChannel,
    info: Vec<usize>,
    all_zero: bool,
    u: Vec<u8>,
    x: Vec<u8>,
    llr: Vec<f64>,
    u_hat: Vec<u8>,
    raw: Vec<u8>,
    bit_errors: Option<Vec<u64>>,
    assigned: u64,
    block_errors: u64,
}

impl Worker {
    fn new(config: &SimConfig, index: usize, channel: AwgnChannel, trace: bool) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        rng.set_stream(index as u64);
        let c = &config.construction;
        let len = c.block_len();
        Self {
            rng,
            decoder: ScDecoder::new(c),
            channel,
            info: c.info_set().to_vec(),
            all_zero: config.all_zero,
            u: vec![0; len],
            x: vec![0; len],
            llr: vec![0.0; len],
            u_hat: vec![0; len],
            raw: vec![0; len],
            bit_errors: trace.then(|| vec![0; len]),
            assigned: 0,
            block_errors: 0,
        }
    }

    fn run(&mut self) {
        self.block_errors = 0;
        for _ in 0..self.assigned {
            if self.trial() {
                self.block_errors += 1;
            }
        }
    }

    fn trial(&mut self) -> bool {
        if !self.all_zero {
            let mut word = 0u64;
            for (j, &i) in self.info.iter().enumerate() {
                if j % 64 == 0 {
                    word = self.rng.random();
                }
                self.u[i] = ((word >> (j % 64)) & 1) as u8;
            }
        }
        self.x.copy_from_slice(&self.u);
        polar_transform(&mut self.x).expect("block length is a power of two");
        self.channel.transmit(&self.x, &mut self.rng, &mut self.llr);
        match self.bit_errors.as_mut() {
            Some(counts) => {
                self.decoder
                    .decode_traced(&self.llr, &mut self.u_hat, &mut self.raw)
                    .expect("buffers sized to the block");
                for ((c, &r), &u) in counts.iter_mut().zip(&self.raw).zip(&self.u) {
                    *c += u64::from(r != u);
                }
            }
            None => self
                .decoder
                .decode(&self.llr, &mut self.u_hat)
                .expect("buffers sized to the block"),
        }
        self.info.iter().any(|&i| self.u_hat[i] != self.u[i])
    }
}

pub fn run_monte_carlo(config: &SimConfig) -> Result<SimResult> {
    run(config, false).map(|(r, _)| r)
}

/// Runs the simulation and also counts, for every input position, how often
/// the raw SC hard decision differed from the transmitted bit.
pub fn run_monte_carlo_with_bit_errors(config: &SimConfig) -> Result<(SimResult, Vec<u64>)> {
    run(config, true).map(|(r, b)| (r, b.expect("tracing enabled")))
}

fn run(config: &SimConfig, trace: bool) -> Result<(SimResult, Option<Vec<u64>>)> {
    config.validate()?;
    let start = Instant::now();
    let channel = AwgnChannel::new(LinearSnr::from_db(config.channel_snr_db)?);
    let mut workers: Vec<Worker> = (0..config.workers)
        .map(|w| Worker::new(config, w, channel, trace))
        .collect();
    let w = config.workers as u64;
    let mut trials = 0u64;
    let mut errors = 0u64;
    while trials < config.max_trials && errors < config.target_block_errors {
        let round = (config.max_trials - trials).min(w * TRIALS_PER_WORKER_ROUND);
        for (i, worker) in workers.iter_mut().enumerate() {
            worker.assigned = round / w + u64::from((i as u64) < round % w);
        }
        config.execution.for_each_mut(&mut workers, Worker::run);
        errors += workers.iter().map(|k| k.block_errors).sum::<u64>();
        trials += round;
    }
    let bit_errors = trace.then(|| {
        let mut total = vec![0u64; config.construction.block_len()];
        for worker in &workers {
            for (t, c) in total
                .iter_mut()
                .zip(worker.bit_errors.as_ref().expect("traced"))
            {
                *t += c;
            }
        }
        total
    });
    let ci = binomial_ci95(errors, trials);
    Ok((
        SimResult {
            trials_run: trials,
            block_errors: errors,
            bler_point: errors as f64 / trials as f64,
            ci95_halfwidth: ci.halfwidth,
            ci95_low: ci.low,
            ci95_high: ci.high,
            elapsed_seconds: start.elapsed().as_secs_f64(),
            seed: config.seed,
            workers: config.workers,
        },
        bit_errors,
    ))
}
