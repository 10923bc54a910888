use crate::args::{
    CapacityReportArgs, Cli, CodeArgs, Command, ConstructArgs, EstimateArgs, SimulateArgs,
    SweepArgs,
};
use crate::manifest;
use anyhow::{anyhow, bail, Context, Result};
use polarforge::bler::{estimate_bler, estimate_bler_for_set, BlerEstimate};
use polarforge::capacity::{db_grid, error_report, write_error_report_csv};
use polarforge::polarization::{
    construct_rca, polarize_distinct, polarize_uniform, CodeConstruction, Method,
};
use polarforge::rca::LogSnr;
use polarforge::sim::{append_sim_csv, run_monte_carlo, SimConfig, SimResult};
use std::fs::{self, File, OpenOptions};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Construct(a) => construct(a),
        Command::Estimate(a) => estimate(a),
        Command::Simulate(a) => simulate(a),
        Command::CapacityReport(a) => capacity_report(a),
    }
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    let f = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    Ok(BufWriter::new(f))
}

fn info_size(n: u32, rate: Option<f64>, k: Option<usize>) -> Result<usize> {
    let len = 1usize
        .checked_shl(n)
        .filter(|_| n < usize::BITS)
        .ok_or_else(|| anyhow!("--n {n} is too large"))?;
    match (rate, k) {
        (Some(_), Some(_)) => bail!("--rate and --k are mutually exclusive"),
        (None, Some(k)) => Ok(k),
        (Some(r), None) => {
            if !(0.0..=1.0).contains(&r) {
                bail!("--rate {r} is outside [0, 1]");
            }
            let exact = r * len as f64;
            let k = exact.round();
            if (exact - k).abs() > 1e-6 {
                bail!("--rate {r} does not give an integer K for N = {len}");
            }
            Ok(k as usize)
        }
        (None, None) => bail!("one of --rate or --k is required"),
    }
}

/// Reads N per-channel SNRs in dB. Any fields per row are accepted; a
/// first row that does not parse as numbers is taken as a header.
fn read_channel_snrs(path: &Path) -> Result<Vec<f64>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_path(path)
        .with_context(|| format!("reading {}", path.display()))?;
    let mut values = Vec::new();
    for (row, record) in reader.records().enumerate() {
        let record = record.with_context(|| format!("{}: malformed CSV", path.display()))?;
        let parsed: Result<Vec<f64>, _> = record
            .iter()
            .filter(|f| !f.is_empty())
            .map(str::parse::<f64>)
            .collect();
        match parsed {
            Ok(v) => values.extend(v),
            Err(_) if row == 0 => continue,
            Err(e) => bail!("{}: row {}: {e}", path.display(), row + 1),
        }
    }
    if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
        bail!("{}: non-finite SNR {bad}", path.display());
    }
    Ok(values)
}

fn construct(a: ConstructArgs) -> Result<()> {
    let started = Instant::now();
    let k = info_size(a.n, a.rate, a.k)?;
    let code = match (&a.per_channel_snrs, a.design_snr_db) {
        (Some(path), _) => {
            let snrs = read_channel_snrs(path)?;
            let len = 1usize << a.n.min(31);
            if snrs.len() != len {
                bail!(
                    "{}: expected {len} channel SNRs for --n {}, found {}",
                    path.display(),
                    a.n,
                    snrs.len()
                );
            }
            let profile = polarize_distinct(snrs.into_iter().map(LogSnr::from_db).collect())?;
            CodeConstruction::from_profile(&profile, k, None, Method::Rca)?
        }
        (None, Some(db)) => construct_rca(a.n, k, db)?,
        (None, None) => bail!("one of --design-snr-db or --per-channel-snrs is required"),
    };
    fs::write(&a.out, code.to_json()? + "\n")
        .with_context(|| format!("writing {}", a.out.display()))?;
    let mask = a.out.with_extension("mask");
    fs::write(&mask, code.to_mask_text()).with_context(|| format!("writing {}", mask.display()))?;
    let outputs = vec![a.out.clone(), mask];
    manifest::write("construct", &a, None, outputs, started)
}

fn sweep_points(s: &SweepArgs) -> Result<Vec<f64>> {
    let start = s.snr_start;
    let stop = s.snr_stop.unwrap_or(start);
    if !start.is_finite() || !stop.is_finite() || !s.snr_step.is_finite() {
        bail!("sweep bounds must be finite");
    }
    if s.snr_step == 0.0 {
        return Ok(vec![start]);
    }
    if s.snr_step < 0.0 {
        bail!("--snr-step must be nonnegative");
    }
    if stop < start {
        bail!("--snr-stop {stop} is below --snr-start {start}");
    }
    let count = ((stop - start) / s.snr_step + 1e-9).floor() as usize + 1;
    // snap to a 1e-9 dB lattice so 0.1 steps print cleanly
    Ok((0..count)
        .map(|i| ((start + s.snr_step * i as f64) * 1e9).round() / 1e9)
        .collect())
}

/// A code that is either fixed for the whole sweep or rebuilt per point.
enum Plan {
    Fixed(CodeConstruction),
    Redesign { n: u32, k: usize },
}

impl Plan {
    fn from_args(c: &CodeArgs) -> Result<Plan> {
        if let Some(path) = &c.construction {
            let text =
                fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let code = CodeConstruction::from_json(&text)
                .with_context(|| format!("parsing {}", path.display()))?;
            return Ok(if c.redesign_each_point {
                Plan::Redesign {
                    n: code.log2_len(),
                    k: code.k(),
                }
            } else {
                Plan::Fixed(code)
            });
        }
        let n =
            c.n.ok_or_else(|| anyhow!("either --construction or --n is required"))?;
        let k = info_size(n, c.rate, c.k)?;
        if c.redesign_each_point {
            if c.design_snr_db.is_some() {
                bail!("--design-snr-db conflicts with --redesign-each-point");
            }
            return Ok(Plan::Redesign { n, k });
        }
        let db = c
            .design_snr_db
            .ok_or_else(|| anyhow!("inline codes need --design-snr-db or --redesign-each-point"))?;
        Ok(Plan::Fixed(construct_rca(n, k, db)?))
    }

    fn code_at(&self, channel_db: f64) -> Result<CodeConstruction> {
        Ok(match self {
            Plan::Fixed(c) => c.clone(),
            Plan::Redesign { n, k } => construct_rca(*n, *k, channel_db)?,
        })
    }
}

fn estimate_point(plan: &Plan, db: f64) -> Result<BlerEstimate> {
    let code = plan.code_at(db)?;
    let profile = polarize_uniform(code.log2_len(), LogSnr::from_db(db))?;
    Ok(match plan {
        Plan::Redesign { k, .. } if *k > 0 => estimate_bler(&profile, *k)?,
        _ => estimate_bler_for_set(&profile, code.info_set())?,
    })
}

fn estimate(a: EstimateArgs) -> Result<()> {
    let started = Instant::now();
    let plan = Plan::from_args(&a.code)?;
    let points = sweep_points(&a.sweep)?;
    if a.per_bit.is_some() && points.len() != 1 {
        bail!("--per-bit needs a single-point sweep");
    }
    let mut out = csv::Writer::from_writer(create(&a.out)?);
    out.write_record(["channel_snr_db", "estimated_bler"])?;
    let mut outputs = vec![a.out.clone()];
    for &db in &points {
        let est = estimate_point(&plan, db)?;
        out.write_record([db.to_string(), format!("{:e}", est.bler)])?;
        if let Some(path) = &a.per_bit {
            est.write_per_bit_csv(create(path)?)?;
            outputs.push(path.clone());
        }
    }
    out.flush()?;
    manifest::write("estimate", &a, None, outputs, started)
}

fn simulate(a: SimulateArgs) -> Result<()> {
    let started = Instant::now();
    let plan = Plan::from_args(&a.code)?;
    let points = sweep_points(&a.sweep)?;
    let fresh = fs::metadata(&a.out).map(|m| m.len() == 0).unwrap_or(true);
    let file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(&a.out)
        .with_context(|| format!("opening {}", a.out.display()))?;
    let mut out = BufWriter::new(file);
    let mut results: Vec<SimResult> = Vec::with_capacity(points.len());
    for (i, &db) in points.iter().enumerate() {
        let mut cfg = SimConfig::new(plan.code_at(db)?, db, a.max_trials, a.seed);
        cfg.target_block_errors = a.target_errors;
        cfg.workers = a.workers;
        cfg.all_zero = a.all_zero;
        let res = run_monte_carlo(&cfg)?;
        append_sim_csv(&mut out, &cfg, &res, fresh && i == 0)?;
        results.push(res);
    }
    out.flush()?;
    let json_path = results_path(&a.out);
    fs::write(&json_path, serde_json::to_string_pretty(&results)? + "\n")
        .with_context(|| format!("writing {}", json_path.display()))?;
    let outputs = vec![a.out.clone(), json_path];
    manifest::write("simulate", &a, Some(a.seed), outputs, started)
}

/// Per-point JSON results land beside the CSV.
fn results_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".results.json");
    PathBuf::from(name)
}

fn capacity_report(a: CapacityReportArgs) -> Result<()> {
    let started = Instant::now();
    let grid = db_grid(a.grid_db_start, a.grid_db_stop, a.grid_db_points)?;
    let rows = error_report(&grid)?;
    let mut out = create(&a.out)?;
    write_error_report_csv(&rows, &mut out)?;
    out.flush()?;
    manifest::write("capacity-report", &a, None, vec![a.out.clone()], started)
}
