//! End-to-end acceptance criteria. Prints one PASS/FAIL line per criterion
//! and exits nonzero if any fail.

mod common;

use common::{linspace, load_delta, logspace, spearman, SELF_INVERSE_GRID};
use polarforge::bler::{estimate_at_design, estimate_bler, find_design_snr};
use polarforge::capacity::constants::{GAMMA_1, GAMMA_2, GAMMA_3};
use polarforge::capacity::{c_hat, capacity_oracle, db_grid, u_hat, u_oracle, LinearSnr, Region};
use polarforge::polarization::{construct_rca, polarize_uniform};
use polarforge::rca::{lambda_log, reciprocal_sum, variable_node_combine, LogSnr};
use polarforge::sim::{
    embed_message, encode, run_monte_carlo, run_monte_carlo_with_bit_errors, ScDecoder, SimConfig,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::alloc::{GlobalAlloc, Layout, System};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Instant;

struct Counting;

static CURRENT: AtomicUsize = AtomicUsize::new(0);
static PEAK: AtomicUsize = AtomicUsize::new(0);

unsafe impl GlobalAlloc for Counting {
    unsafe fn alloc(&self, layout: Layout) -> *mut u8 {
        let p = System.alloc(layout);
        if !p.is_null() {
            let now = CURRENT.fetch_add(layout.size(), Ordering::Relaxed) + layout.size();
            PEAK.fetch_max(now, Ordering::Relaxed);
        }
        p
    }

    unsafe fn dealloc(&self, ptr: *mut u8, layout: Layout) {
        System.dealloc(ptr, layout);
        CURRENT.fetch_sub(layout.size(), Ordering::Relaxed);
    }
}

#[global_allocator]
static ALLOC: Counting = Counting;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn a1_low_snr_bound() -> Outcome {
    let t = Instant::now();
    let mut worst: f64 = 0.0;
    for g in logspace(1e-6, 0.04, 500) {
        let gamma = LinearSnr::new(g).unwrap();
        worst = worst.max((u_hat(gamma) - u_oracle(gamma).unwrap()).abs());
    }
    let secs = t.elapsed().as_secs_f64();
    check(
        worst < 1.1e-5 && secs < 10.0,
        format!("max |Û − U| = {worst:.3e} (< 1.1e-5), {secs:.2} s (< 10 s)"),
    )
}

fn a2_global_error() -> Outcome {
    let t = Instant::now();
    let grid = db_grid(-20.0, 15.0, 701).unwrap();
    let errs: Vec<f64> = grid
        .iter()
        .map(|&g| c_hat(g).get() - capacity_oracle(g).unwrap().get())
        .collect();
    let worst = errs.iter().fold(0.0f64, |m, e| m.max(e.abs()));
    let mut jump: f64 = 0.0;
    for i in 1..grid.len() {
        if Region::of_snr(grid[i - 1].get()) == Region::of_snr(grid[i].get()) {
            jump = jump.max((errs[i] - errs[i - 1]).abs());
        }
    }
    let secs = t.elapsed().as_secs_f64();
    check(
        worst < 1e-3 && jump < 1e-4 && secs < 30.0,
        format!(
            "max |Ĉ − C| = {worst:.3e} (< 1e-3), max in-region jump = {jump:.3e} (< 1e-4), {secs:.2} s (< 30 s)"
        ),
    )
}

fn a3_boundary_continuity() -> Outcome {
    let mut worst: f64 = 0.0;
    for b in [GAMMA_1, GAMMA_2, GAMMA_3] {
        let eps = 1e-9 * b;
        let lo = u_hat(LinearSnr::new(b - eps).unwrap());
        let hi = u_hat(LinearSnr::new(b + eps).unwrap());
        worst = worst.max((lo - hi).abs());
    }
    check(
        worst < 1e-5,
        format!("max boundary gap = {worst:.3e} (< 1e-5)"),
    )
}

const TABLE: [(u32, f64, f64, f64); 6] = [
    (6, 0.25, -2.53, 0.0100),
    (6, 0.5, 0.65, 0.0100),
    (6, 0.75, 3.26, 0.0101),
    (10, 0.25, -3.97, 0.0103),
    (10, 0.5, -0.50, 0.0102),
    (10, 0.75, 2.33, 0.0104),
];

fn a4_table_estimates() -> Outcome {
    let t = Instant::now();
    let mut cells = Vec::new();
    let mut ok = true;
    for (n, rate, db, expect) in TABLE {
        let k = (rate * (1u32 << n) as f64) as usize;
        let got = estimate_at_design(n, k, db).unwrap();
        ok &= (got - expect).abs() <= 5e-4;
        cells.push(format!("{}/{rate}/{db}: {got:.4}", 1 << n));
    }
    let secs = t.elapsed().as_secs_f64();
    check(
        ok && secs < 5.0,
        format!("{} ({secs:.2} s)", cells.join(", ")),
    )
}

fn a5_monte_carlo() -> Outcome {
    let t = Instant::now();
    let run = |n: u32, k: usize, db: f64, trials: u64, seed: u64| {
        let mut cfg = SimConfig::new(construct_rca(n, k, db).unwrap(), db, trials, seed);
        cfg.target_block_errors = u64::MAX;
        cfg.workers = 4;
        run_monte_carlo(&cfg).unwrap()
    };
    let big = run(10, 512, -0.50, 200_000, 20_240_601);
    let overlaps = big.ci95_low <= 0.0113 && big.ci95_high >= 0.0093;
    let small = run(6, 16, -2.53, 200_000, 20_240_602);
    let p0 = 0.0095;
    let sigma = (p0 * (1.0 - p0) / small.trials_run as f64).sqrt();
    let consistent = (small.bler_point - p0).abs() <= 3.0 * sigma;
    check(
        overlaps && consistent,
        format!(
            "N=1024: {:.5} [{:.5}, {:.5}] over {} trials; N=64: {:.5} vs 0.0095 ± 3σ ({:.5}); {:.1} s",
            big.bler_point,
            big.ci95_low,
            big.ci95_high,
            big.trials_run,
            small.bler_point,
            3.0 * sigma,
            t.elapsed().as_secs_f64()
        ),
    )
}

fn a6_self_inverse() -> Outcome {
    let fixture = load_delta();
    let (start, stop, points) = SELF_INVERSE_GRID;
    let grid = linspace(start, stop, points);
    let residual = grid
        .iter()
        .map(|&xi| (lambda_log(LogSnr(xi)).to_log_snr().get() - xi).abs())
        .fold(0.0f64, f64::max);

    let mut var_err: f64 = 0.0;
    let mut chk_err: f64 = 0.0;
    for &a in &grid {
        for &b in grid.iter().step_by(7) {
            let v = variable_node_combine(LogSnr(a), LogSnr(b)).get();
            var_err = var_err.max((v.exp() / (a.exp() + b.exp()) - 1.0).abs());
            let s = reciprocal_sum(LogSnr(a), LogSnr(b)).get();
            let parts = lambda_log(LogSnr(a)).get().exp() + lambda_log(LogSnr(b)).get().exp();
            chk_err = chk_err.max((s.exp() / parts - 1.0).abs());
        }
    }
    check(
        residual < fixture.delta && fixture.delta < 2e-2 && var_err < 1e-12 && chk_err < 1e-9,
        format!(
            "max |Λ(Λ(ξ)) − ξ| = {residual:.3e} (< δ = {:.3e}); variable-node rel {var_err:.1e} (< 1e-12); check-node rel {chk_err:.1e} (< 1e-9)",
            fixture.delta
        ),
    )
}

fn a7_index_convention() -> Outcome {
    let db = 0.0;
    let code = construct_rca(3, 4, db).unwrap();
    let profile = polarize_uniform(3, LogSnr::from_db(db)).unwrap();
    let mut cfg = SimConfig::new(code, db, 100_000, 7);
    cfg.target_block_errors = u64::MAX;
    let (res, bits) = run_monte_carlo_with_bit_errors(&cfg).unwrap();
    let rates: Vec<f64> = bits
        .iter()
        .map(|&b| b as f64 / res.trials_run as f64)
        .collect();
    let neg_xi: Vec<f64> = profile.values().iter().map(|x| -x.get()).collect();
    let rho = spearman(&rates, &neg_xi);
    let shown: Vec<String> = rates.iter().map(|r| format!("{r:.4}")).collect();
    check(
        rho > 0.9,
        format!(
            "Spearman = {rho:.4} (> 0.9), per-bit rates [{}]",
            shown.join(", ")
        ),
    )
}

fn a8_noiseless_round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut failures = 0;
    for n in [1u32, 3, 6, 10] {
        let len = 1usize << n;
        let code = construct_rca(n, len / 2, 0.0).unwrap();
        let mut dec = ScDecoder::new(&code);
        let mut out = vec![0u8; len];
        for _ in 0..100 {
            let msg: Vec<u8> = (0..code.k()).map(|_| rng.random::<bool>() as u8).collect();
            let u = embed_message(&msg, &code).unwrap();
            let x = encode(&u, &code).unwrap();
            let llr: Vec<f64> = x.iter().map(|&b| if b == 0 { 1e9 } else { -1e9 }).collect();
            dec.decode(&llr, &mut out).unwrap();
            failures += usize::from(out != u);
        }
    }
    check(
        failures == 0,
        format!("{failures} mismatches over 400 messages at N = 2, 8, 64, 1024"),
    )
}

/// dB width between the design SNRs that give estimated BLER 1e-1 and 1e-3.
fn decade_width(n: u32, lo: f64, hi: f64) -> f64 {
    let k = 1usize << (n - 1);
    let a = find_design_snr(n, k, 1e-1, lo, hi).unwrap();
    let b = find_design_snr(n, k, 1e-3, lo, hi).unwrap();
    b - a
}

fn a9_large_construction() -> Outcome {
    let base = CURRENT.load(Ordering::Relaxed);
    PEAK.store(base, Ordering::Relaxed);
    let t = Instant::now();
    let code = construct_rca(18, 1 << 17, 0.0).unwrap();
    let secs = t.elapsed().as_secs_f64();
    let mb = (PEAK.load(Ordering::Relaxed) - base) as f64 / 1e6;
    drop(code);

    let snrs = linspace(-3.0, 0.0, 16);
    let curve: Vec<f64> = snrs
        .iter()
        .map(|&db| {
            let p = polarize_uniform(18, LogSnr::from_db(db)).unwrap();
            estimate_bler(&p, 1 << 17).unwrap().bler
        })
        .collect();
    let monotone = curve.windows(2).all(|w| w[1] <= w[0]);
    let w18 = decade_width(18, -6.0, 3.0);
    let w11 = decade_width(11, -6.0, 4.0);
    check(
        secs < 2.0 && mb < 50.0 && monotone && w18 < w11,
        format!(
            "n=18 construction {secs:.2} s (< 2 s), {mb:.1} MB (< 50 MB); curve monotone = {monotone}; \
             1e-1→1e-3 width {w18:.3} dB (n=18) vs {w11:.3} dB (n=11)"
        ),
    )
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("A1", a1_low_snr_bound),
        ("A2", a2_global_error),
        ("A3", a3_boundary_continuity),
        ("A4", a4_table_estimates),
        ("A5", a5_monte_carlo),
        ("A6", a6_self_inverse),
        ("A7", a7_index_convention),
        ("A8", a8_noiseless_round_trip),
        ("A9", a9_large_construction),
    ];
    let filter: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let mut failed = 0;
    for (id, f) in criteria {
        if !filter.is_empty() && !filter.iter().any(|p| id.contains(p.as_str())) {
            continue;
        }
        match f() {
            Ok(detail) => println!("{id} PASS  {detail}"),
            Err(detail) => {
                failed += 1;
                println!("{id} FAIL  {detail}");
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
