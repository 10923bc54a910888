use polarforge::bler::{estimate_bler, find_design_snr};
use polarforge::polarization::polarize_uniform;
use polarforge::rca::LogSnr;
use proptest::prelude::*;

proptest! {
    #[test]
    fn nonincreasing_in_design_snr(n in 1u32..11, frac in 0.05f64..=1.0, db in -6.0f64..6.0) {
        let k = (((1usize << n) as f64) * frac).ceil() as usize;
        let mut prev = f64::INFINITY;
        for i in 0..8 {
            let p = polarize_uniform(n, LogSnr::from_db(db + 0.25 * i as f64)).unwrap();
            let b = estimate_bler(&p, k).unwrap().bler;
            prop_assert!(b <= prev);
            prev = b;
        }
    }

    #[test]
    fn nondecreasing_in_k(n in 1u32..10, db in -6.0f64..6.0) {
        let p = polarize_uniform(n, LogSnr::from_db(db)).unwrap();
        let mut prev = 0.0;
        for k in 1..=p.len() {
            let b = estimate_bler(&p, k).unwrap().bler;
            prop_assert!(b >= prev);
            prev = b;
        }
    }

    #[test]
    fn union_bound_sandwich(n in 1u32..11, frac in 0.05f64..=1.0, db in -6.0f64..6.0) {
        let k = (((1usize << n) as f64) * frac).ceil() as usize;
        let p = polarize_uniform(n, LogSnr::from_db(db)).unwrap();
        let e = estimate_bler(&p, k).unwrap();
        let max = e.per_bit.iter().map(|b| b.p_bit).fold(0.0, f64::max);
        prop_assert!(e.bler <= e.union_bound() * (1.0 + 1e-12));
        prop_assert!(e.bler >= max * (1.0 - 1e-12));
        prop_assert!(e.per_bit.iter().all(|b| b.p_bit <= 0.5 && b.p_bit >= 0.0));
    }

    #[test]
    fn log_product_matches_naive(n in 1u32..10, frac in 0.05f64..=1.0, db in -6.0f64..2.0) {
        let k = (((1usize << n) as f64) * frac).ceil() as usize;
        let p = polarize_uniform(n, LogSnr::from_db(db)).unwrap();
        let e = estimate_bler(&p, k).unwrap();
        prop_assume!(e.per_bit.iter().all(|b| b.p_bit > 1e-12));
        let naive = 1.0 - e.per_bit.iter().map(|b| 1.0 - b.p_bit).product::<f64>();
        prop_assert!((e.bler / naive - 1.0).abs() < 1e-9);
    }
}

#[test]
fn design_search_hits_target() {
    for (n, k, target) in [(6u32, 32usize, 0.01), (8, 64, 0.001), (9, 384, 0.05)] {
        let db = find_design_snr(n, k, target, -10.0, 10.0).unwrap();
        let p = polarize_uniform(n, LogSnr::from_db(db)).unwrap();
        let got = estimate_bler(&p, k).unwrap().bler;
        assert!(
            (got / target - 1.0).abs() < 0.05,
            "{n} {k}: {got} at {db} dB"
        );
    }
}
