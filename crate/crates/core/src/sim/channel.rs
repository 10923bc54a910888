use crate::capacity::LinearSnr;
use rand::Rng;
use rand_distr::StandardNormal;

/// BPSK over real AWGN at SNR `γ`: bit `b` maps to `1 − 2b`, noise variance
/// is `1/(2γ)`, and the channel LLR is `4γ·y`.
#[derive(Clone, Copy, Debug)]
pub struct AwgnChannel {
    sigma: f64,
    scale: f64,
}

impl AwgnChannel {
    pub fn new(gamma: LinearSnr) -> Self {
        let g = gamma.get();
        Self {
            sigma: (0.5 / g).sqrt(),
            scale: 4.0 * g,
        }
    }

    pub fn transmit<R: Rng + ?Sized>(&self, x: &[u8], rng: &mut R, llrs: &mut [f64]) {
        debug_assert_eq!(x.len(), llrs.len());
        for (l, &b) in llrs.iter_mut().zip(x) {
            let s = 1.0 - 2.0 * f64::from(b);
            let z: f64 = rng.sample(StandardNormal);
            *l = self.scale * (s + self.sigma * z);
        }
    }
}

pub fn awgn_llrs<R: Rng + ?Sized>(x: &[u8], gamma: LinearSnr, rng: &mut R) -> Vec<f64> {
    let mut out = vec![0.0; x.len()];
    AwgnChannel::new(gamma).transmit(x, rng, &mut out);
    out
}
