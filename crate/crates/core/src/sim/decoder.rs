use crate::error::{Error, Result};
use crate::polarization::CodeConstruction;

/// Check-node LLR combine `2 atanh(tanh(a/2) tanh(b/2))` in log form.
#[inline]
pub fn f_exact(a: f64, b: f64) -> f64 {
    let (x, y) = (a.abs(), b.abs());
    let mag = x.min(y) + (-(x + y)).exp().ln_1p() - (-(x - y).abs()).exp().ln_1p();
    let sign = if (a < 0.0) != (b < 0.0) { -1.0 } else { 1.0 };
    sign * mag
}

/// Variable-node LLR combine given the partial sum `u` of the upper branch.
#[inline]
pub fn g(a: f64, b: f64, u: u8) -> f64 {
    if u == 0 {
        b + a
    } else {
        b - a
    }
}

#[inline]
fn hard(l: f64) -> u8 {
    u8::from(l < 0.0)
}

/// Successive-cancellation decoder for one construction.
///
/// The root node combines physical positions `2m` and `2m + 1`; its left
/// child is the code on even input indices and its right child the code on
/// odd ones. Input bits are therefore decided in bit-reversed index order,
/// which is the order their polarized channels were derived in.
#[derive(Clone, Debug)]
pub struct ScDecoder {
    n: u32,
    frozen: Vec<bool>,
    llr: Vec<Vec<f64>>,
    beta: Vec<Vec<u8>>,
}

impl ScDecoder {
    pub fn new(construction: &CodeConstruction) -> Self {
        let n = construction.log2_len();
        let len = construction.block_len();
        Self {
            n,
            frozen: construction.info_mask().into_iter().map(|i| !i).collect(),
            llr: (0..=n).map(|d| vec![0.0; len >> d]).collect(),
            beta: (0..=n).map(|d| vec![0u8; len >> d]).collect(),
        }
    }

    pub fn block_len(&self) -> usize {
        self.frozen.len()
    }

    /// Decides every input bit from the channel LLRs. Frozen bits come back
    /// as zero.
    pub fn decode(&mut self, llrs: &[f64], u_hat: &mut [u8]) -> Result<()> {
        self.run(llrs, u_hat, None)
    }

    /// As [`decode`](Self::decode), also storing in `raw` the hard decision on
    /// each leaf LLR before frozen bits are forced to zero.
    pub fn decode_traced(&mut self, llrs: &[f64], u_hat: &mut [u8], raw: &mut [u8]) -> Result<()> {
        if raw.len() != self.block_len() {
            return Err(Error::LengthMismatch {
                expected: self.block_len(),
                actual: raw.len(),
            });
        }
        self.run(llrs, u_hat, Some(raw))
    }

    fn run(&mut self, llrs: &[f64], u_hat: &mut [u8], raw: Option<&mut [u8]>) -> Result<()> {
        let len = self.block_len();
        for actual in [llrs.len(), u_hat.len()] {
            if actual != len {
                return Err(Error::LengthMismatch {
                    expected: len,
                    actual,
                });
            }
        }
        self.llr[0].copy_from_slice(llrs);
        self.node(0, 0, u_hat, raw);
        Ok(())
    }

    fn node(&mut self, depth: u32, offset: usize, u_hat: &mut [u8], mut raw: Option<&mut [u8]>) {
        let d = depth as usize;
        if depth == self.n {
            let h = hard(self.llr[d][0]);
            if let Some(r) = raw.as_deref_mut() {
                r[offset] = h;
            }
            let bit = if self.frozen[offset] { 0 } else { h };
            u_hat[offset] = bit;
            self.beta[d][0] = bit;
            return;
        }
        let stride = 1usize << depth;
        {
            let (up, down) = self.llr.split_at_mut(d + 1);
            let (parent, child) = (&up[d], &mut down[0]);
            for (c, p) in child.iter_mut().zip(parent.chunks_exact(2)) {
                *c = f_exact(p[0], p[1]);
            }
        }
        self.node(depth + 1, offset, u_hat, raw.as_deref_mut());
        {
            let (up, down) = self.beta.split_at_mut(d + 1);
            for (p, &a) in up[d].chunks_exact_mut(2).zip(down[0].iter()) {
                p[0] = a;
            }
        }
        {
            let (up, down) = self.llr.split_at_mut(d + 1);
            let partial = self.beta[d].iter().step_by(2);
            for ((c, p), &a) in down[0].iter_mut().zip(up[d].chunks_exact(2)).zip(partial) {
                *c = g(p[0], p[1], a);
            }
        }
        self.node(depth + 1, offset + stride, u_hat, raw);
        let (up, down) = self.beta.split_at_mut(d + 1);
        for (p, &b) in up[d].chunks_exact_mut(2).zip(down[0].iter()) {
            p[0] ^= b;
            p[1] = b;
        }
    }
}
