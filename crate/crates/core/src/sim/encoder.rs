use crate::error::{Error, Result};
use crate::polarization::CodeConstruction;

/// In-place `x = u F^{⊗n}` over GF(2), bits stored one per byte.
///
/// Stage `i` XORs position `j + 2^{i−1}` into `j` inside every block of
/// `2^i`, the same pairing the polarization recursion uses.
pub fn polar_transform(bits: &mut [u8]) -> Result<()> {
    let len = bits.len();
    if !len.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(len));
    }
    let mut block = 2;
    while block <= len {
        let half = block / 2;
        for chunk in bits.chunks_exact_mut(block) {
            let (lo, hi) = chunk.split_at_mut(half);
            for (a, b) in lo.iter_mut().zip(hi.iter()) {
                *a ^= *b;
            }
        }
        block *= 2;
    }
    Ok(())
}

/// Encodes a full input vector `u` whose frozen positions must be zero.
pub fn encode(u: &[u8], construction: &CodeConstruction) -> Result<Vec<u8>> {
    let len = construction.block_len();
    if u.len() != len {
        return Err(Error::LengthMismatch {
            expected: len,
            actual: u.len(),
        });
    }
    let info = construction.info_mask();
    if let Some(i) = (0..len).find(|&i| !info[i] && u[i] != 0) {
        return Err(Error::FrozenBitSet(i));
    }
    let mut x = u.to_vec();
    polar_transform(&mut x)?;
    Ok(x)
}

/// Places `message` on the information positions, zeros elsewhere.
pub fn embed_message(message: &[u8], construction: &CodeConstruction) -> Result<Vec<u8>> {
    if message.len() != construction.k() {
        return Err(Error::LengthMismatch {
            expected: construction.k(),
            actual: message.len(),
        });
    }
    let mut u = vec![0u8; construction.block_len()];
    for (&i, &m) in construction.info_set().iter().zip(message) {
        u[i] = m & 1;
    }
    Ok(u)
}
