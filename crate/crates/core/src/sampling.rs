//! Seed expansion: the public matrix by rejection sampling, secrets and
//! errors from the centered binomial distribution.
//!
//! Bits are consumed LSB-first within each byte, bytes in stream order.

use crate::ascon::{prf, prf_stream};
use crate::ntt::{Poly, PolyVec};
use crate::params::{ParamSet, SEED_BYTES};

/// LSB-first bit reader over a byte stream.
#[derive(Debug)]
pub struct BitReader<I> {
    bytes: I,
    acc: u64,
    acc_bits: u32,
    consumed: u64,
}

impl<I: Iterator<Item = u8>> BitReader<I> {
    pub fn new(bytes: I) -> Self {
        BitReader {
            bytes,
            acc: 0,
            acc_bits: 0,
            consumed: 0,
        }
    }

    /// Next `bits` bits (at most 32) as an integer, first bit least significant.
    /// Returns `None` if the stream runs dry.
    pub fn read(&mut self, bits: u32) -> Option<u32> {
        debug_assert!(bits <= 32);
        while self.acc_bits < bits {
            let b = self.bytes.next()?;
            self.acc |= (b as u64) << self.acc_bits;
            self.acc_bits += 8;
        }
        let v = (self.acc & ((1u64 << bits) - 1)) as u32;
        self.acc >>= bits;
        self.acc_bits -= bits;
        self.consumed += bits as u64;
        Some(v)
    }

    /// Bits handed out so far.
    pub fn position(&self) -> u64 {
        self.consumed
    }
}

/// Outcome of filling one polynomial by rejection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniformDraw {
    pub poly: Poly,
    /// Chunks read, accepted or not.
    pub chunks: usize,
}

/// Fills `n` coefficients from `chunk_bits`-wide chunks, rejecting values `>= q`.
///
/// Returns `None` if the source ends first. Not constant time: the input is public.
pub fn uniform_from_bytes<I: Iterator<Item = u8>>(
    bytes: I,
    n: usize,
    q: u32,
    chunk_bits: u32,
) -> Option<UniformDraw> {
    let mut reader = BitReader::new(bytes);
    let mut coeffs = Vec::with_capacity(n);
    let mut chunks = 0;
    while coeffs.len() < n {
        let v = reader.read(chunk_bits)?;
        chunks += 1;
        if v < q {
            coeffs.push(v);
        }
    }
    Some(UniformDraw {
        poly: Poly::from_coeffs(coeffs),
        chunks,
    })
}

/// Uniform matrix entry at `(row, col)`, already in the NTT domain.
pub fn sample_uniform_poly(seed_a: &[u8; SEED_BYTES], row: u8, col: u8, ps: &ParamSet) -> Poly {
    sample_uniform_counted(seed_a, row, col, ps).poly
}

pub fn sample_uniform_counted(
    seed_a: &[u8; SEED_BYTES],
    row: u8,
    col: u8,
    ps: &ParamSet,
) -> UniformDraw {
    uniform_from_bytes(prf_stream(seed_a, &[row, col]), ps.n, ps.q, ps.log_q)
        .expect("xof stream is unbounded")
}

/// Entry `(i, j)` of `A` (or of `A^T` when `transposed`).
pub fn matrix_entry(
    seed_a: &[u8; SEED_BYTES],
    i: usize,
    j: usize,
    transposed: bool,
    ps: &ParamSet,
) -> Poly {
    let (row, col) = if transposed { (j, i) } else { (i, j) };
    sample_uniform_poly(seed_a, row as u8, col as u8, ps)
}

/// Materializes the whole ℓ×ℓ matrix. The scheme itself streams entries
/// through [`matrix_entry`]; this is for inspection and tests.
pub fn gen_matrix(seed_a: &[u8; SEED_BYTES], transposed: bool, ps: &ParamSet) -> Vec<Vec<Poly>> {
    (0..ps.ell)
        .map(|i| {
            (0..ps.ell)
                .map(|j| matrix_entry(seed_a, i, j, transposed, ps))
                .collect()
        })
        .collect()
}

/// One CBD_eta coefficient from `2 * eta` bits: HW(low eta bits) - HW(high eta bits).
#[inline]
pub fn cbd_value(bits: u32, eta: u32) -> i32 {
    let mask = (1u32 << eta) - 1;
    (bits & mask).count_ones() as i32 - ((bits >> eta) & mask).count_ones() as i32
}

/// Secret/error polynomial drawn with PRF nonce `nonce`.
pub fn sample_cbd_poly(seed: &[u8; SEED_BYTES], nonce: u8, eta: u32, ps: &ParamSet) -> Poly {
    let bits = 2 * eta;
    let bytes = prf(seed, &[nonce], (ps.n * bits as usize).div_ceil(8));
    let mut reader = BitReader::new(bytes.into_iter());
    let q = ps.q as i32;
    let coeffs = (0..ps.n)
        .map(|_| {
            let v = cbd_value(reader.read(bits).expect("sized buffer"), eta);
            // branchless lift of negatives
            (v + ((v >> 31) & q)) as u32
        })
        .collect();
    Poly::from_coeffs(coeffs)
}

/// `s[i]` uses nonce `i`, `e[i]` uses nonce `ℓ + i`.
pub fn expand_secret_error(seed_se: &[u8; SEED_BYTES], ps: &ParamSet) -> (PolyVec, PolyVec) {
    let s = (0..ps.ell)
        .map(|i| sample_cbd_poly(seed_se, i as u8, ps.eta1, ps))
        .collect::<Vec<_>>();
    let e = (0..ps.ell)
        .map(|i| sample_cbd_poly(seed_se, (ps.ell + i) as u8, ps.eta2, ps))
        .collect::<Vec<_>>();
    (s.into(), e.into())
}

/// Nonce of the scalar error term drawn during encryption.
pub fn scalar_error_nonce(ps: &ParamSet) -> u8 {
    (2 * ps.ell) as u8
}
