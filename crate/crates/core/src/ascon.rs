//! ASCON permutation and the Ascon-Xof (v1.2) sponge.
//!
//! One XOF instance backs every symmetric role in the scheme: the PRF that
//! expands seeds, the hashes `H` and `G`, and the deterministic generator
//! used for known-answer tests. Roles are separated purely by what is
//! absorbed.

use crate::params::SEED_BYTES;

/// Rate of the sponge in bytes.
pub const RATE: usize = 8;

const ROUND_CONSTANTS: [u64; 12] = [
    0xf0, 0xe1, 0xd2, 0xc3, 0xb4, 0xa5, 0x96, 0x87, 0x78, 0x69, 0x5a, 0x4b,
];

/// Ascon-Xof initialization word: rate 64 bits, 12 rounds, unbounded output.
const XOF_IV: u64 = 0x0040_0c00_0000_0000;

/// Precomputed `p12(XOF_IV || 0^256)`.
const XOF_INIT: [u64; 5] = [
    0xb57e_273b_814c_d416,
    0x2b51_0425_62ae_2420,
    0x66a3_a776_8ddf_2218,
    0x5aad_0a7a_8153_650c,
    0x4f3e_0e32_5394_93b6,
];

/// The 12-round ASCON permutation `p12`.
pub fn permute_p12(state: &mut [u64; 5]) {
    let [mut x0, mut x1, mut x2, mut x3, mut x4] = *state;
    for &c in &ROUND_CONSTANTS {
        x2 ^= c;

        x0 ^= x4;
        x4 ^= x3;
        x2 ^= x1;
        let t0 = !x0 & x1;
        let t1 = !x1 & x2;
        let t2 = !x2 & x3;
        let t3 = !x3 & x4;
        let t4 = !x4 & x0;
        x0 ^= t1;
        x1 ^= t2;
        x2 ^= t3;
        x3 ^= t4;
        x4 ^= t0;
        x1 ^= x0;
        x0 ^= x4;
        x3 ^= x2;
        x2 = !x2;

        x0 ^= x0.rotate_right(19) ^ x0.rotate_right(28);
        x1 ^= x1.rotate_right(61) ^ x1.rotate_right(39);
        x2 ^= x2.rotate_right(1) ^ x2.rotate_right(6);
        x3 ^= x3.rotate_right(10) ^ x3.rotate_right(17);
        x4 ^= x4.rotate_right(7) ^ x4.rotate_right(41);
    }
    *state = [x0, x1, x2, x3, x4];
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Phase {
    Absorbing,
    Squeezing,
}

/// Streaming Ascon-Xof state.
///
/// Input may be fed in arbitrary pieces; a partial rate block is held in
/// `buf` until it fills or the state switches to squeezing.
#[derive(Clone, Debug)]
pub struct XofState {
    state: [u64; 5],
    phase: Phase,
    buf: [u8; RATE],
    buf_len: usize,
    absorb_permutations: usize,
}

impl Default for XofState {
    fn default() -> Self {
        Self::new()
    }
}

impl XofState {
    pub fn new() -> Self {
        XofState {
            state: XOF_INIT,
            phase: Phase::Absorbing,
            buf: [0; RATE],
            buf_len: 0,
            absorb_permutations: 0,
        }
    }

    /// State obtained by permuting the raw initialization block; equal to `new()`.
    pub fn from_iv() -> Self {
        let mut state = [XOF_IV, 0, 0, 0, 0];
        permute_p12(&mut state);
        XofState {
            state,
            ..Self::new()
        }
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    /// Number of permutation calls made while absorbing, including the one
    /// after the padded final block once squeezing has begun.
    pub fn absorb_blocks(&self) -> usize {
        self.absorb_permutations
    }

    pub fn words(&self) -> [u64; 5] {
        self.state
    }

    /// # Panics
    /// If called after squeezing has started.
    pub fn absorb(&mut self, mut data: &[u8]) {
        assert_eq!(self.phase, Phase::Absorbing, "absorb after squeeze");
        if self.buf_len > 0 {
            let take = (RATE - self.buf_len).min(data.len());
            self.buf[self.buf_len..self.buf_len + take].copy_from_slice(&data[..take]);
            self.buf_len += take;
            data = &data[take..];
            if self.buf_len < RATE {
                return;
            }
            let block = self.buf;
            self.absorb_block(&block);
            self.buf_len = 0;
        }
        let mut chunks = data.chunks_exact(RATE);
        for block in &mut chunks {
            self.absorb_block(block.try_into().unwrap());
        }
        let rest = chunks.remainder();
        self.buf[..rest.len()].copy_from_slice(rest);
        self.buf_len = rest.len();
    }

    fn absorb_block(&mut self, block: &[u8; RATE]) {
        self.state[0] ^= u64::from_be_bytes(*block);
        permute_p12(&mut self.state);
        self.absorb_permutations += 1;
    }

    fn finish_absorb(&mut self) {
        let mut last = [0u8; RATE];
        last[..self.buf_len].copy_from_slice(&self.buf[..self.buf_len]);
        last[self.buf_len] = 0x80;
        self.absorb_block(&last);
        self.buf_len = 0;
        self.phase = Phase::Squeezing;
    }

    /// Fills `out` with the next bytes of the output stream.
    pub fn squeeze(&mut self, out: &mut [u8]) {
        if self.phase == Phase::Absorbing {
            self.finish_absorb();
            self.buf = self.state[0].to_be_bytes();
            self.buf_len = RATE;
        }
        for byte in out.iter_mut() {
            if self.buf_len == 0 {
                permute_p12(&mut self.state);
                self.buf = self.state[0].to_be_bytes();
                self.buf_len = RATE;
            }
            *byte = self.buf[RATE - self.buf_len];
            self.buf_len -= 1;
        }
    }
}

/// Squeezes one byte at a time; never ends.
impl Iterator for XofState {
    type Item = u8;

    fn next(&mut self) -> Option<u8> {
        let mut b = [0u8; 1];
        self.squeeze(&mut b);
        Some(b[0])
    }
}

/// One-shot Ascon-Xof.
pub fn xof(input: &[u8], out_len: usize) -> Vec<u8> {
    let mut st = XofState::new();
    st.absorb(input);
    let mut out = vec![0u8; out_len];
    st.squeeze(&mut out);
    out
}

/// `H: {0,1}* -> {0,1}^128`.
pub fn hash_h(input: &[u8]) -> [u8; SEED_BYTES] {
    hash_h_parts(&[input])
}

/// `H` over the concatenation of `parts`.
pub fn hash_h_parts(parts: &[&[u8]]) -> [u8; SEED_BYTES] {
    let mut st = XofState::new();
    for p in parts {
        st.absorb(p);
    }
    let mut out = [0u8; SEED_BYTES];
    st.squeeze(&mut out);
    out
}

/// `G: {0,1}* -> {0,1}^256`, returned as `(K, r)`.
pub fn hash_g(input: &[u8]) -> ([u8; SEED_BYTES], [u8; SEED_BYTES]) {
    hash_g_parts(&[input])
}

pub fn hash_g_parts(parts: &[&[u8]]) -> ([u8; SEED_BYTES], [u8; SEED_BYTES]) {
    let mut st = XofState::new();
    for p in parts {
        st.absorb(p);
    }
    let mut k = [0u8; SEED_BYTES];
    let mut r = [0u8; SEED_BYTES];
    st.squeeze(&mut k);
    st.squeeze(&mut r);
    (k, r)
}

/// PRF stream: the XOF absorbed with `seed || nonce`, ready to squeeze.
pub fn prf_stream(seed: &[u8; SEED_BYTES], nonce: &[u8]) -> XofState {
    debug_assert!(matches!(nonce.len(), 1 | 2));
    let mut st = XofState::new();
    st.absorb(seed);
    st.absorb(nonce);
    st
}

/// `xof(seed || nonce, out_len)`.
pub fn prf(seed: &[u8; SEED_BYTES], nonce: &[u8], out_len: usize) -> Vec<u8> {
    let mut st = prf_stream(seed, nonce);
    let mut out = vec![0u8; out_len];
    st.squeeze(&mut out);
    out
}
