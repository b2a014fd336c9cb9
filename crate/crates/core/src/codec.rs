//! Compression, message encoding and the byte-level wire formats.
//!
//! One bit order is used everywhere: LSB-first, coefficient 0 in the lowest
//! bit positions.

use crate::ascon::hash_h_parts;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::kem::KemSecretKey;
use crate::ntt::{Poly, PolyVec};
use crate::params::{ParamSet, SEED_BYTES};
use crate::pke::{Ciphertext, PkePublicKey, PkeSecretKey};

/// A `len_K`-bit message.
pub type Message = [u8; SEED_BYTES];

/// Message polynomial with coefficients in [0, 2^B).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MsgPoly {
    pub coeffs: Vec<u32>,
}

/// `round(2^d * x / q) mod 2^d`, computed as `((x << d) + q/2) / q`.
#[inline]
pub fn compress_coeff(field: &Field, x: u32, d: u32) -> u32 {
    let q = field.modulus();
    debug_assert!(x < q && d <= 16);
    let num = ((x as u64) << d) + (q >> 1) as u64;
    (field.div_floor(num) as u32) & ((1 << d) - 1)
}

/// `(q * y + 2^(d-1)) >> d`.
#[inline]
pub fn decompress_coeff(field: &Field, y: u32, d: u32) -> u32 {
    debug_assert!(d >= 1 && y < 1 << d);
    (field.modulus() * y + (1 << (d - 1))) >> d
}

/// `(q * m + 2^(B-1)) >> B`.
#[inline]
pub fn encode_coeff(field: &Field, m: u32, b: u32) -> u32 {
    decompress_coeff(field, m, b)
}

/// `((x << B) + q/2) / q mod 2^B`.
#[inline]
pub fn decode_coeff(field: &Field, x: u32, b: u32) -> u32 {
    compress_coeff(field, x, b)
}

pub fn compress_poly(field: &Field, p: &Poly, d: u32) -> Poly {
    Poly::from_coeffs(
        p.coeffs
            .iter()
            .map(|&x| compress_coeff(field, x, d))
            .collect(),
    )
}

pub fn decompress_poly(field: &Field, p: &Poly, d: u32) -> Poly {
    Poly::from_coeffs(
        p.coeffs
            .iter()
            .map(|&y| decompress_coeff(field, y, d))
            .collect(),
    )
}

pub fn encode_msg(field: &Field, m: &MsgPoly, b: u32) -> Poly {
    Poly::from_coeffs(
        m.coeffs
            .iter()
            .map(|&v| encode_coeff(field, v, b))
            .collect(),
    )
}

pub fn decode_msg(field: &Field, p: &Poly, b: u32) -> MsgPoly {
    MsgPoly {
        coeffs: p
            .coeffs
            .iter()
            .map(|&x| decode_coeff(field, x, b))
            .collect(),
    }
}

#[inline]
fn msg_bit(msg: &Message, i: usize) -> u32 {
    ((msg[i / 8] >> (i % 8)) & 1) as u32
}

/// Spreads the message over `n` coefficients of `B` bits each.
///
/// Position `k` of the `n * B` expanded bits carries message bit
/// `k mod len_K`, so with `repeat > 1` the copies of one bit land in
/// different coefficients.
pub fn arrange_msg(msg: &Message, ps: &ParamSet) -> MsgPoly {
    let len_k = ps.len_k as usize;
    let b = ps.b as usize;
    let coeffs = (0..ps.n)
        .map(|i| (0..b).fold(0, |acc, j| acc | msg_bit(msg, (b * i + j) % len_k) << j))
        .collect();
    MsgPoly { coeffs }
}

/// Inverse of [`arrange_msg`]; with `repeat > 1` each bit is a majority
/// vote over its copies, ties broken by bit `i` of `H(pkh || "tie" || le16(i))`.
pub fn original_msg(mp: &MsgPoly, ps: &ParamSet, pkh: &[u8; SEED_BYTES]) -> Message {
    let len_k = ps.len_k as usize;
    let b = ps.b as usize;
    let repeat = ps.repeat;
    let mut votes = vec![0u32; len_k];
    for (i, &c) in mp.coeffs.iter().enumerate() {
        for j in 0..b {
            votes[(b * i + j) % len_k] += (c >> j) & 1;
        }
    }
    let mut msg = [0u8; SEED_BYTES];
    for (i, &v) in votes.iter().enumerate() {
        let bit = if repeat == 1 {
            v
        } else {
            let twice = 2 * v;
            let majority = (twice > repeat) as u32;
            let tie = (twice == repeat) as u32;
            let coin = tie_coin(pkh, i);
            majority | (tie & coin)
        };
        msg[i / 8] |= (bit as u8) << (i % 8);
    }
    msg
}

fn tie_coin(pkh: &[u8; SEED_BYTES], index: usize) -> u32 {
    let h = hash_h_parts(&[pkh, b"tie", &(index as u16).to_le_bytes()]);
    (h[0] & 1) as u32
}

/// Packs `bits`-wide values LSB-first into `ceil(len * bits / 8)` bytes.
pub fn pack_poly(coeffs: &[u32], bits: u32) -> Vec<u8> {
    let mut out = Vec::with_capacity((coeffs.len() * bits as usize).div_ceil(8));
    let mut acc: u64 = 0;
    let mut acc_bits = 0;
    for &c in coeffs {
        debug_assert!(c < 1 << bits);
        acc |= (c as u64) << acc_bits;
        acc_bits += bits;
        while acc_bits >= 8 {
            out.push(acc as u8);
            acc >>= 8;
            acc_bits -= 8;
        }
    }
    if acc_bits > 0 {
        out.push(acc as u8);
    }
    out
}

/// Inverse of [`pack_poly`]. Rejects nonzero trailing padding.
pub fn unpack_poly(bytes: &[u8], bits: u32, n: usize) -> Result<Vec<u32>> {
    let expected = (n * bits as usize).div_ceil(8);
    if bytes.len() != expected {
        return Err(Error::Length {
            what: "packed polynomial",
            expected,
            actual: bytes.len(),
        });
    }
    let mask = (1u64 << bits) - 1;
    let mut out = Vec::with_capacity(n);
    let mut acc: u64 = 0;
    let mut acc_bits = 0;
    let mut iter = bytes.iter();
    for _ in 0..n {
        while acc_bits < bits {
            acc |= (*iter.next().unwrap() as u64) << acc_bits;
            acc_bits += 8;
        }
        out.push((acc & mask) as u32);
        acc >>= bits;
        acc_bits -= bits;
    }
    if acc != 0 {
        return Err(Error::Padding("packed polynomial"));
    }
    Ok(out)
}

fn poly_bytes(ps: &ParamSet, bits: u32) -> usize {
    (ps.n * bits as usize).div_ceil(8)
}

fn unpack_vec(
    bytes: &[u8],
    bits: u32,
    ps: &ParamSet,
    bound: Option<u32>,
    what: &'static str,
) -> Result<PolyVec> {
    let step = poly_bytes(ps, bits);
    let polys = bytes
        .chunks(step)
        .map(|chunk| {
            let coeffs = unpack_poly(chunk, bits, ps.n)?;
            if let Some(q) = bound {
                if coeffs.iter().any(|&c| c >= q) {
                    return Err(Error::Coefficient(what));
                }
            }
            Ok(Poly::from_coeffs(coeffs))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(polys.into())
}

fn check_len(what: &'static str, bytes: &[u8], expected: usize) -> Result<()> {
    if bytes.len() != expected {
        return Err(Error::Length {
            what,
            expected,
            actual: bytes.len(),
        });
    }
    Ok(())
}

/// `seed_A || pack(b̂[0], log_q) || ... || pack(b̂[ℓ-1], log_q)`.
pub fn serialize_pk(pk: &PkePublicKey, ps: &ParamSet) -> Vec<u8> {
    let mut out = Vec::with_capacity(ps.sizes().pk_bytes);
    out.extend_from_slice(&pk.seed_a);
    for p in &pk.b_hat.polys {
        out.extend(pack_poly(&p.coeffs, ps.log_q));
    }
    out
}

pub fn deserialize_pk(bytes: &[u8], ps: &ParamSet) -> Result<PkePublicKey> {
    check_len("public key", bytes, ps.sizes().pk_bytes)?;
    let (seed, rest) = bytes.split_at(SEED_BYTES);
    Ok(PkePublicKey {
        seed_a: seed.try_into().unwrap(),
        b_hat: unpack_vec(rest, ps.log_q, ps, Some(ps.q), "public key")?,
    })
}

/// `pack(ŝ) || z || pkh || pk`.
pub fn serialize_sk(sk: &KemSecretKey, ps: &ParamSet) -> Vec<u8> {
    let mut out = Vec::with_capacity(ps.sizes().sk_bytes);
    for p in &sk.pke.s_hat.polys {
        out.extend(pack_poly(&p.coeffs, ps.log_q));
    }
    out.extend_from_slice(&sk.z);
    out.extend_from_slice(&sk.pkh);
    out.extend(serialize_pk(&sk.pk, ps));
    out
}

/// Parses a secret key. The stored `pkh` must equal `H(pk)`.
pub fn deserialize_sk(bytes: &[u8], ps: &ParamSet) -> Result<KemSecretKey> {
    check_len("secret key", bytes, ps.sizes().sk_bytes)?;
    let s_len = ps.ell * poly_bytes(ps, ps.log_q);
    let (s_bytes, rest) = bytes.split_at(s_len);
    let (z, rest) = rest.split_at(SEED_BYTES);
    let (pkh, pk_bytes) = rest.split_at(SEED_BYTES);
    let s_hat = unpack_vec(s_bytes, ps.log_q, ps, Some(ps.q), "secret key")?;
    let pk = deserialize_pk(pk_bytes, ps)?;
    let sk = KemSecretKey {
        pke: PkeSecretKey { s_hat },
        z: z.try_into().unwrap(),
        pkh: pkh.try_into().unwrap(),
        pk,
    };
    if crate::ascon::hash_h(pk_bytes) != sk.pkh {
        return Err(Error::Integrity(
            "secret key: stored public-key hash does not match",
        ));
    }
    Ok(sk)
}

/// `pack(u[0], log_p) || ... || pack(v, log_t + B)`.
pub fn serialize_ct(ct: &Ciphertext, ps: &ParamSet) -> Vec<u8> {
    let mut out = Vec::with_capacity(ps.sizes().ct_bytes);
    for p in &ct.u.polys {
        out.extend(pack_poly(&p.coeffs, ps.log_p));
    }
    out.extend(pack_poly(&ct.v.coeffs, ps.log_v()));
    out
}

pub fn deserialize_ct(bytes: &[u8], ps: &ParamSet) -> Result<Ciphertext> {
    let sizes = ps.sizes();
    check_len("ciphertext", bytes, sizes.ct_bytes)?;
    let (u_bytes, v_bytes) = bytes.split_at(sizes.u_bytes);
    let u = unpack_vec(u_bytes, ps.log_p, ps, None, "ciphertext")?;
    let v = Poly::from_coeffs(unpack_poly(v_bytes, ps.log_v(), ps.n)?);
    Ok(Ciphertext { u, v })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::ParamName;
    use proptest::prelude::*;

    const F: Field = Field::new(7681);

    fn centered_diff(q: u32, a: u32, b: u32) -> i64 {
        let d = (a as i64 - b as i64).rem_euclid(q as i64);
        if d > q as i64 / 2 {
            d - q as i64
        } else {
            d
        }
    }

    #[test]
    fn compress_examples() {
        assert_eq!(compress_coeff(&F, 0, 10), 0);
        assert_eq!(compress_coeff(&F, 3840, 10), 512);
        assert_eq!(compress_coeff(&F, 7680, 10), 0);
        assert_eq!(decompress_coeff(&F, 0, 10), 0);
        assert_eq!(decompress_coeff(&F, 512, 10), 3841);
        assert_eq!(decompress_coeff(&F, 16, 5), 3841);
    }

    #[test]
    fn compress_matches_rounding_oracle() {
        // round(2^d x / q) mod 2^d with exact rationals
        for q in [3329u32, 7681, 31873] {
            let f = Field::new(q);
            for d in [1u32, 2, 5, 10, 12] {
                for x in 0..q {
                    let num = (x as u64) << d;
                    let rounded = (2 * num + q as u64) / (2 * q as u64);
                    assert_eq!(compress_coeff(&f, x, d) as u64, rounded % (1 << d));
                }
            }
        }
    }

    #[test]
    fn encode_decode_examples() {
        assert_eq!(encode_coeff(&F, 0, 2), 0);
        assert_eq!(decode_coeff(&F, 0, 2), 0);
        assert_eq!(encode_coeff(&F, 1, 2), 1920);
        assert_eq!(encode_coeff(&F, 3, 2), (7681 * 3 + 2) >> 2);
        for m in 0..4 {
            for delta in -959i32..=959 {
                let x = F.from_signed(encode_coeff(&F, m, 2) as i32 + delta);
                assert_eq!(decode_coeff(&F, x, 2), m, "m = {m}, delta = {delta}");
            }
        }
    }

    #[test]
    fn compression_error_bound() {
        for name in ParamName::ALL {
            let ps = ParamSet::get(name);
            let f = Field::new(ps.q);
            for d in [ps.log_p, ps.log_v()] {
                let bound = (ps.q as u64).div_ceil(1 << (d + 1)) as i64;
                for x in 0..ps.q {
                    let y = decompress_coeff(&f, compress_coeff(&f, x, d), d);
                    assert!(centered_diff(ps.q, x, y).abs() <= bound);
                }
            }
        }
    }

    #[test]
    fn arrange_examples() {
        let ps = ParamSet::get(ParamName::Poly64);
        assert!(arrange_msg(&[0; 16], ps).coeffs.iter().all(|&c| c == 0));
        let mut msg = [0u8; 16];
        msg[0] = 0b0000_0110;
        let mp = arrange_msg(&msg, ps);
        assert_eq!(&mp.coeffs[..4], &[2, 1, 0, 0]);
        assert!(mp.coeffs[4..].iter().all(|&c| c == 0));
        let ps128 = ParamSet::get(ParamName::Poly128);
        assert_eq!(&arrange_msg(&msg, ps128).coeffs[..4], &[0, 1, 1, 0]);
    }

    fn repeat3_params() -> ParamSet {
        let mut ps = ParamSet::new(ParamName::Poly64).unwrap();
        ps.n = 128;
        ps.b = 3;
        ps.repeat = 3;
        ps.zeta = crate::params::smallest_primitive_root(7681, 256).unwrap();
        ps.validate().unwrap();
        ps
    }

    #[test]
    fn repeat_majority_vote_corrects_single_flips() {
        let ps = repeat3_params();
        let msg: Message = core::array::from_fn(|i| (i * 37 + 11) as u8);
        let pkh = [0u8; 16];
        let mut mp = arrange_msg(&msg, &ps);
        assert_eq!(original_msg(&mp, &ps, &pkh), msg);
        // flip one copy of every bit: copies of bit k live at k, k + 128, k + 256
        for k in 0..128usize {
            let pos = k + 128 * (k % 3);
            mp.coeffs[pos / 3] ^= 1 << (pos % 3);
        }
        assert_eq!(original_msg(&mp, &ps, &pkh), msg);
    }

    #[test]
    fn repeat_ties_are_deterministic() {
        let mut ps = repeat3_params();
        ps.b = 4;
        ps.repeat = 4;
        ps.validate().unwrap();
        // coefficient i holds bits 4i..4i+4; with len_K = 128 copies of bit k
        // are at k, k + 128, k + 256, k + 384. Set two copies of each bit.
        let mp = MsgPoly {
            coeffs: (0..128).map(|i| if i < 64 { 0xf } else { 0 }).collect(),
        };
        let a = original_msg(&mp, &ps, &[1u8; 16]);
        assert_eq!(a, original_msg(&mp, &ps, &[1u8; 16]));
        let expected: Message = core::array::from_fn(|byte| {
            (0..8).fold(0u8, |acc, bit| {
                acc | (tie_coin(&[1u8; 16], byte * 8 + bit) as u8) << bit
            })
        });
        assert_eq!(a, expected);
    }

    #[test]
    fn pack_sizes_and_padding() {
        assert_eq!(pack_poly(&[0; 64], 13), vec![0u8; 104]);
        assert_eq!(pack_poly(&[1, 2, 3], 5).len(), 2);
        assert!(matches!(
            unpack_poly(&[0xff, 0xff], 5, 3),
            Err(Error::Padding(_))
        ));
        assert_eq!(unpack_poly(&[0xff, 0x7f], 5, 3).unwrap(), vec![31, 31, 31]);
        assert!(matches!(
            unpack_poly(&[0; 3], 5, 3),
            Err(Error::Length { .. })
        ));
    }

    proptest! {
        #[test]
        fn pack_roundtrip(bits in 1u32..=16, raw in prop::collection::vec(any::<u32>(), 1..200)) {
            let coeffs: Vec<u32> = raw.iter().map(|c| c & ((1 << bits) - 1)).collect();
            let packed = pack_poly(&coeffs, bits);
            prop_assert_eq!(packed.len(), (coeffs.len() * bits as usize).div_ceil(8));
            prop_assert_eq!(unpack_poly(&packed, bits, coeffs.len()).unwrap(), coeffs);
        }

        #[test]
        fn arrange_roundtrip(msg in any::<[u8; 16]>(), pi in 0usize..3) {
            let ps = ParamSet::get(ParamName::ALL[pi]);
            let mp = arrange_msg(&msg, ps);
            prop_assert!(mp.coeffs.iter().all(|&c| c < 1 << ps.b));
            prop_assert_eq!(original_msg(&mp, ps, &[0; 16]), msg);
        }
    }
}
