//! IND-CPA public-key encryption underlying the KEM.
//!
//! Key generation stays entirely in the NTT domain: the matrix is sampled
//! there directly, and `b̂` is published without an inverse transform.
//! Matrix entries are generated one at a time, never stored.

use std::borrow::Cow;

use crate::codec::{compress_poly, decode_msg, decompress_poly, encode_msg, MsgPoly};
use crate::ntt::{Poly, PolyVec, Ring};
use crate::params::{ParamSet, SEED_BYTES};
use crate::sampling::{expand_secret_error, matrix_entry, sample_cbd_poly, scalar_error_nonce};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PkePublicKey {
    pub seed_a: [u8; SEED_BYTES],
    /// `Â ∘ ŝ + ê`, NTT domain.
    pub b_hat: PolyVec,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PkeSecretKey {
    /// NTT domain.
    pub s_hat: PolyVec,
}

/// `u` holds `log_p`-bit values, `v` holds `(log_t + B)`-bit values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ciphertext {
    pub u: PolyVec,
    pub v: Poly,
}

/// `Σ_j M[i][j] ∘ x̂[j]` for every row, with entries supplied by `entry`.
fn matrix_vector<'a, F>(ring: &Ring, entry: F, x_hat: &PolyVec, ps: &ParamSet) -> PolyVec
where
    F: Fn(usize, usize) -> Cow<'a, Poly>,
{
    (0..ps.ell)
        .map(|i| {
            let mut acc = vec![0u64; ps.n];
            for (j, x) in x_hat.polys.iter().enumerate() {
                ring.mul_acc_wide(&mut acc, &entry(i, j), x);
            }
            ring.reduce_wide(&acc)
        })
        .collect::<Vec<_>>()
        .into()
}

fn streamed<'a>(
    seed_a: &'a [u8; SEED_BYTES],
    transposed: bool,
    ps: &'a ParamSet,
) -> impl Fn(usize, usize) -> Cow<'a, Poly> + 'a {
    move |i, j| Cow::Owned(matrix_entry(seed_a, i, j, transposed, ps))
}

fn keygen_with<'a, F: Fn(usize, usize) -> Cow<'a, Poly>>(
    entry: F,
    seed_a: &[u8; SEED_BYTES],
    s: &PolyVec,
    e: &PolyVec,
    ps: &ParamSet,
    ring: &Ring,
) -> (PkePublicKey, PkeSecretKey) {
    let s_hat = ring.ntt_vec(s);
    let mut b_hat = matrix_vector(ring, entry, &s_hat, ps);
    for (b, e) in b_hat.polys.iter_mut().zip(&e.polys) {
        ring.add_assign(b, &ring.ntt(e));
    }
    (
        PkePublicKey {
            seed_a: *seed_a,
            b_hat,
        },
        PkeSecretKey { s_hat },
    )
}

fn enc_with<'a, F: Fn(usize, usize) -> Cow<'a, Poly>>(
    entry_t: F,
    pk: &PkePublicKey,
    m: &MsgPoly,
    r: &[u8; SEED_BYTES],
    ps: &ParamSet,
    ring: &Ring,
) -> Ciphertext {
    let field = &ring.field;
    let (s1, e1) = expand_secret_error(r, ps);
    let e2 = sample_cbd_poly(r, scalar_error_nonce(ps), ps.eta2, ps);
    let s1_hat = ring.ntt_vec(&s1);

    let u = matrix_vector(ring, entry_t, &s1_hat, ps)
        .polys
        .iter()
        .zip(&e1.polys)
        .map(|(acc, e)| compress_poly(field, &ring.add(&ring.intt(acc), e), ps.log_p))
        .collect::<Vec<_>>()
        .into();

    let mut c_m = ring.intt(&ring.pwm_acc(&pk.b_hat, &s1_hat));
    ring.add_assign(&mut c_m, &e2);
    ring.add_assign(&mut c_m, &encode_msg(field, m, ps.b));
    let v = compress_poly(field, &c_m, ps.log_v());
    Ciphertext { u, v }
}

/// Key generation from explicit coefficient-domain secret and error vectors.
pub fn pke_keygen_from_noise(
    seed_a: &[u8; SEED_BYTES],
    s: &PolyVec,
    e: &PolyVec,
    ps: &ParamSet,
    ring: &Ring,
) -> (PkePublicKey, PkeSecretKey) {
    keygen_with(streamed(seed_a, false, ps), seed_a, s, e, ps, ring)
}

pub fn pke_keygen(
    seed_a: &[u8; SEED_BYTES],
    seed_se: &[u8; SEED_BYTES],
    ps: &ParamSet,
    ring: &Ring,
) -> (PkePublicKey, PkeSecretKey) {
    let (s, e) = expand_secret_error(seed_se, ps);
    pke_keygen_from_noise(seed_a, &s, &e, ps, ring)
}

/// Encrypts `m` with coins `r`.
pub fn pke_enc(
    pk: &PkePublicKey,
    m: &MsgPoly,
    r: &[u8; SEED_BYTES],
    ps: &ParamSet,
    ring: &Ring,
) -> Ciphertext {
    enc_with(streamed(&pk.seed_a, true, ps), pk, m, r, ps, ring)
}

/// Same as [`pke_keygen`] but reads `A` from `a`, which must equal
/// `gen_matrix(seed_a, false, ps)`. Used when many keys share one matrix.
pub fn pke_keygen_expanded(
    a: &[Vec<Poly>],
    seed_a: &[u8; SEED_BYTES],
    seed_se: &[u8; SEED_BYTES],
    ps: &ParamSet,
    ring: &Ring,
) -> (PkePublicKey, PkeSecretKey) {
    let (s, e) = expand_secret_error(seed_se, ps);
    keygen_with(|i, j| Cow::Borrowed(&a[i][j]), seed_a, &s, &e, ps, ring)
}

/// Same as [`pke_enc`] with `a = gen_matrix(pk.seed_a, false, ps)`.
pub fn pke_enc_expanded(
    a: &[Vec<Poly>],
    pk: &PkePublicKey,
    m: &MsgPoly,
    r: &[u8; SEED_BYTES],
    ps: &ParamSet,
    ring: &Ring,
) -> Ciphertext {
    enc_with(|i, j| Cow::Borrowed(&a[j][i]), pk, m, r, ps, ring)
}

/// `v' - INTT(NTT(u')^T ∘ ŝ)`: the message polynomial before decoding.
pub fn pke_dec_raw(sk: &PkeSecretKey, c: &Ciphertext, ps: &ParamSet, ring: &Ring) -> Poly {
    let field = &ring.field;
    let u_hat: PolyVec =
        c.u.polys
            .iter()
            .map(|u| ring.ntt(&decompress_poly(field, u, ps.log_p)))
            .collect::<Vec<_>>()
            .into();
    let v = decompress_poly(field, &c.v, ps.log_v());
    ring.sub(&v, &ring.intt(&ring.pwm_acc(&u_hat, &sk.s_hat)))
}

pub fn pke_dec(sk: &PkeSecretKey, c: &Ciphertext, ps: &ParamSet, ring: &Ring) -> MsgPoly {
    decode_msg(&ring.field, &pke_dec_raw(sk, c, ps, ring), ps.b)
}

/// Per-coefficient decryption noise `m'' - Encode(m)`, centered.
pub fn decryption_noise(
    sk: &PkeSecretKey,
    c: &Ciphertext,
    m: &MsgPoly,
    ps: &ParamSet,
    ring: &Ring,
) -> Vec<i32> {
    let field = &ring.field;
    let raw = pke_dec_raw(sk, c, ps, ring);
    let enc = encode_msg(field, m, ps.b);
    raw.coeffs
        .iter()
        .zip(&enc.coeffs)
        .map(|(&x, &y)| field.centered(field.sub(x, y)))
        .collect()
}
