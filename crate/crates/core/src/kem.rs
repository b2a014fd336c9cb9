//! IND-CCA KEM via the Fujisaki-Okamoto transform with implicit rejection.
//!
//! The shared key is derived from `H(pk)` and the message only; the
//! ciphertext enters the key schedule solely on the rejection path.

use std::fmt;

use subtle::{ConditionallySelectable, ConstantTimeEq};
use zeroize::Zeroize;

use crate::ascon::{hash_g_parts, hash_h, hash_h_parts};
use crate::codec::{arrange_msg, original_msg, serialize_ct, serialize_pk, Message};
use crate::ntt::Ring;
use crate::params::{ParamName, ParamSet, SEED_BYTES};
use crate::pke::{pke_dec, pke_enc, pke_keygen, Ciphertext, PkePublicKey, PkeSecretKey};

/// Bytes of randomness consumed by key generation: `seed_A || seed_se || z`.
pub const KEYGEN_COINS: usize = 3 * SEED_BYTES;
/// Bytes of randomness consumed by encapsulation (the message).
pub const ENCAPS_COINS: usize = SEED_BYTES;

pub type PublicKey = PkePublicKey;

#[derive(Clone, PartialEq, Eq)]
pub struct KemSecretKey {
    pub pke: PkeSecretKey,
    /// Rejection secret.
    pub z: [u8; SEED_BYTES],
    /// `H(serialize(pk))`.
    pub pkh: [u8; SEED_BYTES],
    pub pk: PkePublicKey,
}

impl fmt::Debug for KemSecretKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("KemSecretKey")
            .field("pkh", &hex::encode(self.pkh))
            .finish_non_exhaustive()
    }
}

impl Drop for KemSecretKey {
    fn drop(&mut self) {
        self.z.zeroize();
        for p in &mut self.pke.s_hat.polys {
            p.coeffs.zeroize();
        }
    }
}

/// A 128-bit shared secret.
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct SharedKey(pub [u8; SEED_BYTES]);

impl SharedKey {
    pub fn as_bytes(&self) -> &[u8; SEED_BYTES] {
        &self.0
    }
}

impl fmt::Debug for SharedKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SharedKey({})", hex::encode(self.0))
    }
}

/// Which branch decapsulation took.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecapsOutcome {
    Accepted,
    Rejected,
}

/// The KEM bound to one parameter set.
#[derive(Clone, Copy, Debug)]
pub struct Kem {
    ps: &'static ParamSet,
    ring: &'static Ring,
}

impl Kem {
    pub fn new(name: ParamName) -> Self {
        Kem {
            ps: ParamSet::get(name),
            ring: Ring::get(name),
        }
    }

    pub fn params(&self) -> &'static ParamSet {
        self.ps
    }

    pub fn ring(&self) -> &'static Ring {
        self.ring
    }

    pub fn keygen(&self, coins: &[u8; KEYGEN_COINS]) -> (PublicKey, KemSecretKey) {
        let seed_a: [u8; SEED_BYTES] = coins[..16].try_into().unwrap();
        let seed_se: [u8; SEED_BYTES] = coins[16..32].try_into().unwrap();
        let z: [u8; SEED_BYTES] = coins[32..].try_into().unwrap();
        let (pk, pke) = pke_keygen(&seed_a, &seed_se, self.ps, self.ring);
        let pkh = hash_h(&serialize_pk(&pk, self.ps));
        let sk = KemSecretKey {
            pke,
            z,
            pkh,
            pk: pk.clone(),
        };
        (pk, sk)
    }

    /// Encapsulates to `pk` using `msg` as the secret message.
    pub fn encaps(&self, pk: &PublicKey, msg: &Message) -> (Ciphertext, SharedKey) {
        let pkh = hash_h(&serialize_pk(pk, self.ps));
        let (k, r) = hash_g_parts(&[&pkh, msg]);
        let c = pke_enc(pk, &arrange_msg(msg, self.ps), &r, self.ps, self.ring);
        (c, SharedKey(k))
    }

    pub fn decaps(&self, sk: &KemSecretKey, c: &Ciphertext) -> SharedKey {
        self.decaps_with_outcome(sk, c).0
    }

    /// Decapsulation that also reports the branch taken. The selection is
    /// constant time; the outcome is exposed only for diagnostics.
    pub fn decaps_with_outcome(
        &self,
        sk: &KemSecretKey,
        c: &Ciphertext,
    ) -> (SharedKey, DecapsOutcome) {
        let ps = self.ps;
        let m_prime = pke_dec(&sk.pke, c, ps, self.ring);
        let msg = original_msg(&m_prime, ps, &sk.pkh);
        let (k_prime, r_prime) = hash_g_parts(&[&sk.pkh, &msg]);
        let m_again = arrange_msg(&msg, ps);
        debug_assert!(ps.repeat != 1 || m_again == m_prime);
        let c_star = pke_enc(&sk.pk, &m_again, &r_prime, ps, self.ring);

        let c_bytes = serialize_ct(c, ps);
        let c_star_bytes = serialize_ct(&c_star, ps);
        let k_reject = hash_h_parts(&[&c_bytes, &sk.z]);
        let equal = c_bytes.ct_eq(&c_star_bytes);

        let mut out = [0u8; SEED_BYTES];
        for (o, (&good, &bad)) in out.iter_mut().zip(k_prime.iter().zip(&k_reject)) {
            *o = u8::conditional_select(&bad, &good, equal);
        }
        let outcome = if bool::from(equal) {
            DecapsOutcome::Accepted
        } else {
            DecapsOutcome::Rejected
        };
        (SharedKey(out), outcome)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::{deserialize_ct, deserialize_pk, deserialize_sk, serialize_sk};

    fn coins(tag: u8) -> [u8; KEYGEN_COINS] {
        core::array::from_fn(|i| tag.wrapping_mul(31).wrapping_add(i as u8))
    }

    #[test]
    fn roundtrip_and_sizes() {
        for name in ParamName::ALL {
            let kem = Kem::new(name);
            let ps = kem.params();
            let (pk, sk) = kem.keygen(&coins(1));
            let (c, k) = kem.encaps(&pk, &[7; 16]);
            assert_eq!(
                kem.decaps_with_outcome(&sk, &c),
                (k, DecapsOutcome::Accepted)
            );
            assert_eq!(serialize_pk(&pk, ps).len(), ps.sizes().pk_bytes);
            assert_eq!(serialize_sk(&sk, ps).len(), ps.sizes().sk_bytes);
            assert_eq!(serialize_ct(&c, ps).len(), ps.sizes().ct_bytes);
        }
        let kem = Kem::new(ParamName::Poly64);
        let (pk, sk) = kem.keygen(&coins(2));
        let (c, _) = kem.encaps(&pk, &[1; 16]);
        assert_eq!(
            (
                serialize_pk(&pk, kem.params()).len(),
                serialize_sk(&sk, kem.params()).len(),
                serialize_ct(&c, kem.params()).len()
            ),
            (952, 1920, 760)
        );
    }

    #[test]
    fn pkh_is_consistent() {
        let kem = Kem::new(ParamName::Poly64);
        let (pk, sk) = kem.keygen(&coins(3));
        assert_eq!(sk.pkh, hash_h(&serialize_pk(&pk, kem.params())));
        assert_eq!(sk.pk, pk);
    }

    #[test]
    fn deterministic() {
        let kem = Kem::new(ParamName::Poly128);
        let (pk1, sk1) = kem.keygen(&coins(4));
        let (pk2, sk2) = kem.keygen(&coins(4));
        assert_eq!(pk1, pk2);
        assert_eq!(sk1, sk2);
        assert_eq!(kem.encaps(&pk1, &[9; 16]), kem.encaps(&pk2, &[9; 16]));
    }

    #[test]
    fn tampered_v_rejects_implicitly() {
        let kem = Kem::new(ParamName::Poly64);
        let ps = kem.params();
        let (pk, sk) = kem.keygen(&coins(5));
        let (c, k) = kem.encaps(&pk, &[0xaa; 16]);
        let mut bytes = serialize_ct(&c, ps);
        let last = bytes.len() - 1;
        bytes[last] ^= 0x01;
        let bad = deserialize_ct(&bytes, ps).unwrap();
        let (k_bad, outcome) = kem.decaps_with_outcome(&sk, &bad);
        assert_eq!(outcome, DecapsOutcome::Rejected);
        assert_ne!(k_bad, k);
        assert_eq!(k_bad.0, hash_h_parts(&[&bytes, &sk.z]));
        assert_eq!(kem.decaps(&sk, &bad), k_bad);
    }

    #[test]
    fn wire_roundtrip() {
        let kem = Kem::new(ParamName::Poly32);
        let ps = kem.params();
        let (pk, sk) = kem.keygen(&coins(6));
        let (c, _) = kem.encaps(&pk, &[3; 16]);
        assert_eq!(deserialize_pk(&serialize_pk(&pk, ps), ps).unwrap(), pk);
        assert_eq!(deserialize_sk(&serialize_sk(&sk, ps), ps).unwrap(), sk);
        assert_eq!(deserialize_ct(&serialize_ct(&c, ps), ps).unwrap(), c);
    }

    #[test]
    fn corrupted_sk_hash_is_detected() {
        let kem = Kem::new(ParamName::Poly64);
        let ps = kem.params();
        let (_, sk) = kem.keygen(&coins(7));
        let mut bytes = serialize_sk(&sk, ps);
        bytes[ps.ell * 104 + 16] ^= 1;
        assert!(deserialize_sk(&bytes, ps).is_err());
        assert!(deserialize_sk(&bytes[1..], ps).is_err());
    }
}
