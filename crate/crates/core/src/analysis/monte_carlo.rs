use crate::ascon::xof;
use crate::codec::arrange_msg;
use crate::ntt::Ring;
use crate::params::{ParamSet, SEED_BYTES};
use crate::pke::{decryption_noise, pke_enc_expanded, pke_keygen_expanded};
use crate::sampling::gen_matrix;

/// Running moments of observed decryption noise.
#[derive(Clone, Debug, Default)]
pub struct NoiseSample {
    pub count: u64,
    pub sum: i128,
    pub sum_sq: i128,
    pub max_abs: u32,
}

impl NoiseSample {
    pub fn push(&mut self, v: i32) {
        self.count += 1;
        self.sum += v as i128;
        self.sum_sq += (v as i128) * (v as i128);
        self.max_abs = self.max_abs.max(v.unsigned_abs());
    }

    pub fn mean(&self) -> f64 {
        self.sum as f64 / self.count as f64
    }

    /// Population variance.
    pub fn variance(&self) -> f64 {
        let n = self.count as f64;
        let m = self.sum as f64 / n;
        self.sum_sq as f64 / n - m * m
    }
}

/// Encrypts and decrypts random messages and records the per-coefficient
/// noise until at least `samples` values are collected. A fresh key pair and
/// fresh coins are used for every encryption; the public matrix is renewed
/// every `keys_per_matrix` keys. All randomness is derived from `seed`.
pub fn sample_noise(
    ps: &ParamSet,
    ring: &Ring,
    samples: u64,
    keys_per_matrix: u32,
    seed: u64,
) -> NoiseSample {
    let keys_per_matrix = keys_per_matrix.max(1) as u64;
    let mut out = NoiseSample::default();
    let mut a = Vec::new();
    let mut seed_a = [0u8; SEED_BYTES];
    let mut trial = 0u64;
    while out.count < samples {
        let mut input = seed.to_le_bytes().to_vec();
        input.extend_from_slice(&trial.to_le_bytes());
        let coins = xof(&input, 64);
        if trial.is_multiple_of(keys_per_matrix) {
            seed_a.copy_from_slice(&coins[..16]);
            a = gen_matrix(&seed_a, false, ps);
        }
        let seed_se: [u8; SEED_BYTES] = coins[16..32].try_into().unwrap();
        let r: [u8; SEED_BYTES] = coins[32..48].try_into().unwrap();
        let msg: [u8; 16] = coins[48..64].try_into().unwrap();

        let (pk, sk) = pke_keygen_expanded(&a, &seed_a, &seed_se, ps, ring);
        let m = arrange_msg(&msg, ps);
        let c = pke_enc_expanded(&a, &pk, &m, &r, ps, ring);
        for v in decryption_noise(&sk, &c, &m, ps, ring) {
            out.push(v);
        }
        trial += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::noise_distribution;
    use crate::params::ParamName;

    #[test]
    fn moments_of_known_values() {
        let mut s = NoiseSample::default();
        for v in [-2, 0, 2, 4] {
            s.push(v);
        }
        assert_eq!(s.mean(), 1.0);
        assert_eq!(s.variance(), 5.0);
        assert_eq!(s.max_abs, 4);
    }

    #[test]
    fn small_run_is_consistent_with_model() {
        let name = ParamName::Poly128;
        let ps = ParamSet::get(name);
        let model = noise_distribution(ps).unwrap();
        let s = sample_noise(ps, Ring::get(name), 20_000, 8, 1);
        assert!(s.count >= 20_000);
        let sd = model.variance().sqrt();
        assert!((s.mean() - model.mean()).abs() < 5.0 * sd / (s.count as f64).sqrt());
        assert!((s.variance() / model.variance() - 1.0).abs() < 0.1);
    }
}
