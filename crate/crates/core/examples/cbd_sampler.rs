//! Empirical histogram of the secret sampler and the acceptance rate of the
//! uniform rejection sampler.
//!
//! ```text
//! cargo run --release --example cbd_sampler
//! ```

use rudraksh::analysis::cbd_dist;
use rudraksh::sampling::{sample_cbd_poly, sample_uniform_counted};
use rudraksh::{ParamName, ParamSet};

fn main() {
    let ps = ParamSet::get(ParamName::Poly64);
    let exact = cbd_dist(ps.eta1);
    let mut counts = [0u64; 5];
    let mut total = 0u64;
    for seed in 0..2000u32 {
        let mut s = [0u8; 16];
        s[..4].copy_from_slice(&seed.to_le_bytes());
        for nonce in 0..8 {
            for &c in &sample_cbd_poly(&s, nonce, ps.eta1, ps).coeffs {
                let v = if c > ps.q / 2 {
                    c as i64 - ps.q as i64
                } else {
                    c as i64
                };
                counts[(v + 2) as usize] += 1;
                total += 1;
            }
        }
    }
    println!("CBD eta={} over {total} samples", ps.eta1);
    for v in -2i64..=2 {
        println!(
            "  {v:>2}: observed {:.5}  exact {:.5}",
            counts[(v + 2) as usize] as f64 / total as f64,
            exact.prob(v).to_f64()
        );
    }

    for name in ParamName::ALL {
        let ps = ParamSet::get(name);
        let (mut accepted, mut drawn) = (0u64, 0u64);
        for i in 0..ps.ell {
            for j in 0..ps.ell {
                let d = sample_uniform_counted(&[3; 16], i as u8, j as u8, ps);
                accepted += ps.n as u64;
                drawn += d.chunks as u64;
            }
        }
        println!(
            "{}: acceptance {:.4} (q / 2^{} = {:.4})",
            ps.name.label(),
            accepted as f64 / drawn as f64,
            ps.log_q,
            ps.q as f64 / (1u64 << ps.log_q) as f64
        );
    }
}
