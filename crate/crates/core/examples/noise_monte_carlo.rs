//! Measures decryption noise empirically and compares it with the exact PMF.
//!
//!     cargo run --release --example noise_monte_carlo -- [samples] [params]

use std::time::Instant;

use rudraksh::analysis::{noise_distribution, sample_noise};
use rudraksh::ntt::Ring;
use rudraksh::{ParamName, ParamSet};

fn main() -> rudraksh::Result<()> {
    let mut args = std::env::args().skip(1);
    let samples: u64 = args
        .next()
        .map(|s| s.parse().expect("sample count"))
        .unwrap_or(1_000_000);
    let sets = match args.next() {
        Some(s) => vec![s.parse::<ParamName>()?],
        None => ParamName::ALL.to_vec(),
    };

    for name in sets {
        let ps = ParamSet::get(name);
        let model = noise_distribution(ps)?;
        let t = Instant::now();
        let mc = sample_noise(ps, Ring::get(name), samples, 16, 0xC0FFEE);
        let n = mc.count as f64;
        let se_mean = (model.variance() / n).sqrt();
        println!(
            "{} ({} samples, {:.1} s)",
            ps.name.label(),
            mc.count,
            t.elapsed().as_secs_f64()
        );
        println!(
            "  mean      model {:>10.4}  observed {:>10.4}  ({:+.2} se)",
            model.mean(),
            mc.mean(),
            (mc.mean() - model.mean()) / se_mean
        );
        println!(
            "  variance  model {:>10.2}  observed {:>10.2}  ratio {:.5}",
            model.variance(),
            mc.variance(),
            mc.variance() / model.variance()
        );
        println!(
            "  max |noise| observed {} vs decode threshold {}",
            mc.max_abs,
            ps.q >> (ps.b + 1)
        );
    }
    Ok(())
}
