//! Storage estimate for each set next to Kyber and NewHope style designs.
//!
//! ```text
//! cargo run --release --example memory_model
//! ```

use rudraksh::analysis::{memory_estimate, ASCON_STATE_BITS, KYBER512, NEWHOPE512};
use rudraksh::{ParamName, ParamSet};

fn main() {
    let mut rows: Vec<(String, u64)> = ParamName::ALL
        .iter()
        .map(|&name| {
            let ps = ParamSet::get(name);
            (
                ps.name.label().to_string(),
                memory_estimate(ps, ASCON_STATE_BITS),
            )
        })
        .collect();
    for r in [KYBER512, NEWHOPE512] {
        rows.push((r.name.to_string(), r.memory_bits()));
    }
    rows.sort_by_key(|r| r.1);
    for (name, bits) in &rows {
        println!(
            "{name:<14} {bits:>7} bits  ({:.2} KiB)",
            *bits as f64 / 8192.0
        );
    }
}
