//! Multiplier-free reduction modulo 7681, checked exhaustively over every
//! product of two residues.
//!
//! ```text
//! cargo run --release --example shift_add_reduction
//! ```

use std::time::Instant;

use rudraksh::field::{barrett_constant, reduce_barrett, reduce_shift_add};

fn main() {
    for c in [0u32, 7681, 123456, 58_982_400] {
        println!("reduce_shift_add({c}) = {}", reduce_shift_add(c));
    }
    let m = barrett_constant(3329);
    println!(
        "reduce_barrett(123456, 3329) = {} (m = {m})",
        reduce_barrett(123456, 3329, m)
    );

    let t = Instant::now();
    let max = 7680u32 * 7680;
    let mismatches = (0..=max)
        .filter(|&c| reduce_shift_add(c) != c % 7681)
        .count();
    println!(
        "exhaustive sweep of [0, {max}]: {mismatches} mismatches in {:.2} s",
        t.elapsed().as_secs_f64()
    );
}
