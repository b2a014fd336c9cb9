//! Ascon-Xof digests and the keyed PRF built on it.
//!
//! ```text
//! cargo run --release --example ascon_xof -- "some input"
//! ```

use rudraksh::ascon::{hash_g, hash_h, prf, xof, XofState};

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

fn main() {
    let input = std::env::args().nth(1).unwrap_or_default();
    println!("xof(\"{input}\", 32) = {}", hex(&xof(input.as_bytes(), 32)));
    println!("xof(\"{input}\", 64) = {}", hex(&xof(input.as_bytes(), 64)));

    // streaming absorption gives the same digest as one-shot
    let mut st = XofState::new();
    for chunk in input.as_bytes().chunks(3) {
        st.absorb(chunk);
    }
    let streamed: Vec<u8> = st.take(32).collect();
    assert_eq!(streamed, xof(input.as_bytes(), 32));

    println!("H = {}", hex(&hash_h(input.as_bytes())));
    let (k, r) = hash_g(input.as_bytes());
    println!("G = ({}, {})", hex(&k), hex(&r));
    println!("PRF(0^16, [0]) = {}", hex(&prf(&[0; 16], &[0], 24)));
}
