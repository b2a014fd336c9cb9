//! Tampered ciphertexts decapsulate to `H(c' || z)` instead of an error.
//!
//! ```text
//! cargo run --release --example implicit_rejection
//! ```

use rudraksh::ascon::hash_h_parts;
use rudraksh::codec::{deserialize_ct, serialize_ct};
use rudraksh::kem::DecapsOutcome;
use rudraksh::{Kem, ParamName};

fn main() -> rudraksh::Result<()> {
    let kem = Kem::new(ParamName::Poly64);
    let ps = kem.params();
    let (pk, sk) = kem.keygen(&[7; 48]);
    let (ct, honest) = kem.encaps(&pk, &[1; 16]);
    let bytes = serialize_ct(&ct, ps);

    for (pos, mask) in [(0usize, 0x01u8), (100, 0x80), (bytes.len() - 1, 0x10)] {
        let mut tampered = bytes.clone();
        tampered[pos] ^= mask;
        let Ok(ct2) = deserialize_ct(&tampered, ps) else {
            println!("byte {pos} ^ {mask:#04x}: rejected by the decoder");
            continue;
        };
        let (key, outcome) = kem.decaps_with_outcome(&sk, &ct2);
        let expected = hash_h_parts(&[&serialize_ct(&ct2, ps), &sk.z]);
        println!(
            "byte {pos:>3} ^ {mask:#04x}: {outcome:?}, key == H(c'||z): {}, key == honest: {}",
            key.as_bytes() == &expected,
            key == honest
        );
        assert_eq!(outcome, DecapsOutcome::Rejected);
    }
    Ok(())
}
