//! Key generation, encapsulation and decapsulation for every parameter set,
//! with the serialized sizes.
//!
//! ```text
//! cargo run --release --example kem_roundtrip
//! ```

use rudraksh::codec::{serialize_ct, serialize_pk, serialize_sk};
use rudraksh::{Kem, ParamName};

fn main() {
    for name in ParamName::ALL {
        let kem = Kem::new(name);
        let ps = kem.params();

        // Fixed coins keep the output reproducible; real callers use an OS RNG.
        let mut coins = [0u8; 48];
        for (i, c) in coins.iter_mut().enumerate() {
            *c = i as u8;
        }
        let (pk, sk) = kem.keygen(&coins);
        let (ct, k_sender) = kem.encaps(&pk, &[0xA5; 16]);
        let k_receiver = kem.decaps(&sk, &ct);
        assert_eq!(k_sender, k_receiver);

        let sizes = ps.sizes();
        println!("{}", ps.name.label());
        println!(
            "  ell={} n={} q={} log_p={} log_t={} B={}",
            ps.ell, ps.n, ps.q, ps.log_p, ps.log_t, ps.b
        );
        println!(
            "  pk {} B, sk {} B, ct {} B (u {} + v {})",
            serialize_pk(&pk, ps).len(),
            serialize_sk(&sk, ps).len(),
            serialize_ct(&ct, ps).len(),
            sizes.u_bytes,
            sizes.v_bytes
        );
        println!("  shared key {}", hex(k_sender.as_bytes()));
    }
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}
