//! Negacyclic multiplication through the NTT, checked against the schoolbook
//! product.
//!
//! ```text
//! cargo run --release --example ntt_multiply
//! ```

use rudraksh::ntt::{Poly, Ring};
use rudraksh::{ParamName, ParamSet};

fn schoolbook(a: &[u32], b: &[u32], q: u32) -> Vec<u32> {
    let n = a.len();
    let q = q as u64;
    let mut out = vec![0u64; n];
    for i in 0..n {
        for j in 0..n {
            let p = a[i] as u64 * b[j] as u64 % q;
            let k = (i + j) % n;
            out[k] = if i + j < n {
                (out[k] + p) % q
            } else {
                (out[k] + q - p) % q
            };
        }
    }
    out.into_iter().map(|c| c as u32).collect()
}

fn main() {
    for name in ParamName::ALL {
        let ps = ParamSet::get(name);
        let ring = Ring::get(name);
        let a = Poly::from_coeffs((0..ps.n as u32).map(|i| (i * i + 3) % ps.q).collect());
        let b = Poly::from_coeffs((0..ps.n as u32).map(|i| (7 * i + 1) % ps.q).collect());

        let fast = ring.poly_mul(&a, &b);
        let slow = schoolbook(&a.coeffs, &b.coeffs, ps.q);
        println!(
            "{}: n={} q={} zeta={} butterflies/transform={} match={}",
            ps.name.label(),
            ps.n,
            ps.q,
            ps.zeta,
            ring.butterflies(),
            fast.coeffs == slow
        );

        // x^(n-1) * x = -1 in the negacyclic ring
        let wrap = ring.poly_mul(
            &Poly::monomial(ps.n, ps.n - 1, 1),
            &Poly::monomial(ps.n, 1, 1),
        );
        println!("  x^(n-1) * x = {} (q-1 = {})", wrap.coeffs[0], ps.q - 1);
        assert_eq!(ring.intt(&ring.ntt(&a)), a);
    }
}
