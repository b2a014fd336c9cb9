//! Decryption-failure analysis and the resource model used to pick a
//! parameter set.
//!
//! The per-coefficient noise is
//! `e^T s' - s^T (e' - Δu) + e'' - Δv`, where `Δ` is the rounding error of a
//! compress/decompress roundtrip. Its PMF is built by exact convolution; a
//! message coefficient fails when `|noise| > q / 2^(B+1)`, and the scheme
//! fails by a union bound over the message-carrying coefficients.

mod dd;
mod dist;
mod monte_carlo;

use std::fmt::Write as _;

pub use dd::Dd;
pub use dist::{cbd_dist, rounding_dist, NoiseDistribution, MAX_SUPPORT};
pub use monte_carlo::{sample_noise, NoiseSample};

use crate::error::Result;
use crate::params::{ParamName, ParamSet};

/// ASCON state width in bits.
pub const ASCON_STATE_BITS: u32 = 320;
/// Keccak state width in bits.
pub const KECCAK_STATE_BITS: u32 = 1600;

/// Per-coefficient noise PMF of a decryption.
pub fn noise_distribution(ps: &ParamSet) -> Result<NoiseDistribution> {
    let terms = (ps.ell * ps.n) as u64;
    let s = cbd_dist(ps.eta1);
    let e = cbd_dist(ps.eta2);
    let du = rounding_dist(ps.log_p, ps.q);
    let dv = rounding_dist(ps.log_v(), ps.q);

    let es = e.product(&s)?.self_convolve(terms)?;
    let s_e1 = s
        .product(&e.convolve(&du.negate())?)?
        .self_convolve(terms)?;
    es.convolve(&s_e1)?.convolve(&e)?.convolve(&dv.negate())
}

#[derive(Clone, Debug)]
pub struct FailureAnalysis {
    /// Probability that one message coefficient decodes wrongly.
    pub per_coeff: Dd,
    /// log2 of the scheme failure probability.
    pub log2_failure: f64,
    pub noise: NoiseDistribution,
}

pub fn analyze_failure(ps: &ParamSet) -> Result<FailureAnalysis> {
    let noise = noise_distribution(ps)?;
    let per_coeff = noise.tail_beyond(ps.q as i64, 1 << (ps.b + 1));
    let scheme = if ps.repeat == 1 {
        per_coeff.to_f64() * ps.msg_coeffs() as f64
    } else {
        repeat_failure(per_coeff.to_f64(), ps.repeat) * ps.len_k as f64
    };
    Ok(FailureAnalysis {
        per_coeff,
        log2_failure: scheme.min(1.0).log2(),
        noise,
    })
}

/// log2 of the decryption failure probability.
pub fn failure_probability(ps: &ParamSet) -> Result<f64> {
    Ok(analyze_failure(ps)?.log2_failure)
}

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Probability that a majority vote over `repeat` copies decodes wrongly
/// when each copy fails independently with probability `f`. An exact tie
/// counts as half a failure.
pub fn repeat_failure(f: f64, repeat: u32) -> f64 {
    let term =
        |k: u32| binomial(repeat, k) * f.powi(k as i32) * (1.0 - f).powi((repeat - k) as i32);
    let mut total: f64 = (repeat / 2 + 1..=repeat).map(term).sum();
    if repeat.is_multiple_of(2) {
        total += 0.5 * term(repeat / 2);
    }
    total
}

/// Storage model: four polynomials, one polynomial vector, an XOF state and
/// an equally sized hash/`z` buffer.
pub fn memory_bits(n: usize, ell: usize, log_q: u32, xof_state_bits: u32) -> u64 {
    let poly = n as u64 * log_q as u64;
    4 * poly + ell as u64 * poly + 2 * xof_state_bits as u64
}

pub fn memory_estimate(ps: &ParamSet, xof_state_bits: u32) -> u64 {
    memory_bits(ps.n, ps.ell, ps.log_q, xof_state_bits)
}

/// A comparison scheme outside the three shipped sets.
#[derive(Clone, Copy, Debug)]
pub struct ReferenceScheme {
    pub name: &'static str,
    pub ell: usize,
    pub n: usize,
    pub q: u32,
    pub log_q: u32,
    pub xof_state_bits: u32,
}

pub const KYBER512: ReferenceScheme = ReferenceScheme {
    name: "Kyber",
    ell: 2,
    n: 256,
    q: 3329,
    log_q: 12,
    xof_state_bits: KECCAK_STATE_BITS,
};
pub const NEWHOPE512: ReferenceScheme = ReferenceScheme {
    name: "NewHope",
    ell: 1,
    n: 512,
    q: 12289,
    log_q: 14,
    xof_state_bits: KECCAK_STATE_BITS,
};

impl ReferenceScheme {
    pub fn memory_bits(&self) -> u64 {
        memory_bits(self.n, self.ell, self.log_q, self.xof_state_bits)
    }
}

/// Published security and failure figures, echoed alongside computed values.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PublishedFigures {
    pub quantum_bits: u32,
    pub classical_bits: u32,
    pub log2_failure: i32,
}

pub fn published(name: ParamName) -> PublishedFigures {
    match name {
        ParamName::Poly32 => PublishedFigures {
            quantum_bits: 105,
            classical_bits: 116,
            log2_failure: -113,
        },
        ParamName::Poly64 => PublishedFigures {
            quantum_bits: 104,
            classical_bits: 114,
            log2_failure: -128,
        },
        ParamName::Poly128 => PublishedFigures {
            quantum_bits: 101,
            classical_bits: 111,
            log2_failure: -179,
        },
    }
}

#[derive(Clone, Debug)]
pub struct Table1Row {
    pub params: ParamSet,
    pub log2_failure: f64,
    pub published: PublishedFigures,
    pub pk_bytes: usize,
    pub sk_bytes: usize,
    pub ct_bytes: usize,
    pub memory_bits: u64,
}

impl Table1Row {
    pub fn compute(name: ParamName) -> Result<Self> {
        let ps = ParamSet::get(name).clone();
        let sizes = ps.sizes();
        Ok(Table1Row {
            log2_failure: failure_probability(&ps)?,
            published: published(name),
            pk_bytes: sizes.pk_bytes,
            sk_bytes: sizes.sk_bytes,
            ct_bytes: sizes.ct_bytes,
            memory_bits: memory_estimate(&ps, ASCON_STATE_BITS),
            params: ps,
        })
    }
}

pub fn table1_report() -> Result<Vec<Table1Row>> {
    ParamName::ALL.into_iter().map(Table1Row::compute).collect()
}

pub fn render_markdown(rows: &[Table1Row]) -> String {
    let mut out = String::new();
    out.push_str("| scheme | ℓ | n | q | log q | log p | log t | η1 | η2 | B | security (Q, C)* | log2 fail | pk | sk | ct | memory bits |\n");
    out.push_str("|---|---|---|---|---|---|---|---|---|---|---|---|---|---|---|---|\n");
    for r in rows {
        let p = &r.params;
        let _ = writeln!(
            out,
            "| {} | {} | {} | {} | {} | {} | {} | {} | {} | {} | ({}, {}) | {:.1} | {} | {} | {} | {} |",
            p.name.label(),
            p.ell,
            p.n,
            p.q,
            p.log_q,
            p.log_p,
            p.log_t,
            p.eta1,
            p.eta2,
            p.b,
            r.published.quantum_bits,
            r.published.classical_bits,
            r.log2_failure,
            r.pk_bytes,
            r.sk_bytes,
            r.ct_bytes,
            r.memory_bits
        );
    }
    for s in [KYBER512, NEWHOPE512] {
        let _ = writeln!(
            out,
            "| {} | {} | {} | {} | {} | | | | | | | | | | | {} |",
            s.name,
            s.ell,
            s.n,
            s.q,
            s.log_q,
            s.memory_bits()
        );
    }
    out.push_str("\n*security column echoed from published estimates, not recomputed\n");
    out
}

pub fn render_csv(rows: &[Table1Row]) -> String {
    let mut out = String::from(
        "scheme,ell,n,q,log_q,log_p,log_t,eta1,eta2,B,quantum_bits_published,classical_bits_published,log2_failure,log2_failure_published,pk_bytes,sk_bytes,ct_bytes,memory_bits\n",
    );
    for r in rows {
        let p = &r.params;
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{},{:.3},{},{},{},{},{}",
            p.name.label(),
            p.ell,
            p.n,
            p.q,
            p.log_q,
            p.log_p,
            p.log_t,
            p.eta1,
            p.eta2,
            p.b,
            r.published.quantum_bits,
            r.published.classical_bits,
            r.log2_failure,
            r.published.log2_failure,
            r.pk_bytes,
            r.sk_bytes,
            r.ct_bytes,
            r.memory_bits
        );
    }
    for s in [KYBER512, NEWHOPE512] {
        let _ = writeln!(
            out,
            "{},{},{},{},{},,,,,,,,,,,,,{}",
            s.name,
            s.ell,
            s.n,
            s.q,
            s.log_q,
            s.memory_bits()
        );
    }
    out
}
