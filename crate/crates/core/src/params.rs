//! Named parameter sets and the quantities derived from them.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Seed, hash and shared-key length in bytes (128 bits).
pub const SEED_BYTES: usize = 16;

/// Identifier of one of the three shipped configurations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum ParamName {
    Poly32,
    #[default]
    Poly64,
    Poly128,
}

impl ParamName {
    pub const ALL: [ParamName; 3] = [ParamName::Poly32, ParamName::Poly64, ParamName::Poly128];

    /// Short CLI spelling (`poly64`).
    pub fn as_str(self) -> &'static str {
        match self {
            ParamName::Poly32 => "poly32",
            ParamName::Poly64 => "poly64",
            ParamName::Poly128 => "poly128",
        }
    }

    /// Full configuration name (`KEM-poly64`).
    pub fn label(self) -> &'static str {
        match self {
            ParamName::Poly32 => "KEM-poly32",
            ParamName::Poly64 => "KEM-poly64",
            ParamName::Poly128 => "KEM-poly128",
        }
    }
}

impl fmt::Display for ParamName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ParamName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        let short = lower.strip_prefix("kem-").unwrap_or(&lower);
        match short {
            "poly32" => Ok(ParamName::Poly32),
            "poly64" => Ok(ParamName::Poly64),
            "poly128" => Ok(ParamName::Poly128),
            _ => Err(Error::UnknownParams(s.to_string())),
        }
    }
}

/// All scheme constants for one configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamSet {
    pub name: ParamName,
    /// Module rank.
    pub ell: usize,
    /// Polynomial length.
    pub n: usize,
    pub q: u32,
    pub log_q: u32,
    /// Bits per compressed coefficient of `u`.
    pub log_p: u32,
    /// Reconciliation bits per coefficient of `v` (on top of `b`).
    pub log_t: u32,
    /// Message bits per coefficient.
    pub b: u32,
    pub eta1: u32,
    pub eta2: u32,
    /// Seed / key length in bits.
    pub len_k: u32,
    pub repeat: u32,
    /// Smallest primitive 2n-th root of unity mod q.
    pub zeta: u32,
}

/// Byte sizes of the serialized objects.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SizeReport {
    pub pk_bytes: usize,
    pub sk_bytes: usize,
    pub ct_bytes: usize,
    pub u_bytes: usize,
    pub v_bytes: usize,
}

impl ParamSet {
    /// Builds and validates the named configuration.
    pub fn new(name: ParamName) -> Result<Self> {
        let (ell, n, q, log_q, log_p, log_t, b) = match name {
            ParamName::Poly32 => (21, 32, 31873, 15, 12, 3, 4),
            ParamName::Poly64 => (9, 64, 7681, 13, 10, 3, 2),
            ParamName::Poly128 => (4, 128, 3329, 12, 10, 2, 1),
        };
        let zeta = smallest_primitive_root(q, 2 * n as u32).ok_or_else(|| {
            Error::InvalidParams(format!("no primitive {}-th root mod {q}", 2 * n))
        })?;
        let ps = ParamSet {
            name,
            ell,
            n,
            q,
            log_q,
            log_p,
            log_t,
            b,
            eta1: 2,
            eta2: 2,
            len_k: 128,
            repeat: 1,
            zeta,
        };
        ps.validate()?;
        Ok(ps)
    }

    /// Shared, lazily built instance of a shipped configuration.
    pub fn get(name: ParamName) -> &'static ParamSet {
        static SETS: OnceLock<[ParamSet; 3]> = OnceLock::new();
        let sets = SETS.get_or_init(|| {
            ParamName::ALL.map(|n| ParamSet::new(n).expect("shipped parameter sets are valid"))
        });
        match name {
            ParamName::Poly32 => &sets[0],
            ParamName::Poly64 => &sets[1],
            ParamName::Poly128 => &sets[2],
        }
    }

    /// Checks every structural invariant of the configuration.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParams(msg));
        if !self.n.is_power_of_two() || self.n < 2 {
            return bad(format!("n = {} is not a power of two", self.n));
        }
        if !is_prime(self.q) {
            return bad(format!("q = {} is not prime", self.q));
        }
        if !(self.q - 1).is_multiple_of(2 * self.n as u32) {
            return bad(format!("2n = {} does not divide q - 1", 2 * self.n));
        }
        if self.log_q != ceil_log2(self.q) {
            return bad(format!(
                "log_q = {} but ceil(log2 q) = {}",
                self.log_q,
                ceil_log2(self.q)
            ));
        }
        if multiplicative_order(self.zeta, self.q) != Some(2 * self.n as u64) {
            return bad(format!("zeta = {} does not have order 2n", self.zeta));
        }
        if self.n as u32 * self.b != self.len_k * self.repeat {
            return bad("n * B must equal len_K * repeat".into());
        }
        if self.log_t + self.b > self.log_p || self.log_p > self.log_q {
            return bad("require log_t + B <= log_p <= log_q".into());
        }
        if !self.len_k.is_multiple_of(8) {
            return bad("len_K must be a whole number of bytes".into());
        }
        if self.ell == 0 || self.ell > 255 {
            return bad("module rank must fit a nonce byte".into());
        }
        Ok(())
    }

    /// Bits per coefficient of the `v` component.
    pub fn log_v(&self) -> u32 {
        self.log_t + self.b
    }

    pub fn key_bytes(&self) -> usize {
        self.len_k as usize / 8
    }

    /// Number of message-carrying coefficients (`len_K * repeat / B`).
    pub fn msg_coeffs(&self) -> usize {
        (self.len_k * self.repeat / self.b) as usize
    }

    pub fn sizes(&self) -> SizeReport {
        let poly_bytes = |bits: u32| (self.n * bits as usize).div_ceil(8);
        let k = self.key_bytes();
        let b_hat = self.ell * poly_bytes(self.log_q);
        let u_bytes = self.ell * poly_bytes(self.log_p);
        let v_bytes = poly_bytes(self.log_v());
        let pk_bytes = k + b_hat;
        SizeReport {
            pk_bytes,
            sk_bytes: b_hat + 2 * k + pk_bytes,
            ct_bytes: u_bytes + v_bytes,
            u_bytes,
            v_bytes,
        }
    }
}

/// Equivalent of `ParamSet::get(name).sizes()`.
pub fn derived_sizes(ps: &ParamSet) -> SizeReport {
    ps.sizes()
}

pub fn ceil_log2(x: u32) -> u32 {
    32 - (x - 1).leading_zeros()
}

pub(crate) fn is_prime(x: u32) -> bool {
    if x < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= x {
        if x.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn pow_mod(base: u32, mut exp: u64, q: u32) -> u32 {
    let q = q as u64;
    let mut b = base as u64 % q;
    let mut acc = 1u64 % q;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % q;
        }
        b = b * b % q;
        exp >>= 1;
    }
    acc as u32
}

/// Order of `x` in Z_q^*, or `None` when `x` is not invertible.
pub(crate) fn multiplicative_order(x: u32, q: u32) -> Option<u64> {
    if x.is_multiple_of(q) {
        return None;
    }
    let group = (q - 1) as u64;
    let mut order = group;
    let mut m = group;
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            while order.is_multiple_of(p) && pow_mod(x, order / p, q) == 1 {
                order /= p;
            }
        }
        p += 1;
    }
    if m > 1 && pow_mod(x, order / m, q) == 1 {
        order /= m;
    }
    Some(order)
}

/// Smallest element of multiplicative order exactly `k` mod `q`.
pub(crate) fn smallest_primitive_root(q: u32, k: u32) -> Option<u32> {
    if k == 0 || !(q - 1).is_multiple_of(k) {
        return None;
    }
    (2..q).find(|&x| multiplicative_order(x, q) == Some(k as u64))
}
