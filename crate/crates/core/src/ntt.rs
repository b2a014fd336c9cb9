//! Negacyclic NTT over R_q = Z_q[x]/(x^n + 1).
//!
//! `ntt` is an in-place Cooley-Tukey transform taking natural-order input
//! to bit-reversed output; `intt` is the matching Gentleman-Sande transform
//! with the factor 1/2 folded into every butterfly, so no final 1/n scaling
//! is needed. Slot `i` of the NTT domain holds the evaluation at
//! `zeta^(2 * bitrev(i) + 1)`.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::params::{ParamName, ParamSet};

/// A polynomial with coefficients in [0, q).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    pub coeffs: Vec<u32>,
}

impl Poly {
    pub fn zero(n: usize) -> Self {
        Poly { coeffs: vec![0; n] }
    }

    pub fn from_coeffs(coeffs: Vec<u32>) -> Self {
        Poly { coeffs }
    }

    /// The monomial `c * x^k`.
    pub fn monomial(n: usize, k: usize, c: u32) -> Self {
        let mut p = Poly::zero(n);
        p.coeffs[k] = c;
        p
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }
}

/// A length-ℓ vector of polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyVec {
    pub polys: Vec<Poly>,
}

impl PolyVec {
    pub fn zero(ell: usize, n: usize) -> Self {
        PolyVec {
            polys: vec![Poly::zero(n); ell],
        }
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }
}

impl From<Vec<Poly>> for PolyVec {
    fn from(polys: Vec<Poly>) -> Self {
        PolyVec { polys }
    }
}

/// Precomputed powers of zeta in bit-reversed order.
#[derive(Clone, Debug)]
pub struct TwiddleTable {
    pub zeta: u32,
    /// `zetas[m] = zeta^bitrev(m)`; entry 0 is unused by the transforms.
    pub zetas: Vec<u32>,
    /// `inv_zetas[m] = zeta^-bitrev(m)`.
    pub inv_zetas: Vec<u32>,
}

pub(crate) fn bit_reverse(x: usize, bits: u32) -> usize {
    if bits == 0 {
        return 0;
    }
    x.reverse_bits() >> (usize::BITS - bits)
}

impl TwiddleTable {
    pub fn build(ps: &ParamSet) -> Result<Self> {
        let field = Field::new(ps.q);
        let n = ps.n;
        if field.pow(ps.zeta, n as u64) != ps.q - 1 {
            return Err(Error::InvalidParams(format!(
                "{} is not a primitive {}-th root of unity mod {}",
                ps.zeta,
                2 * n,
                ps.q
            )));
        }
        let bits = n.trailing_zeros();
        let zeta_inv = field.inv(ps.zeta);
        let zetas = (0..n)
            .map(|m| field.pow(ps.zeta, bit_reverse(m, bits) as u64))
            .collect();
        let inv_zetas = (0..n)
            .map(|m| field.pow(zeta_inv, bit_reverse(m, bits) as u64))
            .collect();
        Ok(TwiddleTable {
            zeta: ps.zeta,
            zetas,
            inv_zetas,
        })
    }
}

/// Arithmetic context for R_q of one parameter set.
#[derive(Clone, Debug)]
pub struct Ring {
    pub n: usize,
    pub field: Field,
    pub twiddles: TwiddleTable,
}

impl Ring {
    pub fn new(ps: &ParamSet) -> Result<Self> {
        Ok(Ring {
            n: ps.n,
            field: Field::new(ps.q),
            twiddles: TwiddleTable::build(ps)?,
        })
    }

    /// Shared ring for a shipped parameter set.
    pub fn get(name: ParamName) -> &'static Ring {
        static RINGS: OnceLock<[Ring; 3]> = OnceLock::new();
        let rings = RINGS.get_or_init(|| {
            ParamName::ALL
                .map(|n| Ring::new(ParamSet::get(n)).expect("shipped sets are NTT-friendly"))
        });
        &rings[ParamName::ALL.iter().position(|&n| n == name).unwrap()]
    }

    pub fn q(&self) -> u32 {
        self.field.modulus()
    }

    /// Number of butterflies in one transform: (n/2) log2 n.
    pub fn butterflies(&self) -> usize {
        self.n / 2 * self.n.trailing_zeros() as usize
    }

    pub fn ntt_in_place(&self, x: &mut [u32]) {
        debug_assert_eq!(x.len(), self.n);
        let f = &self.field;
        let mut k = 1;
        let mut len = self.n / 2;
        while len >= 1 {
            for start in (0..self.n).step_by(2 * len) {
                let zeta = self.twiddles.zetas[k];
                k += 1;
                for j in start..start + len {
                    let t = f.mul(zeta, x[j + len]);
                    x[j + len] = f.sub(x[j], t);
                    x[j] = f.add(x[j], t);
                }
            }
            len >>= 1;
        }
    }

    pub fn intt_in_place(&self, x: &mut [u32]) {
        debug_assert_eq!(x.len(), self.n);
        let f = &self.field;
        let mut k = self.n - 1;
        let mut len = 1;
        while len < self.n {
            for start in (0..self.n).step_by(2 * len).rev() {
                let zeta_inv = self.twiddles.inv_zetas[k];
                k -= 1;
                for j in start..start + len {
                    let a = x[j];
                    let b = x[j + len];
                    x[j] = f.div_by_2(f.add(a, b));
                    x[j + len] = f.mul(zeta_inv, f.div_by_2(f.sub(a, b)));
                }
            }
            len <<= 1;
        }
    }

    pub fn ntt(&self, x: &Poly) -> Poly {
        let mut out = x.clone();
        self.ntt_in_place(&mut out.coeffs);
        out
    }

    pub fn intt(&self, x: &Poly) -> Poly {
        let mut out = x.clone();
        self.intt_in_place(&mut out.coeffs);
        out
    }

    pub fn ntt_vec(&self, v: &PolyVec) -> PolyVec {
        v.polys
            .iter()
            .map(|p| self.ntt(p))
            .collect::<Vec<_>>()
            .into()
    }

    pub fn intt_vec(&self, v: &PolyVec) -> PolyVec {
        v.polys
            .iter()
            .map(|p| self.intt(p))
            .collect::<Vec<_>>()
            .into()
    }

    pub fn pointwise_mul(&self, a: &Poly, b: &Poly) -> Poly {
        debug_assert_eq!(a.len(), b.len());
        let f = &self.field;
        Poly::from_coeffs(
            a.coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(&x, &y)| f.mul(x, y))
                .collect(),
        )
    }

    /// `acc += a ∘ b` in the NTT domain.
    pub fn pointwise_mul_acc(&self, acc: &mut Poly, a: &Poly, b: &Poly) {
        let f = &self.field;
        for ((c, &x), &y) in acc.coeffs.iter_mut().zip(&a.coeffs).zip(&b.coeffs) {
            *c = f.add(*c, f.mul(x, y));
        }
    }

    /// Inner product of two NTT-domain vectors.
    ///
    /// # Panics
    /// If the vectors differ in length.
    pub fn pwm_acc(&self, a: &PolyVec, b: &PolyVec) -> Poly {
        assert_eq!(a.len(), b.len(), "vector length mismatch");
        self.dot(a.polys.iter().zip(&b.polys))
    }

    /// `Σ x ∘ y` over the pairs, accumulated unreduced in 64 bits and
    /// reduced once per coefficient.
    pub fn dot<'a>(&self, pairs: impl IntoIterator<Item = (&'a Poly, &'a Poly)>) -> Poly {
        let mut acc = vec![0u64; self.n];
        for (x, y) in pairs {
            self.mul_acc_wide(&mut acc, x, y);
        }
        self.reduce_wide(&acc)
    }

    /// `acc += a ∘ b` without reduction. Each term is below `q^2 < 2^32`.
    #[inline]
    pub fn mul_acc_wide(&self, acc: &mut [u64], a: &Poly, b: &Poly) {
        debug_assert!(acc.len() == self.n && a.len() == self.n && b.len() == self.n);
        for ((c, &x), &y) in acc.iter_mut().zip(&a.coeffs).zip(&b.coeffs) {
            *c += (x * y) as u64;
        }
    }

    pub fn reduce_wide(&self, acc: &[u64]) -> Poly {
        Poly::from_coeffs(acc.iter().map(|&c| self.field.reduce_wide(c)).collect())
    }

    /// Negacyclic product of two coefficient-domain polynomials.
    pub fn poly_mul(&self, a: &Poly, b: &Poly) -> Poly {
        self.intt(&self.pointwise_mul(&self.ntt(a), &self.ntt(b)))
    }

    pub fn add(&self, a: &Poly, b: &Poly) -> Poly {
        let f = &self.field;
        Poly::from_coeffs(
            a.coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(&x, &y)| f.add(x, y))
                .collect(),
        )
    }

    pub fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        let f = &self.field;
        Poly::from_coeffs(
            a.coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(&x, &y)| f.sub(x, y))
                .collect(),
        )
    }

    pub fn add_assign(&self, a: &mut Poly, b: &Poly) {
        let f = &self.field;
        for (x, &y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x = f.add(*x, y);
        }
    }
}
