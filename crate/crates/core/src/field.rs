//! Constant-time arithmetic in Z_q.
//!
//! q = 7681 uses the shift-and-add reduction (7681 = 2^13 - 2^9 + 1); the
//! other moduli use a 32-bit Barrett reduction. All conditional corrections
//! are mask selects.

/// The modulus handled by [`reduce_shift_add`].
pub const Q7681: u32 = 7681;

/// All-ones when `x` is negative, zero otherwise.
#[inline(always)]
fn neg_mask(x: i32) -> i32 {
    x >> 31
}

/// Subtracts `q` from `x` when `x >= q`, for `x < 2q`-ish signed inputs.
#[inline(always)]
fn csubq(x: i32, q: i32) -> i32 {
    let y = x - q;
    y + (neg_mask(y) & q)
}

/// Reduces `c in [0, 7680^2]` modulo 7681 using only shifts and adds.
///
/// `c` is split as `c4 || c3 || c2 || c1 || c0` with widths 1, 4, 4, 4, 13.
/// Since 2^13 = 511 (mod q), each high limb folds down with the chain
/// below; the result lies in [-3857, 26866] and is brought into [0, q) by
/// one conditional addition and three conditional subtractions.
#[inline]
pub fn reduce_shift_add(c: u32) -> u32 {
    debug_assert!(c <= 7680 * 7680, "input {c} exceeds (q-1)^2");
    let c = c as i32;
    let c0 = c & 0x1fff;
    let c1 = (c >> 13) & 0xf;
    let c2 = (c >> 17) & 0xf;
    let c3 = (c >> 21) & 0xf;
    let c4 = (c >> 25) & 0x1;

    let temp0 = c4 + c3;
    let temp1 = temp0 + c2;
    let temp2 = temp1 + c1;
    let temp3 = (temp2 << 1) - temp0;
    let temp4 = (temp3 << 4) - temp1;
    let temp5 = (temp4 << 4) - temp2;
    let temp6 = temp5 + c0;
    let mut d = temp6 - (c4 << 12);

    let q = Q7681 as i32;
    d += neg_mask(d) & q;
    d = csubq(d, q);
    d = csubq(d, q);
    d = csubq(d, q);
    d as u32
}

/// Barrett constant `floor(2^32 / q)`.
pub const fn barrett_constant(q: u32) -> u64 {
    (1u64 << 32) / q as u64
}

/// Reduces any 32-bit `c` modulo `q` (`q < 2^16`).
///
/// The quotient estimate `(c * m) >> 32` is short by at most one, so a
/// single masked subtraction finishes the job.
#[inline]
pub fn reduce_barrett(c: u32, q: u32, m: u64) -> u32 {
    let quot = ((c as u64 * m) >> 32) as u32;
    let r = (c - quot * q) as i32;
    csubq(r, q as i32) as u32
}

/// Arithmetic context for one modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Field {
    q: u32,
    barrett: u64,
    recip: u64,
}

impl Field {
    pub const fn new(q: u32) -> Self {
        assert!(q > 2 && q < (1 << 16) && q % 2 == 1);
        Field {
            q,
            barrett: barrett_constant(q),
            recip: (u64::MAX / q as u64) + 1,
        }
    }

    /// `floor(a / q)` for any `a < 2^32`, by multiplication with
    /// `floor(2^64 / q) + 1` and a 64-bit shift. The error term is below
    /// `a / 2^64 < 1 / q`, so the floor is exact.
    #[inline(always)]
    pub fn div_floor(&self, a: u64) -> u64 {
        debug_assert!(a < 1 << 32);
        ((a as u128 * self.recip as u128) >> 64) as u64
    }

    /// `x mod q` for any `u64`, in constant time. The quotient estimate
    /// `floor(x * floor(2^64 / q) / 2^64)` is short by at most one.
    #[inline(always)]
    pub fn reduce_wide(&self, x: u64) -> u32 {
        let quot = ((x as u128 * (self.recip - 1) as u128) >> 64) as u64;
        let r = (x - quot * self.q as u64) as i32;
        csubq(r, self.q as i32) as u32
    }

    #[inline(always)]
    pub const fn modulus(&self) -> u32 {
        self.q
    }

    /// Reduces a product of two canonical residues.
    #[inline(always)]
    pub fn reduce(&self, c: u32) -> u32 {
        if self.q == Q7681 {
            reduce_shift_add(c)
        } else {
            reduce_barrett(c, self.q, self.barrett)
        }
    }

    #[inline(always)]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        debug_assert!(a < self.q && b < self.q);
        csubq((a + b) as i32, self.q as i32) as u32
    }

    #[inline(always)]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        debug_assert!(a < self.q && b < self.q);
        let d = a as i32 - b as i32;
        (d + (neg_mask(d) & self.q as i32)) as u32
    }

    #[inline(always)]
    pub fn neg(&self, a: u32) -> u32 {
        self.sub(0, a)
    }

    #[inline(always)]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        debug_assert!(a < self.q && b < self.q);
        self.reduce(a * b)
    }

    /// `x / 2 mod q` as `(x >> 1) + ((q + 1) / 2) * (x & 1)`.
    #[inline(always)]
    pub fn div_by_2(&self, x: u32) -> u32 {
        debug_assert!(x < self.q);
        (x >> 1) + (((self.q + 1) >> 1) & (x & 1).wrapping_neg())
    }

    /// Maps a small signed value into [0, q).
    #[inline(always)]
    pub fn from_signed(&self, x: i32) -> u32 {
        let r = x.rem_euclid(self.q as i32);
        r as u32
    }

    /// Centered representative in (-q/2, q/2].
    #[inline(always)]
    pub fn centered(&self, x: u32) -> i32 {
        let x = x as i32;
        let q = self.q as i32;
        if x > q / 2 {
            x - q
        } else {
            x
        }
    }

    pub fn pow(&self, base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.q;
        let mut b = base % self.q;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u32) -> u32 {
        debug_assert!(!a.is_multiple_of(self.q));
        self.pow(a, self.q as u64 - 2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const F: Field = Field::new(7681);

    #[test]
    fn reduce_wide_matches_mod() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for q in [7681u32, 3329, 31873] {
            let f = Field::new(q);
            for x in [
                0u64,
                1,
                q as u64 - 1,
                q as u64,
                u32::MAX as u64,
                u64::MAX,
                u64::MAX - 1,
            ] {
                assert_eq!(f.reduce_wide(x) as u64, x % q as u64, "q={q} x={x}");
            }
            for _ in 0..100_000 {
                let x: u64 = rng.gen();
                assert_eq!(f.reduce_wide(x) as u64, x % q as u64);
                let y = x >> rng.gen_range(0..64);
                assert_eq!(f.reduce_wide(y) as u64, y % q as u64);
            }
        }
    }

    #[test]
    fn shift_add_examples() {
        assert_eq!(reduce_shift_add(0), 0);
        assert_eq!(reduce_shift_add(7681), 0);
        assert_eq!(reduce_shift_add(7680 * 7680), 1);
        assert_eq!(reduce_shift_add(12345), 12345 % 7681);
        assert_eq!(reduce_shift_add(12345), 4664);
    }

    #[test]
    fn shift_add_limb_boundaries() {
        for c in [
            8191,
            8192,
            1 << 17,
            1 << 21,
            1 << 25,
            (1 << 25) - 1,
            0x1ff_ffff,
        ] {
            assert_eq!(reduce_shift_add(c), c % 7681, "c = {c}");
        }
    }

    #[test]
    fn barrett_examples() {
        let m = barrett_constant(3329);
        assert_eq!(reduce_barrett(0, 3329, m), 0);
        assert_eq!(reduce_barrett(3329 * 3329, 3329, m), 0);
        assert_eq!(reduce_barrett(123456, 3329, m), 283);
        let m = barrett_constant(31873);
        assert_eq!(reduce_barrett(31872 * 31872, 31873, m), 1);
        assert_eq!(reduce_barrett(u32::MAX, 31873, m), u32::MAX % 31873);
    }

    #[test]
    fn field_op_examples() {
        assert_eq!(F.sub(0, 1), 7680);
        assert_eq!(F.mul(7680, 7680), 1);
        assert_eq!(F.add(4000, 4000), 319);
        assert_eq!(F.div_by_2(10), 5);
        assert_eq!(F.div_by_2(1), 3841);
        assert_eq!(F.mul(3841, 2), 1);
        assert_eq!(F.div_by_2(7679), 7680);
    }

    #[test]
    fn div_by_2_is_inverse_of_doubling_for_all_moduli() {
        for q in [3329u32, 7681, 31873] {
            let f = Field::new(q);
            for x in 0..q {
                let h = f.div_by_2(x);
                assert!(h < q);
                assert_eq!(f.mul(h, 2), x);
            }
        }
    }

    #[test]
    fn div_floor_is_exact() {
        for q in [3329u32, 7681, 31873] {
            let f = Field::new(q);
            for a in
                (0..1u64 << 32)
                    .step_by(65_537)
                    .chain([u32::MAX as u64, q as u64 - 1, q as u64])
            {
                assert_eq!(f.div_floor(a), a / q as u64, "a = {a}, q = {q}");
            }
        }
    }

    proptest! {
        #[test]
        fn barrett_matches_rem(c in any::<u32>(), qi in 0usize..3) {
            let q = [3329u32, 7681, 31873][qi];
            prop_assert_eq!(reduce_barrett(c, q, barrett_constant(q)), c % q);
        }

        #[test]
        fn ops_stay_canonical(a in 0u32..31873, b in 0u32..31873, qi in 0usize..3) {
            let q = [3329u32, 7681, 31873][qi];
            let f = Field::new(q);
            let (a, b) = (a % q, b % q);
            prop_assert_eq!(f.add(a, b), (a + b) % q);
            prop_assert_eq!(f.sub(a, b), (a + q - b) % q);
            prop_assert_eq!(f.mul(a, b), (a as u64 * b as u64 % q as u64) as u32);
            prop_assert_eq!(f.mul(f.inv(a.max(1)), a.max(1)), 1);
        }
    }
}
