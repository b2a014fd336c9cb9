//! Exact-support probability mass functions over integers.

use std::collections::BTreeMap;

use super::dd::Dd;
use crate::error::{Error, Result};
use crate::field::Field;

/// Largest support width any operation may produce.
pub const MAX_SUPPORT: usize = 1 << 20;

/// PMF of an integer random variable, stored densely from `min` upward.
#[derive(Clone, Debug, PartialEq)]
pub struct NoiseDistribution {
    min: i64,
    probs: Vec<Dd>,
}

impl NoiseDistribution {
    pub fn point(v: i64) -> Self {
        NoiseDistribution {
            min: v,
            probs: vec![Dd::ONE],
        }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (i64, Dd)>) -> Self {
        let map: BTreeMap<i64, Dd> = pairs.into_iter().fold(BTreeMap::new(), |mut m, (v, p)| {
            *m.entry(v).or_insert(Dd::ZERO) += p;
            m
        });
        let (&min, _) = map.first_key_value().expect("nonempty distribution");
        let (&max, _) = map.last_key_value().unwrap();
        let mut probs = vec![Dd::ZERO; (max - min + 1) as usize];
        for (v, p) in map {
            probs[(v - min) as usize] = p;
        }
        NoiseDistribution { min, probs }.trimmed()
    }

    fn trimmed(mut self) -> Self {
        let lead = self.probs.iter().take_while(|p| p.hi == 0.0).count();
        if lead == self.probs.len() {
            return self;
        }
        self.probs.drain(..lead);
        self.min += lead as i64;
        while self.probs.last().is_some_and(|p| p.hi == 0.0) {
            self.probs.pop();
        }
        self
    }

    pub fn min(&self) -> i64 {
        self.min
    }

    pub fn max(&self) -> i64 {
        self.min + self.probs.len() as i64 - 1
    }

    pub fn prob(&self, v: i64) -> Dd {
        if v < self.min || v > self.max() {
            return Dd::ZERO;
        }
        self.probs[(v - self.min) as usize]
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, Dd)> + '_ {
        self.probs
            .iter()
            .enumerate()
            .map(move |(i, &p)| (self.min + i as i64, p))
    }

    pub fn total(&self) -> Dd {
        self.probs.iter().copied().sum()
    }

    pub fn mean(&self) -> f64 {
        self.iter()
            .map(|(v, p)| p * Dd::from_f64(v as f64))
            .sum::<Dd>()
            .to_f64()
    }

    pub fn variance(&self) -> f64 {
        let mean = self
            .iter()
            .map(|(v, p)| p * Dd::from_f64(v as f64))
            .sum::<Dd>();
        let second = self
            .iter()
            .map(|(v, p)| p * Dd::from_f64((v * v) as f64))
            .sum::<Dd>();
        (second - mean * mean).to_f64()
    }

    /// Distribution of `-X`.
    pub fn negate(&self) -> Self {
        let mut probs = self.probs.clone();
        probs.reverse();
        NoiseDistribution {
            min: -self.max(),
            probs,
        }
    }

    /// Distribution of `X + Y` for independent `X`, `Y`.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        let len = self.probs.len() + other.probs.len() - 1;
        if len > MAX_SUPPORT {
            return Err(Error::Analysis(format!(
                "support of {len} values exceeds {MAX_SUPPORT}"
            )));
        }
        let (long, short) = if self.probs.len() >= other.probs.len() {
            (&self.probs, &other.probs)
        } else {
            (&other.probs, &self.probs)
        };
        let mut out = vec![Dd::ZERO; len];
        for (j, &b) in short.iter().enumerate() {
            if b.hi == 0.0 {
                continue;
            }
            for (o, &a) in out[j..j + long.len()].iter_mut().zip(long) {
                *o = o.mul_add(a, b);
            }
        }
        Ok(NoiseDistribution {
            min: self.min + other.min,
            probs: out,
        }
        .trimmed())
    }

    /// Distribution of `X * Y` for independent `X`, `Y`.
    pub fn product(&self, other: &Self) -> Result<Self> {
        let lo = [
            self.min * other.min,
            self.min * other.max(),
            self.max() * other.min,
            self.max() * other.max(),
        ];
        let span = lo.iter().max().unwrap() - lo.iter().min().unwrap() + 1;
        if span as usize > MAX_SUPPORT {
            return Err(Error::Analysis(format!(
                "product support of {span} values exceeds {MAX_SUPPORT}"
            )));
        }
        Ok(Self::from_pairs(self.iter().flat_map(|(x, p)| {
            other.iter().map(move |(y, r)| (x * y, p * r))
        })))
    }

    /// Sum of `k` independent copies, by repeated squaring.
    pub fn self_convolve(&self, mut k: u64) -> Result<Self> {
        let mut acc = NoiseDistribution::point(0);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.convolve(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.convolve(&base)?;
            }
        }
        Ok(acc)
    }

    /// `P(|X| > num / den)`.
    pub fn tail_beyond(&self, num: i64, den: i64) -> Dd {
        self.iter()
            .filter(|&(v, _)| v.abs() * den > num)
            .map(|(_, p)| p)
            .sum()
    }
}

/// `HW(a) - HW(b)` for independent uniform `eta`-bit `a`, `b`.
pub fn cbd_dist(eta: u32) -> NoiseDistribution {
    let binom = |k: u32| (0..k).fold(1u64, |c, i| c * (eta - i) as u64 / (i + 1) as u64);
    let total = 1u64 << (2 * eta);
    NoiseDistribution::from_pairs((0..=eta).flat_map(|a| {
        (0..=eta).map(move |b| (a as i64 - b as i64, Dd::ratio(binom(a) * binom(b), total)))
    }))
}

/// Centered error `x - Decompress(Compress(x, d), d)` for uniform `x` in [0, q).
pub fn rounding_dist(d: u32, q: u32) -> NoiseDistribution {
    let field = Field::new(q);
    if d >= crate::params::ceil_log2(q) {
        return NoiseDistribution::point(0);
    }
    let mut counts: BTreeMap<i64, u64> = BTreeMap::new();
    for x in 0..q {
        let y =
            crate::codec::decompress_coeff(&field, crate::codec::compress_coeff(&field, x, d), d);
        *counts
            .entry(field.centered(field.sub(x, y)) as i64)
            .or_insert(0) += 1;
    }
    NoiseDistribution::from_pairs(counts.into_iter().map(|(v, c)| (v, Dd::ratio(c, q as u64))))
}
