//! Set partitions, Bell numbers, double factorials and multinomials.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{factorial, round_down_dyadic, round_up_dyadic, Rational};

/// Largest `n` that [`set_partitions`] enumerates without an explicit cap.
pub const DEFAULT_PARTITION_CAP: u32 = 14;

/// A partition of `{1, ..., n}` into non-empty blocks.
///
/// Blocks are sorted internally and ordered by their smallest element, so
/// every partition has exactly one representation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SetPartition {
    blocks: Vec<Vec<u32>>,
}

impl SetPartition {
    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Builds the partition described by a restricted-growth string
    /// (`rgs[i]` is the block of element `i + 1`).
    fn from_rgs(rgs: &[u32]) -> Self {
        let num_blocks = rgs.iter().max().map_or(0, |&m| m as usize + 1);
        let mut blocks = vec![Vec::new(); num_blocks];
        for (i, &b) in rgs.iter().enumerate() {
            blocks[b as usize].push(i as u32 + 1);
        }
        SetPartition { blocks }
    }
}

/// Lazy stream of the set partitions of `{1, ..., n}` in lexicographic
/// restricted-growth order.
#[derive(Debug, Clone)]
pub struct SetPartitions {
    rgs: Vec<u32>,
    // prefix maxima: max_prefix[i] = max(rgs[0..i])
    max_prefix: Vec<u32>,
    done: bool,
}

impl Iterator for SetPartitions {
    type Item = SetPartition;

    fn next(&mut self) -> Option<SetPartition> {
        if self.done {
            return None;
        }
        let current = SetPartition::from_rgs(&self.rgs);
        self.advance();
        Some(current)
    }
}

impl SetPartitions {
    fn advance(&mut self) {
        let n = self.rgs.len();
        // rightmost position that can still grow
        let Some(i) = (1..n).rev().find(|&i| self.rgs[i] <= self.max_prefix[i]) else {
            self.done = true;
            return;
        };
        self.rgs[i] += 1;
        for j in i + 1..n {
            self.rgs[j] = 0;
            self.max_prefix[j] = self.max_prefix[j - 1].max(self.rgs[j - 1]);
        }
    }
}

/// All set partitions of `{1, ..., n}` for `n <= DEFAULT_PARTITION_CAP`.
pub fn set_partitions(n: u32) -> Result<SetPartitions> {
    set_partitions_with_cap(n, DEFAULT_PARTITION_CAP)
}

pub fn set_partitions_with_cap(n: u32, cap: u32) -> Result<SetPartitions> {
    if n > cap {
        return Err(Error::CapExceeded { what: "n", value: n as u64, cap: cap as u64 });
    }
    let len = n as usize;
    Ok(SetPartitions { rgs: vec![0; len], max_prefix: vec![0; len], done: false })
}

/// `B_n` via the Bell triangle.
pub fn bell(n: u32) -> BigUint {
    bell_numbers(n).pop().expect("at least B_0")
}

/// `B_0, ..., B_n` via the Bell triangle: each row starts with the last
/// entry of the previous row, and each further entry adds its left
/// neighbour to the entry above it.
pub fn bell_numbers(n: u32) -> Vec<BigUint> {
    let mut out = vec![BigUint::one()];
    let mut row = vec![BigUint::one()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(row.last().expect("non-empty row").clone());
        for above in &row {
            let value = next.last().expect("non-empty row") + above;
            next.push(value);
        }
        out.push(next[0].clone());
        row = next;
    }
    out
}

/// Certified evaluation of a truncated Dobinski sum.
#[derive(Debug, Clone, PartialEq)]
pub struct DobinskiEstimate {
    /// Midpoint of the certified interval.
    pub approximation: f64,
    /// Half-width of the interval, rounded up.
    pub error_bound: f64,
    pub lower: Rational,
    pub upper: Rational,
}

impl DobinskiEstimate {
    pub fn brackets(&self, value: &BigUint) -> bool {
        let v = Rational::from_integer(BigInt::from(value.clone()));
        self.lower <= v && v <= self.upper
    }
}

/// `e^{-1} sum_{j=0}^{J} j^n / j!` with a rigorous bracket around the full
/// infinite sum.
///
/// The tail `sum_{j>J} j^n/j!` is bounded by `2 J^n / J!`, valid once the
/// term ratio drops below one half (`J >= 2n`, `J >= 1`). The interval is
/// widened outward to dyadic rationals carrying `precision_bits` bits.
pub fn dobinski_partial(n: u32, terms: u32, precision_bits: u32) -> Result<DobinskiEstimate> {
    if precision_bits < 64 {
        return Err(Error::InsufficientPrecision(format!(
            "precision_bits = {precision_bits} is below the 64-bit minimum"
        )));
    }
    if terms < 1 || terms < 2 * n {
        return Err(Error::InsufficientPrecision(format!(
            "tail bound needs J >= max(1, 2n) = {}, got J = {terms}",
            (2 * n).max(1)
        )));
    }

    let head: Rational = (0..=terms)
        .map(|j| {
            Rational::new(
                BigInt::from(BigUint::from(j).pow(n)),
                BigInt::from(factorial(j)),
            )
        })
        .sum();
    let tail = Rational::new(
        BigInt::from(BigUint::from(terms).pow(n)) * 2,
        BigInt::from(factorial(terms)),
    );

    // e^{-1} from its alternating series; |error| <= 1/(K+1)!
    let target = BigUint::one() << (precision_bits as usize + 8);
    let mut k = 1u32;
    while factorial(k + 1) < target {
        k += 1;
    }
    let inv_e: Rational = (0..=k)
        .map(|i| {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            Rational::new(BigInt::from(sign), BigInt::from(factorial(i)))
        })
        .sum();
    let slack = Rational::new(BigInt::one(), BigInt::from(factorial(k + 1)));
    let inv_e_lo = &inv_e - &slack;
    let inv_e_hi = &inv_e + &slack;

    let lower = round_down_dyadic(&(inv_e_lo * &head), precision_bits);
    let upper = round_up_dyadic(&(inv_e_hi * (head + tail)), precision_bits);
    let mid = (&lower + &upper) / Rational::from_integer(BigInt::from(2));
    let half = (&upper - &lower) / Rational::from_integer(BigInt::from(2));
    let approximation = mid.to_f64().unwrap_or(f64::NAN);
    let half_f = half.to_f64().unwrap_or(f64::INFINITY);
    // nudge up so the float bound stays conservative after rounding
    let error_bound = if half_f == 0.0 { 0.0 } else { half_f * (1.0 + 1e-15) };
    Ok(DobinskiEstimate { approximation, error_bound, lower, upper })
}

/// `n!!`, with `(-1)!! = 0!! = 1`.
pub fn double_factorial(n: i64) -> Result<BigUint> {
    if n < -1 {
        return Err(Error::InvalidArgument(format!("double factorial needs n >= -1, got {n}")));
    }
    let mut acc = BigUint::one();
    let mut k = n;
    while k > 1 {
        acc *= k as u64;
        k -= 2;
    }
    Ok(acc)
}

/// `(sum counts)! / prod counts!`
pub fn multinomial(counts: &[u32]) -> BigUint {
    // product of binomials avoids the big factorial quotient
    let mut total = 0u32;
    let mut acc = BigUint::one();
    for &c in counts {
        for i in 1..=c {
            acc *= total + i;
            acc /= i;
        }
        total += c;
    }
    acc
}

pub fn binomial(n: u32, k: u32) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    multinomial(&[k, n - k])
}
