//! Truncated multivariate formal power series with exact rational
//! coefficients.
//!
//! A [`Series`] stores only the coefficients of total order at most its
//! truncation order `N`; everything above `N` is *unknown*, not zero. Binary
//! operations therefore truncate at the smaller of the two orders, and
//! [`Series::coefficient`] refuses to answer above `N`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{format_rational, rational_from_int, serde_str, Rational};

/// Exponent tuple `(nu_1, ..., nu_d)`, one entry per variable.
///
/// Ordered graded-lexicographically: total order first, then the exponent
/// tuples lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        MultiIndex(exponents)
    }

    pub fn zero(num_vars: usize) -> Self {
        MultiIndex(vec![0; num_vars])
    }

    /// `X_var^power` as an index.
    pub fn unit(num_vars: usize, var: usize, power: u32) -> Self {
        let mut exps = vec![0; num_vars];
        exps[var] = power;
        MultiIndex(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn order(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Entry-wise sum. Panics on length mismatch.
    pub fn plus(&self, other: &MultiIndex) -> MultiIndex {
        assert_eq!(self.len(), other.len());
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Entry-wise difference, or `None` if `other` is not dominated by `self`.
    pub fn minus(&self, other: &MultiIndex) -> Option<MultiIndex> {
        if self.len() != other.len() {
            return None;
        }
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(MultiIndex)
    }

    /// `prod_j nu_j!`
    pub fn factorial(&self) -> BigInt {
        self.0
            .iter()
            .map(|&e| BigInt::from(crate::rational::factorial(e)))
            .product()
    }

    /// Every index of `num_vars` entries with total order at most `max_order`,
    /// in graded-lex order.
    pub fn all_up_to(num_vars: usize, max_order: u32) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        for order in 0..=max_order {
            let mut current = vec![0u32; num_vars];
            compositions(num_vars, order, 0, &mut current, &mut out);
        }
        out.sort();
        out
    }
}

fn compositions(
    num_vars: usize,
    remaining: u32,
    position: usize,
    current: &mut Vec<u32>,
    out: &mut Vec<MultiIndex>,
) {
    if num_vars == 0 {
        if remaining == 0 {
            out.push(MultiIndex(Vec::new()));
        }
        return;
    }
    if position == num_vars - 1 {
        current[position] = remaining;
        out.push(MultiIndex(current.clone()));
        return;
    }
    for e in 0..=remaining {
        current[position] = e;
        compositions(num_vars, remaining - e, position + 1, current, out);
    }
    current[position] = 0;
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order()
            .cmp(&other.order())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Vec<u32>> for MultiIndex {
    fn from(v: Vec<u32>) -> Self {
        MultiIndex(v)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// A coefficient disagreement found by [`Series::first_mismatch`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub index: MultiIndex,
    pub left: Rational,
    pub right: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SeriesRepr", into = "SeriesRepr")]
pub struct Series {
    num_vars: usize,
    truncation_order: u32,
    coeffs: BTreeMap<MultiIndex, Rational>,
}

impl Series {
    /// Builds a normalized series, dropping zero coefficients.
    ///
    /// Repeated keys are summed, so the result does not depend on insertion
    /// order.
    pub fn new<I>(num_vars: usize, truncation_order: u32, coeffs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, Rational)>,
    {
        if num_vars == 0 {
            return Err(Error::InvalidArgument("a series needs at least one variable".into()));
        }
        let mut map: BTreeMap<MultiIndex, Rational> = BTreeMap::new();
        for (index, value) in coeffs {
            check_index(num_vars, truncation_order, &index)?;
            *map.entry(index).or_insert_with(Rational::zero) += value;
        }
        map.retain(|_, v| !v.is_zero());
        Ok(Series { num_vars, truncation_order, coeffs: map })
    }

    pub fn zero(num_vars: usize, truncation_order: u32) -> Self {
        Series { num_vars, truncation_order, coeffs: BTreeMap::new() }
    }

    pub fn constant(num_vars: usize, truncation_order: u32, value: Rational) -> Self {
        let mut s = Series::zero(num_vars, truncation_order);
        if !value.is_zero() {
            s.coeffs.insert(MultiIndex::zero(num_vars), value);
        }
        s
    }

    pub fn one(num_vars: usize, truncation_order: u32) -> Self {
        Series::constant(num_vars, truncation_order, Rational::one())
    }

    /// The coordinate series `X_var`.
    pub fn variable(num_vars: usize, truncation_order: u32, var: usize) -> Self {
        let mut s = Series::zero(num_vars, truncation_order);
        if truncation_order >= 1 {
            s.coeffs.insert(MultiIndex::unit(num_vars, var, 1), Rational::one());
        }
        s
    }

    /// Univariate series from a dense coefficient list `c_0, c_1, ...`;
    /// entries above `truncation_order` are ignored.
    pub fn univariate<I>(truncation_order: u32, coeffs: I) -> Self
    where
        I: IntoIterator<Item = Rational>,
    {
        let map = coeffs
            .into_iter()
            .take(truncation_order as usize + 1)
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(n, c)| (MultiIndex(vec![n as u32]), c))
            .collect();
        Series { num_vars: 1, truncation_order, coeffs: map }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn truncation_order(&self) -> u32 {
        self.truncation_order
    }

    /// Nonzero coefficients in graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Rational)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, index: &MultiIndex) -> Result<Rational> {
        check_index(self.num_vars, self.truncation_order, index)?;
        Ok(self.coeffs.get(index).cloned().unwrap_or_else(Rational::zero))
    }

    pub fn constant_term(&self) -> Rational {
        self.coeffs
            .get(&MultiIndex::zero(self.num_vars))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Drops every coefficient above `order`.
    pub fn truncate(&self, order: u32) -> Series {
        let order = order.min(self.truncation_order);
        let coeffs = self
            .coeffs
            .iter()
            .filter(|(k, _)| k.order() <= order)
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        Series { num_vars: self.num_vars, truncation_order: order, coeffs }
    }

    pub fn add(&self, other: &Series) -> Result<Series> {
        self.check_vars(other)?;
        let order = self.truncation_order.min(other.truncation_order);
        let mut out = self.truncate(order);
        for (k, v) in other.coeffs.iter().filter(|(k, _)| k.order() <= order) {
            *out.coeffs.entry(k.clone()).or_insert_with(Rational::zero) += v;
        }
        out.coeffs.retain(|_, v| !v.is_zero());
        Ok(out)
    }

    pub fn sub(&self, other: &Series) -> Result<Series> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, factor: &Rational) -> Series {
        if factor.is_zero() {
            return Series::zero(self.num_vars, self.truncation_order);
        }
        let coeffs = self.coeffs.iter().map(|(k, v)| (k.clone(), v * factor)).collect();
        Series { num_vars: self.num_vars, truncation_order: self.truncation_order, coeffs }
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &Series) -> Result<Series> {
        self.check_vars(other)?;
        let order = self.truncation_order.min(other.truncation_order);
        let mut coeffs: BTreeMap<MultiIndex, Rational> = BTreeMap::new();
        for (ka, va) in &self.coeffs {
            let oa = ka.order();
            if oa > order {
                break;
            }
            for (kb, vb) in &other.coeffs {
                if oa + kb.order() > order {
                    // coefficients are graded, nothing further fits
                    break;
                }
                *coeffs.entry(ka.plus(kb)).or_insert_with(Rational::zero) += va * vb;
            }
        }
        coeffs.retain(|_, v| !v.is_zero());
        Ok(Series { num_vars: self.num_vars, truncation_order: order, coeffs })
    }

    pub fn pow(&self, exponent: u32) -> Series {
        let mut acc = Series::one(self.num_vars, self.truncation_order);
        for _ in 0..exponent {
            acc = acc.mul(self).expect("same variable count");
        }
        acc
    }

    /// `sum_{k=0}^{N} s^k / k!`, requiring a zero constant term.
    pub fn exp(&self) -> Result<Series> {
        let c0 = self.constant_term();
        if !c0.is_zero() {
            return Err(Error::ConstantTerm { expected: "0", found: format_rational(&c0) });
        }
        let mut result = Series::one(self.num_vars, self.truncation_order);
        let mut term = result.clone();
        for k in 1..=self.truncation_order {
            term = term.mul(self)?.scale(&Rational::new(BigInt::one(), BigInt::from(k)));
            if term.is_zero() {
                break;
            }
            result = result.add(&term)?;
        }
        Ok(result)
    }

    /// `sum_{k=1}^{N} (-1)^{k+1} (s-1)^k / k`, requiring constant term 1.
    pub fn log(&self) -> Result<Series> {
        let c0 = self.constant_term();
        if !c0.is_one() {
            return Err(Error::ConstantTerm { expected: "1", found: format_rational(&c0) });
        }
        let shifted = self.sub(&Series::one(self.num_vars, self.truncation_order))?;
        let mut result = Series::zero(self.num_vars, self.truncation_order);
        let mut power = Series::one(self.num_vars, self.truncation_order);
        for k in 1..=self.truncation_order {
            power = power.mul(&shifted)?;
            if power.is_zero() {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            result = result.add(&power.scale(&Rational::new(BigInt::from(sign), BigInt::from(k))))?;
        }
        Ok(result)
    }

    /// First graded-lex index at which the two series differ, comparing only
    /// up to the smaller truncation order.
    pub fn first_mismatch(&self, other: &Series) -> Result<Option<Mismatch>> {
        Ok(self.mismatches_from(other, 0)?.into_iter().next())
    }

    /// Every differing coefficient of total order in `from_order..=min(N)`,
    /// in graded-lex order.
    pub fn mismatches_from(&self, other: &Series, from_order: u32) -> Result<Vec<Mismatch>> {
        self.check_vars(other)?;
        let order = self.truncation_order.min(other.truncation_order);
        let keys: BTreeSet<&MultiIndex> = self
            .coeffs
            .keys()
            .chain(other.coeffs.keys())
            .filter(|k| (from_order..=order).contains(&k.order()))
            .collect();
        let zero = Rational::zero();
        Ok(keys
            .into_iter()
            .filter_map(|k| {
                let left = self.coeffs.get(k).unwrap_or(&zero);
                let right = other.coeffs.get(k).unwrap_or(&zero);
                (left != right).then(|| Mismatch {
                    index: k.clone(),
                    left: left.clone(),
                    right: right.clone(),
                })
            })
            .collect())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("series serialization is infallible")
    }

    pub fn from_json(text: &str) -> std::result::Result<Series, serde_json::Error> {
        serde_json::from_str(text)
    }

    fn check_vars(&self, other: &Series) -> Result<()> {
        if self.num_vars != other.num_vars {
            return Err(Error::VariableCountMismatch {
                left: self.num_vars,
                right: other.num_vars,
            });
        }
        Ok(())
    }

    /// Applies a linear monomial map `index -> (coefficient factor, new index)`
    /// and returns a series truncated at `new_order`.
    pub(crate) fn map_monomials<F>(&self, new_order: u32, mut f: F) -> Series
    where
        F: FnMut(&MultiIndex) -> Option<(Rational, MultiIndex)>,
    {
        let mut coeffs: BTreeMap<MultiIndex, Rational> = BTreeMap::new();
        for (k, v) in &self.coeffs {
            if let Some((factor, idx)) = f(k) {
                if idx.order() <= new_order {
                    *coeffs.entry(idx).or_insert_with(Rational::zero) += v * factor;
                }
            }
        }
        coeffs.retain(|_, v| !v.is_zero());
        Series { num_vars: self.num_vars, truncation_order: new_order, coeffs }
    }
}

fn check_index(num_vars: usize, truncation: u32, index: &MultiIndex) -> Result<()> {
    if index.len() != num_vars {
        return Err(Error::IndexLength { expected: num_vars, found: index.len() });
    }
    if index.order() > truncation {
        return Err(Error::BeyondTruncation { order: index.order(), truncation });
    }
    Ok(())
}

/// `e^X - 1` in one variable.
pub fn exp_minus_one(truncation_order: u32) -> Series {
    let x = Series::variable(1, truncation_order, 0);
    x.exp()
        .expect("X has zero constant term")
        .sub(&Series::one(1, truncation_order))
        .expect("univariate")
}

/// The Bell exponential generating function `exp(e^X - 1)`.
pub fn bell_egf(truncation_order: u32) -> Series {
    exp_minus_one(truncation_order).exp().expect("e^X - 1 has zero constant term")
}

/// `rational_from_int` lifted to a univariate constant.
pub fn int_constant(value: i64, truncation_order: u32) -> Series {
    Series::constant(1, truncation_order, rational_from_int(value))
}

#[derive(Serialize, Deserialize)]
struct CoeffEntry {
    index: Vec<u32>,
    #[serde(with = "serde_str")]
    value: Rational,
}

#[derive(Serialize, Deserialize)]
struct SeriesRepr {
    num_vars: usize,
    truncation_order: u32,
    coeffs: Vec<CoeffEntry>,
}

impl From<Series> for SeriesRepr {
    fn from(s: Series) -> Self {
        SeriesRepr {
            num_vars: s.num_vars,
            truncation_order: s.truncation_order,
            coeffs: s
                .coeffs
                .into_iter()
                .map(|(k, value)| CoeffEntry { index: k.0, value })
                .collect(),
        }
    }
}

impl TryFrom<SeriesRepr> for Series {
    type Error = Error;

    fn try_from(repr: SeriesRepr) -> Result<Self> {
        Series::new(
            repr.num_vars,
            repr.truncation_order,
            repr.coeffs.into_iter().map(|e| (MultiIndex(e.index), e.value)),
        )
    }
}
