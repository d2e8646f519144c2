//! The gauge-invariant second variation as a monomial action on series,
//! and checkers that compare the generating-function identities built on it.
//!
//! The operator sends `X^n` to `n X^(n-2)` and kills `1` and `X`. Checkers
//! never assert an identity; they report the first coefficient where two
//! members disagree, if any.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::combinatorics::bell_numbers;
use crate::error::{Error, Result};
use crate::rational::{rational_from_biguint, serde_str, Rational};
use crate::series::{bell_egf, exp_minus_one, MultiIndex, Series};

/// `X^n -> n X^(n-2)` on a univariate series; the truncation order drops by 2.
pub fn gi_second_variation(s: &Series) -> Result<Series> {
    if s.num_vars() != 1 {
        return Err(Error::NotUnivariate(s.num_vars()));
    }
    lower_order(s, 2)?;
    Ok(multivariate_2var(s).expect("order checked above"))
}

/// `n`-fold [`gi_second_variation`]; needs truncation order at least `2n`.
pub fn gi_2n_variation(s: &Series, n: u32) -> Result<Series> {
    if n == 0 {
        return Err(Error::InvalidArgument("the variation count n must be at least 1".into()));
    }
    lower_order(s, 2 * n)?;
    let mut out = s.clone();
    for _ in 0..n {
        out = gi_second_variation(&out)?;
    }
    Ok(out)
}

/// Per-variable action `X_j^n -> n X_j^(n-2)`, summed over `j`.
///
/// Only pure powers of a single variable are touched; a monomial involving
/// two or more variables is mapped to zero.
pub fn multivariate_2var(s: &Series) -> Result<Series> {
    let order = lower_order(s, 2)?;
    Ok(s.map_monomials(order, |idx| {
        let mut active = idx.exponents().iter().enumerate().filter(|(_, &e)| e > 0);
        let (var, &power) = active.next()?;
        if active.next().is_some() || power < 2 {
            return None;
        }
        let mut exps = idx.exponents().to_vec();
        exps[var] = power - 2;
        Some((Rational::from_integer(BigInt::from(power)), MultiIndex::new(exps)))
    }))
}

fn lower_order(s: &Series, by: u32) -> Result<u32> {
    s.truncation_order()
        .checked_sub(by)
        .ok_or(Error::InsufficientOrder { available: s.truncation_order(), required: by })
}

/// `sum_n B_n X^n / n!`, built from the Bell triangle rather than `exp`.
pub fn vacuum_series(truncation_order: u32) -> Series {
    let bells = bell_numbers(truncation_order);
    let mut fact = BigInt::one();
    Series::univariate(
        truncation_order,
        bells.iter().enumerate().map(|(n, b)| {
            if n > 0 {
                fact *= n;
            }
            rational_from_biguint(b) / Rational::from_integer(fact.clone())
        }),
    )
}

/// `sum_n B_(n+2) X^n / (n+1)!`.
pub fn shifted_bell_series(truncation_order: u32) -> Series {
    let bells = bell_numbers(truncation_order + 2);
    let mut fact = BigInt::one();
    Series::univariate(
        truncation_order,
        (0..=truncation_order as usize).map(|n| {
            fact *= n + 1;
            rational_from_biguint(&bells[n + 2]) / Rational::from_integer(fact.clone())
        }),
    )
}

/// `(k-1)! (e^X - 1)^k exp(e^X - 1)`.
pub fn closed_form_2n(k: u32, truncation_order: u32) -> Series {
    let e1 = exp_minus_one(truncation_order);
    let fact: BigInt = (1..k).map(BigInt::from).product();
    e1.pow(k)
        .mul(&bell_egf(truncation_order))
        .expect("univariate")
        .scale(&Rational::from_integer(fact))
}

/// The Bell EGF at `X = 0`.
pub fn vacuum_norm_at_limit() -> Rational {
    bell_egf(0).constant_term()
}

/// Constant coefficient of `(e^X - 1) exp(e^X - 1)`.
pub fn mass_series_at_limit() -> Rational {
    closed_form_2n(1, 0).constant_term()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoefficientMismatch {
    pub order: Vec<u32>,
    #[serde(with = "serde_str")]
    pub lhs: Rational,
    #[serde(with = "serde_str")]
    pub rhs: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrderDelta {
    pub order: u32,
    #[serde(with = "serde_str")]
    pub lhs: Rational,
    #[serde(with = "serde_str")]
    pub rhs: Rational,
    #[serde(with = "serde_str")]
    pub delta: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VariationReport {
    pub identity: String,
    pub members: [String; 2],
    pub order_checked: u32,
    pub mismatch: Option<CoefficientMismatch>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub deltas: Option<Vec<OrderDelta>>,
}

impl VariationReport {
    fn compare(identity: &str, members: [&str; 2], lhs: &Series, rhs: &Series) -> Self {
        let mismatch = lhs.first_mismatch(rhs).expect("members share one variable").map(|m| {
            CoefficientMismatch { order: m.index.exponents().to_vec(), lhs: m.left, rhs: m.right }
        });
        VariationReport {
            identity: identity.to_string(),
            members: members.map(str::to_string),
            order_checked: lhs.truncation_order().min(rhs.truncation_order()),
            mismatch,
            deltas: None,
        }
    }

    pub fn agrees(&self) -> bool {
        self.mismatch.is_none()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports always serialize")
    }
}

/// `n! [X^n] exp(e^X - 1)` against the Bell triangle, through order `N`.
pub fn check_bell_egf(truncation_order: u32) -> VariationReport {
    VariationReport::compare(
        "bell-egf",
        ["exp(e^X-1)", "sum B_n X^n/n!"],
        &bell_egf(truncation_order),
        &vacuum_series(truncation_order),
    )
}

pub const MEMBER_I: &str = "(i) gi_second_variation(sum B_n X^n/n!)";
pub const MEMBER_II: &str = "(ii) sum B_(n+2) X^n/(n+1)!";
pub const MEMBER_III: &str = "(iii) (e^X-1) exp(e^X-1)";

/// Pairwise comparisons (i)/(ii), (ii)/(iii), (i)/(iii) with the vacuum
/// series taken to order `N`; member (i) then reaches order `N - 2`.
pub fn check_2var_identity(truncation_order: u32) -> Result<Vec<VariationReport>> {
    if truncation_order < 4 {
        return Err(Error::InsufficientOrder { available: truncation_order, required: 4 });
    }
    let i = gi_second_variation(&vacuum_series(truncation_order))?;
    let ii = shifted_bell_series(truncation_order);
    let iii = closed_form_2n(1, truncation_order);
    Ok(vec![
        VariationReport::compare("2var", [MEMBER_I, MEMBER_II], &i, &ii),
        VariationReport::compare("2var", [MEMBER_II, MEMBER_III], &ii, &iii),
        VariationReport::compare("2var", [MEMBER_I, MEMBER_III], &i, &iii),
    ])
}

fn check_2nvar_members(n: u32, truncation_order: u32) -> Result<(Series, Series)> {
    if n == 0 {
        return Err(Error::InvalidArgument("the variation count n must be at least 1".into()));
    }
    let required = 2 * n + 2;
    if truncation_order < required {
        return Err(Error::InsufficientOrder { available: truncation_order, required });
    }
    let lhs = gi_2n_variation(&bell_egf(truncation_order), n)?;
    let rhs = closed_form_2n(n, truncation_order);
    Ok((lhs, rhs))
}

fn identity_2nvar(n: u32) -> (String, [String; 2]) {
    (
        "2nvar".to_string(),
        [format!("gi_2n_variation(exp(e^X-1), {n})"), format!("({n}-1)! (e^X-1)^{n} exp(e^X-1)")],
    )
}

/// `gi_2n_variation(exp(e^X - 1), n)` against `(n-1)! (e^X - 1)^n exp(e^X - 1)`.
pub fn check_2nvar_identity(n: u32, truncation_order: u32) -> Result<VariationReport> {
    let (lhs, rhs) = check_2nvar_members(n, truncation_order)?;
    let (identity, members) = identity_2nvar(n);
    let mut report = VariationReport::compare(&identity, [&members[0], &members[1]], &lhs, &rhs);
    report.members = members;
    Ok(report)
}

/// As [`check_2nvar_identity`] but comparing only orders `from_order..`,
/// with every compared order listed in `deltas` (`delta = lhs - rhs`).
pub fn check_2nvar_deltas(n: u32, truncation_order: u32, from_order: u32) -> Result<VariationReport> {
    let (lhs, rhs) = check_2nvar_members(n, truncation_order)?;
    let (identity, members) = identity_2nvar(n);
    let checked = lhs.truncation_order().min(rhs.truncation_order());
    let mut deltas = Vec::new();
    for k in from_order..=checked {
        let idx = MultiIndex::new(vec![k]);
        let l = lhs.coefficient(&idx)?;
        let r = rhs.coefficient(&idx)?;
        deltas.push(OrderDelta { order: k, delta: &l - &r, lhs: l, rhs: r });
    }
    let mismatch = deltas.iter().find(|d| !d.delta.is_zero()).map(|d| CoefficientMismatch {
        order: vec![d.order],
        lhs: d.lhs.clone(),
        rhs: d.rhs.clone(),
    });
    Ok(VariationReport {
        identity: format!("{identity}-from-order-{from_order}"),
        members,
        order_checked: checked,
        mismatch,
        deltas: Some(deltas),
    })
}
