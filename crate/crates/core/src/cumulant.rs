//! Moment and cumulant tables, converted two independent ways.
//!
//! The *series route* builds the moment generating function
//! `M(xi) = sum_nu mu(nu) xi^nu / nu!`, takes `K = log M` and reads
//! `kappa(nu) = nu! [xi^nu] K`. The *partition route* sums over the ways of
//! splitting `nu` into a multiset of non-zero block compositions `m_i` with
//! multiplicities `k_i`:
//!
//! ```text
//! kappa(nu) = nu! * sum (K-1)! (-1)^(K-1) prod_i mu(m_i)^k_i / (k_i! (m_i!)^k_i)
//! ```
//!
//! where `K = sum k_i` is the number of blocks. The series route is the
//! reference; [`compare_cumulant_methods`] reports the first disagreement.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{factorial, format_rational, serde_str, Rational};
use crate::series::{MultiIndex, Series};

/// Particle-type bookkeeping for a model: gauge types followed by matter
/// types.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModelSpec {
    pub dim_gauge: usize,
    pub dim_matter: usize,
    #[serde(with = "serde_str")]
    pub coupling: Rational,
}

impl ModelSpec {
    pub fn new(dim_gauge: usize, dim_matter: usize, coupling: Rational) -> Result<Self> {
        let spec = ModelSpec { dim_gauge, dim_matter, coupling };
        spec.validate()?;
        Ok(spec)
    }

    /// One gauge type, no matter, unit coupling.
    pub fn single_type() -> Self {
        ModelSpec { dim_gauge: 1, dim_matter: 0, coupling: Rational::one() }
    }

    pub fn num_types(&self) -> usize {
        self.dim_gauge + self.dim_matter
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim_gauge == 0 {
            return Err(Error::InvalidArgument("dim_gauge must be at least 1".into()));
        }
        Ok(())
    }
}

/// Common storage for moment and cumulant tables.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Table {
    num_types: usize,
    max_order: u32,
    values: BTreeMap<MultiIndex, Rational>,
}

impl Table {
    fn new<I>(num_types: usize, max_order: u32, values: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, Rational)>,
    {
        if num_types == 0 {
            return Err(Error::NoTypes);
        }
        let mut map = BTreeMap::new();
        for (index, value) in values {
            if index.len() != num_types {
                return Err(Error::IndexLength { expected: num_types, found: index.len() });
            }
            if index.order() > max_order {
                return Err(Error::BeyondTruncation { order: index.order(), truncation: max_order });
            }
            if !value.is_zero() {
                map.insert(index, value);
            } else {
                map.remove(&index);
            }
        }
        Ok(Table { num_types, max_order, values: map })
    }

    fn get(&self, index: &MultiIndex) -> Rational {
        self.values.get(index).cloned().unwrap_or_else(Rational::zero)
    }

    /// Generating-function series `sum v(nu) xi^nu / nu!`.
    fn to_egf(&self) -> Series {
        Series::new(
            self.num_types,
            self.max_order,
            self.values.iter().map(|(k, v)| {
                (k.clone(), v / Rational::from_integer(k.factorial()))
            }),
        )
        .expect("table indices already validated")
    }

    fn from_egf(series: &Series) -> Self {
        let values = series
            .terms()
            .map(|(k, c)| (k.clone(), c * Rational::from_integer(k.factorial())))
            .collect();
        Table {
            num_types: series.num_vars(),
            max_order: series.truncation_order(),
            values,
        }
    }

    fn permute(&self, permutation: &[usize]) -> Result<Self> {
        check_permutation(permutation, self.num_types)?;
        let values = self
            .values
            .iter()
            .map(|(k, v)| {
                let mut exps = vec![0; self.num_types];
                for (from, &to) in permutation.iter().enumerate() {
                    exps[to] = k.exponents()[from];
                }
                (MultiIndex::new(exps), v.clone())
            })
            .collect();
        Ok(Table { num_types: self.num_types, max_order: self.max_order, values })
    }
}

fn check_permutation(permutation: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    if permutation.len() != n {
        return Err(Error::InvalidArgument("permutation length mismatch".into()));
    }
    for &p in permutation {
        if p >= n || std::mem::replace(&mut seen[p], true) {
            return Err(Error::InvalidArgument("not a permutation".into()));
        }
    }
    Ok(())
}

/// Moments `mu(nu) = <X_1^nu_1 ... X_d^nu_d>` up to a fixed total order.
///
/// Missing entries at order `<= max_order` are exact zeros.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TableRepr", into = "TableRepr")]
pub struct MomentTable(Table);

/// Cumulants `kappa(nu)`; the zero index is never stored.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TableRepr", into = "TableRepr")]
pub struct CumulantTable(Table);

impl MomentTable {
    /// Builds a table. Normalization (`mu(0) = 1`) is checked by the
    /// conversions, not here, so malformed inputs can still be reported.
    pub fn new<I>(num_types: usize, max_order: u32, values: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, Rational)>,
    {
        Table::new(num_types, max_order, values).map(MomentTable)
    }

    /// A normalized table; `values` must not include the zero index.
    pub fn normalized<I>(num_types: usize, max_order: u32, values: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, Rational)>,
    {
        let one = (MultiIndex::zero(num_types), Rational::one());
        let table = Self::new(num_types, max_order, std::iter::once(one).chain(values))?;
        table.check_normalized()?;
        Ok(table)
    }

    pub fn num_types(&self) -> usize {
        self.0.num_types
    }

    pub fn max_order(&self) -> u32 {
        self.0.max_order
    }

    pub fn get(&self, index: &MultiIndex) -> Rational {
        self.0.get(index)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&MultiIndex, &Rational)> {
        self.0.values.iter()
    }

    pub fn check_normalized(&self) -> Result<()> {
        let mu0 = self.get(&MultiIndex::zero(self.num_types()));
        if !mu0.is_one() {
            return Err(Error::NotNormalized(format_rational(&mu0)));
        }
        Ok(())
    }

    /// The moment generating function as a series.
    pub fn generating_function(&self) -> Series {
        self.0.to_egf()
    }

    /// Relabels types: type `i` becomes type `permutation[i]`.
    pub fn permute_types(&self, permutation: &[usize]) -> Result<Self> {
        self.0.permute(permutation).map(MomentTable)
    }

    /// Moments of the independent union: `mu(nu_a, nu_b) = mu_a(nu_a) mu_b(nu_b)`
    /// for every joint index of total order at most `max_order`.
    pub fn independent_product(&self, other: &MomentTable, max_order: u32) -> Result<Self> {
        let order = max_order.min(self.max_order()).min(other.max_order());
        let da = self.num_types();
        let mut values = Vec::new();
        for (ka, va) in self.entries() {
            for (kb, vb) in other.entries() {
                if ka.order() + kb.order() <= order {
                    let mut exps = ka.exponents().to_vec();
                    exps.extend_from_slice(kb.exponents());
                    values.push((MultiIndex::new(exps), va * vb));
                }
            }
        }
        MomentTable::new(da + other.num_types(), order, values)
    }
}

impl CumulantTable {
    pub fn new<I>(num_types: usize, max_order: u32, values: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, Rational)>,
    {
        let table = Table::new(num_types, max_order, values)?;
        if table.values.keys().any(MultiIndex::is_zero) {
            return Err(Error::InvalidArgument("cumulant tables carry no zero-index entry".into()));
        }
        Ok(CumulantTable(table))
    }

    pub fn num_types(&self) -> usize {
        self.0.num_types
    }

    pub fn max_order(&self) -> u32 {
        self.0.max_order
    }

    pub fn get(&self, index: &MultiIndex) -> Rational {
        self.0.get(index)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&MultiIndex, &Rational)> {
        self.0.values.iter()
    }

    pub fn permute_types(&self, permutation: &[usize]) -> Result<Self> {
        self.0.permute(permutation).map(CumulantTable)
    }
}

/// `K = log M`, read back as cumulants.
pub fn cumulants_from_moments_series(moments: &MomentTable) -> Result<CumulantTable> {
    moments.check_normalized()?;
    let k = moments.generating_function().log()?;
    Ok(CumulantTable(Table::from_egf(&k)))
}

/// Cumulants from the multiplicity-form partition sum.
pub fn cumulants_from_moments_partition(moments: &MomentTable) -> Result<CumulantTable> {
    moments.check_normalized()?;
    let d = moments.num_types();
    let values = MultiIndex::all_up_to(d, moments.max_order())
        .into_iter()
        .filter(|nu| !nu.is_zero())
        .map(|nu| {
            let value = partition_cumulant(moments, &nu);
            (nu, value)
        })
        .collect::<Vec<_>>();
    CumulantTable::new(d, moments.max_order(), values)
}

/// `M = exp K`, read back as moments.
pub fn moments_from_cumulants(cumulants: &CumulantTable) -> Result<MomentTable> {
    let m = cumulants.0.to_egf().exp()?;
    Ok(MomentTable(Table::from_egf(&m)))
}

fn partition_cumulant(moments: &MomentTable, nu: &MultiIndex) -> Rational {
    // candidate block compositions, largest first so that multisets are
    // generated once each (non-increasing sequences of parts)
    let mut parts: Vec<MultiIndex> = MultiIndex::all_up_to(nu.len(), nu.order())
        .into_iter()
        .filter(|m| !m.is_zero() && nu.minus(m).is_some())
        .collect();
    parts.reverse();

    let weights: Vec<Rational> = parts
        .iter()
        .map(|m| moments.get(m) / Rational::from_integer(m.factorial()))
        .collect();

    let mut total = Rational::zero();
    let mut chosen: Vec<(usize, u32)> = Vec::new();
    vector_partitions(nu, &parts, 0, &mut chosen, &mut |blocks| {
        let num_blocks: u32 = blocks.iter().map(|&(_, k)| k).sum();
        let mut term = Rational::from_integer(BigInt::from(factorial(num_blocks - 1)));
        if num_blocks.is_multiple_of(2) {
            term = -term;
        }
        for &(p, k) in blocks {
            let mut factor = Rational::one();
            for _ in 0..k {
                factor *= &weights[p];
            }
            term *= factor / Rational::from_integer(BigInt::from(factorial(k)));
        }
        total += term;
    });
    total * Rational::from_integer(nu.factorial())
}

/// Enumerates multisets `{(part, multiplicity)}` with `sum k * part = remaining`,
/// using parts from `start` onward.
fn vector_partitions<F>(
    remaining: &MultiIndex,
    parts: &[MultiIndex],
    start: usize,
    chosen: &mut Vec<(usize, u32)>,
    visit: &mut F,
) where
    F: FnMut(&[(usize, u32)]),
{
    if remaining.is_zero() {
        visit(chosen);
        return;
    }
    for p in start..parts.len() {
        let mut rest = remaining.clone();
        let mut k = 0;
        while let Some(next) = rest.minus(&parts[p]) {
            rest = next;
            k += 1;
            chosen.push((p, k));
            vector_partitions(&rest, parts, p + 1, chosen, visit);
            chosen.pop();
        }
    }
}

/// A disagreement between the partition and series routes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CumulantDiscrepancy {
    pub index: MultiIndex,
    #[serde(with = "serde_str")]
    pub partition_value: Rational,
    #[serde(with = "serde_str")]
    pub series_value: Rational,
}

pub fn compare_cumulant_methods(moments: &MomentTable) -> Result<Option<CumulantDiscrepancy>> {
    let series = cumulants_from_moments_series(moments)?;
    let partition = cumulants_from_moments_partition(moments)?;
    let d = moments.num_types();
    Ok(MultiIndex::all_up_to(d, moments.max_order())
        .into_iter()
        .filter(|nu| !nu.is_zero())
        .find_map(|nu| {
            let (p, s) = (partition.get(&nu), series.get(&nu));
            (p != s).then_some(CumulantDiscrepancy { index: nu, partition_value: p, series_value: s })
        }))
}

/// Mixed cumulants found by an independence audit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndependenceReport {
    pub group_a_types: usize,
    pub group_b_types: usize,
    pub checked_order: u32,
    pub nonzero_mixed: Vec<MixedCumulant>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MixedCumulant {
    pub index: MultiIndex,
    #[serde(with = "serde_str")]
    pub value: Rational,
}

impl IndependenceReport {
    pub fn is_independent(&self) -> bool {
        self.nonzero_mixed.is_empty()
    }
}

/// Lists every cumulant of `joint` whose index touches both the first
/// `group_a_types` types and the remaining ones.
pub fn mixed_cumulant_audit(joint: &MomentTable, group_a_types: usize) -> Result<IndependenceReport> {
    let d = joint.num_types();
    if group_a_types == 0 || group_a_types >= d {
        return Err(Error::InvalidArgument(format!(
            "group split {group_a_types} must lie strictly between 0 and {d}"
        )));
    }
    let kappa = cumulants_from_moments_series(joint)?;
    let nonzero_mixed = kappa
        .entries()
        .filter(|(k, _)| {
            let (a, b) = k.exponents().split_at(group_a_types);
            a.iter().any(|&e| e > 0) && b.iter().any(|&e| e > 0)
        })
        .map(|(k, v)| MixedCumulant { index: k.clone(), value: v.clone() })
        .collect();
    Ok(IndependenceReport {
        group_a_types,
        group_b_types: d - group_a_types,
        checked_order: joint.max_order(),
        nonzero_mixed,
    })
}

/// Joint table of two independent groups, audited for mixed cumulants.
///
/// `max_order` is clamped to the orders both tables determine.
pub fn between_group_cumulant_audit(
    table_a: &MomentTable,
    table_b: &MomentTable,
    max_order: u32,
) -> Result<IndependenceReport> {
    table_a.check_normalized()?;
    table_b.check_normalized()?;
    let joint = table_a.independent_product(table_b, max_order)?;
    mixed_cumulant_audit(&joint, table_a.num_types())
}

#[derive(Serialize, Deserialize)]
struct TableEntry {
    index: Vec<u32>,
    #[serde(with = "serde_str")]
    value: Rational,
}

#[derive(Serialize, Deserialize)]
struct TableRepr {
    num_types: usize,
    max_order: u32,
    values: Vec<TableEntry>,
}

impl From<Table> for TableRepr {
    fn from(t: Table) -> Self {
        TableRepr {
            num_types: t.num_types,
            max_order: t.max_order,
            values: t
                .values
                .into_iter()
                .map(|(k, value)| TableEntry { index: k.exponents().to_vec(), value })
                .collect(),
        }
    }
}

impl TryFrom<TableRepr> for Table {
    type Error = Error;

    fn try_from(r: TableRepr) -> Result<Self> {
        Table::new(
            r.num_types,
            r.max_order,
            r.values.into_iter().map(|e| (MultiIndex::new(e.index), e.value)),
        )
    }
}

impl From<MomentTable> for TableRepr {
    fn from(t: MomentTable) -> Self {
        t.0.into()
    }
}

impl TryFrom<TableRepr> for MomentTable {
    type Error = Error;

    fn try_from(r: TableRepr) -> Result<Self> {
        Table::try_from(r).map(MomentTable)
    }
}

impl From<CumulantTable> for TableRepr {
    fn from(t: CumulantTable) -> Self {
        t.0.into()
    }
}

impl TryFrom<TableRepr> for CumulantTable {
    type Error = Error;

    fn try_from(r: TableRepr) -> Result<Self> {
        let t = Table::try_from(r)?;
        CumulantTable::new(t.num_types, t.max_order, t.values)
    }
}
