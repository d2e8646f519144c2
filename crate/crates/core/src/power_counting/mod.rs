//! UV degree bookkeeping and Feynman-parameter checks.
//!
//! Two degree notions live side by side and are never mixed: the
//! whole-diagram degree `2(el - 2)` read off the external leg count, and the
//! standard four-dimensional loop degree `4L - 2I` read off the topology.
//! Sobolev indices enter only as a shift of `s` per integration variable.
//!
//! Floating point appears only in the quadrature checks at the bottom of this
//! module; every one of them carries its tolerance explicitly.

mod quadrature;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

pub use quadrature::GaussLegendre;

use crate::diagram::{is_connected, Diagram};
use crate::error::{Error, Result};
use crate::rational::{serde_opt_str, serde_str, Rational};

/// Default node count for [`feynman_combine`]: the integrand has a pole
/// just outside `[0, 1]` when `alpha/beta` is far from one, and 128 nodes
/// keep the error below `1e-10` on the whole `[0.1, 10]^2` range.
pub const DEFAULT_COMBINE_POINTS: usize = 128;
/// Default nodes per simplex coordinate for [`symmetric_mixture`].
pub const DEFAULT_MIXTURE_POINTS: usize = 64;
pub const MIN_QUADRATURE_POINTS: usize = 16;
pub const MAX_MIXTURE_PROPAGATORS: usize = 4;

/// `2(el - 2)`; `el` must be even.
pub fn leg_degree(el: u32) -> Result<i64> {
    if el % 2 == 1 {
        return Err(Error::OddLegCount(el));
    }
    Ok(2 * (el as i64 - 2))
}

/// `(el - 2) / el = 1 - 2/el`; undefined for vacuum diagrams.
pub fn per_line_exponent(el: u32) -> Result<Rational> {
    if el == 0 {
        return Err(Error::UndefinedForVacuum);
    }
    if el % 2 == 1 {
        return Err(Error::OddLegCount(el));
    }
    Ok(Rational::new(BigInt::from(el as i64 - 2), BigInt::from(el)))
}

/// First Betti number `I - V + 1` of a connected diagram.
pub fn loop_number(d: &Diagram) -> Result<u32> {
    if !is_connected(d) {
        return Err(Error::Disconnected);
    }
    let edges = d.edges().len() as i64;
    let vertices = d.vertices().len() as i64;
    Ok((edges - vertices + 1).max(0) as u32)
}

/// `4L - 2I`: four powers of momentum per loop, `p^-2` per propagator.
pub fn loop_degree(d: &Diagram) -> Result<i64> {
    let loops = loop_number(d)? as i64;
    Ok(4 * loops - 2 * d.edges().len() as i64)
}

/// `degree + s * num_momentum_vars`.
pub fn sobolev_shift(degree: &Rational, index: &Rational, num_momentum_vars: u32) -> Rational {
    degree + index * Rational::from_integer(BigInt::from(num_momentum_vars))
}

/// `j <= n^delta`, the admissible Schwinger-function order at RPT order `n`.
/// No value of `delta` is asserted anywhere; callers supply it.
pub fn schwinger_order_admissible(j: u32, n: u32, delta: f64) -> bool {
    delta > 0.0 && (j as f64) <= (n as f64).powf(delta)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    Convergent,
    Logarithmic,
    PowerDivergent,
}

impl Classification {
    pub fn of(degree: &Rational) -> Self {
        if degree.is_negative() {
            Classification::Convergent
        } else if degree.is_zero() {
            Classification::Logarithmic
        } else {
            Classification::PowerDivergent
        }
    }
}

/// Both degree notions for one diagram, with the Sobolev-shifted loop
/// degree and its classification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DivergenceReport {
    pub el: u32,
    pub leg_degree: i64,
    #[serde(with = "serde_opt_str")]
    pub per_line_exponent: Option<Rational>,
    pub loops: u32,
    pub loop_degree: i64,
    #[serde(with = "serde_str")]
    pub sobolev_index: Rational,
    #[serde(with = "serde_str")]
    pub shifted_degree: Rational,
    pub classification: Classification,
    /// Free-form lattice-spacing annotation; never enters any formula.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lattice_spacing: Option<String>,
}

impl DivergenceReport {
    /// Shifts the loop degree by `sobolev_index` per loop momentum.
    pub fn for_diagram(d: &Diagram, sobolev_index: Rational) -> Result<Self> {
        let el = d.el();
        let leg_degree = leg_degree(el)?;
        let per_line_exponent = if el == 0 { None } else { Some(per_line_exponent(el)?) };
        let loops = loop_number(d)?;
        let loop_degree = loop_degree(d)?;
        let shifted_degree =
            sobolev_shift(&Rational::from_integer(loop_degree.into()), &sobolev_index, loops);
        Ok(DivergenceReport {
            el,
            leg_degree,
            per_line_exponent,
            loops,
            loop_degree,
            classification: Classification::of(&shifted_degree),
            sobolev_index,
            shifted_degree,
            lattice_spacing: None,
        })
    }

    pub fn with_lattice_spacing(mut self, label: impl Into<String>) -> Self {
        self.lattice_spacing = Some(label.into());
        self
    }
}

/// A quadrature value next to its closed-form reference.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureCheck {
    pub value: f64,
    pub reference: f64,
    pub abs_error: f64,
}

fn check_positive(name: &str, x: f64) -> Result<()> {
    if !(x.is_finite() && x > 0.0) {
        return Err(Error::InvalidArgument(format!("{name} must be positive and finite, got {x}")));
    }
    Ok(())
}

/// `int_0^1 dx / [alpha x + beta (1 - x)]^2` against `1/(alpha beta)`.
pub fn feynman_combine(alpha: f64, beta: f64, points: usize) -> Result<QuadratureCheck> {
    check_positive("alpha", alpha)?;
    check_positive("beta", beta)?;
    if points < MIN_QUADRATURE_POINTS {
        return Err(Error::InvalidArgument(format!(
            "need at least {MIN_QUADRATURE_POINTS} quadrature points, got {points}"
        )));
    }
    let rule = GaussLegendre::new(points);
    let value = rule.integrate(0.0, 1.0, |x| {
        // exactly constant when alpha == beta
        let d = beta + (alpha - beta) * x;
        1.0 / (d * d)
    });
    let reference = 1.0 / (alpha * beta);
    Ok(QuadratureCheck { value, reference, abs_error: (value - reference).abs() })
}

/// `(n-1)! int_simplex dx / [sum x_i alpha_i]^n` against `1 / prod alpha_i`.
///
/// The simplex is flattened by `x_k = r_k t_k`, `r_{k+1} = r_k (1 - t_k)`,
/// with Jacobian `prod r_k`, and each `t_k` integrated by Gauss–Legendre.
pub fn symmetric_mixture(alphas: &[f64], points: usize) -> Result<QuadratureCheck> {
    let n = alphas.len();
    if n < 2 {
        return Err(Error::InvalidArgument("a mixture needs at least two propagators".into()));
    }
    if n > MAX_MIXTURE_PROPAGATORS {
        return Err(Error::CapExceeded {
            what: "propagators",
            value: n as u64,
            cap: MAX_MIXTURE_PROPAGATORS as u64,
        });
    }
    for &a in alphas {
        check_positive("alpha", a)?;
    }
    if points < MIN_QUADRATURE_POINTS {
        return Err(Error::InvalidArgument(format!(
            "need at least {MIN_QUADRATURE_POINTS} quadrature points, got {points}"
        )));
    }
    let rule = GaussLegendre::new(points);
    let nodes: Vec<(f64, f64)> = rule.on_interval(0.0, 1.0).collect();
    let integral = simplex_level(alphas, &nodes, 0, 1.0, 0.0);
    let factorial: f64 = (1..n).map(|k| k as f64).product();
    let value = factorial * integral;
    let reference = 1.0 / alphas.iter().product::<f64>();
    Ok(QuadratureCheck { value, reference, abs_error: (value - reference).abs() })
}

fn simplex_level(alphas: &[f64], nodes: &[(f64, f64)], k: usize, remaining: f64, acc: f64) -> f64 {
    let n = alphas.len();
    if k == n - 1 {
        let denom = acc + remaining * alphas[k];
        return denom.powi(-(n as i32));
    }
    nodes
        .iter()
        .map(|&(t, w)| {
            w * remaining
                * simplex_level(alphas, nodes, k + 1, remaining * (1.0 - t), acc + remaining * t * alphas[k])
        })
        .sum()
}

/// True iff every pairwise ratio of `alphas` lies in `[1/M, M]`.
pub fn uniformity_probe(alphas: &[f64], ratio_bound: f64) -> bool {
    let (min, max) = alphas
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &a| (lo.min(a), hi.max(a)));
    if alphas.len() < 2 {
        return ratio_bound >= 1.0;
    }
    max <= ratio_bound * min
}
