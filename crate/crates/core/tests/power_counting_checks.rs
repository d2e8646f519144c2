use proptest::prelude::*;
use rptkit_core::power_counting::{
    loop_degree, leg_degree, per_line_exponent, sobolev_shift, uniformity_probe, DEFAULT_COMBINE_POINTS,
    DEFAULT_MIXTURE_POINTS,
};
use rptkit_core::{feynman_combine, symmetric_mixture, Diagram, Edge, EdgeVariance, ModelSpec, Rational, Vertex, VertexKind};

fn log_grid(n: usize) -> Vec<f64> {
    (0..n).map(|i| 10f64.powf(-1.0 + 2.0 * i as f64 / (n - 1) as f64)).collect()
}

#[test]
fn feynman_grid_within_tolerance() {
    let grid = log_grid(20);
    for &a in &grid {
        for &b in &grid {
            let c = feynman_combine(a, b, DEFAULT_COMBINE_POINTS).unwrap();
            assert!(c.abs_error <= 1e-10, "alpha {a} beta {b}: {c:?}");
        }
    }
}

/// Closed-form antiderivative of the two-propagator integrand,
/// `[1/(beta (alpha - beta))] - [1/(alpha (alpha - beta))]`, as a check that
/// the reference and the quadrature agree off the diagonal.
#[test]
fn closed_form_antiderivative_agrees() {
    for (a, b) in [(0.3, 7.0), (2.0, 1.0), (9.5, 0.11)] {
        let f = |x: f64| -1.0 / ((a - b) * (a * x + b * (1.0 - x)));
        let exact = f(1.0) - f(0.0);
        let c = feynman_combine(a, b, DEFAULT_COMBINE_POINTS).unwrap();
        assert!((exact - c.reference).abs() <= 1e-12 * c.reference);
        assert!((exact - c.value).abs() <= 1e-10);
    }
}

#[test]
fn mixture_fixtures() {
    for alphas in [[1.0, 2.0, 4.0], [0.5, 1.0, 3.0], [2.0, 2.0, 2.0]] {
        let c = symmetric_mixture(&alphas, DEFAULT_MIXTURE_POINTS).unwrap();
        assert!(c.abs_error <= 1e-8, "{alphas:?}: {c:?}");
    }
    for alphas in [[2.0, 2.0, 2.0, 2.0], [1.0, 2.0, 3.0, 4.0]] {
        let c = symmetric_mixture(&alphas, DEFAULT_MIXTURE_POINTS).unwrap();
        assert!(c.abs_error <= 1e-6, "{alphas:?}: {c:?}");
    }
}

fn tree(vertices: u32) -> Diagram {
    let vs = (0..vertices).map(|id| Vertex { id, kind: VertexKind::Bare }).collect();
    let es = (1..vertices).map(|v| Edge::new(v / 2, v, 0, EdgeVariance::UpperLower)).collect();
    Diagram::new(ModelSpec::single_type(), vs, es, vec![]).unwrap()
}

#[test]
fn trees_decay_per_propagator() {
    for v in 1..=8u32 {
        let d = tree(v);
        assert_eq!(loop_degree(&d).unwrap(), -2 * d.edges().len() as i64);
    }
}

proptest! {
    #[test]
    fn leg_degree_steps_by_four(k in 1u32..200) {
        let el = 2 * k;
        prop_assert_eq!(leg_degree(el).unwrap() - leg_degree(el - 2).unwrap(), 4);
    }

    #[test]
    fn per_line_exponent_sign(k in 1u32..200) {
        let e = per_line_exponent(2 * k).unwrap();
        if k == 1 {
            prop_assert_eq!(e, Rational::from_integer(0.into()));
        } else {
            prop_assert!(e > Rational::from_integer(0.into()));
        }
    }

    #[test]
    fn zero_index_shift_is_identity(num in -50i64..50, den in 1i64..9, k in 0u32..10) {
        let d = Rational::new(num.into(), den.into());
        prop_assert_eq!(sobolev_shift(&d, &Rational::from_integer(0.into()), k), d);
    }

    #[test]
    fn uniformity_matches_pairwise_definition(a in proptest::collection::vec(0.1f64..10.0, 1..5), m in 1.0f64..20.0) {
        let pairwise = a.iter().all(|x| a.iter().all(|y| x / y <= m && x / y >= 1.0 / m));
        prop_assert_eq!(uniformity_probe(&a, m), pairwise);
    }

    #[test]
    fn feynman_symmetric_in_its_arguments(a in 0.1f64..10.0, b in 0.1f64..10.0) {
        let x = feynman_combine(a, b, DEFAULT_COMBINE_POINTS).unwrap();
        let y = feynman_combine(b, a, DEFAULT_COMBINE_POINTS).unwrap();
        prop_assert!((x.value - y.value).abs() <= 1e-12 * x.value);
    }
}
