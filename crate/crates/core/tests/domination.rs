use proptest::prelude::*;
use sconvex_ostrowski::{
    bound_holder_global, bound_holder_hadamard, bound_holder_split, bound_power_mean,
    bound_sconvex_abs, make_conjugate, true_deviation, EndpointData, Function1D, Interval, SParam,
};

const SLACK: f64 = 1e-9;

/// Every bound at `x`, each paired with its name.
fn all_bounds(
    fun: &Function1D<f64>,
    iv: &Interval<f64>,
    x: f64,
    s: f64,
    p: f64,
) -> Vec<(&'static str, f64)> {
    let s = SParam::new(s).unwrap();
    let cp = make_conjugate(p).unwrap();
    let ep = EndpointData::with_dx(
        fun.abs_deriv(iv.a()).unwrap(),
        fun.abs_deriv(iv.b()).unwrap(),
        fun.abs_deriv(x).unwrap(),
    )
    .unwrap();
    vec![
        ("t20", bound_sconvex_abs(iv, x, s, &ep).unwrap().value),
        (
            "teo1",
            bound_holder_split(iv, x, s, &cp, &ep).unwrap().value,
        ),
        (
            "t21",
            bound_holder_hadamard(iv, x, s, &cp, &ep).unwrap().value,
        ),
        ("z", bound_holder_global(iv, x, s, &cp, &ep).unwrap().value),
        (
            "t22",
            bound_power_mean(iv, x, s, cp.q(), &ep).unwrap().value,
        ),
    ]
}

fn assert_dominates(
    fun: &Function1D<f64>,
    iv: &Interval<f64>,
    x: f64,
    s: f64,
    p: f64,
) -> Result<(), TestCaseError> {
    let dev = true_deviation(fun, iv, x, 1e-12).unwrap();
    for (name, bound) in all_bounds(fun, iv, x, s, p) {
        prop_assert!(
            bound - dev >= -SLACK,
            "{name}: bound {bound} < deviation {dev} for {} on {iv}, x = {x}, s = {s}, p = {p}",
            fun.label()
        );
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    // f' = v·t^r with s ≤ r ≤ 1 is in the s-convex class, and so is every power of it.
    #[test]
    fn power_derivatives(
        v in 0.1f64..3.0,
        s in 0.05f64..=1.0,
        r_frac in 0.0f64..=1.0,
        a in 0.0f64..2.0,
        w in 0.1f64..3.0,
        x_frac in 0.0f64..=1.0,
        p in 1.1f64..6.0,
    ) {
        let r = s + (1.0 - s) * r_frac;
        let fun = Function1D::new("v t^(r+1)/(r+1)", move |t: f64| v * t.powf(r + 1.0) / (r + 1.0))
            .with_derivative(move |t| v * t.powf(r));
        let iv = Interval::new(a, a + w).unwrap();
        assert_dominates(&fun, &iv, a + w * x_frac, s, p)?;
    }

    // Nonnegative convex f' is s-convex for every s.
    #[test]
    fn convex_quadratic_derivatives(
        c0 in 0.0f64..2.0,
        c1 in 0.0f64..2.0,
        c2 in 0.0f64..2.0,
        s in 0.05f64..=1.0,
        a in 0.0f64..2.0,
        w in 0.1f64..3.0,
        x_frac in 0.0f64..=1.0,
        p in 1.1f64..6.0,
    ) {
        let fun = Function1D::new("cubic", move |t: f64| c0 * t + c1 * t * t / 2.0 + c2 * t * t * t / 3.0)
            .with_derivative(move |t| c0 + c1 * t + c2 * t * t);
        let iv = Interval::new(a, a + w).unwrap();
        assert_dominates(&fun, &iv, a + w * x_frac, s, p)?;
    }
}

#[test]
fn concave_derivative_breaks_domination() {
    // |f'| = 6t(1−t) vanishes at both ends.
    let fun = Function1D::new("3t²−2t³", |t: f64| 3.0 * t * t - 2.0 * t * t * t)
        .with_derivative(|t| 6.0 * t - 6.0 * t * t);
    let iv = Interval::new(0.0, 1.0).unwrap();
    let dev = true_deviation(&fun, &iv, 0.0, 1e-12).unwrap();
    assert!((dev - 0.5).abs() < 1e-12);
    for (name, bound) in all_bounds(&fun, &iv, 0.0, 1.0, 2.0) {
        assert!(bound < dev, "{name} unexpectedly dominates");
    }
}
