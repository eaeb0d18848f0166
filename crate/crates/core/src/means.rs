//! Arithmetic, logarithmic and p-logarithmic means, and bounds on the gap
//! `|A^s − L_s^s|` obtained by applying the midpoint bounds to `t ↦ t^s`.

use serde::Serialize;

use crate::bounds::midpoint_sconvex_abs;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::toolkit::{make_breckner, true_deviation};
use crate::types::{
    make_conjugate, BoundInputs, BoundResult, EndpointData, Interval, SParam, TheoremId,
};

fn require_positive<T: Real>(a: T, b: T) -> Result<()> {
    if a > T::zero() && b > T::zero() && a.is_finite() && b.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "means need positive arguments, got ({a}, {b})"
        )))
    }
}

fn require_gap_domain<T: Real>(a: T, b: T, s: SParam<T>) -> Result<()> {
    require_positive(a, b)?;
    if a >= b {
        return Err(Error::Domain(format!(
            "gap bounds need 0 < a < b, got ({a}, {b})"
        )));
    }
    if s.get() >= T::one() {
        return Err(Error::Domain(
            "gap bounds need s in (0, 1); the gap vanishes at s = 1".into(),
        ));
    }
    Ok(())
}

/// `A(a, b) = (a+b)/2`.
pub fn arithmetic_mean<T: Real>(a: T, b: T) -> Result<T> {
    require_positive(a, b)?;
    Ok((a + b) / T::lit(2.0))
}

/// `L(a, b) = (b−a)/(ln b − ln a)`, and `a` when `a = b`.
pub fn logarithmic_mean<T: Real>(a: T, b: T) -> Result<T> {
    require_positive(a, b)?;
    if a == b {
        return Ok(a);
    }
    Ok((b - a) / (b.ln() - a.ln()))
}

/// `L_r(a, b) = [(b^{r+1} − a^{r+1})/((r+1)(b−a))]^{1/r}`, and `a` when `a = b`.
///
/// `r = −1` and `r = 0` are limits of this family and are rejected.
pub fn p_logarithmic_mean<T: Real>(a: T, b: T, r: T) -> Result<T> {
    require_positive(a, b)?;
    if r == T::zero() || r == -T::one() || !r.is_finite() {
        return Err(Error::Domain(format!(
            "p-logarithmic mean is defined by this formula only for r not in {{-1, 0}}, got {r}"
        )));
    }
    if a == b {
        return Ok(a);
    }
    let one = T::one();
    let ratio = (b.powf(r + one) - a.powf(r + one)) / ((r + one) * (b - a));
    Ok(ratio.powf(r.recip()))
}

/// `A^s − L_s^s` in closed form: `A^s − (b^{s+1} − a^{s+1})/((s+1)(b−a))`.
fn gap_closed_form<T: Real>(a: T, b: T, s: T) -> T {
    let one = T::one();
    let mean_a = (a + b) / T::lit(2.0);
    (mean_a.powf(s) - (b.powf(s + one) - a.powf(s + one)) / ((s + one) * (b - a))).abs()
}

/// `|A^s(a,b) − L_s^s(a,b)|`.
///
/// The closed form is cross-checked against the oracle deviation of `t^s` at
/// `(a+b)/2` on `[a, b]`, which is the same quantity; disagreement beyond
/// `10·oracle_tol` is an error.
pub fn means_gap<T: Real>(a: T, b: T, s: SParam<T>, oracle_tol: T) -> Result<T> {
    require_gap_domain(a, b, s)?;
    let gap = gap_closed_form(a, b, s.get());
    let f = make_breckner(T::zero(), T::one(), T::zero(), s);
    let iv = Interval::new(a, b)?;
    let oracle = true_deviation(&f, &iv, iv.midpoint(), oracle_tol)?;
    let slack = T::lit(10.0) * oracle_tol + T::lit(64.0) * T::epsilon() * (a + b);
    if (gap - oracle).abs() > slack {
        return Err(Error::Domain(format!(
            "closed-form gap {gap} disagrees with oracle deviation {oracle}"
        )));
    }
    Ok(gap)
}

/// Which gap bound to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum GapBound<T> {
    /// Plain s-convex midpoint bound.
    P1,
    /// Hölder/Hermite–Hadamard midpoint bound with exponent `p > 1`.
    P2 { p: T },
    /// Power-mean midpoint bound with exponent `q ≥ 1`.
    P3 { q: T },
}

pub fn means_gap_bound<T: Real>(
    a: T,
    b: T,
    s: SParam<T>,
    variant: GapBound<T>,
) -> Result<BoundResult<T>> {
    require_gap_domain(a, b, s)?;
    let sv = s.get();
    let one = T::one();
    let width = b - a;
    let inputs = BoundInputs::on(a, b).x((a + b) / T::lit(2.0)).s(s);
    match variant {
        GapBound::P1 => {
            let factor =
                sv / ((sv + one) * (sv + T::lit(2.0))) * (one - T::lit(2.0).powf(-(sv + one)));
            let value = width * factor * (a.powf(sv - one) + b.powf(sv - one));
            Ok(BoundResult::new(TheoremId::MeansGapP1, value, inputs))
        }
        GapBound::P2 { p } => {
            let cp = make_conjugate(p)?;
            let q = cp.q();
            let e = q * (sv - one);
            let mean = arithmetic_mean(a, b)?;
            let s1 = sv + one;
            let inner = ((mean.powf(e) + b.powf(e)) / s1).powf(q.recip())
                + ((a.powf(e) + mean.powf(e)) / s1).powf(q.recip());
            let value = sv * width / T::lit(4.0) / (p + one).powf(p.recip()) * inner;
            Ok(BoundResult::new(
                TheoremId::MeansGapP2,
                value,
                inputs.conj(&cp),
            ))
        }
        GapBound::P3 { q } => {
            if !(q.is_finite() && q >= one) {
                return Err(Error::Domain(format!(
                    "power-mean exponent must satisfy q >= 1, got {q}"
                )));
            }
            let e = q * (sv - one);
            let three = T::lit(3.0);
            let inner = arithmetic_mean(a.powf(e), three * b.powf(e))?.powf(q.recip())
                + arithmetic_mean(three * a.powf(e), b.powf(e))?.powf(q.recip());
            let value = sv * width / T::lit(8.0) * (T::lit(2.0) / three).powf(q.recip()) * inner;
            Ok(BoundResult::new(TheoremId::MeansGapP3, value, inputs.q(q)))
        }
    }
}

/// The midpoint bound for `t^s` fed with the exact `|f′| = s·t^{s−1}` at the endpoints.
pub fn gap_bound_via_midpoint<T: Real>(a: T, b: T, s: SParam<T>) -> Result<BoundResult<T>> {
    require_gap_domain(a, b, s)?;
    let sv = s.get();
    let deriv = |t: T| sv * t.powf(sv - T::one());
    let ep = EndpointData::new(deriv(a), deriv(b))?;
    midpoint_sconvex_abs(&Interval::sconvex(a, b)?, s, &ep)
}

/// One row of the `means` report.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeansRow<T> {
    pub a: T,
    pub b: T,
    pub s: T,
    pub a_pow_s: T,
    pub ls_pow_s: T,
    pub gap: T,
    pub p1: T,
    pub p2: T,
    pub p3: T,
}

pub fn means_row<T: Real>(
    a: T,
    b: T,
    s: SParam<T>,
    p: T,
    q: T,
    oracle_tol: T,
) -> Result<MeansRow<T>> {
    let sv = s.get();
    let gap = means_gap(a, b, s, oracle_tol)?;
    Ok(MeansRow {
        a,
        b,
        s: sv,
        a_pow_s: arithmetic_mean(a, b)?.powf(sv),
        ls_pow_s: p_logarithmic_mean(a, b, sv)?.powf(sv),
        gap,
        p1: means_gap_bound(a, b, s, GapBound::P1)?.value,
        p2: means_gap_bound(a, b, s, GapBound::P2 { p })?.value,
        p3: means_gap_bound(a, b, s, GapBound::P3 { q })?.value,
    })
}
