//! Ostrowski-type bounds for functions whose derivative magnitude (or a power
//! of it) is s-convex in the second sense, and their midpoint forms.
//!
//! Every bound takes derivative magnitudes as data rather than a function, so
//! sweep harnesses can feed exact `|f′|` values. Writing `λ = (b−x)/(b−a)` and
//! `μ = (x−a)/(b−a)`, every bound is invariant under `x ↦ a+b−x` together with
//! `|f′(a)| ↔ |f′(b)|`.

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::types::{
    validate_eval_point, BoundInputs, BoundResult, ConjugatePair, EndpointData, Interval, SParam,
    TheoremId,
};

fn lit<T: Real>(v: f64) -> T {
    T::lit(v)
}

/// `2(s+1)r^{s+2} − (s+2)r^{s+1} + 1`, the endpoint weight of the plain
/// s-convex bound.
pub fn sconvex_bracket<T: Real>(r: T, s: SParam<T>) -> T {
    let s = s.get();
    let one = T::one();
    let two = lit::<T>(2.0);
    two * (s + one) * r.pow_nonneg(s + two) - (s + two) * r.pow_nonneg(s + one) + one
}

fn positions<T: Real>(iv: &Interval<T>, x: T) -> Result<(T, T)> {
    iv.require_sconvex_domain()?;
    validate_eval_point(iv, x)?;
    Ok(iv.relative_position(x))
}

/// `|f′|` s-convex:
/// `(b−a)/((s+1)(s+2)) · [B(λ)|f′(a)| + B(μ)|f′(b)|]` with `B` = [`sconvex_bracket`].
pub fn bound_sconvex_abs<T: Real>(
    iv: &Interval<T>,
    x: T,
    s: SParam<T>,
    ep: &EndpointData<T>,
) -> Result<BoundResult<T>> {
    let (lambda, mu) = positions(iv, x)?;
    let sv = s.get();
    let scale = iv.width() / ((sv + T::one()) * (sv + lit(2.0)));
    let value = scale * (sconvex_bracket(lambda, s) * ep.da + sconvex_bracket(mu, s) * ep.db);
    Ok(BoundResult::new(
        TheoremId::SConvexAbs,
        value,
        BoundInputs::interval(iv).x(x).s(s).endpoints(ep),
    ))
}

/// Midpoint form: `(b−a)/((s+1)(s+2)) · (1 − 2^{−(s+1)}) · (|f′(a)| + |f′(b)|)`.
pub fn midpoint_sconvex_abs<T: Real>(
    iv: &Interval<T>,
    s: SParam<T>,
    ep: &EndpointData<T>,
) -> Result<BoundResult<T>> {
    iv.require_sconvex_domain()?;
    let sv = s.get();
    let factor =
        (T::one() - lit::<T>(2.0).powf(-(sv + T::one()))) / ((sv + T::one()) * (sv + lit(2.0)));
    let value = iv.width() * factor * (ep.da + ep.db);
    Ok(BoundResult::new(
        TheoremId::MidpointSConvexAbs,
        value,
        BoundInputs::interval(iv)
            .x(iv.midpoint())
            .s(s)
            .endpoints(ep),
    ))
}

/// `|f′|^q` s-convex, Hölder applied separately on both kernel pieces.
pub fn bound_holder_split<T: Real>(
    iv: &Interval<T>,
    x: T,
    s: SParam<T>,
    cp: &ConjugatePair<T>,
    ep: &EndpointData<T>,
) -> Result<BoundResult<T>> {
    let (lambda, mu) = positions(iv, x)?;
    let (p, q) = (cp.p(), cp.q());
    let sv = s.get();
    let one = T::one();
    let (daq, dbq) = (ep.da.powf(q), ep.db.powf(q));
    let lam_s = lambda.pow_nonneg(sv + one);
    let mu_s = mu.pow_nonneg(sv + one);
    let reach = one + p.recip();

    let first = lambda.pow_nonneg(reach) * (lam_s * daq + (one - mu_s) * dbq).powf(q.recip());
    let second = mu.pow_nonneg(reach) * ((one - lam_s) * daq + mu_s * dbq).powf(q.recip());
    let value =
        iv.width() / (p + one).powf(p.recip()) / (sv + one).powf(q.recip()) * (first + second);
    Ok(BoundResult::new(
        TheoremId::HolderSplit,
        value,
        BoundInputs::interval(iv).x(x).s(s).conj(cp).endpoints(ep),
    ))
}

/// `|f′|^q` s-convex, Hölder plus the Hermite–Hadamard upper bound on
/// `[a, x]` and `[x, b]`; needs `|f′(x)|`.
pub fn bound_holder_hadamard<T: Real>(
    iv: &Interval<T>,
    x: T,
    s: SParam<T>,
    cp: &ConjugatePair<T>,
    ep: &EndpointData<T>,
) -> Result<BoundResult<T>> {
    positions(iv, x)?;
    let dx = ep.require_dx()?;
    let (p, q) = (cp.p(), cp.q());
    let s1 = s.get() + T::one();
    let dxq = dx.powf(q);
    let right = iv.b() - x;
    let left = x - iv.a();
    let value = (right * right * ((dxq + ep.db.powf(q)) / s1).powf(q.recip())
        + left * left * ((ep.da.powf(q) + dxq) / s1).powf(q.recip()))
        / (iv.width() * (p + T::one()).powf(p.recip()));
    Ok(BoundResult::new(
        TheoremId::HolderHadamard,
        value,
        BoundInputs::interval(iv).x(x).s(s).conj(cp).endpoints(ep),
    ))
}

/// Midpoint form at `s = 1` with `f′` equal at `a`, `(a+b)/2` and `b`:
/// `(b−a)/(p+1)^{1/p} · (|f′(a)| + |f′(b)|)/4`.
pub fn midpoint_e5<T: Real>(
    iv: &Interval<T>,
    cp: &ConjugatePair<T>,
    ep: &EndpointData<T>,
) -> Result<BoundResult<T>> {
    let p = cp.p();
    let value = iv.width() / (p + T::one()).powf(p.recip()) * ((ep.db + ep.da) / lit(4.0));
    Ok(BoundResult::new(
        TheoremId::MidpointE5,
        value,
        BoundInputs::interval(iv)
            .x(iv.midpoint())
            .conj(cp)
            .endpoints(ep),
    ))
}

/// `|f′|^q` s-convex, one Hölder step over the whole kernel:
/// `(b−a)/(p+1)^{1/p} · (λ^{p+1} + μ^{p+1})^{1/p} · ((|f′(a)|^q + |f′(b)|^q)/(s+1))^{1/q}`.
pub fn bound_holder_global<T: Real>(
    iv: &Interval<T>,
    x: T,
    s: SParam<T>,
    cp: &ConjugatePair<T>,
    ep: &EndpointData<T>,
) -> Result<BoundResult<T>> {
    let (lambda, mu) = positions(iv, x)?;
    let (p, q) = (cp.p(), cp.q());
    let one = T::one();
    let kernel_norm = (lambda.pow_nonneg(p + one) + mu.pow_nonneg(p + one)).powf(p.recip());
    let derivative_mean = ((ep.da.powf(q) + ep.db.powf(q)) / (s.get() + one)).powf(q.recip());
    let value = iv.width() / (p + one).powf(p.recip()) * kernel_norm * derivative_mean;
    Ok(BoundResult::new(
        TheoremId::HolderGlobal,
        value,
        BoundInputs::interval(iv).x(x).s(s).conj(cp).endpoints(ep),
    ))
}

fn check_power<T: Real>(q: T) -> Result<()> {
    if q.is_finite() && q >= T::one() {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "power-mean exponent must satisfy q >= 1, got {q}"
        )))
    }
}

/// `∫₀^r t^{s+1} dt = r^{s+2}/(s+2)`.
fn weight_near<T: Real>(r: T, s: T) -> T {
    let two = lit::<T>(2.0);
    r.pow_nonneg(s + two) / (s + two)
}

/// `r^{s+2}/(s+2) − r^{s+1}/(s+1) + 1/((s+1)(s+2))`.
fn weight_far<T: Real>(r: T, s: T) -> T {
    let one = T::one();
    let two = lit::<T>(2.0);
    r.pow_nonneg(s + two) / (s + two) - r.pow_nonneg(s + one) / (s + one)
        + one / ((s + one) * (s + two))
}

/// `|f′|^q` s-convex with `q ≥ 1`, power-mean inequality on both kernel pieces.
///
/// At `q = 1` this coincides with [`bound_sconvex_abs`].
pub fn bound_power_mean<T: Real>(
    iv: &Interval<T>,
    x: T,
    s: SParam<T>,
    q: T,
    ep: &EndpointData<T>,
) -> Result<BoundResult<T>> {
    check_power(q)?;
    let (lambda, mu) = positions(iv, x)?;
    let sv = s.get();
    let one = T::one();
    let lead = one - q.recip();
    let (daq, dbq) = (ep.da.powf(q), ep.db.powf(q));
    // Clamp tiny negative rounding in weight_far near r = 1.
    let mix = |v: T| v.max(T::zero()).powf(q.recip());

    let first = lambda.pow_nonneg(lit::<T>(2.0) * lead)
        * mix(weight_near(lambda, sv) * daq + weight_far(mu, sv) * dbq);
    let second = mu.pow_nonneg(lit::<T>(2.0) * lead)
        * mix(weight_near(mu, sv) * dbq + weight_far(lambda, sv) * daq);
    let lead_pow = if lead == T::zero() {
        one
    } else {
        lit::<T>(0.5).powf(lead)
    };
    let value = iv.width() * lead_pow * (first + second);
    Ok(BoundResult::new(
        TheoremId::PowerMean,
        value,
        BoundInputs::interval(iv).x(x).s(s).q(q).endpoints(ep),
    ))
}

/// Midpoint form at `s = 1`:
/// `(b−a)/8 · (1/3)^{1/q} · [(da^q + 3db^q)^{1/q} + (3da^q + db^q)^{1/q}]`.
pub fn midpoint_power_mean<T: Real>(
    iv: &Interval<T>,
    q: T,
    ep: &EndpointData<T>,
) -> Result<BoundResult<T>> {
    check_power(q)?;
    let three = lit::<T>(3.0);
    let (daq, dbq) = (ep.da.powf(q), ep.db.powf(q));
    let inner = (daq + three * dbq).powf(q.recip()) + (three * daq + dbq).powf(q.recip());
    let value = iv.width() / lit(8.0) * three.recip().powf(q.recip()) * inner;
    Ok(BoundResult::new(
        TheoremId::MidpointPowerMean,
        value,
        BoundInputs::interval(iv)
            .x(iv.midpoint())
            .s(SParam::one())
            .q(q)
            .endpoints(ep),
    ))
}
