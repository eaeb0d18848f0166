//! Montgomery-type kernel identity and the classical baseline inequalities
//! the new bounds are compared against.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::types::{
    validate_eval_point, BoundInputs, BoundResult, ConjugatePair, EndpointData, Function1D,
    Integrator, Interval, SParam, TheoremId, VerificationRecord,
};

/// `λ = (b−x)/(b−a)`, where the kernel switches from `t` to `t − 1`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct KernelBreakpoint<T>(T);

impl<T: Real> KernelBreakpoint<T> {
    pub fn at(iv: &Interval<T>, x: T) -> Result<Self> {
        validate_eval_point(iv, x)?;
        let lambda = (iv.b() - x) / iv.width();
        Ok(Self(lambda.max(T::zero()).min(T::one())))
    }

    pub fn lambda(self) -> T {
        self.0
    }
}

/// Kernel `p(t)`: `t` on `[0, λ]`, `t − 1` on `(λ, 1]`.
pub fn montgomery_kernel<T: Real>(t: T, iv: &Interval<T>, x: T) -> Result<T> {
    if !(t >= T::zero() && t <= T::one()) {
        return Err(Error::Domain(format!(
            "kernel argument t must lie in [0, 1], got {t}"
        )));
    }
    let bp = KernelBreakpoint::at(iv, x)?;
    Ok(kernel_value(t, bp))
}

fn kernel_value<T: Real>(t: T, bp: KernelBreakpoint<T>) -> T {
    if t <= bp.lambda() {
        t
    } else {
        t - T::one()
    }
}

/// Checks `f(x) − mean(f) = (a−b)∫₀¹ p(t) f′(ta+(1−t)b) dt` with the injected integrator.
///
/// The right-hand integral is split at the kernel breakpoint so both pieces
/// have smooth integrands.
pub fn verify_montgomery_identity<T: Real>(
    fun: &Function1D<T>,
    iv: &Interval<T>,
    x: T,
    tol: T,
    oracle: &dyn Integrator<T>,
) -> Result<VerificationRecord<T>> {
    let df = fun.derivative_fn()?;
    let bp = KernelBreakpoint::at(iv, x)?;
    let (a, b) = (iv.a(), iv.b());
    let inner_tol = tol / T::lit(16.0);

    let integral = oracle.integrate(&|u| fun.eval(u), a, b, inner_tol * iv.width())?;
    let lhs = fun.eval_checked(x)? - integral / iv.width();

    let along = |t: T| df(t * a + (T::one() - t) * b);
    let lam = bp.lambda();
    let rising = oracle.integrate(&|t| t * along(t), T::zero(), lam, inner_tol / iv.width())?;
    let falling = oracle.integrate(
        &|t| (t - T::one()) * along(t),
        lam,
        T::one(),
        inner_tol / iv.width(),
    )?;
    let rhs = (a - b) * (rising + falling);

    if !(lhs.is_finite() && rhs.is_finite()) {
        return Err(Error::NonFinite {
            label: fun.label().to_string(),
            at: x.to_f64().unwrap_or(f64::NAN),
            value: f64::NAN,
        });
    }
    Ok(VerificationRecord::equality(
        lhs,
        rhs,
        tol,
        format!("kernel identity for `{}` on {iv} at x = {x}", fun.label()),
    ))
}

/// `M(b−a)[1/4 + (x − (a+b)/2)²/(b−a)²]`.
pub fn classic_ostrowski_bound<T: Real>(iv: &Interval<T>, x: T, m: T) -> Result<BoundResult<T>> {
    validate_eval_point(iv, x)?;
    if !(m >= T::zero() && m.is_finite()) {
        return Err(Error::Domain(format!(
            "derivative bound M must be nonnegative, got {m}"
        )));
    }
    let w = iv.width();
    let off = (x - iv.midpoint()) / w;
    let value = m * w * (T::lit(0.25) + off * off);
    Ok(BoundResult::new(
        TheoremId::ClassicOstrowski,
        value,
        BoundInputs::interval(iv).x(x).m(m),
    ))
}

/// Lower end, mean and upper end of the Hermite–Hadamard bracket for an
/// s-convex function, with one record per inequality.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HadamardCheck<T> {
    pub lower: T,
    pub mean: T,
    pub upper: T,
    pub lower_record: VerificationRecord<T>,
    pub upper_record: VerificationRecord<T>,
}

/// `2^{s−1} f((a+b)/2) ≤ mean(f) ≤ (f(a)+f(b))/(s+1)`.
pub fn hadamard_sconvex_bounds<T: Real>(
    fun: &Function1D<T>,
    iv: &Interval<T>,
    s: SParam<T>,
    tol: T,
    oracle: &dyn Integrator<T>,
) -> Result<HadamardCheck<T>> {
    iv.require_sconvex_domain()?;
    let sv = s.get();
    let lower = T::lit(2.0).powf(sv - T::one()) * fun.eval_checked(iv.midpoint())?;
    let upper = (fun.eval_checked(iv.a())? + fun.eval_checked(iv.b())?) / (sv + T::one());
    let oracle_tol = tol / T::lit(16.0);
    let mean =
        oracle.integrate(&|u| fun.eval(u), iv.a(), iv.b(), oracle_tol * iv.width())? / iv.width();
    let ctx = |side: &str| {
        format!(
            "Hermite-Hadamard {side} for `{}` on {iv}, s = {sv}",
            fun.label()
        )
    };
    Ok(HadamardCheck {
        lower,
        mean,
        upper,
        lower_record: VerificationRecord::inequality(lower, mean, tol, ctx("lower")),
        upper_record: VerificationRecord::inequality(mean, upper, tol, ctx("upper")),
    })
}

/// `M/(1+p)^{1/p} · (2/(s+1))^{1/q} · ((x−a)² + (b−x)²)/(b−a)`.
pub fn alomari_bound<T: Real>(
    iv: &Interval<T>,
    x: T,
    s: SParam<T>,
    cp: &ConjugatePair<T>,
    m: T,
) -> Result<BoundResult<T>> {
    validate_eval_point(iv, x)?;
    if !(m >= T::zero() && m.is_finite()) {
        return Err(Error::Domain(format!(
            "derivative bound M must be nonnegative, got {m}"
        )));
    }
    let (p, q) = (cp.p(), cp.q());
    let sv = s.get();
    let left = x - iv.a();
    let right = iv.b() - x;
    let value = m / (T::one() + p).powf(p.recip())
        * (T::lit(2.0) / (sv + T::one())).powf(q.recip())
        * ((left * left + right * right) / iv.width());
    Ok(BoundResult::new(
        TheoremId::Alomari,
        value,
        BoundInputs::interval(iv).x(x).s(s).conj(cp).m(m),
    ))
}

/// The three classical midpoint inequalities for convex `|f′|` (or `|f′|^{p/(p−1)}`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MidpointBaseline {
    /// `(b−a)/4 · (|f′(a)| + |f′(b)|)/2`
    Eq14,
    /// `(b−a)/16 · (4/(p+1))^{1/p} · [(da^q + 3db^q)^{1/q} + (3da^q + db^q)^{1/q}]`
    Eq15,
    /// `(b−a)/4 · (4/(p+1))^{1/p} · (da + db)`
    Eq16,
}

pub fn baseline_midpoint_bound<T: Real>(
    variant: MidpointBaseline,
    iv: &Interval<T>,
    cp: Option<&ConjugatePair<T>>,
    da: T,
    db: T,
) -> Result<BoundResult<T>> {
    let ep = EndpointData::new(da, db)?;
    let w = iv.width();
    let inputs = BoundInputs::interval(iv).endpoints(&ep);
    match variant {
        MidpointBaseline::Eq14 => Ok(BoundResult::new(
            TheoremId::MidpointConvex,
            w / T::lit(4.0) * ((da + db) / T::lit(2.0)),
            inputs,
        )),
        MidpointBaseline::Eq15 => {
            let cp = cp.ok_or(Error::MissingParameter("p (Hölder exponent) for eq15"))?;
            let (p, q) = (cp.p(), cp.q());
            let three = T::lit(3.0);
            let inner = (da.powf(q) + three * db.powf(q)).powf(q.recip())
                + (three * da.powf(q) + db.powf(q)).powf(q.recip());
            let value = w / T::lit(16.0) * (T::lit(4.0) / (p + T::one())).powf(p.recip()) * inner;
            Ok(BoundResult::new(
                TheoremId::MidpointHolderSplitConvex,
                value,
                inputs.conj(cp),
            ))
        }
        MidpointBaseline::Eq16 => {
            let cp = cp.ok_or(Error::MissingParameter("p (Hölder exponent) for eq16"))?;
            let p = cp.p();
            let value =
                w / T::lit(4.0) * (T::lit(4.0) / (p + T::one())).powf(p.recip()) * (da + db);
            Ok(BoundResult::new(
                TheoremId::MidpointHolderConvex,
                value,
                inputs.conj(cp),
            ))
        }
    }
}
