//! Domain types shared by every module: intervals, the s parameter, Hölder
//! pairs, derivative data, evaluators and the result/verification records.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Default absolute slack used when comparing two sides of an inequality.
pub const DEFAULT_TOL: f64 = 1e-12;

fn f64_of<T: Real>(v: T) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}

/// Closed interval `[a, b]` with `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Interval<T> {
    a: T,
    b: T,
}

impl<T: Real> Interval<T> {
    pub fn new(a: T, b: T) -> Result<Self> {
        if !(a.is_finite() && b.is_finite()) || a >= b {
            return Err(Error::InvalidInterval {
                a: f64_of(a),
                b: f64_of(b),
            });
        }
        Ok(Self { a, b })
    }

    /// Interval inside `[0, ∞)`, the home of s-convex functions.
    pub fn sconvex(a: T, b: T) -> Result<Self> {
        let iv = Self::new(a, b)?;
        iv.require_sconvex_domain()?;
        Ok(iv)
    }

    pub fn a(&self) -> T {
        self.a
    }

    pub fn b(&self) -> T {
        self.b
    }

    pub fn width(&self) -> T {
        self.b - self.a
    }

    pub fn midpoint(&self) -> T {
        (self.a + self.b) / T::lit(2.0)
    }

    pub fn contains(&self, x: T) -> bool {
        self.a <= x && x <= self.b
    }

    pub fn is_sconvex_domain(&self) -> bool {
        self.a >= T::zero()
    }

    pub fn require_sconvex_domain(&self) -> Result<()> {
        if self.is_sconvex_domain() {
            Ok(())
        } else {
            Err(Error::NegativeDomain { a: f64_of(self.a) })
        }
    }

    /// Reflection `x ↦ a + b − x`.
    pub fn reflect(&self, x: T) -> T {
        self.a + self.b - x
    }

    /// Relative distances `((b−x)/(b−a), (x−a)/(b−a))` of `x` from the endpoints.
    pub fn relative_position(&self, x: T) -> (T, T) {
        let w = self.width();
        ((self.b - x) / w, (x - self.a) / w)
    }
}

impl<T: Real> fmt::Display for Interval<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.a, self.b)
    }
}

/// Accepts `x` iff `a ≤ x ≤ b`.
pub fn validate_eval_point<T: Real>(iv: &Interval<T>, x: T) -> Result<T> {
    if iv.contains(x) {
        Ok(x)
    } else {
        Err(Error::OutOfInterval {
            x: f64_of(x),
            a: f64_of(iv.a),
            b: f64_of(iv.b),
        })
    }
}

/// The fixed `s ∈ (0, 1]` of second-sense s-convexity.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct SParam<T>(T);

impl<T: Real> SParam<T> {
    pub fn new(s: T) -> Result<Self> {
        if s > T::zero() && s <= T::one() {
            Ok(Self(s))
        } else {
            Err(Error::Domain(format!("s must lie in (0, 1], got {s}")))
        }
    }

    /// Ordinary convexity.
    pub fn one() -> Self {
        Self(T::one())
    }

    pub fn get(self) -> T {
        self.0
    }
}

/// Hölder conjugate exponents, `1/p + 1/q = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConjugatePair<T> {
    p: T,
    q: T,
}

impl<T: Real> ConjugatePair<T> {
    pub fn p(&self) -> T {
        self.p
    }

    pub fn q(&self) -> T {
        self.q
    }

    /// The same pair with the roles of `p` and `q` exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            p: self.q,
            q: self.p,
        }
    }
}

/// Builds `(p, p/(p−1))`; rejects `p ≤ 1`.
pub fn make_conjugate<T: Real>(p: T) -> Result<ConjugatePair<T>> {
    if !(p.is_finite() && p > T::one()) {
        return Err(Error::Domain(format!(
            "Hölder exponent must satisfy p > 1, got {p}"
        )));
    }
    let q = p / (p - T::one());
    Ok(ConjugatePair { p, q })
}

/// Derivative magnitudes `|f′(a)|`, `|f′(b)|` and optionally `|f′(x)|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EndpointData<T> {
    pub da: T,
    pub db: T,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dx: Option<T>,
}

impl<T: Real> EndpointData<T> {
    pub fn new(da: T, db: T) -> Result<Self> {
        Self::build(da, db, None)
    }

    pub fn with_dx(da: T, db: T, dx: T) -> Result<Self> {
        Self::build(da, db, Some(dx))
    }

    /// `|f′| ≡ m` at all three points.
    pub fn uniform(m: T) -> Result<Self> {
        Self::build(m, m, Some(m))
    }

    fn build(da: T, db: T, dx: Option<T>) -> Result<Self> {
        let ok = |v: T| v.is_finite() && v >= T::zero();
        if !ok(da) || !ok(db) || dx.is_some_and(|v| !ok(v)) {
            return Err(Error::Domain(
                "derivative magnitudes must be finite and nonnegative".into(),
            ));
        }
        Ok(Self { da, db, dx })
    }

    /// Data for the reflected point: `da ↔ db`, `dx` fixed.
    pub fn swapped(&self) -> Self {
        Self {
            da: self.db,
            db: self.da,
            dx: self.dx,
        }
    }

    pub fn require_dx(&self) -> Result<T> {
        self.dx.ok_or(Error::MissingParameter("dx (|f'(x)|)"))
    }
}

type Evaluator<T> = Arc<dyn Fn(T) -> T + Send + Sync>;

/// A real function with an optional first-derivative evaluator.
#[derive(Clone)]
pub struct Function1D<T> {
    f: Evaluator<T>,
    df: Option<Evaluator<T>>,
    label: String,
}

impl<T: Real> Function1D<T> {
    pub fn new(label: impl Into<String>, f: impl Fn(T) -> T + Send + Sync + 'static) -> Self {
        Self {
            f: Arc::new(f),
            df: None,
            label: label.into(),
        }
    }

    pub fn with_derivative(mut self, df: impl Fn(T) -> T + Send + Sync + 'static) -> Self {
        self.df = Some(Arc::new(df));
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn has_derivative(&self) -> bool {
        self.df.is_some()
    }

    pub fn eval(&self, t: T) -> T {
        (self.f)(t)
    }

    /// `f(t)`, failing on NaN or infinity.
    pub fn eval_checked(&self, t: T) -> Result<T> {
        let v = self.eval(t);
        self.finite(t, v)
    }

    /// `f′(t)`, failing when no derivative is attached or the value is not finite.
    pub fn deriv(&self, t: T) -> Result<T> {
        let df = self
            .df
            .as_ref()
            .ok_or_else(|| Error::MissingDerivative(self.label.clone()))?;
        let v = df(t);
        self.finite(t, v)
    }

    pub fn abs_deriv(&self, t: T) -> Result<T> {
        self.deriv(t).map(|v| v.abs())
    }

    /// The raw derivative evaluator, for integrands built on `f′`.
    pub fn derivative_fn(&self) -> Result<impl Fn(T) -> T + '_> {
        let df = self
            .df
            .as_ref()
            .ok_or_else(|| Error::MissingDerivative(self.label.clone()))?;
        Ok(move |t| df(t))
    }

    /// `c·f`, with the derivative scaled alongside.
    pub fn scaled(&self, c: T) -> Self {
        let f = self.f.clone();
        Self {
            f: Arc::new(move |t| c * f(t)),
            df: self
                .df
                .clone()
                .map(|df| -> Evaluator<T> { Arc::new(move |t| c * df(t)) }),
            label: format!("{c}*({})", self.label),
        }
    }

    fn finite(&self, t: T, v: T) -> Result<T> {
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite {
                label: self.label.clone(),
                at: f64_of(t),
                value: f64_of(v),
            })
        }
    }
}

impl<T> fmt::Debug for Function1D<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Function1D")
            .field("label", &self.label)
            .field("has_derivative", &self.df.is_some())
            .finish()
    }
}

/// Which inequality produced a [`BoundResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum TheoremId {
    /// Classic Ostrowski bound with `sup|f′| ≤ M`.
    #[serde(rename = "eq11")]
    ClassicOstrowski,
    /// Hölder bound with `|f′| ≤ M` for `|f′|^q` s-convex.
    #[serde(rename = "ee")]
    Alomari,
    #[serde(rename = "eq14")]
    MidpointConvex,
    #[serde(rename = "eq15")]
    MidpointHolderSplitConvex,
    #[serde(rename = "eq16")]
    MidpointHolderConvex,
    /// `|f′|` s-convex, no Hölder step.
    #[serde(rename = "t20")]
    SConvexAbs,
    #[serde(rename = "cor1")]
    MidpointSConvexAbs,
    #[serde(rename = "teo1")]
    HolderSplit,
    #[serde(rename = "t21")]
    HolderHadamard,
    #[serde(rename = "e5")]
    MidpointE5,
    #[serde(rename = "z")]
    HolderGlobal,
    #[serde(rename = "t22")]
    PowerMean,
    #[serde(rename = "c23")]
    MidpointPowerMean,
    #[serde(rename = "p1")]
    MeansGapP1,
    #[serde(rename = "p2")]
    MeansGapP2,
    #[serde(rename = "p3")]
    MeansGapP3,
}

impl TheoremId {
    pub fn tag(self) -> &'static str {
        match self {
            Self::ClassicOstrowski => "eq11",
            Self::Alomari => "ee",
            Self::MidpointConvex => "eq14",
            Self::MidpointHolderSplitConvex => "eq15",
            Self::MidpointHolderConvex => "eq16",
            Self::SConvexAbs => "t20",
            Self::MidpointSConvexAbs => "cor1",
            Self::HolderSplit => "teo1",
            Self::HolderHadamard => "t21",
            Self::MidpointE5 => "e5",
            Self::HolderGlobal => "z",
            Self::PowerMean => "t22",
            Self::MidpointPowerMean => "c23",
            Self::MeansGapP1 => "p1",
            Self::MeansGapP2 => "p2",
            Self::MeansGapP3 => "p3",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Echo of the inputs a bound was evaluated at.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundInputs<T> {
    pub a: T,
    pub b: T,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<T>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<T>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<T>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<T>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub da: Option<T>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub db: Option<T>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dx: Option<T>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<T>,
}

impl<T: Real> BoundInputs<T> {
    pub fn on(a: T, b: T) -> Self {
        Self {
            a,
            b,
            x: None,
            s: None,
            p: None,
            q: None,
            da: None,
            db: None,
            dx: None,
            m: None,
        }
    }

    pub fn interval(iv: &Interval<T>) -> Self {
        Self::on(iv.a(), iv.b())
    }

    pub fn x(mut self, x: T) -> Self {
        self.x = Some(x);
        self
    }

    pub fn s(mut self, s: SParam<T>) -> Self {
        self.s = Some(s.get());
        self
    }

    pub fn conj(mut self, cp: &ConjugatePair<T>) -> Self {
        self.p = Some(cp.p());
        self.q = Some(cp.q());
        self
    }

    pub fn p(mut self, p: T) -> Self {
        self.p = Some(p);
        self
    }

    pub fn q(mut self, q: T) -> Self {
        self.q = Some(q);
        self
    }

    pub fn endpoints(mut self, ep: &EndpointData<T>) -> Self {
        self.da = Some(ep.da);
        self.db = Some(ep.db);
        self.dx = ep.dx;
        self
    }

    pub fn m(mut self, m: T) -> Self {
        self.m = Some(m);
        self
    }
}

/// Right-hand side of one inequality together with its inputs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundResult<T> {
    pub value: T,
    pub theorem: TheoremId,
    pub inputs: BoundInputs<T>,
}

impl<T: Real> BoundResult<T> {
    pub(crate) fn new(theorem: TheoremId, value: T, inputs: BoundInputs<T>) -> Self {
        debug_assert!(
            !(value < T::zero()),
            "{theorem} produced a negative bound {value}"
        );
        Self {
            value,
            theorem,
            inputs,
        }
    }
}

/// Outcome of comparing the two sides of an inequality or identity.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationRecord<T> {
    pub lhs: T,
    pub rhs: T,
    pub holds: bool,
    /// `rhs − lhs`.
    pub margin: T,
    pub tol: T,
    pub context: String,
}

impl<T: Real> VerificationRecord<T> {
    /// `lhs ≤ rhs` up to the absolute slack `tol`.
    pub fn inequality(lhs: T, rhs: T, tol: T, context: impl Into<String>) -> Self {
        Self {
            lhs,
            rhs,
            holds: lhs <= rhs + tol,
            margin: rhs - lhs,
            tol,
            context: format!("{} [lhs <= rhs + tol, tol = {tol:e}]", context.into()),
        }
    }

    /// `|lhs − rhs| ≤ tol`.
    pub fn equality(lhs: T, rhs: T, tol: T, context: impl Into<String>) -> Self {
        Self {
            lhs,
            rhs,
            holds: (lhs - rhs).abs() <= tol,
            margin: rhs - lhs,
            tol,
            context: format!("{} [|lhs - rhs| <= tol, tol = {tol:e}]", context.into()),
        }
    }
}

/// A quadrature routine that returns `∫_a^b f` to within `tol`.
pub trait Integrator<T: Real> {
    fn integrate(&self, f: &dyn Fn(T) -> T, a: T, b: T, tol: T) -> Result<T>;
}
