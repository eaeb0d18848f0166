//! Composite midpoint rule with error bounds built from endpoint derivative
//! magnitudes, and a certified integrator that doubles a uniform partition
//! until the bound meets a target.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::{CompensatedSum, Real};
use crate::types::{make_conjugate, ConjugatePair, Function1D, Integrator, Interval};

/// Default panel budget for [`certified_integrate`].
pub const DEFAULT_PANEL_BUDGET: usize = 1 << 20;

/// Nodes `a = x₀ < x₁ < … < x_n = b`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Partition<T> {
    nodes: Vec<T>,
}

impl<T: Real> Partition<T> {
    pub fn new(nodes: Vec<T>) -> Result<Self> {
        if nodes.len() < 2 {
            return Err(Error::Domain("a partition needs at least two nodes".into()));
        }
        if nodes.iter().any(|v| !v.is_finite()) || nodes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Domain(
                "partition nodes must be finite and strictly increasing".into(),
            ));
        }
        Ok(Self { nodes })
    }

    /// `n` equal panels over `iv`; the last node is exactly `b`.
    pub fn uniform(iv: &Interval<T>, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("a partition needs at least one panel".into()));
        }
        let h = iv.width() / T::count(n);
        let mut nodes: Vec<T> = (0..n).map(|i| iv.a() + h * T::count(i)).collect();
        nodes.push(iv.b());
        Self::new(nodes)
    }

    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    pub fn panels(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn interval(&self) -> Interval<T> {
        Interval::new(self.nodes[0], self.nodes[self.nodes.len() - 1])
            .expect("partition endpoints are ordered")
    }

    /// A copy with `x` inserted, if it falls strictly inside a panel.
    pub fn refined(&self, x: T) -> Result<Self> {
        let mut nodes = self.nodes.clone();
        let pos = nodes.partition_point(|&v| v < x);
        nodes.insert(pos, x);
        Self::new(nodes)
    }
}

/// `T(f, d) = Σ f((x_i + x_{i+1})/2)·(x_{i+1} − x_i)`.
pub fn composite_midpoint<T: Real>(fun: &Function1D<T>, d: &Partition<T>) -> Result<T> {
    let mut acc = CompensatedSum::new();
    for w in d.nodes().windows(2) {
        let mid = (w[0] + w[1]) / T::lit(2.0);
        acc.add(fun.eval_checked(mid)? * (w[1] - w[0]));
    }
    Ok(acc.value())
}

/// Midpoint-error bound family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MidpointVariant<T> {
    /// `1/(4(p+1)^{1/p}) Σ h_i² (|f′(x_i)| + |f′(x_{i+1})|)`
    P4 { cp: ConjugatePair<T> },
    /// `1/(2√6) Σ h_i² (|f′(x_i)|² + |f′(x_{i+1})|²)^{1/2}`
    P5,
    /// `(1/8)(1/3)^{1/q} Σ h_i² [(|f′(x_i)|^q + 3|f′(x_{i+1})|^q)^{1/q} + (3|f′(x_i)|^q + |f′(x_{i+1})|^q)^{1/q}]`
    P6 { q: T },
}

impl<T: Real> MidpointVariant<T> {
    pub fn p4(p: T) -> Result<Self> {
        Ok(Self::P4 {
            cp: make_conjugate(p)?,
        })
    }

    pub fn p6(q: T) -> Result<Self> {
        if q.is_finite() && q >= T::one() {
            Ok(Self::P6 { q })
        } else {
            Err(Error::Domain(format!(
                "power-mean exponent must satisfy q >= 1, got {q}"
            )))
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Self::P4 { .. } => "p4",
            Self::P5 => "p5",
            Self::P6 { .. } => "p6",
        }
    }

    fn panel_term(&self, left: T, right: T) -> T {
        match *self {
            Self::P4 { .. } => left + right,
            Self::P5 => (left * left + right * right).sqrt(),
            Self::P6 { q } => {
                let three = T::lit(3.0);
                let (lq, rq) = (left.powf(q), right.powf(q));
                (lq + three * rq).powf(q.recip()) + (three * lq + rq).powf(q.recip())
            }
        }
    }

    fn prefactor(&self) -> T {
        match *self {
            Self::P4 { cp } => {
                let p = cp.p();
                T::one() / (T::lit(4.0) * (p + T::one()).powf(p.recip()))
            }
            Self::P5 => T::one() / (T::lit(2.0) * T::lit(6.0).sqrt()),
            Self::P6 { q } => T::lit(3.0).recip().powf(q.recip()) / T::lit(8.0),
        }
    }
}

impl<T: Real> fmt::Display for MidpointVariant<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl<T: Real> Serialize for MidpointVariant<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.tag())
    }
}

/// Error bound for `d` from `|f′|` at every node.
pub fn midpoint_error_bound<T: Real>(
    d: &Partition<T>,
    dvals: &[T],
    variant: &MidpointVariant<T>,
) -> Result<T> {
    if dvals.len() != d.nodes().len() {
        return Err(Error::LengthMismatch {
            nodes: d.nodes().len(),
            values: dvals.len(),
        });
    }
    if dvals.iter().any(|v| !(v.is_finite() && *v >= T::zero())) {
        return Err(Error::Domain(
            "derivative magnitudes must be finite and nonnegative".into(),
        ));
    }
    let mut acc = CompensatedSum::new();
    for (w, dv) in d.nodes().windows(2).zip(dvals.windows(2)) {
        let h = w[1] - w[0];
        acc.add(h * h * variant.panel_term(dv[0], dv[1]));
    }
    Ok(variant.prefactor() * acc.value())
}

/// Certified midpoint approximation.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound(serialize = "T: Real + Serialize"))]
pub struct QuadReport<T> {
    pub approx: T,
    pub error_bound: T,
    pub variant: MidpointVariant<T>,
    pub panels: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub true_error: Option<T>,
}

impl<T: Real> QuadReport<T> {
    /// Fills `true_error = ∫f − approx` from the oracle.
    pub fn verify(
        &mut self,
        fun: &Function1D<T>,
        iv: &Interval<T>,
        oracle: &dyn Integrator<T>,
        tol: T,
    ) -> Result<T> {
        let exact = oracle.integrate(&|t| fun.eval(t), iv.a(), iv.b(), tol)?;
        let err = exact - self.approx;
        self.true_error = Some(err);
        Ok(err)
    }
}

/// `|f′|` at every node, from the exact derivative evaluator.
pub fn node_derivatives<T: Real>(fun: &Function1D<T>, d: &Partition<T>) -> Result<Vec<T>> {
    d.nodes().iter().map(|&x| fun.abs_deriv(x)).collect()
}

/// Doubles a uniform partition from one panel until the chosen bound is at
/// most `target`, or fails once `budget` panels would be exceeded.
pub fn certified_integrate<T: Real>(
    fun: &Function1D<T>,
    iv: &Interval<T>,
    target: T,
    variant: MidpointVariant<T>,
    budget: usize,
) -> Result<QuadReport<T>> {
    if !(target > T::zero() && target.is_finite()) {
        return Err(Error::Domain(format!(
            "target error must be positive, got {target}"
        )));
    }
    if !fun.has_derivative() {
        return Err(Error::MissingDerivative(fun.label().to_string()));
    }
    let mut n = 1usize;
    loop {
        let d = Partition::uniform(iv, n)?;
        let dvals = node_derivatives(fun, &d)?;
        let bound = midpoint_error_bound(&d, &dvals, &variant)?;
        if bound <= target {
            return Ok(QuadReport {
                approx: composite_midpoint(fun, &d)?,
                error_bound: bound,
                variant,
                panels: n,
                true_error: None,
            });
        }
        match n.checked_mul(2) {
            Some(next) if next <= budget => n = next,
            _ => {
                return Err(Error::BudgetExhausted {
                    budget,
                    bound: bound.to_f64().unwrap_or(f64::NAN),
                    target: target.to_f64().unwrap_or(f64::NAN),
                })
            }
        }
    }
}
