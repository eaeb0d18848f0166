use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::types::{Function1D, Interval, SParam};

/// Grid size used by [`check_sconvex`] when the caller has no preference.
pub const DEFAULT_GRID_N: usize = 21;

/// `f(0) = u`, `f(t) = v·t^s + w` for `t > 0`.
///
/// Members with `v ≥ 0` and `0 ≤ w ≤ u` are s-convex in the second sense.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BrecknerFunction<T> {
    pub u: T,
    pub v: T,
    pub w: T,
    pub s: SParam<T>,
}

impl<T: Real> BrecknerFunction<T> {
    pub fn new(u: T, v: T, w: T, s: SParam<T>) -> Self {
        Self { u, v, w, s }
    }

    /// Sufficient membership condition; parameters outside it are not decided.
    pub fn satisfies_membership(&self) -> bool {
        self.v >= T::zero() && T::zero() <= self.w && self.w <= self.u
    }

    pub fn eval(&self, t: T) -> T {
        if t == T::zero() {
            self.u
        } else {
            self.v * t.powf(self.s.get()) + self.w
        }
    }

    /// `v·s·t^{s−1}`; undefined (NaN) at `t = 0` unless `s = 1`.
    pub fn deriv(&self, t: T) -> T {
        let s = self.s.get();
        if t == T::zero() && s < T::one() {
            T::nan()
        } else if s == T::one() {
            self.v
        } else {
            self.v * s * t.powf(s - T::one())
        }
    }

    pub fn to_function(self) -> Function1D<T> {
        let label = format!("breckner:{},{},{},{}", self.u, self.v, self.w, self.s.get());
        Function1D::new(label, move |t| self.eval(t)).with_derivative(move |t| self.deriv(t))
    }
}

/// Breckner member as an evaluator pair.
pub fn make_breckner<T: Real>(u: T, v: T, w: T, s: SParam<T>) -> Function1D<T> {
    BrecknerFunction::new(u, v, w, s).to_function()
}

/// Result of a grid search for violations of the s-convexity inequality.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SConvexityReport<T> {
    pub is_consistent: bool,
    /// Largest `f(αx+(1−α)y) − α^s f(x) − (1−α)^s f(y)` found; `0` when only
    /// rounding-level excesses were seen.
    pub worst_violation: T,
    /// `(x, y, α)` attaining `worst_violation`.
    pub witness: (T, T, T),
    pub context: String,
}

/// Checks `f(αx+(1−α)y) ≤ α^s f(x) + (1−α)^s f(y)` on every triple of a
/// `grid_n`-point grid over `domain × domain × [0, 1]`.
///
/// A grid can only falsify; a consistent report is not a membership proof.
pub fn check_sconvex<T: Real>(
    fun: &Function1D<T>,
    s: SParam<T>,
    domain: &Interval<T>,
    grid_n: usize,
) -> Result<SConvexityReport<T>> {
    if grid_n < 2 {
        return Err(Error::Domain(format!(
            "grid_n must be at least 2, got {grid_n}"
        )));
    }
    domain.require_sconvex_domain()?;
    let last = T::count(grid_n - 1);
    let node = |i: usize| {
        if i == grid_n - 1 {
            domain.b()
        } else {
            domain.a() + domain.width() * T::count(i) / last
        }
    };
    let alpha = |k: usize| {
        if k == grid_n - 1 {
            T::one()
        } else {
            T::count(k) / last
        }
    };
    let xs: Vec<T> = (0..grid_n).map(node).collect();
    let fx = xs
        .iter()
        .map(|&x| fun.eval_checked(x))
        .collect::<Result<Vec<T>>>()?;
    let sv = s.get();
    let slack = T::lit(1e-12);

    let mut worst = T::neg_infinity();
    let mut witness = (xs[0], xs[0], T::zero());
    for (i, &x) in xs.iter().enumerate() {
        for (j, &y) in xs.iter().enumerate() {
            for k in 0..grid_n {
                let al = alpha(k);
                let z = al * x + (T::one() - al) * y;
                let lhs = fun.eval_checked(z)?;
                let rhs = al.pow_nonneg(sv) * fx[i] + (T::one() - al).pow_nonneg(sv) * fx[j];
                let mut excess = lhs - rhs;
                if excess > T::zero() && excess <= slack * (T::one() + rhs.abs()) {
                    excess = T::zero();
                }
                if excess > worst {
                    worst = excess;
                    witness = (x, y, al);
                }
            }
        }
    }
    Ok(SConvexityReport {
        is_consistent: worst <= T::zero(),
        worst_violation: worst,
        witness,
        context: format!(
            "grid falsification of s-convexity (s = {sv}) for `{}` on {domain}, {grid_n}^3 triples; \
             consistency is not a proof of membership",
            fun.label()
        ),
    })
}
