//! Built-in functions addressable by a short spec string:
//!
//! * `breckner:u,v,w,s`: `f(0) = u`, `f(t) = v·t^s + w`
//! * `poly:c0,c1,...`: `c0 + c1·t + c2·t² + …`
//! * `powabs:k`: `f(t) = |t|^k`
//!
//! Whitespace anywhere in the spec is ignored and the kind is case-insensitive.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::types::{Function1D, SParam};

use super::breckner::BrecknerFunction;

#[derive(Debug, Clone, PartialEq)]
pub enum FunctionSpec {
    Breckner { u: f64, v: f64, w: f64, s: f64 },
    Poly(Vec<f64>),
    PowAbs(f64),
}

fn spec_error(spec: &str, reason: impl Into<String>) -> Error {
    Error::FunctionSpec {
        spec: spec.to_string(),
        reason: reason.into(),
    }
}

fn horner<T: Real>(coeffs: &[T], t: T) -> T {
    coeffs.iter().rev().fold(T::zero(), |acc, &c| acc * t + c)
}

impl FunctionSpec {
    pub fn to_function<T: Real>(&self) -> Result<Function1D<T>> {
        let label = self.to_string();
        match *self {
            Self::Breckner { u, v, w, s } => {
                let s = SParam::new(T::lit(s))?;
                let b = BrecknerFunction::new(T::lit(u), T::lit(v), T::lit(w), s);
                Ok(Function1D::new(label, move |t| b.eval(t)).with_derivative(move |t| b.deriv(t)))
            }
            Self::Poly(ref c) => {
                let coeffs: Vec<T> = c.iter().map(|&v| T::lit(v)).collect();
                let dcoeffs: Vec<T> = coeffs
                    .iter()
                    .enumerate()
                    .skip(1)
                    .map(|(i, &v)| T::count(i) * v)
                    .collect();
                Ok(Function1D::new(label, move |t| horner(&coeffs, t))
                    .with_derivative(move |t| horner(&dcoeffs, t)))
            }
            Self::PowAbs(k) => {
                let k = T::lit(k);
                Ok(Function1D::new(label, move |t: T| {
                    if k == T::zero() {
                        T::one()
                    } else {
                        t.abs().pow_nonneg(k)
                    }
                })
                .with_derivative(move |t: T| {
                    if k == T::zero() {
                        T::zero()
                    } else if t == T::zero() {
                        // one-sided derivative on [0, ∞)
                        if k > T::one() {
                            T::zero()
                        } else if k == T::one() {
                            T::one()
                        } else {
                            T::nan()
                        }
                    } else {
                        k * t.signum() * t.abs().powf(k - T::one())
                    }
                }))
            }
        }
    }
}

impl fmt::Display for FunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Breckner { u, v, w, s } => write!(f, "breckner:{u},{v},{w},{s}"),
            Self::Poly(c) => {
                f.write_str("poly:")?;
                for (i, v) in c.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{v}")?;
                }
                Ok(())
            }
            Self::PowAbs(k) => write!(f, "powabs:{k}"),
        }
    }
}

impl FromStr for FunctionSpec {
    type Err = Error;

    fn from_str(raw: &str) -> Result<Self> {
        parse_function_spec(raw)
    }
}

/// Parses a registry string such as `breckner: 0, 1, 0, 0.5`.
pub fn parse_function_spec(raw: &str) -> Result<FunctionSpec> {
    let compact: String = raw.chars().filter(|c| !c.is_whitespace()).collect();
    let (kind, args) = compact
        .split_once(':')
        .ok_or_else(|| spec_error(raw, "expected `<kind>:<args>`"))?;
    let nums = args
        .split(',')
        .filter(|a| !a.is_empty())
        .map(|a| {
            a.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| spec_error(raw, format!("`{a}` is not a finite number")))
        })
        .collect::<Result<Vec<f64>>>()?;

    match kind.to_ascii_lowercase().as_str() {
        "breckner" => match nums[..] {
            [u, v, w, s] => {
                if !(s > 0.0 && s <= 1.0) {
                    return Err(spec_error(raw, "s must lie in (0, 1]"));
                }
                Ok(FunctionSpec::Breckner { u, v, w, s })
            }
            _ => Err(spec_error(raw, "breckner takes exactly 4 numbers u,v,w,s")),
        },
        "poly" => {
            if nums.is_empty() {
                Err(spec_error(raw, "poly needs at least one coefficient"))
            } else {
                Ok(FunctionSpec::Poly(nums))
            }
        }
        "powabs" => match nums[..] {
            [k] if k >= 0.0 => Ok(FunctionSpec::PowAbs(k)),
            [_] => Err(spec_error(raw, "powabs exponent must be nonnegative")),
            _ => Err(spec_error(raw, "powabs takes exactly 1 number")),
        },
        other => Err(spec_error(raw, format!("unknown function kind `{other}`"))),
    }
}
