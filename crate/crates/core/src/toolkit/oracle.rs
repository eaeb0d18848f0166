//! Adaptive Gauss–Kronrod (7/15) integrator used as the brute-force oracle.
//!
//! Each panel is integrated with the 15-point Kronrod rule; the embedded
//! 7-point Gauss rule supplies the error estimate. The panel with the largest
//! estimate is bisected at its exact midpoint until the summed estimate falls
//! below the requested tolerance or the panel budget runs out. No step is
//! randomized, so identical inputs give bit-identical results.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::scalar::{CompensatedSum, Real};
use crate::types::{Function1D, Integrator, Interval};

/// Kronrod abscissae on `[-1, 1]`, descending, centre last.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

/// Gauss weights for the odd Kronrod nodes `XGK[1], XGK[3], XGK[5]` and the centre.
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Default panel budget.
pub const DEFAULT_MAX_PANELS: usize = 20_000;

#[derive(Debug, Clone, Copy)]
struct Panel<T> {
    a: T,
    b: T,
    value: T,
    error: T,
}

impl<T: Real> PartialEq for Panel<T> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<T: Real> Eq for Panel<T> {}

impl<T: Real> PartialOrd for Panel<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: Real> Ord for Panel<T> {
    // Largest error first, then position.
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .partial_cmp(&other.error)
            .unwrap_or(Ordering::Equal)
            .then_with(|| other.a.partial_cmp(&self.a).unwrap_or(Ordering::Equal))
    }
}

fn kronrod_panel<T: Real>(f: &dyn Fn(T) -> T, a: T, b: T) -> Panel<T> {
    let half = (b - a) / T::lit(2.0);
    let centre = (a + b) / T::lit(2.0);
    let fc = f(centre);
    let mut kronrod = fc * T::lit(WGK[7]);
    let mut gauss = fc * T::lit(WG[3]);
    for (j, (&x, &w)) in XGK[..7].iter().zip(&WGK[..7]).enumerate() {
        let dx = half * T::lit(x);
        let pair = f(centre - dx) + f(centre + dx);
        kronrod = kronrod + pair * T::lit(w);
        if j % 2 == 1 {
            gauss = gauss + pair * T::lit(WG[j / 2]);
        }
    }
    Panel {
        a,
        b,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
    }
}

/// Adaptive Gauss–Kronrod oracle.
#[derive(Debug, Clone, Copy)]
pub struct ReferenceIntegrator {
    pub max_panels: usize,
}

impl Default for ReferenceIntegrator {
    fn default() -> Self {
        Self {
            max_panels: DEFAULT_MAX_PANELS,
        }
    }
}

impl ReferenceIntegrator {
    pub fn with_budget(max_panels: usize) -> Self {
        Self {
            max_panels: max_panels.max(1),
        }
    }

    fn run<T: Real>(&self, f: &dyn Fn(T) -> T, a: T, b: T, tol: T) -> Result<T> {
        if !(tol > T::zero()) {
            return Err(Error::Domain(format!(
                "oracle tolerance must be positive, got {tol}"
            )));
        }
        if a == b {
            return Ok(T::zero());
        }
        let (lo, hi, sign) = if a < b {
            (a, b, T::one())
        } else {
            (b, a, -T::one())
        };

        let first = kronrod_panel(f, lo, hi);
        if !(first.value.is_finite() && first.error.is_finite()) {
            return Err(self.failure(lo, hi, first.error, tol, 1));
        }
        let mut heap = BinaryHeap::new();
        heap.push(first);
        let mut total_error = first.error;

        loop {
            if total_error <= tol {
                // Exact re-sum before accepting.
                total_error = heap
                    .iter()
                    .map(|p| p.error)
                    .collect::<CompensatedSum<T>>()
                    .value();
                let value = heap
                    .iter()
                    .map(|p| p.value)
                    .collect::<CompensatedSum<T>>()
                    .value();
                // Rounding floor of the panel sums.
                let floor = T::lit(50.0) * T::epsilon() * value.abs();
                if total_error <= tol.max(floor) {
                    return Ok(sign * value);
                }
            } else if heap.len() > 64 && heap.len() % 64 == 0 {
                let value = heap
                    .iter()
                    .map(|p| p.value)
                    .collect::<CompensatedSum<T>>()
                    .value();
                total_error = heap
                    .iter()
                    .map(|p| p.error)
                    .collect::<CompensatedSum<T>>()
                    .value();
                if total_error <= T::lit(50.0) * T::epsilon() * value.abs() {
                    return Ok(sign * value);
                }
            }
            if heap.len() >= self.max_panels {
                return Err(self.failure(lo, hi, total_error, tol, heap.len()));
            }
            let worst = heap.pop().expect("heap holds at least one panel");
            let mid = (worst.a + worst.b) / T::lit(2.0);
            if !(worst.a < mid && mid < worst.b) {
                // Panel can no longer be split in this precision.
                return Err(self.failure(lo, hi, total_error, tol, heap.len() + 1));
            }
            let left = kronrod_panel(f, worst.a, mid);
            let right = kronrod_panel(f, mid, worst.b);
            if !(left.value.is_finite() && right.value.is_finite()) {
                return Err(self.failure(lo, hi, T::infinity(), tol, heap.len() + 2));
            }
            total_error = total_error - worst.error + left.error + right.error;
            heap.push(left);
            heap.push(right);
        }
    }

    fn failure<T: Real>(&self, a: T, b: T, error: T, tol: T, panels: usize) -> Error {
        Error::NonConvergence {
            a: a.to_f64().unwrap_or(f64::NAN),
            b: b.to_f64().unwrap_or(f64::NAN),
            error: error.to_f64().unwrap_or(f64::NAN),
            tol: tol.to_f64().unwrap_or(f64::NAN),
            panels,
        }
    }
}

impl<T: Real> Integrator<T> for ReferenceIntegrator {
    fn integrate(&self, f: &dyn Fn(T) -> T, a: T, b: T, tol: T) -> Result<T> {
        self.run(f, a, b, tol)
    }
}

/// `∫_a^b f` to within `tol` with the default oracle.
pub fn reference_integrate<T: Real>(fun: &Function1D<T>, iv: &Interval<T>, tol: T) -> Result<T> {
    ReferenceIntegrator::default().integrate(&|t| fun.eval(t), iv.a(), iv.b(), tol)
}

/// `|f(x) − (1/(b−a))∫_a^b f|`, the left-hand side of every Ostrowski bound.
pub fn true_deviation<T: Real>(fun: &Function1D<T>, iv: &Interval<T>, x: T, tol: T) -> Result<T> {
    crate::types::validate_eval_point(iv, x)?;
    let integral = reference_integrate(fun, iv, tol * iv.width())?;
    Ok((fun.eval_checked(x)? - integral / iv.width()).abs())
}
