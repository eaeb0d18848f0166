//! The verification sweep: every bound against the oracle deviation over a
//! grid of functions, `s`, `x` and `p`.

use std::fmt;

use serde::Serialize;

use sconvex_ostrowski::{
    bound_holder_global, bound_holder_hadamard, bound_holder_split, bound_power_mean,
    bound_sconvex_abs, check_sconvex, make_conjugate, parse_function_spec,
    toolkit::{ReferenceIntegrator, DEFAULT_GRID_N},
    BoundResult, EndpointData, Function1D, FunctionSpec, Integrator, Interval, SParam, TheoremId,
    VerificationRecord,
};

use crate::config::FileConfig;
use crate::render::{self, Table};
use crate::{CliError, Format, Globals, Outcome, VerifyArgs, EXIT_FAILURE, EXIT_OK};

/// Interval used when a spec carries no `@a,b` suffix.
pub const DEFAULT_DOMAIN: (f64, f64) = (0.5, 2.0);

/// A registry function together with the interval it is swept over.
#[derive(Debug, Clone, PartialEq)]
pub struct TargetFunction {
    pub spec: FunctionSpec,
    pub interval: Interval<f64>,
}

impl TargetFunction {
    /// Parses `spec` or `spec@a,b`.
    pub fn parse(raw: &str) -> Result<Self, CliError> {
        let (spec, domain) = match raw.rsplit_once('@') {
            Some((spec, domain)) => (spec, Some(domain)),
            None => (raw, None),
        };
        let (a, b) = match domain {
            None => DEFAULT_DOMAIN,
            Some(d) => {
                let parts: Vec<f64> = d
                    .split(',')
                    .map(|v| v.trim().parse::<f64>())
                    .collect::<Result<_, _>>()
                    .map_err(|_| CliError::Usage(format!("bad interval `{d}` in `{raw}`")))?;
                match parts[..] {
                    [a, b] => (a, b),
                    _ => return Err(CliError::Usage(format!("interval `{d}` needs two numbers"))),
                }
            }
        };
        Ok(Self {
            spec: parse_function_spec(spec)?,
            interval: Interval::sconvex(a, b)?,
        })
    }
}

impl fmt::Display for TargetFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}@{},{}",
            self.spec,
            self.interval.a(),
            self.interval.b()
        )
    }
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub s_grid: Vec<SParam<f64>>,
    pub x_grid_points: usize,
    pub p_grid: Vec<f64>,
    pub function_specs: Vec<String>,
    pub tol: f64,
    pub output_format: Format,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            s_grid: [0.25, 0.5, 0.75, 1.0]
                .map(|s| SParam::new(s).unwrap())
                .to_vec(),
            x_grid_points: 11,
            p_grid: vec![2.0],
            function_specs: [
                "breckner:0,1,0,0.25@0.5,2",
                "breckner:0,1,0,0.5@0.5,2",
                "breckner:0,1,0,0.75@0.5,2",
                "breckner:0,1,0,1@0.5,2",
                "poly:0,1@0,1",
                "poly:0,0,1@0,1",
                "poly:0,1,1@0,1",
            ]
            .map(String::from)
            .to_vec(),
            tol: crate::DEFAULT_CLI_TOL,
            output_format: Format::Json,
        }
    }
}

impl SweepConfig {
    /// Defaults, overridden by the config file, overridden by flags.
    pub fn merge(
        args: &VerifyArgs,
        file: &FileConfig,
        globals: &Globals,
    ) -> Result<Self, CliError> {
        let base = Self::default();
        let s_raw = args.s_grid.clone().or_else(|| file.s_grid.clone());
        let s_grid = match s_raw {
            Some(v) => v
                .into_iter()
                .map(SParam::new)
                .collect::<Result<Vec<_>, _>>()?,
            None => base.s_grid,
        };
        let function_specs = if !args.functions.is_empty() {
            args.functions.clone()
        } else {
            file.function_specs.clone().unwrap_or(base.function_specs)
        };
        let config = Self {
            s_grid,
            x_grid_points: args
                .x_points
                .or(file.x_grid_points)
                .unwrap_or(base.x_grid_points),
            p_grid: args
                .p_grid
                .clone()
                .or_else(|| file.p_grid.clone())
                .unwrap_or(base.p_grid),
            function_specs,
            tol: globals.tol,
            output_format: globals.format,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.function_specs.is_empty() {
            return Err(CliError::Usage("function list is empty".into()));
        }
        if self.s_grid.is_empty() || self.p_grid.is_empty() {
            return Err(CliError::Usage("s and p grids must be non-empty".into()));
        }
        if self.x_grid_points < 2 {
            return Err(CliError::Usage("x grid needs at least 2 points".into()));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(CliError::Usage(format!(
                "tol must be positive, got {}",
                self.tol
            )));
        }
        for &p in &self.p_grid {
            make_conjugate(p)?;
        }
        Ok(())
    }
}

/// One (theorem, function, s, x, p) check.
#[derive(Debug, Clone, Serialize)]
pub struct SweepRecord {
    pub theorem: TheoremId,
    pub function: String,
    pub s: f64,
    pub x: f64,
    pub p: Option<f64>,
    pub deviation: f64,
    pub bound: f64,
    pub margin: f64,
    pub holds: bool,
}

/// Grid-search evidence about `|f′|` for a (function, s) pair with failures.
#[derive(Debug, Clone, Serialize)]
pub struct FailureWitness {
    pub function: String,
    pub s: f64,
    pub failed_records: usize,
    pub derivative_sconvex_on_grid: bool,
    pub worst_violation: f64,
    /// `(x, y, α)`.
    pub witness: (f64, f64, f64),
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub total: usize,
    pub failed: usize,
    pub tol: f64,
    pub failures: Vec<FailureWitness>,
    pub records: Vec<SweepRecord>,
}

fn x_grid(iv: &Interval<f64>, n: usize) -> Vec<f64> {
    let last = (n - 1) as f64;
    (0..n)
        .map(|i| {
            if i == n - 1 {
                iv.b()
            } else {
                iv.a() + iv.width() * i as f64 / last
            }
        })
        .collect()
}

fn abs_derivative(fun: &Function1D<f64>) -> Function1D<f64> {
    let g = fun.clone();
    Function1D::new(format!("|{}'|", fun.label()), move |t| {
        g.abs_deriv(t).unwrap_or(f64::NAN)
    })
}

/// Runs the sweep; fails only on input errors and oracle non-convergence.
pub fn run_sweep(config: &SweepConfig, oracle_budget: usize) -> Result<SweepReport, CliError> {
    config.validate()?;
    let targets = config
        .function_specs
        .iter()
        .map(|s| TargetFunction::parse(s))
        .collect::<Result<Vec<_>, _>>()?;
    let conj = config
        .p_grid
        .iter()
        .map(|&p| make_conjugate(p))
        .collect::<Result<Vec<_>, _>>()?;
    let oracle_tol = config.tol / 16.0;
    let oracle = ReferenceIntegrator::with_budget(oracle_budget);

    let mut records = Vec::new();
    let mut failures = Vec::new();
    for target in &targets {
        let fun = target.spec.to_function::<f64>()?;
        let iv = &target.interval;
        let name = target.to_string();
        let xs = x_grid(iv, config.x_grid_points);
        let deviations = xs
            .iter()
            .map(|&x| deviation(&fun, iv, x, oracle_tol, &oracle))
            .collect::<Result<Vec<_>, _>>()?;
        let da = fun.abs_deriv(iv.a())?;
        let db = fun.abs_deriv(iv.b())?;

        for &s in &config.s_grid {
            let before = records.len();
            for (&x, &dev) in xs.iter().zip(&deviations) {
                let ep = EndpointData::with_dx(da, db, fun.abs_deriv(x)?)?;
                let mut push = |bound: BoundResult<f64>, p: Option<f64>| {
                    let rec = VerificationRecord::inequality(dev, bound.value, config.tol, "");
                    records.push(SweepRecord {
                        theorem: bound.theorem,
                        function: name.clone(),
                        s: s.get(),
                        x,
                        p,
                        deviation: dev,
                        bound: bound.value,
                        margin: rec.margin,
                        holds: rec.holds,
                    });
                };
                push(bound_sconvex_abs(iv, x, s, &ep)?, None);
                for cp in &conj {
                    push(bound_holder_split(iv, x, s, cp, &ep)?, Some(cp.p()));
                    push(bound_holder_hadamard(iv, x, s, cp, &ep)?, Some(cp.p()));
                    push(bound_holder_global(iv, x, s, cp, &ep)?, Some(cp.p()));
                    push(bound_power_mean(iv, x, s, cp.q(), &ep)?, Some(cp.p()));
                }
            }
            let failed = records[before..].iter().filter(|r| !r.holds).count();
            if failed > 0 {
                let report = check_sconvex(&abs_derivative(&fun), s, iv, DEFAULT_GRID_N)?;
                failures.push(FailureWitness {
                    function: name.clone(),
                    s: s.get(),
                    failed_records: failed,
                    derivative_sconvex_on_grid: report.is_consistent,
                    worst_violation: report.worst_violation,
                    witness: report.witness,
                });
            }
        }
    }
    Ok(SweepReport {
        total: records.len(),
        failed: records.iter().filter(|r| !r.holds).count(),
        tol: config.tol,
        failures,
        records,
    })
}

/// `|f(x) − mean of f over iv|`, with the oracle's panel budget applied.
fn deviation(
    fun: &Function1D<f64>,
    iv: &Interval<f64>,
    x: f64,
    tol: f64,
    oracle: &ReferenceIntegrator,
) -> Result<f64, CliError> {
    let integral = oracle.integrate(&|t| fun.eval(t), iv.a(), iv.b(), tol * iv.width())?;
    Ok((fun.eval_checked(x)? - integral / iv.width()).abs())
}

pub fn cmd_verify(config: &SweepConfig, globals: &Globals) -> Result<Outcome, CliError> {
    let report = run_sweep(config, globals.oracle_budget)?;
    let code = if report.failed == 0 {
        EXIT_OK
    } else {
        EXIT_FAILURE
    };
    let text = match config.output_format {
        Format::Json => render::json(&report)?,
        Format::Csv => render::csv(&report.records)?,
        Format::Human => {
            let mut t = Table::new([
                "theorem",
                "function",
                "s",
                "x",
                "p",
                "deviation",
                "bound",
                "holds",
            ]);
            for r in report.records.iter().filter(|r| !r.holds) {
                t.row([
                    r.theorem.to_string(),
                    r.function.clone(),
                    render::human(r.s),
                    render::human(r.x),
                    r.p.map(render::human).unwrap_or_default(),
                    render::human(r.deviation),
                    render::human(r.bound),
                    r.holds.to_string(),
                ]);
            }
            let mut out = format!(
                "{} of {} records hold\n",
                report.total - report.failed,
                report.total
            );
            if report.failed > 0 {
                out.push_str(&t.to_string());
                for w in &report.failures {
                    out.push_str(&format!(
                        "{} at s = {}: |f'| s-convex on grid: {}, worst violation {} at (x, y, alpha) = ({}, {}, {})\n",
                        w.function,
                        render::human(w.s),
                        w.derivative_sconvex_on_grid,
                        render::human(w.worst_violation),
                        render::human(w.witness.0),
                        render::human(w.witness.1),
                        render::human(w.witness.2),
                    ));
                }
            }
            out
        }
    };
    Ok(Outcome { text, code })
}
