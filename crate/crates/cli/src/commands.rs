//! `bound`, `means`, `quad` and `identity`.

use serde::Serialize;

use sconvex_ostrowski::{
    alomari_bound, baseline_midpoint_bound, bound_holder_global, bound_holder_hadamard,
    bound_holder_split, bound_power_mean, bound_sconvex_abs, certified_integrate,
    classic_ostrowski_bound, make_conjugate, means_row, parse_function_spec,
    toolkit::ReferenceIntegrator, verify_montgomery_identity, BoundResult, ConjugatePair,
    EndpointData, Interval, MeansRow, MidpointBaseline, MidpointVariant, QuadReport, SParam,
};

use crate::render::{self, Table};
use crate::sweep::TargetFunction;
use crate::{
    BoundArgs, CliError, Format, Globals, IdentityArgs, MeansArgs, Outcome, QuadArgs, TheoremArg,
    VariantArg, EXIT_FAILURE, EXIT_OK,
};

fn require(value: Option<f64>, flag: &str, context: &str) -> Result<f64, CliError> {
    value.ok_or_else(|| {
        CliError::Usage(format!(
            "missing parameter --{flag} (required by {context})"
        ))
    })
}

impl TheoremArg {
    pub fn name(self) -> &'static str {
        match self {
            Self::T20 => "t20",
            Self::Teo1 => "teo1",
            Self::T21 => "t21",
            Self::Z => "z",
            Self::T22 => "t22",
            Self::Eq11 => "eq11",
            Self::Ee => "ee",
            Self::Eq14 => "eq14",
            Self::Eq15 => "eq15",
            Self::Eq16 => "eq16",
        }
    }
}

impl BoundArgs {
    fn need(&self, value: Option<f64>, flag: &str) -> Result<f64, CliError> {
        require(value, flag, &format!("theorem {}", self.theorem.name()))
    }

    /// `--p`, or the conjugate of `--q` when only that is given.
    fn conjugate(&self) -> Result<ConjugatePair<f64>, CliError> {
        match (self.p, self.q) {
            (Some(p), _) => Ok(make_conjugate(p)?),
            (None, Some(q)) => Ok(make_conjugate(q)?.swapped()),
            (None, None) => Err(self.need(None, "p").unwrap_err()),
        }
    }

    fn endpoints(&self) -> Result<EndpointData<f64>, CliError> {
        let da = self.need(self.da, "da")?;
        let db = self.need(self.db, "db")?;
        Ok(match self.dx {
            Some(dx) => EndpointData::with_dx(da, db, dx)?,
            None => EndpointData::new(da, db)?,
        })
    }

    fn sparam(&self) -> Result<SParam<f64>, CliError> {
        Ok(SParam::new(self.need(self.s, "s")?)?)
    }
}

pub fn compute_bound(args: &BoundArgs) -> Result<BoundResult<f64>, CliError> {
    let iv = Interval::new(args.a, args.b)?;
    let x = || args.need(args.x, "x");
    let result = match args.theorem {
        TheoremArg::T20 => bound_sconvex_abs(&iv, x()?, args.sparam()?, &args.endpoints()?)?,
        TheoremArg::Teo1 => bound_holder_split(
            &iv,
            x()?,
            args.sparam()?,
            &args.conjugate()?,
            &args.endpoints()?,
        )?,
        TheoremArg::T21 => {
            let x = x()?;
            args.need(args.dx, "dx")?;
            bound_holder_hadamard(
                &iv,
                x,
                args.sparam()?,
                &args.conjugate()?,
                &args.endpoints()?,
            )?
        }
        TheoremArg::Z => bound_holder_global(
            &iv,
            x()?,
            args.sparam()?,
            &args.conjugate()?,
            &args.endpoints()?,
        )?,
        TheoremArg::T22 => {
            let q = args.need(args.q, "q")?;
            bound_power_mean(&iv, x()?, args.sparam()?, q, &args.endpoints()?)?
        }
        TheoremArg::Eq11 => classic_ostrowski_bound(&iv, x()?, args.need(args.m, "m")?)?,
        TheoremArg::Ee => alomari_bound(
            &iv,
            x()?,
            args.sparam()?,
            &args.conjugate()?,
            args.need(args.m, "m")?,
        )?,
        TheoremArg::Eq14 | TheoremArg::Eq15 | TheoremArg::Eq16 => {
            let variant = match args.theorem {
                TheoremArg::Eq14 => MidpointBaseline::Eq14,
                TheoremArg::Eq15 => MidpointBaseline::Eq15,
                _ => MidpointBaseline::Eq16,
            };
            let cp = match variant {
                MidpointBaseline::Eq14 => None,
                _ => Some(args.conjugate()?),
            };
            let da = args.need(args.da, "da")?;
            let db = args.need(args.db, "db")?;
            baseline_midpoint_bound(variant, &iv, cp.as_ref(), da, db)?
        }
    };
    Ok(result)
}

#[derive(Serialize)]
struct BoundRow {
    theorem: String,
    value: f64,
    a: f64,
    b: f64,
    x: Option<f64>,
    s: Option<f64>,
    p: Option<f64>,
    q: Option<f64>,
    da: Option<f64>,
    db: Option<f64>,
    dx: Option<f64>,
    m: Option<f64>,
}

pub fn cmd_bound(args: &BoundArgs, globals: &Globals) -> Result<Outcome, CliError> {
    let r = compute_bound(args)?;
    let i = &r.inputs;
    let text = match globals.format {
        Format::Json => render::json(&r)?,
        Format::Csv => render::csv(&[BoundRow {
            theorem: r.theorem.to_string(),
            value: r.value,
            a: i.a,
            b: i.b,
            x: i.x,
            s: i.s,
            p: i.p,
            q: i.q,
            da: i.da,
            db: i.db,
            dx: i.dx,
            m: i.m,
        }])?,
        Format::Human => {
            let mut out = format!("{} = {}\n", r.theorem, render::human(r.value));
            let named = [
                ("a", Some(i.a)),
                ("b", Some(i.b)),
                ("x", i.x),
                ("s", i.s),
                ("p", i.p),
                ("q", i.q),
                ("da", i.da),
                ("db", i.db),
                ("dx", i.dx),
                ("m", i.m),
            ];
            for (name, v) in named {
                if let Some(v) = v {
                    out.push_str(&format!("  {name} = {v}\n"));
                }
            }
            out
        }
    };
    Ok(Outcome {
        text,
        code: EXIT_OK,
    })
}

pub fn cmd_means(args: &MeansArgs, globals: &Globals) -> Result<Outcome, CliError> {
    let rows = args
        .s
        .iter()
        .map(|&s| means_row(args.a, args.b, SParam::new(s)?, args.p, args.q, globals.tol))
        .collect::<Result<Vec<MeansRow<f64>>, _>>()?;
    let dominated = rows
        .iter()
        .all(|r| r.gap <= r.p1.min(r.p2).min(r.p3) + globals.tol);
    let text = match globals.format {
        Format::Json => render::json(&rows)?,
        Format::Csv => render::csv(&rows)?,
        Format::Human => {
            let mut t = Table::new(["a", "b", "s", "A^s", "L_s^s", "gap", "p1", "p2", "p3"]);
            for r in &rows {
                t.row(
                    [
                        r.a, r.b, r.s, r.a_pow_s, r.ls_pow_s, r.gap, r.p1, r.p2, r.p3,
                    ]
                    .map(render::human),
                );
            }
            t.to_string()
        }
    };
    Ok(Outcome {
        text,
        code: if dominated { EXIT_OK } else { EXIT_FAILURE },
    })
}

pub fn quad_variant(args: &QuadArgs) -> Result<MidpointVariant<f64>, CliError> {
    Ok(match args.variant {
        VariantArg::P4 => MidpointVariant::p4(require(args.p, "p", "variant p4")?)?,
        VariantArg::P5 => MidpointVariant::P5,
        VariantArg::P6 => MidpointVariant::p6(require(args.q, "q", "variant p6")?)?,
    })
}

pub fn cmd_quad(args: &QuadArgs, globals: &Globals) -> Result<Outcome, CliError> {
    let fun = parse_function_spec(&args.function)?.to_function::<f64>()?;
    let iv = Interval::new(args.a, args.b)?;
    let variant = quad_variant(args)?;
    let mut report: QuadReport<f64> =
        certified_integrate(&fun, &iv, args.target, variant, args.budget)?;
    let mut code = EXIT_OK;
    if args.check {
        let oracle = ReferenceIntegrator::with_budget(globals.oracle_budget);
        let err = report.verify(&fun, &iv, &oracle, globals.tol / 16.0)?;
        if err.abs() > report.error_bound + globals.tol {
            code = EXIT_FAILURE;
        }
    }
    let text = match globals.format {
        Format::Json => render::json(&report)?,
        Format::Csv => render::csv(&[&report])?,
        Format::Human => {
            let mut out = format!(
                "approx = {}\nerror_bound = {}\nvariant = {}\npanels = {}\n",
                render::human(report.approx),
                render::human(report.error_bound),
                report.variant,
                report.panels
            );
            if let Some(e) = report.true_error {
                out.push_str(&format!("true_error = {}\n", render::human(e)));
            }
            out
        }
    };
    Ok(Outcome { text, code })
}

/// Polynomials of degree at most 4 used by `identity`.
pub const IDENTITY_POLYNOMIALS: [&str; 6] = [
    "poly:1",
    "poly:0,1",
    "poly:1,-3,2",
    "poly:0.5,0,-1,2",
    "poly:1,-2,0,3,-1",
    "poly:0,0,0,0,1",
];

pub const IDENTITY_INTERVALS: [(f64, f64); 3] = [(0.0, 1.0), (1.0, 3.0), (0.5, 2.5)];

#[derive(Debug, Clone, Serialize)]
pub struct IdentityRecord {
    pub function: String,
    pub a: f64,
    pub b: f64,
    pub x: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
    pub margin: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    pub total: usize,
    pub failed: usize,
    pub tol: f64,
    pub records: Vec<IdentityRecord>,
}

pub fn run_identity(
    targets: &[TargetFunction],
    x_points: usize,
    tol: f64,
    oracle_budget: usize,
) -> Result<IdentityReport, CliError> {
    if targets.is_empty() {
        return Err(CliError::Usage("function list is empty".into()));
    }
    if x_points < 2 {
        return Err(CliError::Usage("x grid needs at least 2 points".into()));
    }
    let oracle = ReferenceIntegrator::with_budget(oracle_budget);
    let mut records = Vec::new();
    for t in targets {
        let fun = t.spec.to_function::<f64>()?;
        let iv = &t.interval;
        for i in 0..x_points {
            let x = if i == x_points - 1 {
                iv.b()
            } else {
                iv.a() + iv.width() * i as f64 / (x_points - 1) as f64
            };
            let rec = verify_montgomery_identity(&fun, iv, x, tol, &oracle)?;
            records.push(IdentityRecord {
                function: t.to_string(),
                a: iv.a(),
                b: iv.b(),
                x,
                lhs: rec.lhs,
                rhs: rec.rhs,
                holds: rec.holds,
                margin: rec.margin,
            });
        }
    }
    Ok(IdentityReport {
        total: records.len(),
        failed: records.iter().filter(|r| !r.holds).count(),
        tol,
        records,
    })
}

pub fn default_identity_targets() -> Vec<TargetFunction> {
    IDENTITY_INTERVALS
        .iter()
        .flat_map(|&(a, b)| {
            IDENTITY_POLYNOMIALS.iter().map(move |p| {
                TargetFunction::parse(&format!("{p}@{a},{b}")).expect("built-in suite parses")
            })
        })
        .collect()
}

pub fn cmd_identity(args: &IdentityArgs, globals: &Globals) -> Result<Outcome, CliError> {
    let targets = if args.functions.is_empty() {
        default_identity_targets()
    } else {
        args.functions
            .iter()
            .map(|f| TargetFunction::parse(f))
            .collect::<Result<Vec<_>, _>>()?
    };
    let report = run_identity(
        &targets,
        args.x_points.unwrap_or(9),
        globals.tol,
        globals.oracle_budget,
    )?;
    let text = match globals.format {
        Format::Json => render::json(&report)?,
        Format::Csv => render::csv(&report.records)?,
        Format::Human => {
            let mut out = format!(
                "{} of {} identity checks hold\n",
                report.total - report.failed,
                report.total
            );
            for r in report.records.iter().filter(|r| !r.holds) {
                out.push_str(&format!(
                    "{} at x = {}: lhs {} rhs {}\n",
                    r.function,
                    r.x,
                    render::human(r.lhs),
                    render::human(r.rhs)
                ));
            }
            out
        }
    };
    Ok(Outcome {
        text,
        code: if report.failed == 0 {
            EXIT_OK
        } else {
            EXIT_FAILURE
        },
    })
}
