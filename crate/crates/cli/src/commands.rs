use sfink::certify::certify_upper_bound;
use sfink::lambda::{discrepancy, optimality_report, solve_endpoint};
use sfink::{
    find_crossover, verify_chain, BoundSpec, Constant, Curve, Oracle, Param, PrecisionConfig, Real,
};

use crate::args::{Cli, Command, Format, SpecArgs};
use crate::bench::run_bench;
use crate::error::{CliError, Result};
use crate::render::{chain_csv, render};

/// Rendered report and whether the check it describes passed.
pub struct Outcome {
    pub text: String,
    pub verified: bool,
}

/// A decimal parsed at full working precision, or a named constant.
fn real_arg(s: &str, o: &Oracle) -> Result<Real> {
    let s = s.trim();
    if matches!(s, "pi/2" | "half_pi") {
        return Ok(o.half_pi());
    }
    if let Ok(c) = s.parse::<Constant>() {
        return Ok(c.value(o));
    }
    if s.parse::<f64>().is_err() {
        return Err(CliError::Usage(format!(
            "{s:?} is not a number or a known constant"
        )));
    }
    Ok(o.parse(s)?)
}

fn spec_arg(a: &SpecArgs) -> Result<BoundSpec> {
    if let Some(s) = &a.spec {
        return Ok(s.parse()?);
    }
    let Some(beta) = &a.beta else {
        if a.family.is_some() || a.alpha.is_some() {
            return Err(CliError::Usage(
                "--beta is required with --family or --alpha".into(),
            ));
        }
        return Ok(BoundSpec::sqrt_upper());
    };
    let family = a
        .family
        .as_deref()
        .unwrap_or(if a.alpha.is_some() { "sqrt" } else { "matched" });
    let text = match &a.alpha {
        Some(alpha) => format!("{family}:alpha={alpha},beta={beta}"),
        None => format!("{family}:beta={beta}"),
    };
    Ok(text.parse()?)
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let g = &cli.global;
    let cfg = PrecisionConfig::with_bits(g.precision_bits);
    let o = Oracle::new(cfg)?;
    let done = |text: String| Outcome {
        text,
        verified: true,
    };
    match &cli.command {
        Command::Chain { grid, grid_kind } => {
            let (report, rows) = verify_chain(*grid, (*grid_kind).into(), &cfg)?;
            let text = match g.format {
                Format::Csv => chain_csv(&rows)?,
                f => render(&report, f)?,
            };
            Ok(Outcome {
                text,
                verified: report.verdict,
            })
        }
        Command::Certify { beta } => {
            let cert = certify_upper_bound(&real_arg(beta, &o)?, &o)?;
            Ok(Outcome {
                text: render(&cert, g.format)?,
                verified: cert.verdict,
            })
        }
        Command::Solve { target } => {
            let sol = solve_endpoint(&real_arg(target, &o)?, &o)?;
            Ok(done(render(&sol, g.format)?))
        }
        Command::Crossover { a, b, lo, hi } => {
            let a: Curve = a.parse()?;
            let b: Curve = b.parse()?;
            Ok(done(render(
                &find_crossover(&a, &b, *lo, *hi, &o)?,
                g.format,
            )?))
        }
        Command::Lambda {
            order,
            beta,
            optimality,
            upper_b,
            lower_b,
        } => {
            if *optimality {
                return Ok(done(render(
                    &optimality_report(*upper_b, *lower_b, &o)?,
                    g.format,
                )?));
            }
            let beta: Param = beta.parse()?;
            let orders = if order.is_empty() {
                (0..=5).collect()
            } else {
                order.clone()
            };
            let reports = orders
                .iter()
                .map(|&k| discrepancy(k, beta, &o))
                .collect::<sfink::Result<Vec<_>>>()?;
            Ok(done(render(&reports, g.format)?))
        }
        Command::Bench {
            spec,
            iterations,
            grid,
            seed,
        } => {
            let report = run_bench(&spec_arg(spec)?, *iterations, *grid, *seed, &cfg)?;
            Ok(done(render(&report, g.format)?))
        }
    }
}
