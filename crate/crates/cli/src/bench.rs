//! Timing of the machine-precision bound against `f64::asin`, plus its error envelope.

use std::cmp::Ordering;
use std::hint::black_box;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sfink::bounds::eval_unchecked_f64;
use sfink::grid::{closed_grid, par_eval};
use sfink::{eval_bound, eval_bound_f64, to_f64, BoundSpec, GridKind, PrecisionConfig};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub spec: BoundSpec,
    pub iterations: usize,
    pub seed: u64,
    pub grid_size: usize,
    pub precision_bits: usize,
    /// Timing field; varies run to run.
    pub ns_per_eval_bound: f64,
    /// Timing field; varies run to run.
    pub ns_per_eval_reference: f64,
    /// `max |bound - arcsin|` over the grid, both at oracle precision.
    pub max_abs_error_on_grid: f64,
    pub argmax_error: f64,
    /// `above`, `below` or `mixed`: where the bound sits relative to arcsin on the grid.
    pub side: String,
    /// `max |eval_bound_f64 - eval_bound|`: rounding of the fast path.
    pub max_fast_path_deviation: f64,
}

fn time_ns(xs: &[f64], f: impl Fn(f64) -> f64) -> f64 {
    let start = Instant::now();
    let mut acc = 0.0;
    for &x in xs {
        acc += f(black_box(x));
    }
    black_box(acc);
    start.elapsed().as_nanos() as f64 / xs.len() as f64
}

pub fn run_bench(
    spec: &BoundSpec,
    iterations: usize,
    grid_size: usize,
    seed: u64,
    cfg: &PrecisionConfig,
) -> Result<BenchReport> {
    if iterations == 0 {
        return Err(CliError::Usage("iterations must be at least 1".into()));
    }
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let xs: Vec<f64> = (0..iterations)
        .map(|_| rng.random_range(0.0..=1.0))
        .collect();
    let (alpha, beta) = spec.params_f64();
    let family = spec.family;
    let ns_bound = time_ns(&xs, |x| eval_unchecked_f64(family, alpha, beta, x));
    let ns_ref = time_ns(&xs, f64::asin);

    let grid = closed_grid(grid_size, GridKind::Uniform)?;
    let errs = par_eval(cfg, &grid, |o, x| {
        let xr = o.real(x);
        let b = eval_bound(spec, &xr, o)?;
        let a = o.arcsin(&xr)?;
        let d = o.sub(&b, &a);
        // contact points (x = 0, and x = 1 for the b1 bound) are ties, not crossings
        let side = o.sign_with_tol(&d, &o.mul(&o.equality_tol(), &o.add(&a, &b.abs())));
        let fast = o.sub(&o.real(eval_bound_f64(spec, x)?), &b);
        Ok((to_f64(&d), side, to_f64(&fast).abs()))
    })?;
    let mut max_err = 0.0;
    let mut argmax = 0.0;
    let (mut above, mut below) = (false, false);
    let mut fast_dev: f64 = 0.0;
    for (&x, &(d, side, f)) in grid.iter().zip(&errs) {
        above |= side == Ordering::Greater;
        below |= side == Ordering::Less;
        if d.abs() > max_err {
            max_err = d.abs();
            argmax = x;
        }
        fast_dev = fast_dev.max(f);
    }
    let side = match (above, below) {
        (true, false) => "above",
        (false, true) => "below",
        _ => "mixed",
    };
    Ok(BenchReport {
        spec: *spec,
        iterations,
        seed,
        grid_size,
        precision_bits: cfg.mantissa_bits,
        ns_per_eval_bound: ns_bound,
        ns_per_eval_reference: ns_ref,
        max_abs_error_on_grid: max_err,
        argmax_error: argmax,
        side: side.into(),
        max_fast_path_deviation: fast_dev,
    })
}
