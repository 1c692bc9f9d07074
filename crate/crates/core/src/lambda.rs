//! Parameter selection in the square-root family by contact with arcsin at 0.
//!
//! Matching value and slope at 0 forces `alpha = beta + 2`. The remaining
//! parameter is pinned from the right end: `beta = b1` makes the bound exact at
//! `x = 1` (least upper bound), while `beta = 4` gives fifth-order contact at 0
//! (greatest lower bound).

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::bounds::{eval_bound, BoundSpec, Constant, Param};
use crate::error::{Error, Result};
use crate::oracle::{to_f64, Oracle, Real, MAX_DERIVATIVE_ORDER};

/// `g` is evaluated from its limit below this abscissa.
pub const G_SERIES_CUTOFF: f64 = 1.0 / 1_048_576.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MatchResiduals {
    /// `|Phi(0) - arcsin(0)|`
    pub value: f64,
    /// `|Phi'(0) - 1|`, from a one-sided stencil
    pub slope: f64,
}

/// Residuals of the two contact conditions at 0 for `Phi_{alpha,beta}`.
pub fn match_at_zero(alpha: Param, beta: Param, o: &Oracle) -> Result<MatchResiduals> {
    let spec = BoundSpec::sqrt_two_param(alpha, beta);
    spec.validate()?;
    let zero = o.zero();
    let v = eval_bound(&spec, &zero, o)?;
    let d = o.derivative(|x| eval_bound(&spec, x, o), &zero, 1)?;
    Ok(MatchResiduals {
        value: to_f64(&v.abs()),
        slope: to_f64(&o.sub(&d.value, &o.one()).abs()),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscrepancyReport {
    pub order: usize,
    pub beta: f64,
    /// Closed-form `d^k/dx^k (f_beta - arcsin)` at 0.
    pub analytic: f64,
    /// Finite-difference estimate of the same derivative.
    pub numeric: f64,
    pub abs_diff: f64,
    /// Error bound reported by the derivative estimator.
    pub numeric_error: f64,
}

fn check_beta(beta: &Real) -> Result<()> {
    if beta.is_negative() || beta.is_zero() || beta.is_nan() {
        return Err(Error::param(format!(
            "beta = {} must be positive",
            to_f64(beta)
        )));
    }
    Ok(())
}

fn check_order(order: usize) -> Result<()> {
    if order > MAX_DERIVATIVE_ORDER {
        return Err(Error::param(format!(
            "order {order} is above {MAX_DERIVATIVE_ORDER}"
        )));
    }
    Ok(())
}

/// Closed-form `k`-th derivative of `f_beta - arcsin` at 0.
///
/// Zero for `k` in {0, 1, 2, 4}; `(4 - beta) / (4 (2 + beta))` for `k = 3`;
/// `3 (128 + 18 beta - 13 beta^2) / (16 (2 + beta)^2)` for `k = 5`.
pub fn analytic_discrepancy(order: usize, beta: &Real, o: &Oracle) -> Result<Real> {
    check_order(order)?;
    check_beta(beta)?;
    let two_plus = o.add(&o.int(2), beta);
    let v = match order {
        3 => {
            let num = o.sub(&o.int(4), beta);
            o.div(&num, &o.mul(&o.int(4), &two_plus))
        }
        5 => {
            let b2 = o.mul(beta, beta);
            let poly = o.sub(
                &o.add(&o.int(128), &o.mul(&o.int(18), beta)),
                &o.mul(&o.int(13), &b2),
            );
            let num = o.mul(&o.int(3), &poly);
            let den = o.mul(&o.int(16), &o.mul(&two_plus, &two_plus));
            o.div(&num, &den)
        }
        _ => o.zero(),
    };
    Ok(v)
}

/// `k`-th derivative of `f_beta - arcsin` at 0, closed form against finite differences.
pub fn discrepancy(order: usize, beta: Param, o: &Oracle) -> Result<DiscrepancyReport> {
    check_order(order)?;
    let b = beta.resolve(o);
    check_beta(&b)?;
    let analytic = analytic_discrepancy(order, &b, o)?;
    let spec = BoundSpec::sqrt_matched(beta);
    let est = o.derivative(
        |x| Ok(o.sub(&eval_bound(&spec, x, o)?, &o.arcsin(x)?)),
        &o.zero(),
        order,
    )?;
    Ok(DiscrepancyReport {
        order,
        beta: to_f64(&b),
        analytic: to_f64(&analytic),
        numeric: to_f64(&est.value),
        abs_diff: to_f64(&o.sub(&analytic, &est.value).abs()),
        numeric_error: to_f64(&est.error),
    })
}

/// `f_b(1) = (b + 2) sqrt(2) / (b + sqrt(2))`.
pub fn endpoint_value(b: &Real, o: &Oracle) -> Real {
    let s2 = o.sqrt2();
    o.div(&o.mul(&o.add(b, &o.int(2)), &s2), &o.add(b, &s2))
}

/// Inverse of [`endpoint_value`]: `b = sqrt(2) (2 - t) / (t - sqrt(2))`.
pub fn endpoint_closed_form(target: &Real, o: &Oracle) -> Real {
    let s2 = o.sqrt2();
    o.div(&o.mul(&s2, &o.sub(&o.int(2), target)), &o.sub(target, &s2))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EndpointSolution {
    pub target: f64,
    /// Root of `b -> f_b(1) - target` found by bisection and secant polish.
    pub b: f64,
    pub b_decimal: String,
    /// The closed-form inverse at the same precision.
    pub closed_form: f64,
    pub closed_form_decimal: String,
    /// `|b - closed_form| / closed_form`
    pub relative_agreement: f64,
    /// `|f_b(1) - target|`
    pub residual: f64,
    pub iterations: usize,
    pub precision_bits: usize,
}

/// Solves `f_b(1) = target` for `b > 0`.
///
/// `b -> f_b(1)` decreases from 2 (at `b -> 0`) to `sqrt(2)` (as `b -> inf`), so
/// targets outside `(sqrt(2), 2)` have no solution.
pub fn solve_endpoint(target: &Real, o: &Oracle) -> Result<EndpointSolution> {
    let s2 = o.sqrt2();
    let two = o.int(2);
    let inside = o.cmp(target, &s2) == Ordering::Greater && o.cmp(target, &two) == Ordering::Less;
    if !inside {
        return Err(Error::NoSolution {
            target: to_f64(target),
            lo: std::f64::consts::SQRT_2,
            hi: 2.0,
        });
    }
    let excess = |b: &Real| o.sub(&endpoint_value(b, o), target);

    let mut lo = o.mul(&s2, &o.real(1e-3));
    let mut hi = o.int(1000);
    let mut iterations = 0usize;
    // f_b(1) - target is positive for small b; push hi out until it turns negative
    while !excess(&hi).is_negative() {
        lo = hi.clone();
        hi = o.mul(&hi, &o.int(1000));
        iterations += 1;
        if iterations > 64 {
            return Err(Error::NoSolution {
                target: to_f64(target),
                lo: std::f64::consts::SQRT_2,
                hi: 2.0,
            });
        }
    }

    // bisection down to ~2^-40 relative, then safeguarded secant
    let coarse = o.pow2(-40);
    let half = o.real(0.5);
    while o.cmp(&o.sub(&hi, &lo), &o.mul(&coarse, &hi)) == Ordering::Greater {
        let mid = o.mul(&o.add(&lo, &hi), &half);
        if excess(&mid).is_negative() {
            hi = mid;
        } else {
            lo = mid;
        }
        iterations += 1;
    }
    let tol = o.solver_tol();
    let (mut x0, mut x1) = (lo.clone(), hi.clone());
    let (mut f0, mut f1) = (excess(&x0), excess(&x1));
    let mut b = o.mul(&o.add(&lo, &hi), &half);
    for _ in 0..100 {
        iterations += 1;
        let df = o.sub(&f1, &f0);
        if df.is_zero() {
            b = x1.clone();
            break;
        }
        let mut next = o.sub(&x1, &o.div(&o.mul(&f1, &o.sub(&x1, &x0)), &df));
        if o.cmp(&next, &lo) != Ordering::Greater || o.cmp(&next, &hi) != Ordering::Less {
            next = o.mul(&o.add(&lo, &hi), &half);
        }
        let fn_ = excess(&next);
        if fn_.is_negative() {
            hi = next.clone();
        } else {
            lo = next.clone();
        }
        let step = o.sub(&next, &x1).abs();
        b = next.clone();
        if fn_.is_zero() || o.cmp(&step, &o.mul(&tol, &next)) != Ordering::Greater {
            break;
        }
        (x0, f0) = (x1, f1);
        (x1, f1) = (next, fn_);
    }

    let closed = endpoint_closed_form(target, o);
    let rel = o.div(&o.sub(&b, &closed).abs(), &closed);
    // relative condition number of the inverse, t (b + sqrt2)^2 / (b sqrt2 (2 - sqrt2)),
    // grows like b: large b sits where f_b(1) is flat
    let bs = o.add(&closed, &s2);
    let cond = o.div(
        &o.mul(target, &o.mul(&bs, &bs)),
        &o.mul(&o.mul(&closed, &s2), &o.sub(&two, &s2)),
    );
    let allowed = o.mul(&tol, &o.add(&o.one(), &cond));
    if o.cmp(&rel, &allowed) == Ordering::Greater {
        return Err(Error::Certification(format!(
            "root finding ({}) and closed form ({}) disagree, relative {:e}",
            o.decimal(&b),
            o.decimal(&closed),
            to_f64(&rel)
        )));
    }
    Ok(EndpointSolution {
        target: to_f64(target),
        b: to_f64(&b),
        b_decimal: o.decimal(&b),
        closed_form: to_f64(&closed),
        closed_form_decimal: o.decimal(&closed),
        relative_agreement: to_f64(&rel),
        residual: to_f64(&excess(&b).abs()),
        iterations,
        precision_bits: o.bits(),
    })
}

/// `b1`, from `f_b(1) = pi/2`.
pub fn solve_b1(o: &Oracle) -> Result<EndpointSolution> {
    solve_endpoint(&o.half_pi(), o)
}

/// `g(x) = (f_b(x) - arcsin x) / x^3`, continuously extended by
/// `g(0) = (4 - b) / (24 (2 + b))`.
pub fn g_value(b: &Real, x: &Real, o: &Oracle) -> Result<Real> {
    o.check_unit(x, "x")?;
    check_beta(b)?;
    if o.cmp(x, &o.real(G_SERIES_CUTOFF)) == Ordering::Less {
        return Ok(g_at_zero(b, o));
    }
    let fb = matched_at(b, x, o)?;
    let diff = o.sub(&fb, &o.arcsin(x)?);
    let x3 = o.mul(&o.mul(x, x), x);
    Ok(o.div(&diff, &x3))
}

/// `(4 - b) / (24 (2 + b))`
pub fn g_at_zero(b: &Real, o: &Oracle) -> Real {
    o.div(
        &o.sub(&o.int(4), b),
        &o.mul(&o.int(24), &o.add(&o.int(2), b)),
    )
}

/// `f_b(x)` for an arbitrary-precision `b`.
pub(crate) fn matched_at(b: &Real, x: &Real, o: &Oracle) -> Result<Real> {
    check_beta(b)?;
    o.check_unit(x, "x")?;
    if x.is_zero() {
        return Ok(o.zero());
    }
    let one = o.one();
    let sp = o.sqrt(&o.add(&one, x));
    let sm = o.sqrt(&o.sub(&one, x));
    let num = o.mul(&o.add(b, &o.int(2)), &o.sub(&sp, &sm));
    let den = o.add(b, &o.add(&sp, &sm));
    o.finite(o.div(&num, &den), "f_b(x)")
}

/// `pi/2 - f_b(1)`; positive exactly when `b > b1`.
pub fn upper_endpoint_gap(b: &Real, o: &Oracle) -> Result<Real> {
    check_beta(b)?;
    Ok(o.sub(&o.half_pi(), &endpoint_value(b, o)))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UpperWitness {
    pub b: f64,
    pub x: f64,
    /// `pi/2 - f_b(1) > 0`: the bound falls below arcsin at 1.
    pub gap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LowerCounterexample {
    pub b: f64,
    pub g0: f64,
    pub g1: f64,
    pub c_b: f64,
    pub xi: f64,
    /// `g(xi) > 0`: `f_b` exceeds arcsin at `xi`.
    pub g_xi: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimalityReport {
    pub b1: f64,
    pub b1_decimal: String,
    pub endpoint_residual: f64,
    pub upper_strictness_witness: UpperWitness,
    pub lower_counterexample: LowerCounterexample,
    pub precision_bits: usize,
}

/// Evidence that `f_b1` is the least upper bound and `f_4` the greatest lower bound
/// of arcsin within the matched square-root family.
///
/// `upper_b` defaults to `b1 + 0.1`, `lower_b` to `(b1 + 4) / 2`.
pub fn optimality_report(
    upper_b: Option<f64>,
    lower_b: Option<f64>,
    o: &Oracle,
) -> Result<OptimalityReport> {
    let sol = solve_b1(o)?;
    let b1 = Constant::B1.value(o);
    let endpoint_residual = o.sub(&matched_at(&b1, &o.one(), o)?, &o.half_pi()).abs();
    if o.cmp(&endpoint_residual, &o.certify_tol()) == Ordering::Greater {
        return Err(Error::Certification(format!(
            "f_b1(1) misses pi/2 by {:e}",
            to_f64(&endpoint_residual)
        )));
    }

    let ub = match upper_b {
        Some(v) => o.real(v),
        None => o.add(&b1, &o.real(0.1)),
    };
    if o.cmp(&ub, &b1) != Ordering::Greater {
        return Err(Error::param("upper witness parameter must exceed b1"));
    }
    let gap = upper_endpoint_gap(&ub, o)?;
    if !(gap.is_positive() && !gap.is_zero()) {
        return Err(Error::Certification(format!(
            "f_b(1) < pi/2 fails for b = {}",
            to_f64(&ub)
        )));
    }

    let lb = match lower_b {
        Some(v) => o.real(v),
        None => o.mul(&o.add(&b1, &o.int(4)), &o.real(0.5)),
    };
    let lower = crate::certify::lower_counterexample(&lb, o)?;
    if lower.g_xi <= 0.0 {
        return Err(Error::Certification(format!(
            "g(xi) = {} is not positive for b = {}",
            lower.g_xi, lower.b
        )));
    }

    Ok(OptimalityReport {
        b1: sol.b,
        b1_decimal: sol.b_decimal,
        endpoint_residual: to_f64(&endpoint_residual),
        upper_strictness_witness: UpperWitness {
            b: to_f64(&ub),
            x: 1.0,
            gap: to_f64(&gap),
        },
        lower_counterexample: lower,
        precision_bits: o.bits(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::PrecisionConfig;

    fn oracle() -> Oracle {
        Oracle::new(PrecisionConfig::verification()).unwrap()
    }

    #[test]
    fn matched_parameters_satisfy_contact() {
        let o = oracle();
        let r = match_at_zero(6.0.into(), 4.0.into(), &o).unwrap();
        assert_eq!(r.value, 0.0);
        assert!(r.slope < 1e-20, "{r:?}");
    }

    #[test]
    fn unmatched_slope_is_alpha_over_beta_plus_two() {
        let o = oracle();
        let r = match_at_zero(7.0.into(), 4.0.into(), &o).unwrap();
        assert_eq!(r.value, 0.0);
        // Phi'(0) = 7/6
        assert!((r.slope - 1.0 / 6.0).abs() < 1e-20, "{r:?}");
    }

    #[test]
    fn analytic_discrepancy_values() {
        let o = oracle();
        let four = o.int(4);
        assert!(analytic_discrepancy(3, &four, &o).unwrap().is_zero());
        let d5 = to_f64(&analytic_discrepancy(5, &four, &o).unwrap());
        assert!((d5 + 1.0 / 24.0).abs() < 1e-16);
        let b1 = Constant::B1.value(&o);
        let d3 = to_f64(&analytic_discrepancy(3, &b1, &o).unwrap());
        // (4 - b1) / (4 (2 + b1))
        assert!((d3 - 0.005_256_0).abs() < 5e-8, "{d3}");
        for k in [0, 1, 2, 4] {
            assert!(analytic_discrepancy(k, &b1, &o).unwrap().is_zero());
        }
        assert!(analytic_discrepancy(6, &four, &o).is_err());
        assert!(analytic_discrepancy(3, &o.real(-1.0), &o).is_err());
    }

    #[test]
    fn third_order_discrepancy_sign_follows_four_minus_beta() {
        let o = oracle();
        for (beta, want) in [
            (1.0, 1.0),
            (3.99, 1.0),
            (4.0, 0.0),
            (4.01, -1.0),
            (9.0, -1.0),
        ] {
            let v = to_f64(&analytic_discrepancy(3, &o.real(beta), &o).unwrap());
            assert_eq!(v.signum() * (v != 0.0) as i32 as f64, want, "beta {beta}");
        }
    }

    #[test]
    fn numeric_discrepancy_at_four() {
        let o = oracle();
        let r3 = discrepancy(3, 4.0.into(), &o).unwrap();
        assert!(r3.numeric.abs() < 1e-10, "{r3:?}");
        let r5 = discrepancy(5, 4.0.into(), &o).unwrap();
        assert!(r5.abs_diff < 1e-8, "{r5:?}");
    }

    #[test]
    fn solve_half_pi_gives_b1() {
        let o = oracle();
        let s = solve_b1(&o).unwrap();
        assert!((s.b - 3.876_452_545_133_979).abs() < 1e-14);
        assert!(s.relative_agreement < 2f64.powi(-112));
        assert!(s.residual < 1e-35);
    }

    #[test]
    fn solve_recovers_four() {
        let o = oracle();
        let t = endpoint_value(&o.int(4), &o);
        let s = solve_endpoint(&t, &o).unwrap();
        assert!((s.b - 4.0).abs() < 1e-30);
    }

    #[test]
    fn solve_far_out_target() {
        let o = oracle();
        // f_b(1) at b = 10^6 is just above sqrt(2); the bracket must grow to reach it
        let t = endpoint_value(&o.real(1e6), &o);
        let s = solve_endpoint(&t, &o).unwrap();
        assert!((s.b - 1e6).abs() < 1e-18 * 1e6 * 1e6);
    }

    #[test]
    fn targets_outside_range_have_no_solution() {
        let o = oracle();
        for t in [o.sqrt2(), o.int(2), o.real(1.0), o.real(2.5)] {
            assert!(matches!(
                solve_endpoint(&t, &o),
                Err(Error::NoSolution { .. })
            ));
        }
    }

    #[test]
    fn g_limit_at_zero() {
        let o = oracle();
        let g0 = to_f64(&g_value(&o.real(3.9), &o.zero(), &o).unwrap());
        assert!((g0 - 0.1 / (24.0 * 5.9)).abs() < 1e-18);
        assert!(g_value(&o.int(4), &o.zero(), &o).unwrap().is_zero());
        // the quotient just above the cutoff continues the limit
        let near = to_f64(&g_value(&o.real(3.9), &o.real(2.0 * G_SERIES_CUTOFF), &o).unwrap());
        assert!((near - g0).abs() < 1e-9, "{near} vs {g0}");
    }

    #[test]
    fn default_optimality_report() {
        let o = oracle();
        let r = optimality_report(None, None, &o).unwrap();
        assert!((r.b1 - 3.876_452_545).abs() < 1e-9);
        assert!(r.endpoint_residual < 1e-25);
        assert!(r.upper_strictness_witness.gap > 0.0);
        let l = &r.lower_counterexample;
        assert!(l.g0 > 0.0 && l.g1 < 0.0 && l.g_xi > 0.0);
        assert!(0.0 < l.xi && l.xi < l.c_b && l.c_b < 1.0);
    }
}
