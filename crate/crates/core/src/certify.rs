//! Numeric certificate that `f_b >= arcsin` on `[0, 1]`.
//!
//! With `x = cos t` and `t = 4 atan u`, the difference `f_b(x) - arcsin(x)` becomes
//!
//! ```text
//! w(u) = sqrt2 (b+2)(u^2 + 2u - 1) / ((sqrt2 - b) u^2 - 2 sqrt2 u - b - sqrt2) - pi/2 + 4 atan(u)
//! ```
//!
//! on `u in [0, sqrt2 - 1]` (`u = 0` is `x = 1`, `u = sqrt2 - 1` is `x = 0`). Its
//! derivative is rational with a quartic numerator whose roots are known in closed
//! form, so nonnegativity reduces to checking finitely many points.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::bounds::Constant;
use crate::error::{Error, Result};
use crate::lambda::{g_at_zero, g_value, matched_at};
use crate::oracle::{to_f64, Oracle, Real};

/// Half-width of the bracket searched around each closed-form critical point.
const POLISH_RADIUS: f64 = 1e-3;

fn check_b(b: &Real) -> Result<()> {
    if b.is_nan() || b.is_negative() || b.is_zero() {
        return Err(Error::param(format!("b = {} must be positive", to_f64(b))));
    }
    Ok(())
}

/// `sqrt(2) - 1 = tan(pi/8)`, the right end of the `u` interval.
pub fn u_max(o: &Oracle) -> Real {
    o.sub(&o.sqrt2(), &o.one())
}

fn check_u(u: &Real, o: &Oracle) -> Result<()> {
    let ok = !u.is_nan() && !u.is_negative() && o.cmp(u, &u_max(o)) != Ordering::Greater;
    if ok {
        Ok(())
    } else {
        Err(Error::Domain {
            what: "u",
            value: to_f64(u),
            domain: "[0, sqrt(2) - 1]",
        })
    }
}

/// `w(u)` for the matched square-root bound `f_b`.
pub fn w_eval(u: &Real, b: &Real, o: &Oracle) -> Result<Real> {
    check_u(u, o)?;
    check_b(b)?;
    let s2 = o.sqrt2();
    let u2 = o.mul(u, u);
    let quad = o.sub(&o.add(&u2, &o.mul(&o.int(2), u)), &o.one());
    let num = o.mul(&o.mul(&s2, &o.add(b, &o.int(2))), &quad);
    let den = o.sub(
        &o.sub(
            &o.mul(&o.sub(&s2, b), &u2),
            &o.mul(&o.mul(&o.int(2), &s2), u),
        ),
        &o.add(b, &s2),
    );
    if o.cmp(&den.abs(), &o.certify_tol()) != Ordering::Greater {
        return Err(Error::SingularDenominator {
            u: to_f64(u),
            b: to_f64(b),
        });
    }
    let rational = o.div(&num, &den);
    let angle = o.mul(&o.int(4), &o.atan(u));
    o.finite(o.add(&o.sub(&rational, &o.half_pi()), &angle), "w(u)")
}

/// `f_b(x) - arcsin(x)` at `x = cos(4 atan u)`, evaluated directly. Reference for [`w_eval`].
pub fn w_composed(u: &Real, b: &Real, o: &Oracle) -> Result<Real> {
    check_u(u, o)?;
    check_b(b)?;
    // cos(4 atan u) = 2 cos^2(2 atan u) - 1 with cos(2 atan u) = (1 - u^2) / (1 + u^2)
    let u2 = o.mul(u, u);
    let c2 = o.div(&o.sub(&o.one(), &u2), &o.add(&o.one(), &u2));
    let x = o.sub(&o.mul(&o.int(2), &o.mul(&c2, &c2)), &o.one());
    // rounding can leave x a hair outside [0, 1] at the ends
    let x = if x.is_negative() {
        o.zero()
    } else if o.cmp(&x, &o.one()) == Ordering::Greater {
        o.one()
    } else {
        x
    };
    Ok(o.sub(&matched_at(b, &x, o)?, &o.arcsin(&x)?))
}

/// The five coefficients of the quartic numerator of `w'`, constant term first.
pub fn quartic_coefficients(b: &Real, o: &Oracle) -> [Real; 5] {
    let s2 = o.sqrt2();
    let b2 = o.mul(b, b);
    let i = |v: i64| o.int(v);
    let s2b2 = o.mul(&s2, &b2);
    let s2b = o.mul(&s2, b);
    // 4b^2 - 2sqrt2 b^2 - 8b + 4sqrt2 b - 8
    let c0 = o.sub(
        &o.add(
            &o.sub(
                &o.sub(&o.mul(&i(4), &b2), &o.mul(&i(2), &s2b2)),
                &o.mul(&i(8), b),
            ),
            &o.mul(&i(4), &s2b),
        ),
        &i(8),
    );
    // -4sqrt2 b^2 + 8sqrt2 b + 32
    let c1 = o.add(
        &o.add(&o.neg(&o.mul(&i(4), &s2b2)), &o.mul(&i(8), &s2b)),
        &i(32),
    );
    // 8b^2 - 16b - 16
    let c2 = o.sub(&o.sub(&o.mul(&i(8), &b2), &o.mul(&i(16), b)), &i(16));
    // -4sqrt2 b^2 + 8sqrt2 b - 32
    let c3 = o.sub(
        &o.add(&o.neg(&o.mul(&i(4), &s2b2)), &o.mul(&i(8), &s2b)),
        &i(32),
    );
    // 4b^2 + 2sqrt2 b^2 - 8b - 4sqrt2 b - 8
    let c4 = o.sub(
        &o.sub(
            &o.sub(
                &o.add(&o.mul(&i(4), &b2), &o.mul(&i(2), &s2b2)),
                &o.mul(&i(8), b),
            ),
            &o.mul(&i(4), &s2b),
        ),
        &i(8),
    );
    [c0, c1, c2, c3, c4]
}

fn w_prime_any(u: &Real, b: &Real, o: &Oracle) -> Result<Real> {
    let c = quartic_coefficients(b, o);
    let mut num = c[4].clone();
    for k in (0..4).rev() {
        num = o.add(&o.mul(&num, u), &c[k]);
    }
    let s2 = o.sqrt2();
    let u2 = o.mul(u, u);
    let inner = o.add(
        &o.add(
            &o.mul(&o.sub(b, &s2), &u2),
            &o.mul(&o.mul(&o.int(2), &s2), u),
        ),
        &o.add(b, &s2),
    );
    let den = o.mul(&o.add(&u2, &o.one()), &o.mul(&inner, &inner));
    if den.is_zero() {
        return Err(Error::SingularDenominator {
            u: to_f64(u),
            b: to_f64(b),
        });
    }
    o.finite(o.div(&num, &den), "w'(u)")
}

/// `w'(u)` from the closed-form rational function.
pub fn w_prime(u: &Real, b: &Real, o: &Oracle) -> Result<Real> {
    check_u(u, o)?;
    check_b(b)?;
    w_prime_any(u, b, o)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriticalPoint {
    /// `u1`, `u23` (double root) or `u4`.
    pub label: String,
    pub u: f64,
    pub u_decimal: String,
    pub multiplicity: u8,
    pub in_interval: bool,
    /// `|w'(u)|` after polishing.
    pub residual: f64,
}

/// `-b^4 + 4b^3 + 4b^2 - 16b = -b (b - 2)(b + 2)(b - 4)`; nonnegative on `[2, 4]`.
pub fn radicand(b: &Real, o: &Oracle) -> Real {
    let b2 = o.mul(b, b);
    let b3 = o.mul(&b2, b);
    let b4 = o.mul(&b3, b);
    let v = o.add(&o.neg(&b4), &o.mul(&o.int(4), &b3));
    o.sub(&o.add(&v, &o.mul(&o.int(4), &b2)), &o.mul(&o.int(16), b))
}

struct RawCritical {
    label: &'static str,
    u: Real,
    multiplicity: u8,
}

/// Roots of the quartic: `sqrt2 - 1` (double) and, when the radicand is
/// nonnegative, `(2 sqrt2 -+ sqrt(radicand)) / (b^2 - 2b + 2 sqrt2 - 4)`.
fn raw_critical_points(b: &Real, o: &Oracle) -> Result<(Vec<RawCritical>, Real)> {
    let rad = radicand(b, o);
    let mut out = vec![RawCritical {
        label: "u23",
        u: u_max(o),
        multiplicity: 2,
    }];
    if rad.is_negative() {
        return Ok((out, rad));
    }
    let s2 = o.sqrt2();
    let two_s2 = o.mul(&o.int(2), &s2);
    let s = o.sqrt(&rad);
    let b2 = o.mul(b, b);
    let base = o.sub(&b2, &o.mul(&o.int(2), b));
    let lead = o.sub(&o.add(&base, &two_s2), &o.int(4));
    let tail = o.sub(&o.sub(&base, &o.int(4)), &two_s2);
    let plus = o.add(&two_s2, &s);
    // (2sqrt2 - s)/lead rewritten through the product of roots, tail/lead
    let u1 = o.div(&tail, &plus);
    out.push(RawCritical {
        label: "u1",
        u: u1,
        multiplicity: if s.is_zero() { 2 } else { 1 },
    });
    if o.cmp(&lead.abs(), &o.certify_tol()) == Ordering::Greater && !s.is_zero() {
        out.push(RawCritical {
            label: "u4",
            u: o.div(&plus, &lead),
            multiplicity: 1,
        });
    }
    Ok((out, rad))
}

/// Bisection on a sign change of `w'` within `POLISH_RADIUS` of `u`; returns `u`
/// unchanged when there is none (double roots).
fn polish(u: &Real, b: &Real, o: &Oracle) -> Result<Real> {
    let r = o.real(POLISH_RADIUS);
    let mut lo = o.sub(u, &r);
    let mut hi = o.add(u, &r);
    let f_lo = w_prime_any(&lo, b, o)?;
    let f_hi = w_prime_any(&hi, b, o)?;
    if f_lo.is_negative() == f_hi.is_negative() || f_lo.is_zero() || f_hi.is_zero() {
        return Ok(u.clone());
    }
    let lo_neg = f_lo.is_negative();
    let tol = o.solver_tol();
    let half = o.real(0.5);
    for _ in 0..(2 * o.bits()) {
        let mid = o.mul(&o.add(&lo, &hi), &half);
        let scale = o.add(&mid.abs(), &o.one());
        if o.cmp(&o.sub(&hi, &lo), &o.mul(&tol, &scale)) != Ordering::Greater {
            break;
        }
        let fm = w_prime_any(&mid, b, o)?;
        if fm.is_zero() {
            return Ok(mid);
        }
        if fm.is_negative() == lo_neg {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(o.mul(&o.add(&lo, &hi), &half))
}

fn polished_points(b: &Real, o: &Oracle) -> Result<(Vec<(RawCritical, Real)>, Real)> {
    let (raw, rad) = raw_critical_points(b, o)?;
    let mut pts = Vec::with_capacity(raw.len());
    for mut p in raw {
        if p.multiplicity == 1 {
            p.u = polish(&p.u, b, o)?;
        }
        let res = w_prime_any(&p.u, b, o)?.abs();
        pts.push((p, res));
    }
    pts.sort_by(|a, b| o.cmp(&a.0.u, &b.0.u));
    Ok((pts, rad))
}

/// All four roots of the quartic numerator of `w'`, polished and sorted.
pub fn critical_points(b: &Real, o: &Oracle) -> Result<Vec<CriticalPoint>> {
    check_b(b)?;
    let (pts, rad) = polished_points(b, o)?;
    if rad.is_negative() {
        return Err(Error::ComplexRoots {
            b: to_f64(b),
            radicand: to_f64(&rad),
        });
    }
    let umax = u_max(o);
    Ok(pts
        .into_iter()
        .map(|(p, res)| CriticalPoint {
            label: p.label.to_string(),
            u: to_f64(&p.u),
            u_decimal: o.decimal(&p.u),
            multiplicity: p.multiplicity,
            in_interval: !p.u.is_negative() && o.cmp(&p.u, &umax) != Ordering::Greater,
            residual: to_f64(&res),
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NonnegCertificate {
    pub b: f64,
    pub interval: (f64, f64),
    /// Real critical points of `w` strictly inside the interval.
    pub critical_points: Vec<f64>,
    pub critical_residuals: Vec<f64>,
    /// `(w(0), w(sqrt2 - 1))`
    pub endpoint_values: (f64, f64),
    pub extremum_values: Vec<f64>,
    /// `(u, w(u))` at midpoints between consecutive checked points.
    pub sentinels: Vec<(f64, f64)>,
    pub min_value: f64,
    pub min_at: f64,
    pub tolerance: f64,
    pub verdict: bool,
    /// `(u, w(u))` of the worst point when the verdict is false.
    pub violation: Option<(f64, f64)>,
    pub precision_used: usize,
}

/// Checks `w >= -tol` at the endpoints, the interior critical points and the
/// midpoints between them. Failure is reported through `verdict`.
pub fn certify_upper_bound(b: &Real, o: &Oracle) -> Result<NonnegCertificate> {
    check_b(b)?;
    let umax = u_max(o);
    let zero = o.zero();
    let (pts, _) = polished_points(b, o)?;
    let tol = o.certify_tol();
    let mut interior = Vec::new();
    let mut residuals = Vec::new();
    for (p, res) in pts {
        let inside =
            o.cmp(&p.u, &zero) == Ordering::Greater && o.cmp(&p.u, &umax) == Ordering::Less;
        if inside {
            interior.push(p.u);
            residuals.push(to_f64(&res));
        }
    }

    let mut nodes = vec![zero.clone()];
    nodes.extend(interior.iter().cloned());
    nodes.push(umax.clone());
    let node_values = nodes
        .iter()
        .map(|u| w_eval(u, b, o))
        .collect::<Result<Vec<_>>>()?;
    let half = o.real(0.5);
    let mut sentinels = Vec::new();
    for pair in nodes.windows(2) {
        let mid = o.mul(&o.add(&pair[0], &pair[1]), &half);
        let w = w_eval(&mid, b, o)?;
        sentinels.push((mid, w));
    }

    let mut min_value = node_values[0].clone();
    let mut min_at = nodes[0].clone();
    let candidates = nodes
        .iter()
        .zip(&node_values)
        .chain(sentinels.iter().map(|(u, w)| (u, w)));
    for (u, w) in candidates {
        if o.cmp(w, &min_value) == Ordering::Less {
            min_value = w.clone();
            min_at = u.clone();
        }
    }
    let verdict = o.cmp(&min_value, &o.neg(&tol)) != Ordering::Less;
    let last = node_values.len() - 1;
    Ok(NonnegCertificate {
        b: to_f64(b),
        interval: (0.0, to_f64(&umax)),
        critical_points: interior.iter().map(to_f64).collect(),
        critical_residuals: residuals,
        endpoint_values: (to_f64(&node_values[0]), to_f64(&node_values[last])),
        extremum_values: node_values[1..last].iter().map(to_f64).collect(),
        sentinels: sentinels
            .iter()
            .map(|(u, w)| (to_f64(u), to_f64(w)))
            .collect(),
        min_value: to_f64(&min_value),
        min_at: to_f64(&min_at),
        tolerance: to_f64(&tol),
        verdict,
        violation: (!verdict).then(|| (to_f64(&min_at), to_f64(&min_value))),
        precision_used: o.bits(),
    })
}

/// For `b` in `(b1, 4)`: a point where `f_b` exceeds arcsin, so `f_b` is not a
/// lower bound.
///
/// `g(0) > 0` and `g(1) < 0`; bisection finds a sign change `c_b` and the witness is
/// `xi = c_b / 2`.
pub fn lower_counterexample(b: &Real, o: &Oracle) -> Result<crate::lambda::LowerCounterexample> {
    check_b(b)?;
    let b1 = Constant::B1.value(o);
    let four = o.int(4);
    if o.cmp(b, &b1) != Ordering::Greater || o.cmp(b, &four) != Ordering::Less {
        return Err(Error::param(format!("b = {} is not in (b1, 4)", to_f64(b))));
    }
    let g0 = g_at_zero(b, o);
    let g1 = g_value(b, &o.one(), o)?;
    if !g0.is_positive() || g0.is_zero() || !g1.is_negative() {
        return Err(Error::Certification(format!(
            "expected g(0) > 0 > g(1), got g(0) = {:e}, g(1) = {:e}",
            to_f64(&g0),
            to_f64(&g1)
        )));
    }
    let mut lo = o.zero();
    let mut hi = o.one();
    let half = o.real(0.5);
    for _ in 0..80 {
        let mid = o.mul(&o.add(&lo, &hi), &half);
        if g_value(b, &mid, o)?.is_negative() {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let c_b = o.mul(&o.add(&lo, &hi), &half);
    let mut xi = o.mul(&c_b, &half);
    let mut g_xi = g_value(b, &xi, o)?;
    if !g_xi.is_positive() && !lo.is_zero() {
        xi = lo.clone();
        g_xi = g_value(b, &xi, o)?;
    }
    Ok(crate::lambda::LowerCounterexample {
        b: to_f64(b),
        g0: to_f64(&g0),
        g1: to_f64(&g1),
        c_b: to_f64(&c_b),
        xi: to_f64(&xi),
        g_xi: to_f64(&g_xi),
    })
}
