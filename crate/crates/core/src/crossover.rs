//! Where two curves on `(0, 1)` cross, and which one lies below on each side.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::bounds::{BoundSpec, Curve};
use crate::error::{Error, Result};
use crate::grid::{open_grid, par_eval};
use crate::oracle::{to_f64, Oracle, Real};

/// Cells of the coarse scan before bisection.
pub const SCAN_CELLS: usize = 1024;
/// Both curves vanish at 0 (and several meet at 1); the scan stays this far inside.
pub const SCAN_MARGIN: f64 = 1e-6;

/// Sign of `a - b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Order {
    Less,
    Equal,
    Greater,
}

impl From<Ordering> for Order {
    fn from(o: Ordering) -> Self {
        match o {
            Ordering::Less => Order::Less,
            Ordering::Equal => Order::Equal,
            Ordering::Greater => Order::Greater,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossoverResult {
    pub a: String,
    pub b: String,
    pub c: f64,
    pub c_decimal: String,
    pub bracket: (f64, f64),
    pub residual: f64,
    /// Sign of `a - b` on `(0, c)`.
    pub left_order: Order,
    /// Sign of `a - b` on `(c, 1)`.
    pub right_order: Order,
    /// Scan cells holding further sign changes; non-empty means the crossing is not unique.
    pub additional_crossings: Vec<(f64, f64)>,
    pub precision_bits: usize,
}

fn signed_diff(a: &Curve, b: &Curve, x: &Real, o: &Oracle) -> Result<(Real, Ordering)> {
    let va = a.eval(x, o)?;
    let vb = b.eval(x, o)?;
    let d = o.sub(&va, &vb);
    let tol = o.mul(&o.equality_tol(), &o.add(&va.abs(), &vb.abs()));
    let s = o.sign_with_tol(&d, &tol);
    Ok((d, s))
}

/// Cells `(x_i, x_j)` across which the nonzero sign of the difference flips.
fn sign_change_cells(xs: &[f64], signs: &[Ordering]) -> Vec<(f64, f64)> {
    let mut cells = Vec::new();
    let mut last: Option<(f64, Ordering)> = None;
    for (&x, &s) in xs.iter().zip(signs) {
        if s == Ordering::Equal {
            continue;
        }
        if let Some((lx, ls)) = last {
            if ls != s {
                cells.push((lx, x));
            }
        }
        last = Some((x, s));
    }
    cells
}

/// Locates the first crossing of `a` and `b` in `(lo, hi)`.
pub fn find_crossover(
    a: &Curve,
    b: &Curve,
    lo: f64,
    hi: f64,
    o: &Oracle,
) -> Result<CrossoverResult> {
    if !(0.0..1.0).contains(&lo) || !(lo < hi && hi <= 1.0) {
        return Err(Error::param(format!(
            "interval ({lo}, {hi}) is not inside (0, 1)"
        )));
    }
    for c in [a, b] {
        if let Curve::Bound(s) = c {
            s.validate()?;
        }
    }
    let scan_lo = lo.max(SCAN_MARGIN);
    let scan_hi = hi.min(1.0 - SCAN_MARGIN);
    let width = scan_hi - scan_lo;
    let xs: Vec<f64> = (0..=SCAN_CELLS)
        .map(|i| scan_lo + width * i as f64 / SCAN_CELLS as f64)
        .collect();
    let signs = xs
        .iter()
        .map(|&x| signed_diff(a, b, &o.real(x), o).map(|(_, s)| s))
        .collect::<Result<Vec<_>>>()?;
    let cells = sign_change_cells(&xs, &signs);
    let Some(&(cell_lo, cell_hi)) = cells.first() else {
        return Err(Error::NoCrossover {
            lo: scan_lo,
            hi: scan_hi,
        });
    };

    let mut l = o.real(cell_lo);
    let mut r = o.real(cell_hi);
    let (_, sign_l) = signed_diff(a, b, &l, o)?;
    let tol = o.solver_tol();
    let two = o.int(2);
    let mut c = o.div(&o.add(&l, &r), &two);
    for _ in 0..(4 * o.bits()) {
        let width = o.sub(&r, &l);
        if o.cmp(&width, &o.mul(&tol, &r)) != Ordering::Greater {
            break;
        }
        let (_, s) = signed_diff(a, b, &c, o)?;
        if s == Ordering::Equal {
            break;
        }
        if s == sign_l {
            l = c;
        } else {
            r = c;
        }
        c = o.div(&o.add(&l, &r), &two);
    }

    let (d, _) = signed_diff(a, b, &c, o)?;
    let cf = to_f64(&c);
    let left_x = o.real(0.5 * (scan_lo + cf));
    let right_x = o.real(0.5 * (cf + scan_hi));
    let (_, left) = signed_diff(a, b, &left_x, o)?;
    let (_, right) = signed_diff(a, b, &right_x, o)?;
    Ok(CrossoverResult {
        a: a.label(),
        b: b.label(),
        c: cf,
        c_decimal: o.decimal(&c),
        bracket: (to_f64(&l), to_f64(&r)),
        residual: to_f64(&d.abs()),
        left_order: left.into(),
        right_order: right.into(),
        additional_crossings: cells[1..].to_vec(),
        precision_bits: o.bits(),
    })
}

/// Crossing of the algebraic least upper bound `b = 2/(pi-2)` with Zhu's upper bound.
pub fn algebraic_vs_zhu(o: &Oracle) -> Result<CrossoverResult> {
    find_crossover(
        &Curve::Bound(BoundSpec::algebraic_upper()),
        &Curve::Bound(BoundSpec::zhu_upper()),
        0.0,
        1.0,
        o,
    )
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderReport {
    pub a: String,
    pub b: String,
    pub grid_size: usize,
    /// `Some(Less)` when `a < b` at every grid point, `Some(Greater)` when `a > b`
    /// everywhere, `None` otherwise.
    pub dominance: Option<Order>,
    pub count_less: usize,
    pub count_equal: usize,
    pub count_greater: usize,
    pub sign_change_cells: Vec<(f64, f64)>,
    /// Smallest and largest `a - b` seen, with their abscissas.
    pub min_diff: (f64, f64),
    pub max_diff: (f64, f64),
}

/// Sign of `a - b` on `grid_size` uniform interior points of `(0, 1)`.
pub fn order_report(a: &Curve, b: &Curve, grid_size: usize, o: &Oracle) -> Result<OrderReport> {
    if grid_size < 3 {
        return Err(Error::param(format!(
            "grid size {grid_size} must be at least 3"
        )));
    }
    for c in [a, b] {
        if let Curve::Bound(s) = c {
            s.validate()?;
        }
    }
    let xs = open_grid(grid_size);
    let evals = par_eval(o.config(), &xs, |o, x| {
        let (d, s) = signed_diff(a, b, &o.real(x), o)?;
        Ok((to_f64(&d), s))
    })?;
    let signs: Vec<Ordering> = evals.iter().map(|e| e.1).collect();
    let count = |want: Ordering| signs.iter().filter(|&&s| s == want).count();
    let (count_less, count_equal, count_greater) = (
        count(Ordering::Less),
        count(Ordering::Equal),
        count(Ordering::Greater),
    );
    let dominance = if count_less == grid_size {
        Some(Order::Less)
    } else if count_greater == grid_size {
        Some(Order::Greater)
    } else {
        None
    };
    let mut min_diff = (f64::INFINITY, 0.0);
    let mut max_diff = (f64::NEG_INFINITY, 0.0);
    for (&x, &(d, _)) in xs.iter().zip(&evals) {
        if d < min_diff.0 {
            min_diff = (d, x);
        }
        if d > max_diff.0 {
            max_diff = (d, x);
        }
    }
    Ok(OrderReport {
        a: a.label(),
        b: b.label(),
        grid_size,
        dominance,
        count_less,
        count_equal,
        count_greater,
        sign_change_cells: sign_change_cells(&xs, &signs),
        min_diff,
        max_diff,
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
    fn algebraic_upper_meets_zhu_once() {
        let o = oracle();
        let r = algebraic_vs_zhu(&o).unwrap();
        assert!((r.c - 0.387_266_274).abs() < 1e-9, "c = {}", r.c);
        assert!(r.bracket.0 <= r.c && r.c <= r.bracket.1);
        assert!(r.residual < 1e-30);
        // algebraic bound is the tighter (smaller) one left of c, Zhu's right of c
        assert_eq!(r.left_order, Order::Less);
        assert_eq!(r.right_order, Order::Greater);
        assert!(r.additional_crossings.is_empty());
    }

    #[test]
    fn crossing_changes_sign_at_small_offsets() {
        let o = oracle();
        let r = algebraic_vs_zhu(&o).unwrap();
        let a = Curve::Bound(BoundSpec::algebraic_upper());
        let b = Curve::Bound(BoundSpec::zhu_upper());
        let (_, left) = signed_diff(&a, &b, &o.real(r.c - 1e-6), &o).unwrap();
        let (_, right) = signed_diff(&a, &b, &o.real(r.c + 1e-6), &o).unwrap();
        assert_eq!(left, Ordering::Less);
        assert_eq!(right, Ordering::Greater);
    }

    #[test]
    fn identical_curves_never_cross() {
        let o = oracle();
        let a = Curve::Bound(BoundSpec::zhu_upper());
        assert!(matches!(
            find_crossover(&a, &a, 0.0, 1.0, &o),
            Err(Error::NoCrossover { .. })
        ));
    }

    #[test]
    fn rejects_bad_interval() {
        let o = oracle();
        let a = Curve::Arcsin;
        let b = Curve::Bound(BoundSpec::zhu_upper());
        assert!(find_crossover(&a, &b, 0.5, 0.2, &o).is_err());
        assert!(order_report(&a, &b, 2, &o).is_err());
    }

    #[test]
    fn lower_bound_sits_below_arcsin() {
        let o = oracle();
        let r = order_report(
            &Curve::Bound(BoundSpec::shafer_sqrt_lower()),
            &Curve::Arcsin,
            200,
            &o,
        )
        .unwrap();
        assert_eq!(r.dominance, Some(Order::Less));
        assert!(r.sign_change_cells.is_empty());
        assert!(r.max_diff.0 < 0.0);
    }

    #[test]
    fn sign_cells_skip_ties() {
        use Ordering::*;
        let xs = [0.0, 1.0, 2.0, 3.0, 4.0];
        let cells = sign_change_cells(&xs, &[Less, Equal, Greater, Greater, Less]);
        assert_eq!(cells, vec![(0.0, 2.0), (3.0, 4.0)]);
    }
}
