//! Evaluation grids and a parallel per-point driver.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::{Oracle, PrecisionConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GridKind {
    Uniform,
    Chebyshev,
}

impl std::str::FromStr for GridKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(GridKind::Uniform),
            "chebyshev" => Ok(GridKind::Chebyshev),
            _ => Err(Error::param(format!("unknown grid kind {s:?}"))),
        }
    }
}

/// `n >= 2` points on `[0, 1]`, both endpoints included.
///
/// The Chebyshev grid is the Chebyshev-Lobatto set mapped to `[0, 1]`, which
/// clusters points at both ends.
pub fn closed_grid(n: usize, kind: GridKind) -> Result<Vec<f64>> {
    if n < 2 {
        return Err(Error::param(format!("grid size {n} must be at least 2")));
    }
    let last = (n - 1) as f64;
    let mut xs: Vec<f64> = (0..n)
        .map(|i| match kind {
            GridKind::Uniform => i as f64 / last,
            GridKind::Chebyshev => {
                (0.5 * (1.0 - (std::f64::consts::PI * i as f64 / last).cos())).clamp(0.0, 1.0)
            }
        })
        .collect();
    // cos(pi) rounding must not move the endpoints
    xs[0] = 0.0;
    xs[n - 1] = 1.0;
    Ok(xs)
}

/// `n` uniform interior points `i / (n + 1)` of `(0, 1)`.
pub fn open_grid(n: usize) -> Vec<f64> {
    (1..=n).map(|i| i as f64 / (n + 1) as f64).collect()
}

/// Applies `f` to every point with one oracle per worker; output order follows `xs`.
pub fn par_eval<T, F>(cfg: &PrecisionConfig, xs: &[f64], f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&Oracle, f64) -> Result<T> + Sync,
{
    cfg.validate()?;
    xs.par_iter()
        .map_init(
            || Oracle::new(*cfg),
            |o, &x| match o {
                Ok(o) => f(o, x),
                Err(e) => Err(e.clone()),
            },
        )
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids_include_endpoints() {
        for kind in [GridKind::Uniform, GridKind::Chebyshev] {
            let g = closed_grid(5, kind).unwrap();
            assert_eq!(g.len(), 5);
            assert_eq!(g[0], 0.0);
            assert_eq!(g[4], 1.0);
            assert!(g.windows(2).all(|w| w[0] < w[1]));
        }
        assert_eq!(closed_grid(2, GridKind::Uniform).unwrap(), vec![0.0, 1.0]);
        assert!(closed_grid(1, GridKind::Uniform).is_err());
    }

    #[test]
    fn open_grid_avoids_endpoints() {
        let g = open_grid(3);
        assert_eq!(g, vec![0.25, 0.5, 0.75]);
    }

    #[test]
    fn par_eval_preserves_order() {
        let cfg = PrecisionConfig::with_bits(64);
        let xs = open_grid(100);
        let out = par_eval(&cfg, &xs, |_, x| Ok(x * 2.0)).unwrap();
        assert!(out.iter().zip(&xs).all(|(a, b)| *a == b * 2.0));
    }
}
