//! Grid verification of the full bound chain.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::bounds::{eval_chain, CHAIN_LABELS, CHAIN_LEN};
use crate::error::Result;
use crate::grid::{closed_grid, par_eval, GridKind};
use crate::oracle::{to_f64, PrecisionConfig};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairGap {
    /// `"lower<upper"`, labels from [`CHAIN_LABELS`].
    pub pair: String,
    pub min_gap: f64,
    pub argmin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub x: f64,
    pub pair: String,
    pub gap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainReport {
    pub grid_size: usize,
    pub grid_kind: GridKind,
    pub precision_bits: usize,
    pub members: Vec<String>,
    pub per_pair_min_gap: Vec<PairGap>,
    pub violations: Vec<Violation>,
    pub verdict: bool,
}

/// One grid point: the members and the consecutive gaps, rounded to `f64`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainRow {
    pub x: f64,
    pub values: [f64; CHAIN_LEN],
    pub gaps: [f64; CHAIN_LEN - 1],
}

pub fn pair_labels() -> Vec<String> {
    CHAIN_LABELS
        .windows(2)
        .map(|w| format!("{}<{}", w[0], w[1]))
        .collect()
}

/// Evaluates the chain on a closed grid of `[0, 1]` and checks every consecutive
/// pair. Gaps within the equality tolerance count as exact zeros.
pub fn verify_chain(
    grid_size: usize,
    kind: GridKind,
    cfg: &PrecisionConfig,
) -> Result<(ChainReport, Vec<ChainRow>)> {
    let xs = closed_grid(grid_size, kind)?;
    let rows = par_eval(cfg, &xs, |o, x| {
        let v = eval_chain(&o.real(x), o)?;
        let mut gaps = [0.0; CHAIN_LEN - 1];
        let mut signs = [Ordering::Equal; CHAIN_LEN - 1];
        for k in 0..CHAIN_LEN - 1 {
            let d = o.sub(&v[k + 1], &v[k]);
            let tol = o.mul(&o.equality_tol(), &o.add(&v[k].abs(), &v[k + 1].abs()));
            signs[k] = o.sign_with_tol(&d, &tol);
            gaps[k] = if signs[k] == Ordering::Equal {
                0.0
            } else {
                to_f64(&d)
            };
        }
        Ok((
            ChainRow {
                x,
                values: std::array::from_fn(|k| to_f64(&v[k])),
                gaps,
            },
            signs,
        ))
    })?;

    let labels = pair_labels();
    let mut per_pair: Vec<PairGap> = labels
        .iter()
        .map(|p| PairGap {
            pair: p.clone(),
            min_gap: f64::INFINITY,
            argmin: 0.0,
        })
        .collect();
    let mut violations = Vec::new();
    for (row, signs) in &rows {
        for k in 0..CHAIN_LEN - 1 {
            if row.gaps[k] < per_pair[k].min_gap {
                per_pair[k].min_gap = row.gaps[k];
                per_pair[k].argmin = row.x;
            }
            if signs[k] == Ordering::Less {
                violations.push(Violation {
                    x: row.x,
                    pair: labels[k].clone(),
                    gap: row.gaps[k],
                });
            }
        }
    }
    let report = ChainReport {
        grid_size,
        grid_kind: kind,
        precision_bits: cfg.mantissa_bits,
        members: CHAIN_LABELS.iter().map(|s| s.to_string()).collect(),
        per_pair_min_gap: per_pair,
        verdict: violations.is_empty(),
        violations,
    };
    Ok((report, rows.into_iter().map(|r| r.0).collect()))
}
