//! Drivers for the line-decay bounds table and the definiteness threshold
//! of uniformly perturbed complete-graph weights.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fmt::g17;
use crate::moran::{bounds, classify_reduced, reduced, Definiteness};
use crate::rng::{stream_id, substream};
use crate::weights::WeightsMatrix;

/// Published three-decimal bounds `(n, q, lower, upper)` for `line_decay(n, q)`.
pub const REFERENCE_TABLE1: [(usize, usize, f64, f64); 15] = [
    (10, 1, -1.066, 0.935),
    (10, 2, -0.541, 0.831),
    (10, 3, -0.482, 0.746),
    (20, 1, -1.041, 1.006),
    (20, 2, -0.526, 0.981),
    (20, 3, -0.457, 0.955),
    (30, 1, -1.029, 1.013),
    (30, 2, -0.519, 1.005),
    (30, 3, -0.449, 0.995),
    (40, 1, -1.023, 1.014),
    (40, 2, -0.514, 1.011),
    (40, 3, -0.444, 1.006),
    (50, 1, -1.018, 1.013),
    (50, 2, -0.512, 1.012),
    (50, 3, -0.441, 1.010),
];

pub const TABLE1_NS: [usize; 5] = [10, 20, 30, 40, 50];
pub const TABLE1_QS: [usize; 3] = [1, 2, 3];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundsRow {
    pub n: usize,
    pub q: usize,
    pub lower: f64,
    pub upper: f64,
}

/// Unrounded bounds, one row per (n, q) in input order (n outer).
#[derive(Debug, Clone, PartialEq)]
pub struct BoundsTable {
    pub rows: Vec<BoundsRow>,
}

impl BoundsTable {
    pub fn get(&self, n: usize, q: usize) -> Option<&BoundsRow> {
        self.rows.iter().find(|r| r.n == n && r.q == q)
    }

    /// `n,q,lower,upper` with full-precision numbers.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,q,lower,upper\n");
        for r in &self.rows {
            let _ = writeln!(out, "{},{},{},{}", r.n, r.q, g17(r.lower), g17(r.upper));
        }
        out
    }

    /// Rows are n, column groups are q, values rounded to 3 decimals.
    pub fn to_text(&self) -> String {
        let mut ns: Vec<usize> = Vec::new();
        let mut qs: Vec<usize> = Vec::new();
        for r in &self.rows {
            if !ns.contains(&r.n) {
                ns.push(r.n);
            }
            if !qs.contains(&r.q) {
                qs.push(r.q);
            }
        }
        let mut out = String::new();
        let _ = write!(out, "{:>6}", "n\\q");
        for q in &qs {
            let _ = write!(out, " | {:^17}", q);
        }
        out.push('\n');
        let _ = write!(out, "{:>6}", "");
        for _ in &qs {
            let _ = write!(out, " | {:>8} {:>8}", "lower", "upper");
        }
        out.push('\n');
        for n in &ns {
            let _ = write!(out, "{n:>6}");
            for q in &qs {
                match self.get(*n, *q) {
                    Some(r) => {
                        let _ = write!(out, " | {:>8.3} {:>8.3}", r.lower, r.upper);
                    }
                    None => {
                        let _ = write!(out, " | {:>8} {:>8}", "-", "-");
                    }
                }
            }
            out.push('\n');
        }
        out
    }
}

/// Bounds of Moran's I for every `line_decay(n, q)` in `ns × qs`.
pub fn table1(ns: &[usize], qs: &[usize]) -> Result<BoundsTable> {
    let min_n = ns
        .iter()
        .copied()
        .min()
        .ok_or_else(|| Error::InvalidParameter("empty n list".into()))?;
    if qs.is_empty() {
        return Err(Error::InvalidParameter("empty q list".into()));
    }
    if let Some(&q) = qs.iter().find(|&&q| q == 0 || q >= min_n) {
        return Err(Error::QOutOfRange {
            q,
            max: min_n.saturating_sub(1),
        });
    }
    let mut rows = Vec::with_capacity(ns.len() * qs.len());
    for &n in ns {
        for &q in qs {
            let b = bounds(&WeightsMatrix::<f64>::line_decay(n, q)?)?;
            rows.push(BoundsRow {
                n,
                q,
                lower: b.lambda_min,
                upper: b.lambda_max,
            });
        }
    }
    Ok(BoundsTable { rows })
}

/// Where the negative-definite fraction of `random_uniform(n, a)` drops
/// below one half as the half-width `a` grows.
#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdEstimate {
    pub n: usize,
    pub a_star: f64,
    pub trials_per_a: usize,
    pub grid_step: f64,
    pub seed: u64,
    /// `(a, fraction negative definite)` per grid point.
    pub fraction_curve: Vec<(f64, f64)>,
}

impl ThresholdEstimate {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("a,fraction_negative_definite\n");
        for (a, f) in &self.fraction_curve {
            let _ = writeln!(out, "{},{}", g17(*a), g17(*f));
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "n = {}, trials per a = {}, grid step = {}, seed = {}\na* = {:.4}\n\n{:>6}  {:>8}\n",
            self.n, self.trials_per_a, self.grid_step, self.seed, self.a_star, "a", "fraction"
        );
        for (a, f) in &self.fraction_curve {
            let _ = writeln!(out, "{a:>6.3}  {f:>8.3}");
        }
        out
    }
}

pub const MIN_TRIALS: usize = 20;
pub const MAX_GRID_STEP: f64 = 0.05;

/// Grid `{step, 2·step, …}` up to `1 − step`.
pub fn threshold_grid(step: f64) -> Vec<f64> {
    let count = ((1.0 - step) / step + 1e-9).floor() as usize;
    (1..=count).map(|k| k as f64 * step).collect()
}

/// Estimates a* as the 50% crossing of the negative-definite fraction,
/// linearly interpolated between the bracketing grid points. Below the
/// first grid point the fraction is taken as 1 (the complete graph).
///
/// Trial t at grid index k draws from substream `(k, t)` of `seed`.
pub fn definiteness_threshold(
    n: usize,
    trials_per_a: usize,
    grid_step: f64,
    seed: u64,
) -> Result<ThresholdEstimate> {
    if n < crate::weights::MIN_UNITS {
        return Err(Error::TooSmall {
            n,
            min: crate::weights::MIN_UNITS,
        });
    }
    if trials_per_a < MIN_TRIALS {
        return Err(Error::InvalidParameter(format!(
            "trials per a must be at least {MIN_TRIALS}"
        )));
    }
    if !(grid_step > 0.0 && grid_step <= MAX_GRID_STEP) {
        return Err(Error::InvalidParameter(format!(
            "grid step must lie in (0, {MAX_GRID_STEP}]"
        )));
    }

    let grid = threshold_grid(grid_step);
    let mut fraction_curve = Vec::with_capacity(grid.len());
    for (k, &a) in grid.iter().enumerate() {
        let outcomes = (0..trials_per_a)
            .into_par_iter()
            .map(|t| {
                let mut rng = substream(seed, stream_id(k as u32, t as u32));
                let w = WeightsMatrix::<f64>::random_uniform_with(n, a, &mut rng)?;
                Ok(classify_reduced(&reduced(&w)?) == Definiteness::NegativeDefinite)
            })
            .collect::<Result<Vec<bool>>>()?;
        let hits = outcomes.iter().filter(|&&nd| nd).count();
        fraction_curve.push((a, hits as f64 / trials_per_a as f64));
    }

    let a_star = crossing(&fraction_curve).ok_or(Error::NoCrossing)?;
    Ok(ThresholdEstimate {
        n,
        a_star,
        trials_per_a,
        grid_step,
        seed,
        fraction_curve,
    })
}

fn crossing(curve: &[(f64, f64)]) -> Option<f64> {
    let k = curve.iter().position(|&(_, f)| f < 0.5)?;
    let (a0, f0) = if k == 0 { (0.0, 1.0) } else { curve[k - 1] };
    let (a1, f1) = curve[k];
    Some(a0 + (f0 - 0.5) / (f0 - f1) * (a1 - a0))
}
