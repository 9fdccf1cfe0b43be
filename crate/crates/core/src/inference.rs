//! Permutation test of spatial independence and exhaustive small-n null moments.

use rand::seq::SliceRandom;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::moran::{bounds, centered, cross_product, EigenBounds};
use crate::rng::substream;
use crate::scalar::Scalar;
use crate::weights::WeightsMatrix;

pub const MIN_REPLICATES: usize = 99;
/// Default cap on n for full enumeration (8! = 40320 permutations).
pub const EXHAUSTIVE_MAX_N: usize = 8;
/// Replicates within this relative distance of the observed statistic count as ties.
pub const TIE_RTOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Alternative {
    Greater,
    Less,
    TwoSided,
}

/// Which statistic replicates are ranked by. I_M is strictly increasing in
/// I, so both give the same one-sided p-values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RankBy {
    MoranI,
    Alternative,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PermutationTestResult<T> {
    pub observed_i: T,
    pub observed_i_m: T,
    pub p_value: T,
    pub alternative: Alternative,
    pub replicates: usize,
    /// Mean of I over the replicates.
    pub null_mean: T,
    pub seed: u64,
}

/// Permutation test ranking replicates by Moran's I.
pub fn permutation_test<T: Scalar>(
    y: &[T],
    w: &WeightsMatrix<T>,
    replicates: usize,
    seed: u64,
    alternative: Alternative,
) -> Result<PermutationTestResult<T>> {
    permutation_test_ranked(y, w, replicates, seed, alternative, RankBy::MoranI)
}

/// Permutation test with a choice of ranking statistic.
///
/// Replicate r shuffles the observations (Fisher–Yates) with substream r of
/// `seed`, so results do not depend on evaluation order. The p-value uses the
/// add-one rule `(1 + #extreme) / (1 + replicates)`; the two-sided value
/// doubles the smaller tail, capped at 1.
pub fn permutation_test_ranked<T: Scalar>(
    y: &[T],
    w: &WeightsMatrix<T>,
    replicates: usize,
    seed: u64,
    alternative: Alternative,
    rank_by: RankBy,
) -> Result<PermutationTestResult<T>> {
    if y.len() != w.n() {
        return Err(Error::DimensionMismatch {
            expected: w.n(),
            got: y.len(),
        });
    }
    let (d, ss) = centered(y)?;
    if replicates < MIN_REPLICATES {
        return Err(Error::TooFewReplicates {
            got: replicates,
            min: MIN_REPLICATES,
        });
    }
    let b = bounds(w)?;
    let factor = T::of_usize(w.n()) / (w.sum() * ss);
    let observed_i = factor * cross_product(w, &d);
    let observed_i_m = b.alternative(observed_i)?;

    let stats = replicate_statistics(w, &d, factor, replicates, seed);
    let null_mean = stats.iter().copied().sum::<T>() / T::of_usize(replicates);

    let p_value = p_value(&stats, observed_i, alternative, rank_by, &b)?;
    Ok(PermutationTestResult {
        observed_i,
        observed_i_m,
        p_value,
        alternative,
        replicates,
        null_mean,
        seed,
    })
}

fn replicate_statistics<T: Scalar>(
    w: &WeightsMatrix<T>,
    d: &[T],
    factor: T,
    replicates: usize,
    seed: u64,
) -> Vec<T> {
    (0..replicates as u64)
        .into_par_iter()
        .map(|r| {
            let mut rng = substream(seed, r);
            let mut perm = d.to_vec();
            perm.shuffle(&mut rng);
            factor * cross_product(w, &perm)
        })
        .collect()
}

fn p_value<T: Scalar>(
    stats: &[T],
    observed: T,
    alternative: Alternative,
    rank_by: RankBy,
    b: &EigenBounds<T>,
) -> Result<T> {
    let tol = T::lit(TIE_RTOL) * T::one().max(observed.abs());
    let (mut upper_cut, mut lower_cut) = (observed - tol, observed + tol);
    let transformed;
    let ranked: &[T] = match rank_by {
        RankBy::MoranI => stats,
        RankBy::Alternative => {
            upper_cut = b.alternative(upper_cut)?;
            lower_cut = b.alternative(lower_cut)?;
            transformed = stats
                .iter()
                .map(|&s| b.alternative(s))
                .collect::<Result<Vec<T>>>()?;
            &transformed
        }
    };
    let greater = ranked.iter().filter(|&&s| s >= upper_cut).count();
    let less = ranked.iter().filter(|&&s| s <= lower_cut).count();
    let denom = T::of_usize(stats.len() + 1);
    let p_greater = T::of_usize(greater + 1) / denom;
    let p_less = T::of_usize(less + 1) / denom;
    Ok(match alternative {
        Alternative::Greater => p_greater,
        Alternative::Less => p_less,
        Alternative::TwoSided => (T::lit(2.0) * p_greater.min(p_less)).min(T::one()),
    })
}

/// Exact permutation mean of I, enumerating all n! orderings of `y`.
pub fn exact_null_moments<T: Scalar>(y: &[T], w: &WeightsMatrix<T>) -> Result<(T, usize)> {
    exact_null_moments_capped(y, w, EXHAUSTIVE_MAX_N)
}

pub fn exact_null_moments_capped<T: Scalar>(
    y: &[T],
    w: &WeightsMatrix<T>,
    max_n: usize,
) -> Result<(T, usize)> {
    let n = w.n();
    if y.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: y.len(),
        });
    }
    if n > max_n {
        return Err(Error::TooLargeForExhaustive { n, max: max_n });
    }
    let (mut d, ss) = centered(y)?;
    let factor = T::of_usize(n) / (w.sum() * ss);

    // Heap's algorithm, iterative form
    let mut c = vec![0usize; n];
    let mut total = factor * cross_product(w, &d);
    let mut count = 1usize;
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                d.swap(0, i);
            } else {
                d.swap(c[i], i);
            }
            total += factor * cross_product(w, &d);
            count += 1;
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok((total / T::of_usize(count), count))
}
