//! Phase-1 simplex for `A x = b, x >= 0` feasibility.
//!
//! Dense tableau, one artificial variable per row, Bland's rule for both
//! entering and leaving choices. Instances here are small (a few hundred
//! variables at most), so no factorization tricks.

use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// Sum of artificials at or below this counts as feasible.
pub(crate) const FEASIBILITY_TOL: f64 = 1e-9;
const PIVOT_TOL: f64 = 1e-12;
/// Smallest admissible pivot magnitude.
const MIN_PIVOT: f64 = 1e-9;
pub(crate) const MAX_PIVOTS: usize = 100_000;

/// Returns a nonnegative `x` with `A x = b` (within [`FEASIBILITY_TOL`]),
/// or `None` when the system is infeasible.
pub(crate) fn find_feasible(a: &[Vec<f64>], b: &[f64]) -> Result<Option<Vec<f64>>> {
    find_feasible_capped(a, b, MAX_PIVOTS)
}

pub(crate) fn find_feasible_capped(
    a: &[Vec<f64>],
    b: &[f64],
    max_pivots: usize,
) -> Result<Option<Vec<f64>>> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let width = n + m + 1;
    let rhs = n + m;

    let mut tab = vec![0.0; m * width];
    for (i, (row, &bi)) in a.iter().zip(b).enumerate() {
        debug_assert_eq!(row.len(), n);
        let sign = if bi < 0.0 { -1.0 } else { 1.0 };
        let t = &mut tab[i * width..(i + 1) * width];
        for (dst, &v) in t[..n].iter_mut().zip(row) {
            *dst = sign * v;
        }
        t[n + i] = 1.0;
        t[rhs] = sign * bi;
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    // reduced costs of the phase-1 objective Σ artificials
    let mut cost = vec![0.0; width];
    for i in 0..m {
        for j in 0..n {
            cost[j] -= tab[i * width + j];
        }
        cost[rhs] -= tab[i * width + rhs];
    }

    let mut pivots = 0;
    while let Some(enter) = (0..n).find(|&j| cost[j] < -PIVOT_TOL) {
        let mut leave: Option<(usize, f64)> = None;
        for i in 0..m {
            let coef = tab[i * width + enter];
            if coef > MIN_PIVOT {
                let ratio = tab[i * width + rhs] / coef;
                let better = match leave {
                    None => true,
                    Some((r, best)) => {
                        ratio < best - PIVOT_TOL
                            || (ratio <= best + PIVOT_TOL && basis[i] < basis[r])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        // phase 1 is bounded below, so a column without a ratio is numerical noise
        let Some((r, _)) = leave else {
            cost[enter] = 0.0;
            continue;
        };

        pivots += 1;
        if pivots > max_pivots {
            return Err(Error::SolverIterationCap {
                iterations: max_pivots,
            });
        }

        let p = tab[r * width + enter];
        for v in &mut tab[r * width..(r + 1) * width] {
            *v /= p;
        }
        let pivot_row: Vec<f64> = tab[r * width..(r + 1) * width].to_vec();
        for i in 0..m {
            if i == r {
                continue;
            }
            let f = tab[i * width + enter];
            if f != 0.0 {
                for (v, &pr) in tab[i * width..(i + 1) * width].iter_mut().zip(&pivot_row) {
                    *v -= f * pr;
                }
                tab[i * width + enter] = 0.0;
                let b = &mut tab[i * width + rhs];
                if *b < 0.0 && *b > -PIVOT_TOL {
                    *b = 0.0;
                }
            }
        }
        let f = cost[enter];
        for (c, &pr) in cost.iter_mut().zip(&pivot_row) {
            *c -= f * pr;
        }
        cost[enter] = 0.0;
        basis[r] = enter;
    }

    let infeasibility = -cost[rhs];
    if infeasibility > FEASIBILITY_TOL {
        return Ok(None);
    }
    let mut x = vec![0.0; n];
    for (i, &j) in basis.iter().enumerate() {
        if j < n {
            x[j] = tab[i * width + rhs].max(0.0);
        }
    }
    if residual(a, b, &x) > FEASIBILITY_TOL {
        return Ok(None);
    }
    Ok(Some(x))
}

/// `max_i |A_i x - b_i|`.
pub(crate) fn residual(a: &[Vec<f64>], b: &[f64], x: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(row, bi)| (row.iter().zip(x).map(|(r, v)| r * v).sum::<f64>() - bi).abs())
        .fold(0.0, f64::max)
}
