//! Error measures for a polynomial approximation of a rational curve.
//!
//! Three quantities are reported and always satisfy
//! `hausdorff_estimate <= max_param_error <= theorem2_bound`:
//!
//! - an a-priori bound computed from control points and weights only,
//! - the largest same-parameter distance `‖x(t) - y(t)‖` on a uniform grid,
//! - a discrete Hausdorff distance on the same grid, with each nearest-point
//!   query refined by golden-section search.

use serde::{Deserialize, Serialize};

use crate::basis::product_weight;
use crate::continuity::ContinuitySpec;
use crate::curves::{BezierCurve, ParametricCurve, RationalBezierCurve};
use crate::error::{Error, Result};
use crate::quadrature;

pub const DEFAULT_HAUSDORFF_SAMPLES: usize = 4000;
pub const DEFAULT_ERROR_CURVE_SAMPLES: usize = 1000;

const GOLDEN_TOLERANCE: f64 = 1e-9;

/// Summary of how well a polynomial curve approximates a rational one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApproximationReport {
    pub hausdorff_estimate: f64,
    pub theorem2_bound: f64,
    /// `max_i max_j ‖p_j - q_{i-j}‖`, the coarser form of the bound.
    pub theorem2_loose_bound: f64,
    pub max_param_error: f64,
    /// Weighted least-squares objective `∫ ρ ‖x - y‖² dt`.
    pub residual_l2: f64,
    pub gram_condition: f64,
    /// `(t, ‖x(t) - y(t)‖)` pairs on a uniform grid.
    pub samples: Vec<(f64, f64)>,
}

/// A-priori bound on `sup_t ‖x(t) - y(t)‖` from control data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Theorem2Bound {
    pub weighted: f64,
    pub loose: f64,
}

fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// `Σ a_k c_k / Σ b_k c_k` together with `max_k a_k / b_k`; the first never
/// exceeds the second when every `b_k, c_k > 0`.
pub fn mediant_ratio(a: &[f64], b: &[f64], c: &[f64]) -> Result<(f64, f64)> {
    if a.is_empty() || a.len() != b.len() || a.len() != c.len() {
        return Err(Error::invalid("mediant ratio needs three equally long, non-empty sequences"));
    }
    if b.iter().chain(c).any(|v| !(*v > 0.0)) {
        return Err(Error::invalid("mediant ratio needs positive b and c"));
    }
    let num: f64 = a.iter().zip(c).map(|(x, y)| x * y).sum();
    let den: f64 = b.iter().zip(c).map(|(x, y)| x * y).sum();
    let max = a.iter().zip(b).map(|(x, y)| x / y).fold(f64::NEG_INFINITY, f64::max);
    Ok((num / den, max))
}

/// `max_i Σ_j k_ij ‖p_j - q_{i-j}‖ / Σ_j k_ij` with `k_ij = C(n,j) C(m,i-j) ω_j`.
pub fn theorem2_bound(src: &RationalBezierCurve, approx: &BezierCurve) -> Theorem2Bound {
    let (n, m) = (src.degree(), approx.degree());
    let w = src.weights();
    let mut weighted = 0.0f64;
    let mut loose = 0.0f64;
    for i in 0..=m + n {
        let mut num = 0.0;
        let mut den = 0.0;
        for j in i.saturating_sub(m)..=n.min(i) {
            // Common factor 1 / C(m+n, i) cancels in the ratio.
            let k = product_weight(n, j, m, i - j) * w[j];
            let d = distance(src.control_point(j), approx.control_point(i - j));
            num += k * d;
            den += k;
            loose = loose.max(d);
        }
        weighted = weighted.max(num / den);
    }
    Theorem2Bound { weighted, loose }
}

fn uniform_grid(count: usize) -> impl Iterator<Item = f64> {
    let last = (count - 1) as f64;
    (0..count).map(move |i| i as f64 / last)
}

/// Same-parameter error `‖x(t) - y(t)‖` at `n_samples` uniform parameters.
pub fn error_curve<A: ParametricCurve + ?Sized, B: ParametricCurve + ?Sized>(
    src: &A,
    approx: &B,
    n_samples: usize,
) -> Result<Vec<(f64, f64)>> {
    if n_samples < 2 {
        return Err(Error::invalid("error curve needs at least 2 samples"));
    }
    Ok(uniform_grid(n_samples).map(|t| (t, distance(&src.point(t), &approx.point(t)))).collect())
}

fn golden_min<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64) -> f64 {
    let ratio = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = hi - ratio * (hi - lo);
    let mut x2 = lo + ratio * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > GOLDEN_TOLERANCE {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - ratio * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + ratio * (hi - lo);
            f2 = f(x2);
        }
    }
    f1.min(f2)
}

/// Nearest sample of `to_points` for every point of `from`, returned as
/// `(distance, from index, to index)`.
fn nearest_samples(from: &[Vec<f64>], to_points: &[Vec<f64>]) -> Vec<(f64, usize, usize)> {
    // Sweep along the first coordinate: once |Δx| exceeds the best distance
    // no farther sample can be closer.
    let mut order: Vec<usize> = (0..to_points.len()).collect();
    order.sort_by(|&a, &b| to_points[a][0].total_cmp(&to_points[b][0]));
    let xs: Vec<f64> = order.iter().map(|&j| to_points[j][0]).collect();
    from.iter()
        .enumerate()
        .map(|(i, a)| {
            let start = xs.partition_point(|&x| x < a[0]);
            let mut best = (f64::INFINITY, 0);
            let visit = |k: usize, best: &mut (f64, usize)| {
                let d = distance(a, &to_points[order[k]]);
                if d < best.0 {
                    *best = (d, order[k]);
                }
            };
            for k in start..xs.len() {
                if xs[k] - a[0] > best.0 {
                    break;
                }
                visit(k, &mut best);
            }
            for k in (0..start).rev() {
                if a[0] - xs[k] > best.0 {
                    break;
                }
                visit(k, &mut best);
            }
            (best.0, i, best.1)
        })
        .collect()
}

fn directed_hausdorff<B: ParametricCurve + ?Sized>(
    from: &[Vec<f64>],
    to_points: &[Vec<f64>],
    to: &B,
    params: &[f64],
) -> f64 {
    let mut nearest = nearest_samples(from, to_points);
    nearest.sort_by(|x, y| y.0.total_cmp(&x.0));

    // Refinement only lowers a candidate, so stop once the next discrete
    // value cannot beat the best refined one.
    let mut best = 0.0f64;
    for &(discrete, i, j) in &nearest {
        if discrete <= best {
            break;
        }
        let lo = params[j.saturating_sub(1)];
        let hi = params[(j + 1).min(params.len() - 1)];
        let a = &from[i];
        let refined = golden_min(|t| distance(a, &to.point(t)), lo, hi);
        best = best.max(refined.min(discrete));
    }
    best
}

/// Symmetric discrete Hausdorff distance between two parametric curves.
pub fn hausdorff_distance<A: ParametricCurve + ?Sized, B: ParametricCurve + ?Sized>(
    a: &A,
    b: &B,
    n_samples: usize,
) -> Result<f64> {
    if n_samples < 2 {
        return Err(Error::invalid("Hausdorff estimate needs at least 2 samples"));
    }
    let params: Vec<f64> = uniform_grid(n_samples).collect();
    let pa: Vec<Vec<f64>> = params.iter().map(|&t| a.point(t)).collect();
    let pb: Vec<Vec<f64>> = params.iter().map(|&t| b.point(t)).collect();
    let forward = directed_hausdorff(&pa, &pb, b, &params);
    let backward = directed_hausdorff(&pb, &pa, a, &params);
    Ok(forward.max(backward))
}

/// `∫₀¹ ω(t) / (t^{r+1} (1-t)^{s+1}) ‖x(t) - y(t)‖² dt`.
pub fn weighted_objective<B: ParametricCurve + ?Sized>(
    src: &RationalBezierCurve,
    approx: &B,
    spec: ContinuitySpec,
) -> f64 {
    quadrature::integrate_unit(|t| {
        let rho = src.denominator().eval_scalar(t) / (t.powi(spec.r as i32 + 1) * (1.0 - t).powi(spec.s as i32 + 1));
        let d = distance(&src.eval(t), &approx.point(t));
        rho * d * d
    })
}

/// Builds a full report for `approx` against `src`.
pub fn build_report(
    src: &RationalBezierCurve,
    approx: &BezierCurve,
    spec: ContinuitySpec,
    gram_condition: f64,
    hausdorff_samples: usize,
) -> Result<ApproximationReport> {
    let hausdorff_estimate = hausdorff_distance(src, approx, hausdorff_samples)?;
    let max_param_error = error_curve(src, approx, hausdorff_samples)?
        .into_iter()
        .fold(0.0f64, |a, (_, e)| a.max(e));
    let bound = theorem2_bound(src, approx);
    Ok(ApproximationReport {
        hausdorff_estimate,
        theorem2_bound: bound.weighted,
        theorem2_loose_bound: bound.loose,
        max_param_error,
        residual_l2: weighted_objective(src, approx, spec),
        gram_condition,
        samples: error_curve(src, approx, DEFAULT_ERROR_CURVE_SAMPLES)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bound_is_zero_for_identical_control_points() {
        let pts = [[0.0, 0.0], [1.0, 2.0], [3.0, 1.0]];
        let src = RationalBezierCurve::new(&pts, vec![1.0; 3]).unwrap();
        let b = theorem2_bound(&src, &BezierCurve::new(&pts).unwrap());
        // Cross pairs p_j, q_{i-j} with j != i-j are not zero; only the
        // diagonal terms vanish, so only m = n = 0 would give zero here.
        assert!(b.weighted > 0.0);
        let single = RationalBezierCurve::new(&[[2.0, 2.0]], vec![3.0]).unwrap();
        let b = theorem2_bound(&single, &BezierCurve::new(&[[2.0, 2.0]]).unwrap());
        assert_eq!(b.weighted, 0.0);
    }

    #[test]
    fn bound_for_offset_segments() {
        let src = RationalBezierCurve::new(&[[0.0, 0.0], [1.0, 0.0]], vec![1.0, 1.0]).unwrap();
        let approx = BezierCurve::new(&[[0.0, 1.0], [1.0, 1.0]]).unwrap();
        let b = theorem2_bound(&src, &approx);
        // i = 1 mixes p_0-q_1 and p_1-q_0, both at distance √2.
        assert!((b.weighted - 2f64.sqrt()).abs() < 1e-15);
        assert!((b.loose - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn bound_invariant_under_weight_scaling() {
        let pts = [[0.0, 0.0], [2.0, 3.0], [5.0, -1.0], [6.0, 2.0]];
        let approx = BezierCurve::new(&[[0.5, 0.0], [3.0, 1.0], [6.0, 2.5]]).unwrap();
        let base = theorem2_bound(&RationalBezierCurve::new(&pts, vec![1.0, 4.0, 0.5, 2.0]).unwrap(), &approx);
        for lambda in [0.1, 10.0] {
            let w = [1.0, 4.0, 0.5, 2.0].iter().map(|v| v * lambda).collect();
            let scaled = theorem2_bound(&RationalBezierCurve::new(&pts, w).unwrap(), &approx);
            assert!((scaled.weighted - base.weighted).abs() < 1e-12 * base.weighted);
        }
    }

    #[test]
    fn hausdorff_simple_cases() {
        let a = BezierCurve::new(&[[0.0, 0.0], [1.0, 0.0]]).unwrap();
        let b = BezierCurve::new(&[[0.0, 1.0], [1.0, 1.0]]).unwrap();
        assert!(hausdorff_distance(&a, &a, 100).unwrap() < 1e-12);
        assert!((hausdorff_distance(&a, &b, 100).unwrap() - 1.0).abs() < 1e-9);
        assert!(hausdorff_distance(&a, &b, 1).is_err());
    }

    #[test]
    fn hausdorff_ignores_parameterization() {
        // Same segment, uneven speed: Hausdorff 0, same-parameter error not.
        let a = BezierCurve::new(&[[0.0, 0.0], [1.0, 0.0]]).unwrap();
        let b = BezierCurve::new(&[[0.0, 0.0], [0.9, 0.0], [1.0, 0.0]]).unwrap();
        let h = hausdorff_distance(&a, &b, 500).unwrap();
        let e = error_curve(&a, &b, 500).unwrap().iter().fold(0.0f64, |m, (_, e)| m.max(*e));
        assert!(h < 1e-9, "{h}");
        assert!(e > 0.1);
    }

    #[test]
    fn nearest_samples_match_brute_force() {
        let a: Vec<Vec<f64>> = (0..60).map(|i| vec![(i as f64 * 0.37).sin() * 3.0, (i as f64 * 0.11).cos()]).collect();
        let b: Vec<Vec<f64>> = (0..45).map(|i| vec![(i as f64 * 0.23).cos() * 2.0, (i as f64 * 0.71).sin()]).collect();
        for (d, i, j) in nearest_samples(&a, &b) {
            let brute = b.iter().map(|p| distance(&a[i], p)).fold(f64::INFINITY, f64::min);
            assert_eq!(d, brute);
            assert_eq!(distance(&a[i], &b[j]), d);
        }
    }

    #[test]
    fn error_curve_of_identical_curves_is_zero() {
        let a = BezierCurve::new(&[[0.0, 0.0], [1.0, 3.0], [2.0, 0.0]]).unwrap();
        let samples = error_curve(&a, &a, 50).unwrap();
        assert_eq!(samples.len(), 50);
        assert_eq!(samples[0].0, 0.0);
        assert_eq!(samples[49].0, 1.0);
        assert!(samples.iter().all(|(_, e)| *e == 0.0));
    }

    #[test]
    fn mediant_examples() {
        let (lhs, rhs) = mediant_ratio(&[1.0, -2.0, 5.0], &[1.0, 1.0, 2.0], &[0.5, 3.0, 1.0]).unwrap();
        assert!(lhs <= rhs);
        assert_eq!(rhs, 2.5);
        assert!(mediant_ratio(&[1.0], &[0.0], &[1.0]).is_err());
        assert!(mediant_ratio(&[], &[], &[]).is_err());
    }
}
