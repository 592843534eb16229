//! Weighted least-squares fit of the Jacobi coefficients of a hybrid curve.
//!
//! With the weight `ρ(t) = ω(t) / (t^{r+1} (1-t)^{s+1})`, stationarity of
//! `∫ ρ ‖x - ỹ‖²` in the Jacobi coefficients reduces to the polynomial
//! conditions `∫ (P - ω ỹ) J_k dt = 0`, `k = 0..=M`. Every integral is a
//! Bernstein product followed by the exact Bernstein integral, so the system
//! is assembled without quadrature.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::basis::{hybrid_jacobi_moment, jacobi_in_bernstein, BernsteinPoly};
use crate::continuity::{head_constrained_points, tail_constrained_points, ContinuitySpec};
use crate::curves::{BezierCurve, HybridJacobiCurve, RationalBezierCurve};
use crate::error::{Error, Result};

/// Condition number above which a fit is flagged as unreliable.
pub const CONDITION_WARNING: f64 = 1e12;

const SYMMETRY_TOLERANCE: f64 = 1e-12;
const PIVOT_FLOOR: f64 = 1e-13;

/// Normal equations for the Jacobi coefficients: `gram · q̃ = rhs`.
#[derive(Debug, Clone)]
pub struct LsqSystem {
    /// `(M+1) × (M+1)`, entry `(k, j) = ∫ ω t^{r+1} (1-t)^{s+1} J_j J_k dt`.
    pub gram: DMatrix<f64>,
    /// `(M+1) × d`, row `k = ∫ P J_k dt - ∫ ω J_k Σ Q_i B_i^m dt`.
    pub rhs: DMatrix<f64>,
}

impl LsqSystem {
    /// Ratio of the extreme eigenvalues of the Gram matrix.
    pub fn condition_estimate(&self) -> f64 {
        let eig = SymmetricEigen::new(self.gram.clone()).eigenvalues;
        let max = eig.iter().fold(f64::MIN, |a, &b| a.max(b));
        let min = eig.iter().fold(f64::MAX, |a, &b| a.min(b));
        if min <= 0.0 {
            f64::INFINITY
        } else {
            max / min
        }
    }
}

/// How the linear system was solved.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveDiagnostics {
    pub gram_condition: f64,
    /// Set when a tiny Cholesky pivot forced the column-pivoted QR route.
    pub used_qr_fallback: bool,
}

/// `∫₀¹ P(t) J_k^{(r+1,s+1)}(2t-1) dt`.
pub fn assemble_rhs_source_term(src: &RationalBezierCurve, k: usize, spec: ContinuitySpec) -> Vec<f64> {
    let jacobi = jacobi_in_bernstein(k, spec.r, spec.s);
    jacobi
        .product(src.numerator())
        .expect("scalar Jacobi factor")
        .integral()
}

/// `∫₀¹ ω(t) J_k^{(r+1,s+1)}(2t-1) Σ Q_i B_i^m(t) dt`, where `constrained`
/// holds the degree-`m` coefficients `Q_i` (constrained points, zero elsewhere).
pub fn assemble_rhs_constraint_term(
    src: &RationalBezierCurve,
    constrained: &BernsteinPoly,
    k: usize,
    spec: ContinuitySpec,
) -> Vec<f64> {
    let weighted = src.denominator().product(constrained).expect("scalar weight factor");
    let jacobi = jacobi_in_bernstein(k, spec.r, spec.s);
    jacobi.product(&weighted).expect("scalar Jacobi factor").integral()
}

/// Gram matrix of the weighted Jacobi middle section under `ω(t)`.
pub fn assemble_gram(src: &RationalBezierCurve, m: usize, spec: ContinuitySpec) -> Result<DMatrix<f64>> {
    let (r, s) = (spec.r, spec.s);
    if m < r + s + 2 {
        return Err(Error::invalid(format!("degree {m} leaves no Jacobi unknowns for C^({r},{s})")));
    }
    let size = m - (r + s + 2) + 1;
    let n = src.degree();
    let mut gram = DMatrix::zeros(size, size);
    for k in 0..size {
        // Degree-(n+k) Bernstein coefficients of ω(t) J_k.
        let coeffs = src
            .denominator()
            .product(&jacobi_in_bernstein(k, r, s))
            .expect("scalar factors");
        let nk = n + k;
        for j in 0..size {
            gram[(k, j)] = (0..=nk)
                .map(|i| coeffs.coeff(i)[0] * hybrid_jacobi_moment(j, i, nk, r, s))
                .sum();
        }
    }
    symmetrize(&mut gram)?;
    Ok(gram)
}

fn symmetrize(gram: &mut DMatrix<f64>) -> Result<()> {
    let scale = gram.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let size = gram.nrows();
    for k in 0..size {
        for j in (k + 1)..size {
            let (a, b) = (gram[(k, j)], gram[(j, k)]);
            if (a - b).abs() > SYMMETRY_TOLERANCE * scale {
                return Err(Error::Conditioning(format!(
                    "Gram matrix asymmetric at ({k},{j}): {a:e} vs {b:e}"
                )));
            }
            let mean = 0.5 * (a + b);
            gram[(k, j)] = mean;
            gram[(j, k)] = mean;
        }
    }
    Ok(())
}

/// Builds the normal equations for a degree-`m` hybrid with the given
/// constrained end points.
pub fn assemble_system(
    src: &RationalBezierCurve,
    m: usize,
    spec: ContinuitySpec,
    head: &[Vec<f64>],
    tail: &[Vec<f64>],
) -> Result<LsqSystem> {
    let gram = assemble_gram(src, m, spec)?;
    let size = gram.nrows();
    let dim = src.dim();
    let constrained = constrained_poly(m, dim, spec, head, tail)?;
    let mut rhs = DMatrix::zeros(size, dim);
    for k in 0..size {
        let source = assemble_rhs_source_term(src, k, spec);
        let known = assemble_rhs_constraint_term(src, &constrained, k, spec);
        for c in 0..dim {
            rhs[(k, c)] = source[c] - known[c];
        }
    }
    Ok(LsqSystem { gram, rhs })
}

fn constrained_poly(
    m: usize,
    dim: usize,
    spec: ContinuitySpec,
    head: &[Vec<f64>],
    tail: &[Vec<f64>],
) -> Result<BernsteinPoly> {
    if head.len() != spec.r + 1 || tail.len() != spec.s + 1 {
        return Err(Error::invalid("constrained point counts do not match the continuity orders"));
    }
    let mut coeffs = vec![0.0; (m + 1) * dim];
    let first_tail = m - spec.s;
    for (i, p) in head.iter().enumerate().chain(tail.iter().enumerate().map(|(i, p)| (first_tail + i, p))) {
        if p.len() != dim {
            return Err(Error::invalid("constrained point dimension does not match the source"));
        }
        coeffs[i * dim..(i + 1) * dim].copy_from_slice(p);
    }
    BernsteinPoly::new(dim, coeffs)
}

/// Solves the normal equations, one factorization shared by all coordinates.
pub fn solve_system(system: &LsqSystem) -> Result<(DMatrix<f64>, SolveDiagnostics)> {
    if system.gram.iter().chain(system.rhs.iter()).any(|v| !v.is_finite()) {
        return Err(Error::Conditioning("normal equations overflowed to non-finite values".to_owned()));
    }
    let gram_condition = system.condition_estimate();
    if gram_condition > CONDITION_WARNING {
        log::warn!("Gram matrix condition estimate {gram_condition:e} exceeds {CONDITION_WARNING:e}");
    }
    let Some(chol) = system.gram.clone().cholesky() else {
        return Err(Error::Conditioning(format!(
            "Gram matrix of size {} is not positive definite (condition estimate {gram_condition:e})",
            system.gram.nrows()
        )));
    };
    let max_diag = system.gram.diagonal().iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let min_pivot = chol.l_dirty().diagonal().iter().fold(f64::MAX, |a, v| a.min(v * v));
    if min_pivot > PIVOT_FLOOR * max_diag {
        let solution = chol.solve(&system.rhs);
        return Ok((solution, SolveDiagnostics { gram_condition, used_qr_fallback: false }));
    }
    log::warn!("Cholesky pivot {min_pivot:e} below {PIVOT_FLOOR:e} x max diagonal; using column-pivoted QR");
    let qr = system.gram.clone().col_piv_qr();
    let solution = qr.solve(&system.rhs).ok_or_else(|| {
        Error::Conditioning(format!(
            "Gram matrix is numerically singular (min pivot {min_pivot:e}, condition estimate {gram_condition:e})"
        ))
    })?;
    Ok((solution, SolveDiagnostics { gram_condition, used_qr_fallback: true }))
}

fn fit_with_constraints(
    src: &RationalBezierCurve,
    m: usize,
    spec: ContinuitySpec,
    head: Vec<Vec<f64>>,
    tail: Vec<Vec<f64>>,
) -> Result<(HybridJacobiCurve, SolveDiagnostics)> {
    let system = assemble_system(src, m, spec, &head, &tail)?;
    let (solution, diagnostics) = solve_system(&system)?;
    let jacobi = solution.row_iter().map(|row| row.iter().copied().collect()).collect();
    let curve = HybridJacobiCurve::new(m, spec, head, tail, jacobi)?;
    Ok((curve, diagnostics))
}

/// Best degree-`m` hybrid approximation of `src` with `C^(r,s)` end contact.
pub fn solve_hybrid(src: &RationalBezierCurve, m: usize, spec: ContinuitySpec) -> Result<HybridJacobiCurve> {
    solve_hybrid_with_diagnostics(src, m, spec).map(|(curve, _)| curve)
}

pub fn solve_hybrid_with_diagnostics(
    src: &RationalBezierCurve,
    m: usize,
    spec: ContinuitySpec,
) -> Result<(HybridJacobiCurve, SolveDiagnostics)> {
    let head = head_constrained_points(src, m, spec)?;
    let tail = tail_constrained_points(src, m, spec)?;
    fit_with_constraints(src, m, spec, head, tail)
}

/// Degree reduction of a polynomial curve to degree `m < m'`.
///
/// The end points are taken from `head`/`tail` rather than recomputed from
/// `src_poly`, so contact with an earlier source survives the reduction.
pub fn reduce_degree(
    src_poly: &BezierCurve,
    m: usize,
    spec: ContinuitySpec,
    head: Vec<Vec<f64>>,
    tail: Vec<Vec<f64>>,
) -> Result<HybridJacobiCurve> {
    reduce_degree_with_diagnostics(src_poly, m, spec, head, tail).map(|(curve, _)| curve)
}

pub fn reduce_degree_with_diagnostics(
    src_poly: &BezierCurve,
    m: usize,
    spec: ContinuitySpec,
    head: Vec<Vec<f64>>,
    tail: Vec<Vec<f64>>,
) -> Result<(HybridJacobiCurve, SolveDiagnostics)> {
    let from = src_poly.degree();
    if from <= m {
        return Err(Error::invalid(format!("degree reduction needs {from} > {m}")));
    }
    spec.validate(m, from)?;
    let src = RationalBezierCurve::from_bezier(src_poly);
    fit_with_constraints(&src, m, spec, head, tail)
}
