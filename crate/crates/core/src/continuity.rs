//! Endpoint constraints for `C^(r,s)` contact between a rational source and
//! a degree-`m` polynomial approximant.
//!
//! Writing `P(t) = ω(t) y(t) + e(t)`, derivatives of `x = P/ω` and `y` agree
//! up to order `r` at `t = 0` exactly when the first `r + 1` degree-`(m+n)`
//! Bernstein coefficients of `P` and `ω·y` agree. Solving those equations in
//! increasing order gives `q_0, ..., q_r`; the mirrored equations at `t = 1`
//! give `q_m, ..., q_{m-s}`.

use std::fmt;
use std::str::FromStr;

use crate::basis::{big_binomial, product_weight, sign};
use crate::curves::RationalBezierCurve;
use crate::error::{Error, Result};

/// Orders `(r, s)` of derivative contact at `t = 0` and `t = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct ContinuitySpec {
    pub r: usize,
    pub s: usize,
}

impl ContinuitySpec {
    pub fn new(r: usize, s: usize) -> Self {
        Self { r, s }
    }

    /// Checks that the constraints are solvable for target degree `m` and
    /// source degree `n`.
    ///
    /// `r + s >= min(m, n)` is outside the classical hypothesis but still
    /// solvable; it is logged, not rejected.
    pub fn validate(&self, m: usize, n: usize) -> Result<()> {
        let (r, s) = (self.r, self.s);
        if r > n || s > n {
            return Err(Error::invalid(format!(
                "C^({r},{s}) needs source degree at least {}, got {n}",
                r.max(s)
            )));
        }
        if m < r + s + 2 {
            return Err(Error::invalid(format!(
                "target degree {m} is too small for C^({r},{s}); need at least {}",
                r + s + 2
            )));
        }
        if !self.within_classical_hypothesis(m, n) {
            log::warn!("C^({r},{s}) with m={m}, n={n}: r+s >= min(m, n), outside the usual hypothesis");
        }
        Ok(())
    }

    /// Whether `r + s < min(m, n)`.
    pub fn within_classical_hypothesis(&self, m: usize, n: usize) -> bool {
        self.r + self.s < m.min(n)
    }

    pub fn swapped(&self) -> Self {
        Self { r: self.s, s: self.r }
    }
}

impl fmt::Display for ContinuitySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.r, self.s)
    }
}

impl FromStr for ContinuitySpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let (r, s) = text
            .split_once(',')
            .ok_or_else(|| Error::invalid(format!("continuity `{text}` is not of the form r,s")))?;
        let parse = |v: &str| {
            v.trim()
                .parse::<usize>()
                .map_err(|_| Error::invalid(format!("continuity order `{v}` is not a non-negative integer")))
        };
        Ok(Self { r: parse(r)?, s: parse(s)? })
    }
}

fn int(n: usize, k: usize) -> f64 {
    // Small binomials; exact in f64 for every degree this crate handles.
    num_traits::ToPrimitive::to_f64(&big_binomial(n as i64, k as i64)).unwrap_or(f64::NAN)
}

fn axpy(acc: &mut [f64], a: f64, x: &[f64]) {
    for (y, v) in acc.iter_mut().zip(x) {
        *y += a * v;
    }
}

/// `q_0, ..., q_r` of the approximant, in index order.
pub fn head_constrained_points(
    src: &RationalBezierCurve,
    m: usize,
    spec: ContinuitySpec,
) -> Result<Vec<Vec<f64>>> {
    spec.validate(m, src.degree())?;
    Ok(head_points_unchecked(src, m, spec.r))
}

fn head_points_unchecked(src: &RationalBezierCurve, m: usize, r: usize) -> Vec<Vec<f64>> {
    let n = src.degree();
    let dim = src.dim();
    let w = src.weights();
    let big_p = src.numerator();
    let mut q: Vec<Vec<f64>> = Vec::with_capacity(r + 1);
    // C_i^0 of the product ω·y, for i below the current order.
    let product_coeff = |q: &[Vec<f64>], i: usize| {
        let mut c = vec![0.0; dim];
        for (j, qj) in q.iter().enumerate().take(i + 1) {
            if i - j <= n {
                axpy(&mut c, product_weight(m, j, n, i - j) * w[i - j], qj);
            }
        }
        c
    };
    for order in 0..=r {
        // C(n, ρ) Δ^ρ P_0
        let mut acc = vec![0.0; dim];
        for i in 0..=order {
            axpy(&mut acc, (sign(order + i) as f64) * int(order, i) * int(n, order), big_p.coeff(i));
        }
        for i in 0..order {
            axpy(&mut acc, -int(m, i) * int(n, order - i) * w[order - i], &q[i]);
            let ci = product_coeff(&q, i);
            axpy(&mut acc, -(sign(order + i) as f64) * int(m + n, order) * int(order, i), &ci);
        }
        let scale = 1.0 / (w[0] * int(m, order));
        acc.iter_mut().for_each(|v| *v *= scale);
        q.push(acc);
    }
    q
}

/// `q_{m-s}, ..., q_m` of the approximant, in index order.
pub fn tail_constrained_points(
    src: &RationalBezierCurve,
    m: usize,
    spec: ContinuitySpec,
) -> Result<Vec<Vec<f64>>> {
    spec.validate(m, src.degree())?;
    Ok(tail_points_unchecked(src, m, spec.s))
}

fn tail_points_unchecked(src: &RationalBezierCurve, m: usize, s: usize) -> Vec<Vec<f64>> {
    let n = src.degree();
    let big_n = m + n;
    let dim = src.dim();
    let w = src.weights();
    let big_p = src.numerator();
    // tail[σ] = q_{m-σ}, filled for σ = 0, 1, ..., s.
    let mut rev: Vec<Vec<f64>> = Vec::with_capacity(s + 1);
    let q_at = |rev: &[Vec<f64>], idx: usize| -> Vec<f64> { rev[m - idx].clone() };
    // C^1_{N-σ+i}: coefficient N-σ+i of ω·y, which only involves q_j with j ≥ m-σ+i.
    let product_coeff = |rev: &[Vec<f64>], sigma: usize, i: usize| {
        let mut c = vec![0.0; dim];
        for j in (m - sigma + i)..=m {
            let l = big_n - sigma + i - j;
            if l <= n {
                axpy(&mut c, product_weight(m, j, n, l) * w[l], &q_at(rev, j));
            }
        }
        c
    };
    for sigma in 0..=s {
        // C(n, σ) Δ^σ P_{n-σ}
        let mut acc = vec![0.0; dim];
        for l in 0..=sigma {
            axpy(&mut acc, (sign(sigma - l) as f64) * int(sigma, l) * int(n, sigma), big_p.coeff(n - sigma + l));
        }
        for i in 1..=sigma {
            let c1 = product_coeff(&rev, sigma, i);
            axpy(&mut acc, -(sign(sigma - i) as f64) * int(big_n, sigma) * int(sigma, i), &c1);
        }
        let flip = sign(sigma) as f64;
        acc.iter_mut().for_each(|v| *v *= flip);
        for i in 1..=sigma {
            axpy(&mut acc, -int(m, sigma - i) * int(n, i) * w[n - i], &q_at(&rev, m - sigma + i));
        }
        let scale = 1.0 / (w[n] * int(m, sigma));
        acc.iter_mut().for_each(|v| *v *= scale);
        rev.push(acc);
    }
    rev.reverse();
    rev
}
