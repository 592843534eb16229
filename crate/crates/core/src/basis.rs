//! Polynomial-basis kernel.
//!
//! Bernstein polynomials over `[0, 1]`, exact binomial coefficients and the
//! Jacobi-to-Bernstein conversions used to build the least-squares system.
//! Every ratio of binomial coefficients is formed as an exact rational and
//! rounded to `f64` once.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::quadrature;

/// Exact binomial coefficient `C(n, k)`; zero when `k < 0` or `k > n`.
pub fn binomial(n: u32, k: i64) -> Result<u128> {
    if k < 0 || k > n as i64 {
        return Ok(0);
    }
    let k = (k as u128).min(n as u128 - k as u128);
    let n128 = n as u128;
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1); cancel first to delay overflow.
        let num = n128 - i;
        let den = i + 1;
        let g = gcd(acc, den);
        let acc_red = acc / g;
        let den_red = den / g;
        let num_red = num / den_red;
        acc = acc_red.checked_mul(num_red).ok_or(Error::BinomialOverflow {
            n,
            k: k as i64,
        })?;
    }
    Ok(acc)
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Arbitrary-precision binomial used for internal coefficient construction.
pub(crate) fn big_binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub(crate) fn rational_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // Fall back to separate conversions when the quotient helper fails.
        q.numer().to_f64().unwrap_or(f64::NAN) / q.denom().to_f64().unwrap_or(f64::NAN)
    })
}

/// `C(m, j) C(n, l) / C(m + n, j + l)`, the weight of `f_j g_l` in a product.
pub(crate) fn product_weight(m: usize, j: usize, n: usize, l: usize) -> f64 {
    let num = big_binomial(m as i64, j as i64) * big_binomial(n as i64, l as i64);
    let den = big_binomial((m + n) as i64, (j + l) as i64);
    rational_to_f64(&BigRational::new(num, den))
}

pub(crate) fn sign(e: usize) -> i64 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// A polynomial in Bernstein form, scalar- or vector-valued.
///
/// Coefficients are stored row-major: coefficient `i` occupies
/// `coeffs[i * dim..(i + 1) * dim]`. A `dim` of 1 means scalar-valued.
#[derive(Debug, Clone, PartialEq)]
pub struct BernsteinPoly {
    dim: usize,
    coeffs: Vec<f64>,
}

impl BernsteinPoly {
    pub fn new(dim: usize, coeffs: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("coefficient dimension must be at least 1"));
        }
        if coeffs.is_empty() || !coeffs.len().is_multiple_of(dim) {
            return Err(Error::invalid(format!(
                "{} coefficient entries do not form whole {dim}-vectors",
                coeffs.len()
            )));
        }
        if let Some(bad) = coeffs.iter().find(|c| !c.is_finite()) {
            return Err(Error::invalid(format!("non-finite coefficient {bad}")));
        }
        Ok(Self { dim, coeffs })
    }

    pub fn scalar(coeffs: Vec<f64>) -> Result<Self> {
        Self::new(1, coeffs)
    }

    /// Builds a vector-valued polynomial from a list of control points.
    pub fn from_points<P: AsRef<[f64]>>(points: &[P]) -> Result<Self> {
        let dim = points.first().map(|p| p.as_ref().len()).unwrap_or(0);
        if points.iter().any(|p| p.as_ref().len() != dim) {
            return Err(Error::invalid("control points have mixed dimensions"));
        }
        let coeffs = points.iter().flat_map(|p| p.as_ref().iter().copied()).collect();
        Self::new(dim, coeffs)
    }

    pub fn zeros(degree: usize, dim: usize) -> Self {
        Self { dim, coeffs: vec![0.0; (degree + 1) * dim.max(1)] }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() / self.dim - 1
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_scalar(&self) -> bool {
        self.dim == 1
    }

    pub fn coeff(&self, i: usize) -> &[f64] {
        &self.coeffs[i * self.dim..(i + 1) * self.dim]
    }

    pub(crate) fn coeff_mut(&mut self, i: usize) -> &mut [f64] {
        &mut self.coeffs[i * self.dim..(i + 1) * self.dim]
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn points(&self) -> Vec<Vec<f64>> {
        self.coeffs.chunks(self.dim).map(<[f64]>::to_vec).collect()
    }

    /// Evaluates by de Casteljau's algorithm.
    pub fn eval(&self, t: f64) -> Vec<f64> {
        let mut work = self.coeffs.clone();
        let d = self.dim;
        let u = 1.0 - t;
        for level in (1..=self.degree()).rev() {
            for i in 0..level {
                for c in 0..d {
                    work[i * d + c] = u * work[i * d + c] + t * work[(i + 1) * d + c];
                }
            }
        }
        work.truncate(d);
        work
    }

    pub fn eval_scalar(&self, t: f64) -> f64 {
        debug_assert!(self.is_scalar());
        self.eval(t)[0]
    }

    /// Product of two Bernstein polynomials, of degree `m + n`.
    ///
    /// At least one factor must be scalar-valued.
    pub fn product(&self, other: &BernsteinPoly) -> Result<BernsteinPoly> {
        if !self.is_scalar() && !other.is_scalar() {
            return Err(Error::invalid(
                "Bernstein product of two vector-valued polynomials is undefined",
            ));
        }
        let (m, n) = (self.degree(), other.degree());
        let dim = self.dim.max(other.dim);
        let mut out = BernsteinPoly::zeros(m + n, dim);
        for i in 0..=m + n {
            let lo = i.saturating_sub(n);
            let hi = m.min(i);
            for j in lo..=hi {
                let w = product_weight(m, j, n, i - j);
                let f = self.coeff(j);
                let g = other.coeff(i - j);
                let target = out.coeff_mut(i);
                for (c, slot) in target.iter_mut().enumerate() {
                    let fv = if f.len() == 1 { f[0] } else { f[c] };
                    let gv = if g.len() == 1 { g[0] } else { g[c] };
                    *slot += w * fv * gv;
                }
            }
        }
        Ok(out)
    }

    /// `∫₀¹ p(t) dt`, using `∫₀¹ B_i^n = 1 / (n + 1)`.
    pub fn integral(&self) -> Vec<f64> {
        let scale = 1.0 / (self.degree() as f64 + 1.0);
        let mut acc = vec![0.0; self.dim];
        for chunk in self.coeffs.chunks(self.dim) {
            for (a, c) in acc.iter_mut().zip(chunk) {
                *a += c;
            }
        }
        acc.iter_mut().for_each(|a| *a *= scale);
        acc
    }

    /// Exact degree elevation to `target >= degree`.
    pub fn elevate(&self, target: usize) -> BernsteinPoly {
        let n = self.degree();
        assert!(target >= n, "cannot elevate degree {n} to {target}");
        let ones = BernsteinPoly { dim: 1, coeffs: vec![1.0; target - n + 1] };
        self.product(&ones).expect("scalar factor")
    }

    /// The same polynomial in the reversed parameter `1 - t`.
    pub fn reversed(&self) -> BernsteinPoly {
        let coeffs = self.coeffs.chunks(self.dim).rev().flatten().copied().collect();
        BernsteinPoly { dim: self.dim, coeffs }
    }

    pub(crate) fn add_scaled(&mut self, other: &BernsteinPoly, vector: &[f64]) {
        debug_assert!(other.is_scalar() && other.degree() == self.degree());
        for i in 0..=self.degree() {
            let w = other.coeff(i)[0];
            for (slot, v) in self.coeff_mut(i).iter_mut().zip(vector) {
                *slot += w * v;
            }
        }
    }
}

/// Free-function form of [`BernsteinPoly::eval`].
pub fn bernstein_eval(p: &BernsteinPoly, t: f64) -> Vec<f64> {
    p.eval(t)
}

/// Free-function form of [`BernsteinPoly::product`].
pub fn bernstein_product(f: &BernsteinPoly, g: &BernsteinPoly) -> Result<BernsteinPoly> {
    f.product(g)
}

/// Free-function form of [`BernsteinPoly::integral`].
pub fn bernstein_definite_integral(p: &BernsteinPoly) -> Vec<f64> {
    p.integral()
}

/// Integer Jacobi parameters `alpha = r + 1`, `beta = s + 1` and index `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct JacobiParams {
    pub alpha: u32,
    pub beta: u32,
    pub k: usize,
}

impl JacobiParams {
    /// The family used for `C^(r,s)` continuity: `alpha = r + 1`, `beta = s + 1`.
    pub fn for_continuity(k: usize, r: usize, s: usize) -> Self {
        Self { alpha: r as u32 + 1, beta: s as u32 + 1, k }
    }
}

fn jacobi_coefficients_exact(k: usize, r: usize, s: usize) -> Vec<BigRational> {
    let (k, r, s) = (k as i64, r as i64, s as i64);
    (0..=k)
        .map(|i| {
            let num = big_binomial(k + r + 1, i) * big_binomial(k + s + 1, k - i)
                * sign((k + i) as usize);
            BigRational::new(num, big_binomial(k, i))
        })
        .collect()
}

/// Degree-`k` Bernstein coefficients of `J_k^{(r+1,s+1)}(2t - 1)`.
pub fn jacobi_in_bernstein(k: usize, r: usize, s: usize) -> BernsteinPoly {
    let coeffs = jacobi_coefficients_exact(k, r, s).iter().map(rational_to_f64).collect();
    BernsteinPoly { dim: 1, coeffs }
}

/// Degree-`m` Bernstein coefficients of `t^{r+1} (1-t)^{s+1} J_k^{(r+1,s+1)}(2t - 1)`.
///
/// Requires `m >= k + r + s + 2`. When `m` exceeds that minimum the expansion
/// is degree-elevated by the `C(M - k, j - i)` factor, `M = m - (r + s + 2)`.
pub fn weighted_jacobi_in_bernstein(k: usize, r: usize, s: usize, m: usize) -> Result<BernsteinPoly> {
    if m < k + r + s + 2 {
        return Err(Error::invalid(format!(
            "degree {m} cannot hold t^{}(1-t)^{} J_{k}; need at least {}",
            r + 1,
            s + 1,
            k + r + s + 2
        )));
    }
    let big_m = m - (r + s + 2);
    let mut exact = vec![BigRational::zero(); m + 1];
    let (k_i, r_i, s_i, bm_i) = (k as i64, r as i64, s as i64, big_m as i64);
    for i in 0..=k_i {
        let head = big_binomial(k_i + r_i + 1, i)
            * big_binomial(k_i + s_i + 1, k_i - i)
            * sign((k_i + i) as usize);
        for j in i..=(bm_i + i - k_i) {
            let idx = (r_i + j + 1) as usize;
            let num = &head * big_binomial(bm_i - k_i, j - i);
            exact[idx] += BigRational::new(num, big_binomial(m as i64, r_i + j + 1));
        }
    }
    let coeffs = exact.iter().map(rational_to_f64).collect();
    Ok(BernsteinPoly { dim: 1, coeffs })
}

/// `∫₀¹ t^p (1-t)^q J_j^{(r+1,s+1)}(2t-1) B_i^{nk}(t) dt` in exact arithmetic.
fn jacobi_moment_exact(j: usize, i: usize, nk: usize, r: usize, s: usize, p: usize, q: usize) -> f64 {
    let (j, i, nk, r, s, p, q) =
        (j as i64, i as i64, nk as i64, r as i64, s as i64, p as i64, q as i64);
    let total = nk + p + q + j;
    let bern = big_binomial(nk, i);
    let mut acc = BigRational::zero();
    for l in 0..=j {
        let num = big_binomial(j + r + 1, l) * big_binomial(j + s + 1, j - l) * &bern
            * sign((j + l) as usize);
        let den = big_binomial(total, i + p + l) * (total + 1);
        acc += BigRational::new(num, den);
    }
    rational_to_f64(&acc)
}

/// `∫₀¹ t^{s+1} (1-t)^{r+1} J_j^{(r+1,s+1)}(2t-1) B_i^{nk}(t) dt`.
///
/// The weight `t^{s+1}(1-t)^{r+1}` is the classical orthogonality weight of
/// `J^{(r+1,s+1)}` after the change of variable `x = 2t - 1`.
pub fn weighted_jacobi_moment(j: usize, i: usize, nk: usize, r: usize, s: usize) -> f64 {
    debug_assert!(i <= nk);
    jacobi_moment_exact(j, i, nk, r, s, s + 1, r + 1)
}

/// `∫₀¹ t^{r+1} (1-t)^{s+1} J_j^{(r+1,s+1)}(2t-1) B_i^{nk}(t) dt`.
///
/// Same closed form as [`weighted_jacobi_moment`] with the weight exponents
/// oriented like the middle section of a hybrid curve. The two agree when
/// `r == s`.
pub fn hybrid_jacobi_moment(j: usize, i: usize, nk: usize, r: usize, s: usize) -> f64 {
    debug_assert!(i <= nk);
    jacobi_moment_exact(j, i, nk, r, s, r + 1, s + 1)
}

/// Reference route for [`weighted_jacobi_moment`]: Gauss–Legendre quadrature
/// of the integrand with `J_j` from the three-term recurrence.
pub fn weighted_jacobi_moment_quadrature(j: usize, i: usize, nk: usize, r: usize, s: usize) -> f64 {
    let (alpha, beta) = (r as f64 + 1.0, s as f64 + 1.0);
    let c = big_binomial(nk as i64, i as i64).to_f64().unwrap_or(f64::NAN);
    quadrature::integrate_unit(|t| {
        let weight = t.powi(s as i32 + 1) * (1.0 - t).powi(r as i32 + 1);
        let basis = c * t.powi(i as i32) * (1.0 - t).powi((nk - i) as i32);
        weight * jacobi_recurrence(j, alpha, beta, 2.0 * t - 1.0) * basis
    })
}

/// `P_k^{(alpha,beta)}(x)` by the standard three-term recurrence.
pub fn jacobi_recurrence(k: usize, alpha: f64, beta: f64, x: f64) -> f64 {
    let mut p0 = 1.0;
    if k == 0 {
        return p0;
    }
    let mut p1 = (alpha + 1.0) + (alpha + beta + 2.0) * (x - 1.0) / 2.0;
    for n in 2..=k {
        let n = n as f64;
        let ab = alpha + beta;
        let a1 = 2.0 * n * (n + ab) * (2.0 * n + ab - 2.0);
        let a2 = (2.0 * n + ab - 1.0) * (alpha * alpha - beta * beta);
        let a3 = (2.0 * n + ab - 2.0) * (2.0 * n + ab - 1.0) * (2.0 * n + ab);
        let a4 = 2.0 * (n + alpha - 1.0) * (n + beta - 1.0) * (2.0 * n + ab);
        let p2 = ((a2 + a3 * x) * p1 - a4 * p0) / a1;
        p0 = p1;
        p1 = p2;
    }
    p1
}
