//! Curve value types: rational Bézier sources, polynomial Bézier results and
//! the Bernstein–Jacobi hybrid form produced by the solver.

use crate::basis::{jacobi_in_bernstein, weighted_jacobi_in_bernstein, BernsteinPoly};
use crate::continuity::ContinuitySpec;
use crate::error::{Error, Result};

/// Anything that maps a parameter in `[0, 1]` to a point.
pub trait ParametricCurve {
    fn dim(&self) -> usize;
    fn point(&self, t: f64) -> Vec<f64>;
}

/// Rational Bézier curve `Σ ω_i p_i B_i^n(t) / Σ ω_i B_i^n(t)` with positive weights.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalBezierCurve {
    points: BernsteinPoly,
    weights: Vec<f64>,
    numerator: BernsteinPoly,
    denominator: BernsteinPoly,
}

impl RationalBezierCurve {
    pub fn new<P: AsRef<[f64]>>(points: &[P], weights: Vec<f64>) -> Result<Self> {
        if points.len() != weights.len() {
            return Err(Error::invalid(format!(
                "{} control points but {} weights",
                points.len(),
                weights.len()
            )));
        }
        if let Some((i, w)) = weights.iter().enumerate().find(|(_, w)| !(**w > 0.0) || !w.is_finite()) {
            return Err(Error::invalid(format!("weight {i} is {w}; weights must be positive")));
        }
        let points = BernsteinPoly::from_points(points)?;
        let dim = points.dim();
        let mut weighted = Vec::with_capacity(points.coeffs().len());
        for (i, w) in weights.iter().enumerate() {
            weighted.extend(points.coeff(i).iter().map(|c| c * w));
        }
        let numerator = BernsteinPoly::new(dim, weighted)?;
        let denominator = BernsteinPoly::scalar(weights.clone())?;
        Ok(Self { points, weights, numerator, denominator })
    }

    /// A polynomial curve viewed as a rational one with unit weights.
    pub fn from_bezier(curve: &BezierCurve) -> Self {
        let n = curve.degree();
        Self {
            points: curve.poly.clone(),
            weights: vec![1.0; n + 1],
            numerator: curve.poly.clone(),
            denominator: BernsteinPoly::scalar(vec![1.0; n + 1]).expect("unit weights"),
        }
    }

    pub fn degree(&self) -> usize {
        self.points.degree()
    }

    pub fn dim(&self) -> usize {
        self.points.dim()
    }

    pub fn control_point(&self, i: usize) -> &[f64] {
        self.points.coeff(i)
    }

    pub fn control_points(&self) -> &BernsteinPoly {
        &self.points
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Weighted points `P_i = ω_i p_i` as a vector-valued Bernstein polynomial.
    pub fn numerator(&self) -> &BernsteinPoly {
        &self.numerator
    }

    /// The weight polynomial `ω(t)`.
    pub fn denominator(&self) -> &BernsteinPoly {
        &self.denominator
    }

    pub fn eval(&self, t: f64) -> Vec<f64> {
        let w = self.denominator.eval_scalar(t);
        let mut p = self.numerator.eval(t);
        p.iter_mut().for_each(|c| *c /= w);
        p
    }

    /// The same curve traversed from `t = 1` to `t = 0`.
    pub fn reversed(&self) -> Self {
        let weights: Vec<f64> = self.weights.iter().rev().copied().collect();
        Self {
            points: self.points.reversed(),
            numerator: self.numerator.reversed(),
            denominator: self.denominator.reversed(),
            weights,
        }
    }
}

impl ParametricCurve for RationalBezierCurve {
    fn dim(&self) -> usize {
        self.points.dim()
    }

    fn point(&self, t: f64) -> Vec<f64> {
        self.eval(t)
    }
}

pub fn rational_eval(c: &RationalBezierCurve, t: f64) -> Vec<f64> {
    c.eval(t)
}

pub fn numerator_curve(c: &RationalBezierCurve) -> BernsteinPoly {
    c.numerator.clone()
}

/// Polynomial Bézier curve.
#[derive(Debug, Clone, PartialEq)]
pub struct BezierCurve {
    poly: BernsteinPoly,
}

impl BezierCurve {
    pub fn new<P: AsRef<[f64]>>(points: &[P]) -> Result<Self> {
        Ok(Self { poly: BernsteinPoly::from_points(points)? })
    }

    pub fn from_poly(poly: BernsteinPoly) -> Self {
        Self { poly }
    }

    pub fn degree(&self) -> usize {
        self.poly.degree()
    }

    pub fn dim(&self) -> usize {
        self.poly.dim()
    }

    pub fn control_point(&self, i: usize) -> &[f64] {
        self.poly.coeff(i)
    }

    pub fn control_points(&self) -> Vec<Vec<f64>> {
        self.poly.points()
    }

    pub fn poly(&self) -> &BernsteinPoly {
        &self.poly
    }

    pub fn eval(&self, t: f64) -> Vec<f64> {
        self.poly.eval(t)
    }

    pub fn elevate(&self, target: usize) -> Self {
        Self { poly: self.poly.elevate(target) }
    }
}

impl ParametricCurve for BezierCurve {
    fn dim(&self) -> usize {
        self.poly.dim()
    }

    fn point(&self, t: f64) -> Vec<f64> {
        self.poly.eval(t)
    }
}

/// Degree-`m` curve made of constrained Bernstein end terms and a weighted
/// Jacobi middle section:
///
/// `Σ_{i≤r} q_i B_i^m + t^{r+1}(1-t)^{s+1} Σ_j q̃_j J_j^{(r+1,s+1)}(2t-1) + Σ_{i≥m-s} q_i B_i^m`.
#[derive(Debug, Clone, PartialEq)]
pub struct HybridJacobiCurve {
    degree: usize,
    continuity: ContinuitySpec,
    head: Vec<Vec<f64>>,
    tail: Vec<Vec<f64>>,
    jacobi: Vec<Vec<f64>>,
    jacobi_basis: Vec<BernsteinPoly>,
}

impl HybridJacobiCurve {
    /// `head` holds `q_0..=q_r`, `tail` holds `q_{m-s}..=q_m` in index order and
    /// `jacobi` holds `q̃_0..=q̃_M` with `M = m - (r + s + 2)`.
    pub fn new(
        degree: usize,
        continuity: ContinuitySpec,
        head: Vec<Vec<f64>>,
        tail: Vec<Vec<f64>>,
        jacobi: Vec<Vec<f64>>,
    ) -> Result<Self> {
        let (r, s) = (continuity.r, continuity.s);
        if degree < r + s + 2 {
            return Err(Error::invalid(format!(
                "degree {degree} is too small for C^({r},{s}); need at least {}",
                r + s + 2
            )));
        }
        let middle = degree - (r + s + 2) + 1;
        if head.len() != r + 1 || tail.len() != s + 1 || jacobi.len() != middle {
            return Err(Error::invalid(format!(
                "hybrid part lengths ({}, {}, {}) do not match ({}, {}, {middle})",
                head.len(),
                tail.len(),
                jacobi.len(),
                r + 1,
                s + 1
            )));
        }
        let dim = head[0].len();
        if head.iter().chain(&tail).chain(&jacobi).any(|p| p.len() != dim) {
            return Err(Error::invalid("hybrid curve points have mixed dimensions"));
        }
        let jacobi_basis = (0..middle).map(|k| jacobi_in_bernstein(k, r, s)).collect();
        Ok(Self { degree, continuity, head, tail, jacobi, jacobi_basis })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn continuity(&self) -> ContinuitySpec {
        self.continuity
    }

    pub fn dim(&self) -> usize {
        self.head[0].len()
    }

    pub fn head(&self) -> &[Vec<f64>] {
        &self.head
    }

    pub fn tail(&self) -> &[Vec<f64>] {
        &self.tail
    }

    pub fn jacobi_coeffs(&self) -> &[Vec<f64>] {
        &self.jacobi
    }

    /// Degree-`m` Bernstein polynomial with only the constrained control
    /// points set and zeros in between.
    pub fn constrained_part(&self) -> BernsteinPoly {
        let m = self.degree;
        let mut q = BernsteinPoly::zeros(m, self.dim());
        for (i, p) in self.head.iter().enumerate() {
            q.coeff_mut(i).copy_from_slice(p);
        }
        let first_tail = m - self.continuity.s;
        for (i, p) in self.tail.iter().enumerate() {
            q.coeff_mut(first_tail + i).copy_from_slice(p);
        }
        q
    }

    pub fn eval(&self, t: f64) -> Vec<f64> {
        let (r, s) = (self.continuity.r, self.continuity.s);
        let mut out = self.constrained_part().eval(t);
        let factor = t.powi(r as i32 + 1) * (1.0 - t).powi(s as i32 + 1);
        for (coef, basis) in self.jacobi.iter().zip(&self.jacobi_basis) {
            let j = factor * basis.eval_scalar(t);
            for (o, c) in out.iter_mut().zip(coef) {
                *o += j * c;
            }
        }
        out
    }

    /// Exact conversion to a degree-`m` Bézier curve.
    pub fn to_bezier(&self) -> BezierCurve {
        let (r, s, m) = (self.continuity.r, self.continuity.s, self.degree);
        let mut q = self.constrained_part();
        for (k, coef) in self.jacobi.iter().enumerate() {
            let basis = weighted_jacobi_in_bernstein(k, r, s, m).expect("degree checked at construction");
            q.add_scaled(&basis, coef);
        }
        BezierCurve { poly: q }
    }
}

impl ParametricCurve for HybridJacobiCurve {
    fn dim(&self) -> usize {
        HybridJacobiCurve::dim(self)
    }

    fn point(&self, t: f64) -> Vec<f64> {
        self.eval(t)
    }
}

pub fn hybrid_eval(h: &HybridJacobiCurve, t: f64) -> Vec<f64> {
    h.eval(t)
}

pub fn hybrid_to_bezier(h: &HybridJacobiCurve) -> BezierCurve {
    h.to_bezier()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn dist(a: &[f64], b: &[f64]) -> f64 {
        a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt()
    }

    fn random_points(rng: &mut ChaCha8Rng, count: usize, dim: usize) -> Vec<Vec<f64>> {
        (0..count).map(|_| (0..dim).map(|_| rng.gen_range(-10.0..10.0)).collect()).collect()
    }

    fn random_hybrid(rng: &mut ChaCha8Rng) -> HybridJacobiCurve {
        let r = rng.gen_range(0..3);
        let s = rng.gen_range(0..3);
        let m = r + s + 2 + rng.gen_range(0..6);
        let dim = rng.gen_range(2..4);
        HybridJacobiCurve::new(
            m,
            ContinuitySpec::new(r, s),
            random_points(rng, r + 1, dim),
            random_points(rng, s + 1, dim),
            random_points(rng, m - r - s - 1, dim),
        )
        .unwrap()
    }

    #[test]
    fn rational_rejects_bad_weights() {
        let pts = [[0.0, 0.0], [1.0, 1.0]];
        assert!(RationalBezierCurve::new(&pts, vec![1.0, 0.0]).is_err());
        assert!(RationalBezierCurve::new(&pts, vec![1.0, -2.0]).is_err());
        assert!(RationalBezierCurve::new(&pts, vec![1.0]).is_err());
        assert!(RationalBezierCurve::new(&pts, vec![1.0, f64::NAN]).is_err());
    }

    #[test]
    fn rational_endpoints_and_unit_weights() {
        let pts = [[0.0, 1.0], [2.0, 5.0], [4.0, -1.0], [7.0, 3.0]];
        let c = RationalBezierCurve::new(&pts, vec![1.0, 3.0, 0.5, 2.0]).unwrap();
        assert_eq!(c.eval(0.0), vec![0.0, 1.0]);
        let end = c.eval(1.0);
        assert!(dist(&end, &[7.0, 3.0]) < 1e-15);

        let unit = RationalBezierCurve::new(&pts, vec![1.0; 4]).unwrap();
        let poly = BezierCurve::new(&pts).unwrap();
        for i in 0..=20 {
            let t = i as f64 / 20.0;
            assert!(dist(&unit.eval(t), &poly.eval(t)) < 1e-14);
        }
    }

    #[test]
    fn quarter_circle_is_exact() {
        let w = std::f64::consts::FRAC_1_SQRT_2;
        let c = RationalBezierCurve::new(&[[1.0, 0.0], [1.0, 1.0], [0.0, 1.0]], vec![1.0, w, 1.0]).unwrap();
        for i in 0..20 {
            let t = i as f64 / 19.0;
            let p = c.eval(t);
            assert!((p[0].hypot(p[1]) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn numerator_scales_points() {
        let c = RationalBezierCurve::new(&[[2.0, 3.0]], vec![4.0]).unwrap();
        assert_eq!(numerator_curve(&c).coeffs(), &[8.0, 12.0]);
        let unit = RationalBezierCurve::new(&[[2.0, 3.0], [1.0, 1.0]], vec![1.0, 1.0]).unwrap();
        assert_eq!(unit.numerator().coeffs(), unit.control_points().coeffs());
    }

    #[test]
    fn hybrid_rejects_small_degree_and_bad_lengths() {
        let spec = ContinuitySpec::new(1, 1);
        let p = vec![vec![0.0, 0.0]];
        assert!(HybridJacobiCurve::new(3, spec, vec![p[0].clone(); 2], vec![p[0].clone(); 2], vec![]).is_err());
        assert!(HybridJacobiCurve::new(4, spec, vec![p[0].clone(); 1], vec![p[0].clone(); 2], p.clone()).is_err());
        assert!(HybridJacobiCurve::new(4, spec, vec![p[0].clone(); 2], vec![p[0].clone(); 2], p).is_ok());
    }

    #[test]
    fn hybrid_zero_middle_converts_to_end_points() {
        let h = HybridJacobiCurve::new(
            5,
            ContinuitySpec::new(1, 0),
            vec![vec![1.0, 2.0], vec![3.0, 4.0]],
            vec![vec![9.0, 9.0]],
            vec![vec![0.0, 0.0]; 3],
        )
        .unwrap();
        let b = h.to_bezier();
        assert_eq!(
            b.control_points(),
            vec![vec![1.0, 2.0], vec![3.0, 4.0], vec![0.0, 0.0], vec![0.0, 0.0], vec![0.0, 0.0], vec![9.0, 9.0]]
        );
    }

    #[test]
    fn hybrid_single_jacobi_term() {
        let h = HybridJacobiCurve::new(
            2,
            ContinuitySpec::new(0, 0),
            vec![vec![0.0, 0.0]],
            vec![vec![0.0, 0.0]],
            vec![vec![1.0, 0.0]],
        )
        .unwrap();
        let b = h.to_bezier();
        assert_eq!(b.control_point(1), &[0.5, 0.0]);
        for i in 0..10 {
            let t = i as f64 / 9.0;
            assert!(dist(&h.eval(t), &b.eval(t)) < 1e-15);
        }
    }

    #[test]
    fn hybrid_endpoints_and_conversion_fidelity() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let h = random_hybrid(&mut rng);
            let m = h.degree();
            let s = h.continuity().s;
            assert!(dist(&h.eval(0.0), &h.head()[0]) < 1e-15);
            assert!(dist(&h.eval(1.0), &h.tail()[s]) < 1e-15);
            let b = h.to_bezier();
            assert_eq!(b.degree(), m);
            let scale = 1.0
                + b.poly().coeffs().iter().chain(h.jacobi_coeffs().iter().flatten()).fold(0.0f64, |a, c| a.max(c.abs()));
            for i in 0..200 {
                let t = i as f64 / 199.0;
                assert!(dist(&h.eval(t), &b.eval(t)) <= 1e-10 * scale);
            }
        }
    }

    #[test]
    fn reversed_rational_runs_backwards() {
        let c = RationalBezierCurve::new(&[[0.0, 0.0], [1.0, 3.0], [4.0, 1.0]], vec![1.0, 5.0, 2.0]).unwrap();
        let r = c.reversed();
        for i in 0..=10 {
            let t = i as f64 / 10.0;
            assert!(dist(&c.eval(t), &r.eval(1.0 - t)) < 1e-14);
        }
    }
}
