//! Independent oracles shared by the integration tests.
//!
//! Nothing here calls into the library's numerics: Bernstein values come
//! from the power form, Jacobi values from the explicit sum, integrals from
//! adaptive Gauss–Kronrod and derivatives from the Leibniz quotient rule.

#![allow(dead_code, clippy::excessive_precision, clippy::needless_range_loop)]

use std::path::PathBuf;

use rand::Rng;
use rbez::curves::RationalBezierCurve;

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1].
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// `(kronrod, |kronrod - gauss|, ∫|f|)` on `[a, b]`.
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    let mut abs = WGK[7] * fc.abs();
    for j in 0..7 {
        let (f1, f2) = (f(c - h * XGK[j]), f(c + h * XGK[j]));
        kronrod += WGK[j] * (f1 + f2);
        abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    (kronrod * h, ((kronrod - gauss) * h).abs(), abs * h.abs())
}

/// Adaptive integral of `f` over `[a, b]` together with an estimate of
/// `∫|f|` on the final panels (used only as a scale).
///
/// Panels are bisected until the Kronrod/Gauss difference falls below their
/// share of `rel_tol · ∫|f|`, or below the roundoff level of the panel.
pub fn integrate_with_abs<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64) -> (f64, f64) {
    fn recurse<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol_density: f64, depth: u32) -> (f64, f64) {
        let (value, err, abs) = gk15(f, a, b);
        if err <= tol_density * (b - a) || err <= 50.0 * f64::EPSILON * abs || depth == 0 {
            return (value, abs);
        }
        let mid = 0.5 * (a + b);
        let (l, la) = recurse(f, a, mid, tol_density, depth - 1);
        let (r, ra) = recurse(f, mid, b, tol_density, depth - 1);
        (l + r, la + ra)
    }
    let (_, _, abs) = gk15(&f, a, b);
    recurse(&f, a, b, rel_tol * abs / (b - a), 14)
}

pub fn integrate<F: Fn(f64) -> f64>(f: F) -> f64 {
    integrate_with_abs(f, 0.0, 1.0, 1e-13).0
}

pub fn choose(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Generalized binomial `C(x, k)` for real `x`.
fn gchoose(x: f64, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (x - i as f64) / (i + 1) as f64)
}

/// `B_i^n(t)` in power form.
pub fn bernstein(n: usize, i: usize, t: f64) -> f64 {
    choose(n, i) * t.powi(i as i32) * (1.0 - t).powi((n - i) as i32)
}

/// `P_k^{(alpha,beta)}(x)` from the explicit double-binomial sum.
pub fn jacobi(k: usize, alpha: f64, beta: f64, x: f64) -> f64 {
    (0..=k)
        .map(|s| {
            gchoose(k as f64 + alpha, k - s)
                * gchoose(k as f64 + beta, s)
                * ((x - 1.0) / 2.0).powi(s as i32)
                * ((x + 1.0) / 2.0).powi((k - s) as i32)
        })
        .sum()
}

/// `J_k^{(r+1,s+1)}(2t-1)` as used by the hybrid middle section.
pub fn hybrid_jacobi(k: usize, r: usize, s: usize, t: f64) -> f64 {
    jacobi(k, r as f64 + 1.0, s as f64 + 1.0, 2.0 * t - 1.0)
}

/// `Σ c_i B_i^n(t)` for vector coefficients.
pub fn bezier_point(points: &[Vec<f64>], t: f64) -> Vec<f64> {
    let n = points.len() - 1;
    let mut out = vec![0.0; points[0].len()];
    for (i, p) in points.iter().enumerate() {
        let b = bernstein(n, i, t);
        for (o, x) in out.iter_mut().zip(p) {
            *o += b * x;
        }
    }
    out
}

pub fn scalar_bezier(coeffs: &[f64], t: f64) -> f64 {
    let n = coeffs.len() - 1;
    coeffs.iter().enumerate().map(|(i, c)| c * bernstein(n, i, t)).sum()
}

/// Homogeneous data `(w_i p_i, w_i)` of a rational curve.
pub fn homogeneous(src: &RationalBezierCurve) -> (Vec<Vec<f64>>, Vec<f64>) {
    let weights = src.weights().to_vec();
    let numerator = (0..=src.degree())
        .map(|i| src.control_point(i).iter().map(|x| x * weights[i]).collect())
        .collect();
    (numerator, weights)
}

pub fn numerator(src: &RationalBezierCurve, t: f64) -> Vec<f64> {
    bezier_point(&homogeneous(src).0, t)
}

pub fn omega(src: &RationalBezierCurve, t: f64) -> f64 {
    scalar_bezier(src.weights(), t)
}

pub fn rational_point(src: &RationalBezierCurve, t: f64) -> Vec<f64> {
    let w = omega(src, t);
    numerator(src, t).into_iter().map(|x| x / w).collect()
}

/// Derivatives `0..=order` at `t = 0` of a polynomial with Bernstein
/// coefficients `coeffs` (rows are points), via forward differences.
pub fn derivatives_at_zero(coeffs: &[Vec<f64>], order: usize) -> Vec<Vec<f64>> {
    let n = coeffs.len() - 1;
    let dim = coeffs[0].len();
    (0..=order)
        .map(|k| {
            if k > n {
                return vec![0.0; dim];
            }
            let falling: f64 = (0..k).map(|i| (n - i) as f64).product();
            let mut d = vec![0.0; dim];
            for i in 0..=k {
                let sign = if (k - i) % 2 == 0 { 1.0 } else { -1.0 };
                let c = sign * choose(k, i) * falling;
                for (o, x) in d.iter_mut().zip(&coeffs[i]) {
                    *o += c * x;
                }
            }
            d
        })
        .collect()
}

/// Derivatives with respect to `t` at `t = 1`.
pub fn derivatives_at_one(coeffs: &[Vec<f64>], order: usize) -> Vec<Vec<f64>> {
    let reversed: Vec<Vec<f64>> = coeffs.iter().rev().cloned().collect();
    derivatives_at_zero(&reversed, order)
        .into_iter()
        .enumerate()
        .map(|(k, d)| {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            d.into_iter().map(|x| sign * x).collect()
        })
        .collect()
}

/// Quotient-rule derivatives of `x = P / ω` from those of `P` and `ω`:
/// `x^(k) = (P^(k) - Σ_{i≥1} C(k,i) ω^(i) x^(k-i)) / ω`.
pub fn quotient_derivatives(p: &[Vec<f64>], w: &[f64]) -> Vec<Vec<f64>> {
    let mut x: Vec<Vec<f64>> = Vec::with_capacity(p.len());
    for k in 0..p.len() {
        let mut d = p[k].clone();
        for i in 1..=k {
            let c = choose(k, i) * w[i];
            for (o, xv) in d.iter_mut().zip(&x[k - i]) {
                *o -= c * xv;
            }
        }
        x.push(d.into_iter().map(|v| v / w[0]).collect());
    }
    x
}

/// Derivatives of the rational source at `t = 0` (or `t = 1`).
pub fn rational_derivatives(src: &RationalBezierCurve, order: usize, at_one: bool) -> Vec<Vec<f64>> {
    let (num, weights) = homogeneous(src);
    let wrows: Vec<Vec<f64>> = weights.iter().map(|w| vec![*w]).collect();
    let (p, w) = if at_one {
        (derivatives_at_one(&num, order), derivatives_at_one(&wrows, order))
    } else {
        (derivatives_at_zero(&num, order), derivatives_at_zero(&wrows, order))
    };
    let w: Vec<f64> = w.into_iter().map(|v| v[0]).collect();
    quotient_derivatives(&p, &w)
}

pub fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// Planar rational source with coordinates in `[-10, 10]` and weights drawn
/// log-uniformly from `[w_lo, w_hi]`.
pub fn random_source<R: Rng>(rng: &mut R, n: usize, w_lo: f64, w_hi: f64) -> RationalBezierCurve {
    let points: Vec<[f64; 2]> = (0..=n).map(|_| [rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0)]).collect();
    let weights = (0..=n).map(|_| (rng.gen_range(w_lo.ln()..=w_hi.ln())).exp()).collect();
    RationalBezierCurve::new(&points, weights).expect("valid random source")
}

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

pub fn example1() -> RationalBezierCurve {
    rbez::io::read_curve(data_path("example1.json")).expect("fixture").into_rational()
}

pub fn example2() -> RationalBezierCurve {
    rbez::io::read_curve(data_path("example2.json")).expect("fixture").into_rational()
}
