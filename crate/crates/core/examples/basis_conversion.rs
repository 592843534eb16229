//! Jacobi polynomials in Bernstein form and hybrid-to-Bézier conversion.
//!
//! cargo run --example basis_conversion

use rbez::basis::{binomial, jacobi_in_bernstein, jacobi_recurrence, weighted_jacobi_in_bernstein};
use rbez::continuity::ContinuitySpec;
use rbez::curves::HybridJacobiCurve;

fn main() -> rbez::Result<()> {
    println!("C(60, 30) = {}", binomial(60, 30)?);

    let (r, s) = (1, 0);
    for k in 0..4 {
        let jac = jacobi_in_bernstein(k, r, s);
        let t = 0.3;
        println!(
            "J_{k}^({},{}) Bernstein coefficients {:?}; at t = {t}: {:.6} (recurrence {:.6})",
            r + 1,
            s + 1,
            jac.coeffs(),
            jac.eval_scalar(t),
            jacobi_recurrence(k, (r + 1) as f64, (s + 1) as f64, 2.0 * t - 1.0)
        );
    }
    let w = weighted_jacobi_in_bernstein(1, r, s, 6)?;
    println!("t^2 (1-t) J_1 as a degree-6 Bernstein polynomial: {:?}", w.coeffs());

    let hybrid = HybridJacobiCurve::new(
        6,
        ContinuitySpec::new(r, s),
        vec![vec![0.0, 0.0], vec![1.0, 1.0]],
        vec![vec![4.0, 0.0]],
        vec![vec![0.5, 2.0], vec![0.1, -0.3], vec![0.0, 0.2], vec![-0.05, 0.0]],
    )?;
    let bezier = hybrid.to_bezier();
    println!("hybrid as Bézier control points:");
    for p in bezier.control_points() {
        println!("  ({:.6}, {:.6})", p[0], p[1]);
    }
    let t = 0.42;
    println!("hybrid({t}) = {:?}, bezier({t}) = {:?}", hybrid.eval(t), bezier.eval(t));
    Ok(())
}
