//! Constrained degree reduction of a polynomial Bézier curve.
//!
//! cargo run --release --example degree_reduction

use rbez::accuracy::hausdorff_distance;
use rbez::continuity::{head_constrained_points, tail_constrained_points, ContinuitySpec};
use rbez::curves::{BezierCurve, RationalBezierCurve};
use rbez::solver::reduce_degree;

fn main() -> rbez::Result<()> {
    let curve = BezierCurve::new(&[
        [0.0, 0.0],
        [1.0, 3.0],
        [2.5, -1.0],
        [4.0, 4.0],
        [5.0, -2.0],
        [6.5, 3.5],
        [7.0, 1.0],
        [8.0, 0.0],
    ])?;
    let unit = RationalBezierCurve::from_bezier(&curve);
    println!("reducing a degree-{} curve", curve.degree());
    for (m, spec) in [(6, ContinuitySpec::new(1, 1)), (5, ContinuitySpec::new(1, 1)), (4, ContinuitySpec::new(0, 0))] {
        let head = head_constrained_points(&unit, m, spec)?;
        let tail = tail_constrained_points(&unit, m, spec)?;
        let reduced = reduce_degree(&curve, m, spec, head, tail)?.to_bezier();
        let h = hausdorff_distance(&curve, &reduced, 2000)?;
        println!("  degree {m}, C^({spec}): hausdorff {h:.6}");
    }

    // Elevation followed by reduction is lossless.
    let elevated = curve.elevate(11);
    let spec = ContinuitySpec::new(0, 0);
    let back = reduce_degree(
        &elevated,
        7,
        spec,
        head_constrained_points(&unit, 7, spec)?,
        tail_constrained_points(&unit, 7, spec)?,
    )?
    .to_bezier();
    let drift = back
        .control_points()
        .iter()
        .zip(curve.control_points())
        .map(|(a, b)| ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt())
        .fold(0.0f64, f64::max);
    println!("elevate to 11 and reduce back to 7: max control point drift {drift:.2e}");
    Ok(())
}
