//! Degree-8 rational curve approximated by a quintic with C^(1,1) contact.
//!
//! cargo run --release --example reproduce_example2

use std::path::Path;

use rbez::continuity::ContinuitySpec;
use rbez::io::read_curve;
use rbez::pipeline::{approximate, ApproximationConfig};

fn main() -> rbez::Result<()> {
    let src = read_curve(Path::new(env!("CARGO_MANIFEST_DIR")).join("data/example2.json"))?.into_rational();
    let result = approximate(&src, &ApproximationConfig::new(5, ContinuitySpec::new(1, 1)))?;

    println!("control points of the quintic:");
    for p in result.curve.control_points() {
        println!("  ({:>10.6}, {:>10.6})", p[0], p[1]);
    }
    println!("Jacobi coefficients of the middle section:");
    for q in result.hybrid.jacobi_coeffs() {
        println!("  ({:>10.6}, {:>10.6})", q[0], q[1]);
    }
    println!("hausdorff estimate {:.6}", result.report.hausdorff_estimate);
    println!("max parameter error {:.6}", result.report.max_param_error);
    Ok(())
}
