//! Near an end point the parametric error of a C^(r,s) approximation
//! decays like t^(r+1) (and (1-t)^(s+1) at the other end).
//!
//! cargo run --release --example continuity_contact

use std::path::Path;

use rbez::accuracy::error_curve;
use rbez::continuity::{head_constrained_points, ContinuitySpec};
use rbez::io::read_curve;
use rbez::solver::solve_hybrid;

fn main() -> rbez::Result<()> {
    let src = read_curve(Path::new(env!("CARGO_MANIFEST_DIR")).join("data/example2.json"))?.into_rational();
    let m = 9;
    println!("error at t = 1e-2 and 1e-3 and their ratio (expect about 10^(r+1))");
    for r in 0..=3 {
        let spec = ContinuitySpec::new(r, r);
        let approx = solve_hybrid(&src, m, spec)?.to_bezier();
        let e = |t: f64| -> f64 {
            let d: f64 = src.eval(t).iter().zip(approx.eval(t)).map(|(a, b)| (a - b).powi(2)).sum();
            d.sqrt()
        };
        let (a, b) = (e(1e-2), e(1e-3));
        println!("  r = s = {r}: {a:.3e}  {b:.3e}  ratio {:.1}", a / b);
    }

    let spec = ContinuitySpec::new(2, 1);
    println!("head points for C^({spec}) at degree {m}:");
    for q in head_constrained_points(&src, m, spec)? {
        println!("  ({:.6}, {:.6})", q[0], q[1]);
    }
    let approx = solve_hybrid(&src, m, spec)?.to_bezier();
    let worst = error_curve(&src, &approx, 2000)?.into_iter().fold(0.0f64, |a, (_, e)| a.max(e));
    println!("max parametric error with C^({spec}): {worst:.6}");
    Ok(())
}
