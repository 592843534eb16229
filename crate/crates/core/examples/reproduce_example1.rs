//! Degree-9 rational curve approximated by a degree-10 polynomial with
//! C^(0,0) contact, directly and through elevate-then-reduce.
//!
//! cargo run --release --example reproduce_example1

use std::path::Path;

use rbez::continuity::ContinuitySpec;
use rbez::io::read_curve;
use rbez::pipeline::{approximate, sweep_intermediate, ApproximationConfig};

fn main() -> rbez::Result<()> {
    let src = read_curve(Path::new(env!("CARGO_MANIFEST_DIR")).join("data/example1.json"))?.into_rational();
    let cfg = ApproximationConfig::new(10, ContinuitySpec::new(0, 0));

    let direct = approximate(&src, &cfg)?;
    let r = &direct.report;
    println!("direct fit");
    println!("  hausdorff estimate  {:.6}", r.hausdorff_estimate);
    println!("  max parameter error {:.6}", r.max_param_error);
    println!("  a-priori bound      {:.6}", r.theorem2_bound);
    println!("  gram condition      {:.3}", r.gram_condition);

    println!("elevate-then-reduce sweep");
    let table = sweep_intermediate(&src, &cfg, &[11, 12, 13, 14, 15, 16])?;
    for row in &table.rows {
        let label = row.intermediate_degree.map_or("direct".to_owned(), |d| format!("m' = {d}"));
        match row.hausdorff {
            Some(h) => println!("  {label:<8} {h:.6}"),
            None => println!("  {label:<8} failed: {}", row.error.as_deref().unwrap_or("")),
        }
    }
    Ok(())
}
