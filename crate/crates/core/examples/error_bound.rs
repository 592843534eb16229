//! The control-point bound against the measured errors as the degree grows.
//!
//! cargo run --release --example error_bound

use std::path::Path;

use rbez::accuracy::{mediant_ratio, theorem2_bound};
use rbez::continuity::ContinuitySpec;
use rbez::io::read_curve;
use rbez::pipeline::{approximate, ApproximationConfig};

fn main() -> rbez::Result<()> {
    let src = read_curve(Path::new(env!("CARGO_MANIFEST_DIR")).join("data/example1.json"))?.into_rational();
    println!("{:>3} {:>10} {:>10} {:>10} {:>10}", "m", "hausdorff", "max param", "bound", "loose");
    for m in [4, 6, 8, 10, 12, 14, 16] {
        let result = approximate(&src, &ApproximationConfig::new(m, ContinuitySpec::new(1, 1)).with_samples(2000))?;
        let bound = theorem2_bound(&src, &result.curve);
        let r = &result.report;
        println!(
            "{m:>3} {:>10.5} {:>10.5} {:>10.3} {:>10.3}",
            r.hausdorff_estimate, r.max_param_error, bound.weighted, bound.loose
        );
    }

    let (ratio, max) = mediant_ratio(&[3.0, 1.0, 4.0], &[1.0, 5.0, 9.0], &[2.0, 6.0, 5.0])?;
    println!("weighted ratio {ratio:.4} never exceeds the largest ratio {max:.4}");
    Ok(())
}
