//! Writes reports, CSV error curves and SVG plots for both sample curves.
//!
//! cargo run --release --example write_plots -- [out_dir]

use std::path::{Path, PathBuf};

use rbez::continuity::ContinuitySpec;
use rbez::io::{read_curve, write_outputs, OutputFormat, SvgOptions};
use rbez::pipeline::{approximate, ApproximationConfig};

fn main() -> rbez::Result<()> {
    let out = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| PathBuf::from("plots"));
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    let runs = [
        ("example1", ApproximationConfig::new(10, ContinuitySpec::new(0, 0)).with_intermediate(12)),
        ("example2", ApproximationConfig::new(5, ContinuitySpec::new(1, 1))),
    ];
    for (name, cfg) in runs {
        let src = read_curve(data.join(format!("{name}.json")))?.into_rational();
        let result = approximate(&src, &cfg)?;
        let svg = SvgOptions { control_polygons: true, ..Default::default() };
        let formats = [OutputFormat::Json, OutputFormat::Csv, OutputFormat::Svg];
        for path in write_outputs(&src, &result.curve, &result.report, out.join(name), &formats, svg)? {
            println!("{}", path.display());
        }
    }
    Ok(())
}
