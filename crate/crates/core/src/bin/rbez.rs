use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use rbez::accuracy::theorem2_bound;
use rbez::continuity::ContinuitySpec;
use rbez::io::{parse_formats, read_curve, write_outputs, Curve, SvgOptions};
use rbez::pipeline::{approximate, sweep_intermediate, ApproximationConfig};
use rbez::{Error, Result};

/// Polynomial approximation of rational Bézier curves.
///
/// Logging is controlled by the RBEZ_LOG environment variable
/// (e.g. RBEZ_LOG=info); warnings are shown by default.
#[derive(Parser, Debug)]
#[command(name = "rbez", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Approximate a rational curve by a polynomial Bézier curve.
    Approximate {
        #[arg(long)]
        input: PathBuf,
        /// Target degree m.
        #[arg(long)]
        degree: usize,
        /// End contact orders as `r,s`.
        #[arg(long, default_value = "0,0")]
        continuity: ContinuitySpec,
        /// Fit at this degree first, then reduce to the target degree.
        #[arg(long, conflicts_with = "sweep")]
        elevate: Option<usize>,
        /// Comma-separated intermediate degrees to try; the best result
        /// (including the direct path) is written.
        #[arg(long, value_delimiter = ',')]
        sweep: Option<Vec<usize>>,
        /// Sample count for the Hausdorff estimate.
        #[arg(long, default_value_t = rbez::accuracy::DEFAULT_HAUSDORFF_SAMPLES)]
        samples: usize,
        #[arg(long)]
        out: PathBuf,
        /// Artifacts besides report.json: any of json, csv, svg.
        #[arg(long, default_value = "json,csv,svg")]
        formats: String,
        /// Draw control polygons in curves.svg.
        #[arg(long)]
        control_polygons: bool,
    },
    /// Report the a-priori error bound between a source and a polynomial curve.
    Bound {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        approx: PathBuf,
    },
    /// Evaluate a curve at a parameter in [0, 1].
    Eval {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        t: f64,
    },
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Approximate {
            input,
            degree,
            continuity,
            elevate,
            sweep,
            samples,
            out,
            formats,
            control_polygons,
        } => {
            let formats = parse_formats(&formats)?;
            let src = read_curve(&input)?.into_rational();
            let mut cfg = ApproximationConfig::new(degree, continuity).with_samples(samples);
            if let Some(mp) = elevate {
                cfg = cfg.with_intermediate(mp);
            }
            let table = match &sweep {
                Some(candidates) => {
                    let table = sweep_intermediate(&src, &cfg, candidates)?;
                    for row in &table.rows {
                        let path = row.intermediate_degree.map_or("direct".to_owned(), |d| format!("m'={d}"));
                        match (&row.hausdorff, &row.error) {
                            (Some(h), _) => println!("sweep {path}: hausdorff {h:.6}"),
                            (None, Some(e)) => println!("sweep {path}: failed: {e}"),
                            _ => {}
                        }
                    }
                    let best = table
                        .best()
                        .ok_or_else(|| Error::Conditioning("no sweep candidate succeeded".to_owned()))?;
                    cfg.intermediate_degree = best.intermediate_degree;
                    Some(table)
                }
                None => None,
            };
            let result = approximate(&src, &cfg)?;
            let svg = SvgOptions { control_polygons, ..Default::default() };
            let mut written = write_outputs(&src, &result.curve, &result.report, &out, &formats, svg)?;
            if let Some(table) = table {
                let path = out.join("sweep.json");
                let text = serde_json::to_string_pretty(&json!({
                    "selected_intermediate_degree": cfg.intermediate_degree,
                    "rows": table.rows,
                }))
                .expect("serializable sweep");
                std::fs::write(&path, text + "\n").map_err(|source| Error::Io { path: path.clone(), source })?;
                written.push(path);
            }
            let r = &result.report;
            println!("degree {} approximation, continuity ({continuity})", result.curve.degree());
            if let Some(mp) = cfg.intermediate_degree {
                println!("intermediate degree {mp}");
            }
            println!("hausdorff estimate   {:.6}", r.hausdorff_estimate);
            println!("max parameter error  {:.6}", r.max_param_error);
            println!("a-priori bound       {:.6}", r.theorem2_bound);
            println!("gram condition       {:.3e}", r.gram_condition);
            for path in written {
                println!("wrote {}", path.display());
            }
        }
        Command::Bound { input, approx } => {
            let src = read_curve(&input)?.into_rational();
            let approx = match read_curve(&approx)? {
                Curve::Polynomial(c) => c,
                Curve::Rational(_) => {
                    return Err(Error::Format {
                        path: approx,
                        message: "field `kind`: the approximating curve must be \"polynomial\"".to_owned(),
                    })
                }
            };
            let bound = theorem2_bound(&src, &approx);
            println!("{}", json!({ "bound": bound.weighted, "loose_bound": bound.loose }));
        }
        Command::Eval { input, t } => {
            if !(0.0..=1.0).contains(&t) {
                return Err(Error::InvalidInput(format!("parameter {t} is outside [0, 1]")));
            }
            let curve = read_curve(&input)?;
            println!("{}", serde_json::to_string(&curve.eval(t)).expect("serializable point"));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("RBEZ_LOG", "warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
