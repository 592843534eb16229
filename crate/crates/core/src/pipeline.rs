//! End-to-end approximation: constrained end points, least-squares fit,
//! optional elevate-then-reduce refinement, conversion to Bézier form and
//! error reporting.

use serde::Serialize;

use crate::accuracy::{build_report, hausdorff_distance, ApproximationReport, DEFAULT_HAUSDORFF_SAMPLES};
use crate::continuity::{head_constrained_points, tail_constrained_points, ContinuitySpec};
use crate::curves::{BezierCurve, HybridJacobiCurve, RationalBezierCurve};
use crate::error::{Error, Result};
use crate::solver::{reduce_degree_with_diagnostics, solve_hybrid_with_diagnostics};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ApproximationConfig {
    pub target_degree: usize,
    pub continuity: ContinuitySpec,
    /// Degree `m'` of the intermediate fit; `None` selects the direct path.
    pub intermediate_degree: Option<usize>,
    pub hausdorff_samples: usize,
}

impl ApproximationConfig {
    pub fn new(target_degree: usize, continuity: ContinuitySpec) -> Self {
        Self {
            target_degree,
            continuity,
            intermediate_degree: None,
            hausdorff_samples: DEFAULT_HAUSDORFF_SAMPLES,
        }
    }

    pub fn with_intermediate(mut self, degree: usize) -> Self {
        self.intermediate_degree = Some(degree);
        self
    }

    pub fn with_samples(mut self, samples: usize) -> Self {
        self.hausdorff_samples = samples;
        self
    }

    pub fn validate(&self, source_degree: usize) -> Result<()> {
        let m = self.target_degree;
        self.continuity.validate(m, source_degree)?;
        if let Some(mp) = self.intermediate_degree {
            if mp <= m {
                return Err(Error::invalid(format!("intermediate degree {mp} must exceed target degree {m}")));
            }
            self.continuity.validate(mp, source_degree)?;
        }
        if self.hausdorff_samples < 2 {
            return Err(Error::invalid("at least 2 Hausdorff samples are required"));
        }
        Ok(())
    }
}

/// Result of [`approximate`].
#[derive(Debug, Clone)]
pub struct Approximation {
    pub curve: BezierCurve,
    pub hybrid: HybridJacobiCurve,
    /// Degree-`m'` curve of the reduction path, if one was used.
    pub intermediate: Option<BezierCurve>,
    pub report: ApproximationReport,
}

fn fit(src: &RationalBezierCurve, cfg: &ApproximationConfig) -> Result<(HybridJacobiCurve, Option<BezierCurve>, f64)> {
    cfg.validate(src.degree())?;
    let (m, spec) = (cfg.target_degree, cfg.continuity);
    let Some(mp) = cfg.intermediate_degree else {
        let (hybrid, diag) = solve_hybrid_with_diagnostics(src, m, spec)?;
        return Ok((hybrid, None, diag.gram_condition));
    };
    let head = head_constrained_points(src, m, spec)?;
    let tail = tail_constrained_points(src, m, spec)?;
    let (elevated, first) = solve_hybrid_with_diagnostics(src, mp, spec)?;
    let elevated = elevated.to_bezier();
    let (hybrid, second) = reduce_degree_with_diagnostics(&elevated, m, spec, head, tail)?;
    Ok((hybrid, Some(elevated), first.gram_condition.max(second.gram_condition)))
}

/// Approximates `src` by a degree-`m` Bézier curve with `C^(r,s)` end contact.
pub fn approximate(src: &RationalBezierCurve, cfg: &ApproximationConfig) -> Result<Approximation> {
    let (hybrid, intermediate, gram_condition) = fit(src, cfg)?;
    let curve = hybrid.to_bezier();
    let report = build_report(src, &curve, cfg.continuity, gram_condition, cfg.hausdorff_samples)?;
    Ok(Approximation { curve, hybrid, intermediate, report })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    /// `None` for the direct path.
    pub intermediate_degree: Option<usize>,
    pub hausdorff: Option<f64>,
    pub error: Option<String>,
}

/// Hausdorff errors of the direct path and each reduction candidate, sorted
/// ascending with failed candidates last.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepTable {
    pub rows: Vec<SweepRow>,
}

impl SweepTable {
    pub fn best(&self) -> Option<&SweepRow> {
        self.rows.first().filter(|row| row.hausdorff.is_some())
    }

    pub fn direct(&self) -> Option<&SweepRow> {
        self.rows.iter().find(|row| row.intermediate_degree.is_none())
    }
}

fn sweep_row(src: &RationalBezierCurve, cfg: &ApproximationConfig, intermediate: Option<usize>) -> SweepRow {
    let cfg = ApproximationConfig { intermediate_degree: intermediate, ..*cfg };
    let outcome = fit(src, &cfg).and_then(|(hybrid, _, _)| hausdorff_distance(src, &hybrid.to_bezier(), cfg.hausdorff_samples));
    match outcome {
        Ok(h) => SweepRow { intermediate_degree: intermediate, hausdorff: Some(h), error: None },
        Err(e) => SweepRow { intermediate_degree: intermediate, hausdorff: None, error: Some(e.to_string()) },
    }
}

/// Runs the direct path and the reduction path for every candidate `m'`.
///
/// `cfg.intermediate_degree` is ignored; invalid candidates become error rows.
pub fn sweep_intermediate(
    src: &RationalBezierCurve,
    cfg: &ApproximationConfig,
    candidates: &[usize],
) -> Result<SweepTable> {
    let base = ApproximationConfig { intermediate_degree: None, ..*cfg };
    base.validate(src.degree())?;
    let mut rows: Vec<SweepRow> = std::thread::scope(|scope| {
        let handles: Vec<_> = std::iter::once(None)
            .chain(candidates.iter().copied().map(Some))
            .map(|mp| scope.spawn(move || sweep_row(src, &base, mp)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("sweep worker panicked")).collect()
    });
    rows.sort_by(|a, b| match (a.hausdorff, b.hausdorff) {
        (Some(x), Some(y)) => x.total_cmp(&y),
        (Some(_), None) => std::cmp::Ordering::Less,
        (None, Some(_)) => std::cmp::Ordering::Greater,
        (None, None) => a.intermediate_degree.cmp(&b.intermediate_degree),
    });
    Ok(SweepTable { rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cubic() -> RationalBezierCurve {
        RationalBezierCurve::new(&[[0.0, 0.0], [1.0, 3.0], [3.0, 3.0], [4.0, 0.0]], vec![1.0; 4]).unwrap()
    }

    #[test]
    fn representable_source_has_zero_error() {
        let a = approximate(&cubic(), &ApproximationConfig::new(3, ContinuitySpec::new(0, 0)).with_samples(400)).unwrap();
        for (got, want) in a.curve.control_points().iter().zip(cubic().control_points().points()) {
            assert!((got[0] - want[0]).abs() < 1e-10 && (got[1] - want[1]).abs() < 1e-10);
        }
        assert!(a.report.hausdorff_estimate < 1e-9);
        assert!(a.report.max_param_error < 1e-9);
    }

    #[test]
    fn config_validation() {
        let spec = ContinuitySpec::new(1, 1);
        assert!(ApproximationConfig::new(3, spec).validate(5).is_err());
        assert!(ApproximationConfig::new(5, spec).with_intermediate(5).validate(8).is_err());
        assert!(ApproximationConfig::new(5, spec).with_samples(1).validate(8).is_err());
        assert!(ApproximationConfig::new(5, spec).with_intermediate(9).validate(8).is_ok());
    }

    #[test]
    fn empty_sweep_has_only_direct_row() {
        let cfg = ApproximationConfig::new(3, ContinuitySpec::new(0, 0)).with_samples(200);
        let table = sweep_intermediate(&cubic(), &cfg, &[]).unwrap();
        assert_eq!(table.rows.len(), 1);
        assert_eq!(table.rows[0].intermediate_degree, None);
    }

    #[test]
    fn sweep_records_bad_candidates() {
        let cfg = ApproximationConfig::new(3, ContinuitySpec::new(0, 0)).with_samples(200);
        let table = sweep_intermediate(&cubic(), &cfg, &[2, 5, 6]).unwrap();
        assert_eq!(table.rows.len(), 4);
        let bad = table.rows.last().unwrap();
        assert_eq!(bad.intermediate_degree, Some(2));
        assert!(bad.error.is_some());
        for row in &table.rows[..3] {
            assert!(row.hausdorff.unwrap() < 1e-9);
        }
    }
}
