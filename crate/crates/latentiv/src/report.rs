//! JSON and CSV renderings of results.

use std::path::Path;

use anyhow::Context;
use latentiv_core::benchmark::BenchmarkReport;
use latentiv_core::inference::{EnsembleVerdict, VoteCounts};
use latentiv_core::{Config, Direction};
use serde::Serialize;

/// Output of a single `infer` run.
#[derive(Debug, Clone, Serialize)]
pub struct InferOutput {
    /// Ensemble majority when folds are used, the single decision otherwise.
    pub direction: Direction,
    /// Both p-values and their difference on the full sample.
    pub p_y_indep_ix_given_x: f64,
    pub p_x_indep_iy_given_y: f64,
    pub p_difference: f64,
    pub ensemble: Option<EnsembleSummary>,
    pub config: Config,
}

#[derive(Debug, Clone, Serialize)]
pub struct EnsembleSummary {
    pub folds: usize,
    pub vote_counts: VoteCounts,
    pub mean_p_difference: f64,
    pub fold_directions: Vec<Direction>,
}

impl From<&EnsembleVerdict> for EnsembleSummary {
    fn from(e: &EnsembleVerdict) -> Self {
        Self {
            folds: e.fold_verdicts.len(),
            vote_counts: e.vote_counts,
            mean_p_difference: e.mean_p_difference,
            fold_directions: e.fold_verdicts.iter().map(|v| v.direction).collect(),
        }
    }
}

pub fn report_json(report: &BenchmarkReport) -> anyhow::Result<String> {
    Ok(serde_json::to_string_pretty(report)? + "\n")
}

/// Per-pair rows: `id, verdict, p_difference, correct, weight`.
pub fn report_csv(report: &BenchmarkReport) -> anyhow::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["id", "verdict", "p_difference", "correct", "weight"])?;
    for o in &report.per_pair {
        w.write_record([
            o.id.to_string(),
            o.verdict.map_or("error", Direction::as_str).to_string(),
            o.p_difference.map_or(String::new(), |p| p.to_string()),
            o.correct.to_string(),
            o.weight.to_string(),
        ])?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

/// Writes `report.json` and `report.csv` into `dir`.
pub fn write_report(report: &BenchmarkReport, dir: &Path) -> anyhow::Result<()> {
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    std::fs::write(dir.join("report.json"), report_json(report)?)?;
    std::fs::write(dir.join("report.csv"), report_csv(report)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use latentiv_core::benchmark::{summarize, PairOutcome};

    #[test]
    fn csv_columns_in_fixed_order() {
        let outcomes = vec![
            PairOutcome { id: 2, verdict: Some(Direction::EffectToCause), p_difference: Some(0.25), correct: true, weight: 0.5, error: None },
            PairOutcome::failure(1, 1.0, "bad".into()),
        ];
        let r = summarize(outcomes, vec![], &Config::default());
        let csv = report_csv(&r).unwrap();
        assert_eq!(csv, "id,verdict,p_difference,correct,weight\n1,error,,false,1\n2,y_to_x,0.25,true,0.5\n");
        let json: serde_json::Value = serde_json::from_str(&report_json(&r).unwrap()).unwrap();
        assert_eq!(json["per_pair"][1]["verdict"], "y_to_x");
        assert_eq!(json["mode"], "strict_tree");
    }
}
