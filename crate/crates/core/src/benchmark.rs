//! Scoring of cause-effect pair collections.
//!
//! Loading the corpus is the job of the `latentiv` crate; this module turns
//! loaded pairs into per-pair outcomes and weighted accuracies.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::config::{Config, DecisionMode};
use crate::data::DataPair;
use crate::inference::{decide, ensemble_infer, Direction};
use crate::rng::RngStream;

/// Pairs with multivariate cause or effect in the v1.0 corpus.
pub const DEFAULT_EXCLUDED_IDS: [u32; 9] = [52, 53, 54, 55, 70, 71, 81, 82, 83];
pub const MULTIVARIATE_REASON: &str = "multivariate";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum GroundTruth {
    XCausesY,
    YCausesX,
}

impl GroundTruth {
    pub fn flipped(self) -> Self {
        match self {
            GroundTruth::XCausesY => GroundTruth::YCausesX,
            GroundTruth::YCausesX => GroundTruth::XCausesY,
        }
    }

    pub fn matches(self, d: Direction) -> bool {
        matches!(
            (self, d),
            (GroundTruth::XCausesY, Direction::CauseToEffect) | (GroundTruth::YCausesX, Direction::EffectToCause)
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkRecord {
    pub id: u32,
    pub data: DataPair,
    pub ground_truth: GroundTruth,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PairOutcome {
    pub id: u32,
    /// `None` when the pair could not be evaluated.
    pub verdict: Option<Direction>,
    pub p_difference: Option<f64>,
    pub correct: bool,
    pub weight: f64,
    pub error: Option<String>,
}

impl PairOutcome {
    /// A pair that failed to load or evaluate; it counts as incorrect.
    pub fn failure(id: u32, weight: f64, error: String) -> Self {
        Self { id, verdict: None, p_difference: None, correct: false, weight, error: Some(error) }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Exclusion {
    pub id: u32,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BenchmarkReport {
    pub per_pair: Vec<PairOutcome>,
    pub weighted_accuracy: f64,
    pub unweighted_accuracy: f64,
    pub mode: DecisionMode,
    pub ensemble: bool,
    pub excluded: Vec<Exclusion>,
    pub config: Config,
}

/// Stream used for the pair with identifier `id`; independent of pair order.
pub fn pair_stream(rng: &RngStream, id: u32) -> RngStream {
    rng.derive(id as u64)
}

/// Runs the configured decision (ensemble when `n_folds > 1`) on one pair.
pub fn evaluate_pair(record: &BenchmarkRecord, cfg: &Config, rng: &RngStream) -> PairOutcome {
    let stream = pair_stream(rng, record.id);
    let result = if cfg.n_folds > 1 {
        ensemble_infer(&record.data, cfg, &stream).map(|e| (e.majority, e.mean_p_difference))
    } else {
        decide(&record.data, cfg, &stream).map(|v| (v.direction, v.p_difference()))
    };
    match result {
        Ok((direction, p_difference)) => PairOutcome {
            id: record.id,
            verdict: Some(direction),
            p_difference: Some(p_difference),
            correct: record.ground_truth.matches(direction),
            weight: record.weight,
            error: None,
        },
        Err(e) => PairOutcome::failure(record.id, record.weight, format!("{e}")),
    }
}

/// Sorts outcomes by id and computes both accuracies.
pub fn summarize(mut per_pair: Vec<PairOutcome>, excluded: Vec<Exclusion>, cfg: &Config) -> BenchmarkReport {
    per_pair.sort_by_key(|o| o.id);
    let total_w: f64 = per_pair.iter().map(|o| o.weight).sum();
    let hit_w: f64 = per_pair.iter().filter(|o| o.correct).map(|o| o.weight).sum();
    let hits = per_pair.iter().filter(|o| o.correct).count();
    let weighted_accuracy = if total_w > 0.0 { hit_w / total_w } else { 0.0 };
    let unweighted_accuracy = if per_pair.is_empty() { 0.0 } else { hits as f64 / per_pair.len() as f64 };
    BenchmarkReport {
        per_pair,
        weighted_accuracy,
        unweighted_accuracy,
        mode: cfg.decision_mode,
        ensemble: cfg.n_folds > 1,
        excluded,
        config: cfg.clone(),
    }
}

/// Evaluates every record sequentially and summarizes.
pub fn evaluate_records(records: &[BenchmarkRecord], excluded: Vec<Exclusion>, cfg: &Config, rng: &RngStream) -> BenchmarkReport {
    let outcomes = records.iter().map(|r| evaluate_pair(r, cfg, rng)).collect();
    summarize(outcomes, excluded, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn outcome(id: u32, correct: bool, weight: f64) -> PairOutcome {
        PairOutcome { id, verdict: Some(Direction::CauseToEffect), p_difference: Some(-0.1), correct, weight, error: None }
    }

    #[test]
    fn weighted_and_unweighted() {
        let r = summarize(vec![outcome(2, true, 0.5), outcome(1, false, 1.0), outcome(3, true, 0.5)], vec![], &Config::default());
        assert_eq!(r.per_pair.iter().map(|o| o.id).collect::<Vec<_>>(), vec![1, 2, 3]);
        assert!((r.weighted_accuracy - 0.5).abs() < 1e-15);
        assert!((r.unweighted_accuracy - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn equal_weights_give_equal_accuracies() {
        let r = summarize(vec![outcome(1, true, 0.25), outcome(2, false, 0.25), outcome(3, true, 0.25)], vec![], &Config::default());
        assert!((r.weighted_accuracy - r.unweighted_accuracy).abs() < 1e-15);
    }

    #[test]
    fn failures_count_as_wrong() {
        let r = summarize(vec![outcome(1, true, 1.0), PairOutcome::failure(2, 1.0, "degenerate".to_string())], vec![], &Config::default());
        assert_eq!(r.unweighted_accuracy, 0.5);
        assert_eq!(r.per_pair[1].verdict, None);
    }

    #[test]
    fn ground_truth_matching() {
        assert!(GroundTruth::XCausesY.matches(Direction::CauseToEffect));
        assert!(GroundTruth::YCausesX.matches(Direction::EffectToCause));
        assert!(!GroundTruth::XCausesY.matches(Direction::Confounded));
        assert!(!GroundTruth::YCausesX.matches(Direction::Confounded));
        assert_eq!(GroundTruth::XCausesY.flipped(), GroundTruth::YCausesX);
    }

    #[test]
    fn degenerate_pair_is_a_failure() {
        let rec = BenchmarkRecord {
            id: 4,
            data: DataPair::new(vec![1.0; 50], (0..50).map(|i| i as f64).collect()).unwrap(),
            ground_truth: GroundTruth::XCausesY,
            weight: 1.0,
        };
        let o = evaluate_pair(&rec, &Config { n_folds: 1, ..Config::default() }, &RngStream::new(0));
        assert!(!o.correct);
        assert!(o.error.is_some());
    }
}
