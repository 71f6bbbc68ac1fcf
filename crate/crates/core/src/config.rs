//! Run configuration shared by every stage of the pipeline.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum TestKind {
    /// Exact t-test on the Pearson partial correlation.
    PartialCorrelation,
    /// Asymptotic G-test on the conditional mutual information.
    ConditionalMutualInformation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum DistanceKind {
    Euclidean,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum DecisionMode {
    /// The three-leaf decision tree (`x -> y`, `y -> x`, confounded).
    StrictTree,
    /// Binary answer from the sign of the p-value difference.
    ForcedChoice,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Config {
    /// Number of clusters used for every instrument candidate.
    pub k_clusters: usize,
    /// Significance threshold of the independence tests.
    pub alpha: f64,
    /// Number of folds of the ensemble; `1` runs a single inference.
    pub n_folds: usize,
    pub seed: u64,
    pub test_kind: TestKind,
    pub distance_kind: DistanceKind,
    /// z-score both variables before clustering.
    pub standardize: bool,
    pub decision_mode: DecisionMode,
    pub kmeans_restarts: usize,
    pub kmeans_max_iter: usize,
    /// Level cap used when continuous data is fed to the mutual information test.
    pub mi_level_cap: usize,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            k_clusters: 15,
            alpha: 0.05,
            n_folds: 10,
            seed: 0,
            test_kind: TestKind::PartialCorrelation,
            distance_kind: DistanceKind::Euclidean,
            standardize: true,
            decision_mode: DecisionMode::StrictTree,
            kmeans_restarts: 10,
            kmeans_max_iter: 100,
            mi_level_cap: 20,
        }
    }
}

impl Config {
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::InvalidConfig("alpha must lie strictly between 0 and 1"));
        }
        if self.k_clusters < 2 {
            return Err(Error::InvalidConfig("k_clusters must be at least 2"));
        }
        if self.n_folds < 1 {
            return Err(Error::InvalidConfig("n_folds must be at least 1"));
        }
        if self.kmeans_restarts < 1 || self.kmeans_max_iter < 1 {
            return Err(Error::InvalidConfig("k-means restarts and iterations must be positive"));
        }
        if self.mi_level_cap < 2 {
            return Err(Error::InvalidConfig("mi_level_cap must be at least 2"));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let cfg = Config::default();
        assert_eq!(cfg.k_clusters, 15);
        assert_eq!(cfg.alpha, 0.05);
        assert_eq!(cfg.n_folds, 10);
        assert!(cfg.standardize);
        assert!(cfg.validate().is_ok());
    }

    #[test]
    fn rejects_bad_alpha_and_k() {
        for alpha in [0.0, 1.0, 1.5, -0.1, f64::NAN] {
            let cfg = Config { alpha, ..Config::default() };
            assert!(matches!(cfg.validate(), Err(Error::InvalidConfig(_))));
        }
        let cfg = Config { k_clusters: 1, ..Config::default() };
        assert!(cfg.validate().is_err());
        let cfg = Config { n_folds: 0, ..Config::default() };
        assert!(cfg.validate().is_err());
    }
}
