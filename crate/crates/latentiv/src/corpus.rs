//! Cause-effect pair corpus in the `pairNNNN.txt` + `pairmeta.txt` layout.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use latentiv_core::benchmark::{
    evaluate_pair, summarize, BenchmarkRecord, BenchmarkReport, Exclusion, PairOutcome, DEFAULT_EXCLUDED_IDS,
    MULTIVARIATE_REASON,
};
use latentiv_core::clustering::distinct_count;
use latentiv_core::{Config, RngStream};
use log::{info, warn};
use rayon::prelude::*;
use thiserror::Error;

use crate::io::{load_metadata, load_pair, LoadError, PairMeta};

pub const METADATA_FILE: &str = "pairmeta.txt";

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("missing metadata file {0}")]
    MissingMetadata(PathBuf),
    #[error(transparent)]
    Load(#[from] LoadError),
    #[error("exclusion list {path}:{line}: {message}")]
    Exclusions { path: PathBuf, line: usize, message: String },
    #[error("cannot read exclusion list {path}")]
    ExclusionsIo { path: PathBuf, source: std::io::Error },
}

/// `outer: inner: ...` rendering of an error and its sources.
fn error_chain(e: &dyn std::error::Error) -> String {
    let mut s = e.to_string();
    let mut src = e.source();
    while let Some(inner) = src {
        s.push_str(": ");
        s.push_str(&inner.to_string());
        src = inner.source();
    }
    s
}

pub fn pair_file_name(id: u32) -> String {
    format!("pair{id:04}.txt")
}

/// Pair ids left out of the analysis, each with a reason.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ExclusionList {
    entries: BTreeMap<u32, String>,
}

impl ExclusionList {
    /// The multivariate pairs of corpus v1.0.
    pub fn multivariate_default() -> Self {
        Self { entries: DEFAULT_EXCLUDED_IDS.iter().map(|&id| (id, MULTIVARIATE_REASON.to_string())).collect() }
    }

    pub fn none() -> Self {
        Self::default()
    }

    /// One id per line, optionally followed by a reason; `#` starts a comment.
    pub fn parse(text: &str, path: &Path) -> Result<Self, CorpusError> {
        let mut entries = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let (id, reason) = body.split_once(char::is_whitespace).unwrap_or((body, ""));
            let id = id.parse::<u32>().map_err(|_| CorpusError::Exclusions {
                path: path.to_path_buf(),
                line: i + 1,
                message: format!("not a pair id: {id:?}"),
            })?;
            let reason = reason.trim();
            entries.insert(id, if reason.is_empty() { "excluded".to_string() } else { reason.to_string() });
        }
        Ok(Self { entries })
    }

    pub fn from_file(path: &Path) -> Result<Self, CorpusError> {
        let text = fs::read_to_string(path).map_err(|source| CorpusError::ExclusionsIo { path: path.to_path_buf(), source })?;
        Self::parse(&text, path)
    }

    pub fn reason(&self, id: u32) -> Option<&str> {
        self.entries.get(&id).map(String::as_str)
    }

    pub fn ids(&self) -> impl Iterator<Item = u32> + '_ {
        self.entries.keys().copied()
    }
}

enum Prepared {
    Excluded(Exclusion),
    Failed(PairOutcome),
    Ready(BenchmarkRecord),
}

fn prepare(dir: &Path, meta: &PairMeta, exclusions: &ExclusionList, cfg: &Config) -> Prepared {
    if let Some(reason) = exclusions.reason(meta.id) {
        return Prepared::Excluded(Exclusion { id: meta.id, reason: reason.to_string() });
    }
    match load_pair(&dir.join(pair_file_name(meta.id))) {
        Ok(data) => {
            let dx = distinct_count(&data.x().iter().map(|&a| [a]).collect::<Vec<_>>());
            let dy = distinct_count(&data.y().iter().map(|&a| [a]).collect::<Vec<_>>());
            if dx.min(dy) < cfg.k_clusters {
                info!("pair {}: {} / {} distinct values, k shrinks below {}", meta.id, dx, dy, cfg.k_clusters);
            }
            Prepared::Ready(BenchmarkRecord { id: meta.id, data, ground_truth: meta.ground_truth(), weight: meta.weight })
        }
        Err(LoadError::MultivariatePair { .. }) => {
            info!("pair {}: more than two columns, excluded", meta.id);
            Prepared::Excluded(Exclusion { id: meta.id, reason: MULTIVARIATE_REASON.to_string() })
        }
        Err(e) => {
            let message = error_chain(&e);
            warn!("pair {}: {message}", meta.id);
            Prepared::Failed(PairOutcome::failure(meta.id, meta.weight, message))
        }
    }
}

/// Evaluates every non-excluded pair of the corpus in `dir`.
///
/// Pairs that fail to load or to evaluate count as incorrect. The report is
/// ordered by id and does not depend on evaluation order.
pub fn run_benchmark(dir: &Path, cfg: &Config, rng: &RngStream, exclusions: &ExclusionList) -> Result<BenchmarkReport, CorpusError> {
    let meta_path = dir.join(METADATA_FILE);
    if !meta_path.is_file() {
        return Err(CorpusError::MissingMetadata(meta_path));
    }
    let meta = load_metadata(&meta_path)?;
    info!("{} pairs listed in {}", meta.len(), meta_path.display());
    let prepared: Vec<Prepared> = meta.par_iter().map(|m| prepare(dir, m, exclusions, cfg)).collect();
    let mut excluded = Vec::new();
    let mut outcomes = Vec::new();
    let mut records = Vec::new();
    for p in prepared {
        match p {
            Prepared::Excluded(e) => excluded.push(e),
            Prepared::Failed(o) => outcomes.push(o),
            Prepared::Ready(r) => records.push(r),
        }
    }
    outcomes.par_extend(records.par_iter().map(|r| {
        let o = evaluate_pair(r, cfg, rng);
        if let Some(e) = &o.error {
            warn!("pair {}: {e}", r.id);
        }
        o
    }));
    excluded.sort_by_key(|e| e.id);
    Ok(summarize(outcomes, excluded, cfg))
}
