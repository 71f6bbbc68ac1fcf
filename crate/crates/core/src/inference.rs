//! The symmetric decision procedure and its k-fold ensemble.
//!
//! Two tests are always evaluated on the selected instruments:
//! `p1 = p(y ⫫ I_x | x)` and `p2 = p(x ⫫ I_y | y)`. The strict tree answers
//! `x -> y` when `p1 > alpha`, else `y -> x` when `p2 > alpha`, else a hidden
//! common cause. Forced choice only looks at the sign of `p2 - p1`.

use alloc::vec::Vec;

use rand::seq::SliceRandom;

use crate::citest::ci_test;
use crate::config::{Config, DecisionMode};
use crate::data::DataPair;
use crate::error::{Error, Result};
use crate::instruments::{build_instruments, InstrumentSet};
use crate::rng::RngStream;

const INSTRUMENT_STREAM: u64 = 10;
const PARTITION_STREAM: u64 = 11;
const FOLD_STREAM_BASE: u64 = 1_000;

/// Smallest fold the tests can handle.
pub const MIN_FOLD_SIZE: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Direction {
    #[cfg_attr(feature = "serde", serde(rename = "x_to_y"))]
    CauseToEffect,
    #[cfg_attr(feature = "serde", serde(rename = "y_to_x"))]
    EffectToCause,
    #[cfg_attr(feature = "serde", serde(rename = "confounded"))]
    Confounded,
}

impl Direction {
    pub const ALL: [Direction; 3] = [Direction::CauseToEffect, Direction::EffectToCause, Direction::Confounded];

    pub fn as_str(self) -> &'static str {
        match self {
            Direction::CauseToEffect => "x_to_y",
            Direction::EffectToCause => "y_to_x",
            Direction::Confounded => "confounded",
        }
    }

    /// The direction obtained when `x` and `y` are exchanged.
    pub fn mirrored(self) -> Self {
        match self {
            Direction::CauseToEffect => Direction::EffectToCause,
            Direction::EffectToCause => Direction::CauseToEffect,
            Direction::Confounded => Direction::Confounded,
        }
    }

    fn slot(self) -> usize {
        self as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Verdict {
    pub direction: Direction,
    /// p-value of `y ⫫ I_x | x`.
    pub p_y_indep_ix_given_x: f64,
    /// p-value of `x ⫫ I_y | y`.
    pub p_x_indep_iy_given_y: f64,
}

impl Verdict {
    /// `p(x ⫫ I_y | y) - p(y ⫫ I_x | x)`; negative values point to `x -> y`.
    pub fn p_difference(&self) -> f64 {
        self.p_x_indep_iy_given_y - self.p_y_indep_ix_given_x
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct VoteCounts {
    pub x_to_y: usize,
    pub y_to_x: usize,
    pub confounded: usize,
}

impl VoteCounts {
    pub fn get(&self, d: Direction) -> usize {
        match d {
            Direction::CauseToEffect => self.x_to_y,
            Direction::EffectToCause => self.y_to_x,
            Direction::Confounded => self.confounded,
        }
    }

    fn bump(&mut self, d: Direction) {
        match d {
            Direction::CauseToEffect => self.x_to_y += 1,
            Direction::EffectToCause => self.y_to_x += 1,
            Direction::Confounded => self.confounded += 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EnsembleVerdict {
    pub fold_verdicts: Vec<Verdict>,
    pub majority: Direction,
    pub vote_counts: VoteCounts,
    pub mean_p_difference: f64,
}

/// Instruments plus the two test p-values, before any decision is taken.
#[derive(Debug, Clone)]
pub struct Evidence {
    pub instruments: InstrumentSet,
    pub p_y_indep_ix_given_x: f64,
    pub p_x_indep_iy_given_y: f64,
}

/// p-value of `a ⫫ instrument | cond`.
///
/// An instrument that is constant or collinear with the conditioning variable
/// carries no information beyond it, which is reported as p = 1.
fn instrument_p(a: &[f64], instrument: &[f64], cond: &[f64], cfg: &Config) -> Result<f64> {
    match ci_test(a, instrument, cond, cfg) {
        Ok(r) => Ok(r.p_value),
        Err(Error::NearSingular(_)) | Err(Error::DegenerateData(_)) => Ok(1.0),
        Err(e) => Err(e),
    }
}

/// Builds the instruments and evaluates both conditional independence tests.
pub fn gather_evidence(d: &DataPair, cfg: &Config, rng: &RngStream) -> Result<Evidence> {
    let s = build_instruments(d, cfg, &rng.derive(INSTRUMENT_STREAM))?;
    let (x, y) = (&s.candidates.x, &s.candidates.y);
    let p1 = instrument_p(y, &s.selected_ix, x, cfg)?;
    let p2 = instrument_p(x, &s.selected_iy, y, cfg)?;
    Ok(Evidence { instruments: s, p_y_indep_ix_given_x: p1, p_x_indep_iy_given_y: p2 })
}

fn strict(p1: f64, p2: f64, alpha: f64) -> Direction {
    if p1 > alpha {
        Direction::CauseToEffect
    } else if p2 > alpha {
        Direction::EffectToCause
    } else {
        Direction::Confounded
    }
}

fn forced(p1: f64, p2: f64) -> Direction {
    if p2 - p1 < 0.0 {
        Direction::CauseToEffect
    } else {
        Direction::EffectToCause
    }
}

fn verdict(e: &Evidence, mode: DecisionMode, alpha: f64) -> Verdict {
    let (p1, p2) = (e.p_y_indep_ix_given_x, e.p_x_indep_iy_given_y);
    let direction = match mode {
        DecisionMode::StrictTree => strict(p1, p2, alpha),
        DecisionMode::ForcedChoice => forced(p1, p2),
    };
    Verdict { direction, p_y_indep_ix_given_x: p1, p_x_indep_iy_given_y: p2 }
}

/// The three-leaf decision tree.
pub fn infer_direction(d: &DataPair, cfg: &Config, rng: &RngStream) -> Result<Verdict> {
    Ok(verdict(&gather_evidence(d, cfg, rng)?, DecisionMode::StrictTree, cfg.alpha))
}

pub fn p_difference(d: &DataPair, cfg: &Config, rng: &RngStream) -> Result<f64> {
    let e = gather_evidence(d, cfg, rng)?;
    Ok(e.p_x_indep_iy_given_y - e.p_y_indep_ix_given_x)
}

/// `x -> y` when the p-value difference is negative, `y -> x` otherwise.
pub fn forced_choice(d: &DataPair, cfg: &Config, rng: &RngStream) -> Result<Verdict> {
    Ok(verdict(&gather_evidence(d, cfg, rng)?, DecisionMode::ForcedChoice, cfg.alpha))
}

/// Single-shot decision in the configured mode.
pub fn decide(d: &DataPair, cfg: &Config, rng: &RngStream) -> Result<Verdict> {
    Ok(verdict(&gather_evidence(d, cfg, rng)?, cfg.decision_mode, cfg.alpha))
}

/// Random partition of `0..n` into `n_folds` folds whose sizes differ by at
/// most one; indices inside a fold are ascending.
pub fn partition_folds(n: usize, n_folds: usize, rng: &RngStream) -> Vec<Vec<usize>> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng.derive(PARTITION_STREAM));
    let mut folds: Vec<Vec<usize>> = (0..n_folds).map(|_| Vec::with_capacity(n / n_folds + 1)).collect();
    for (j, &i) in perm.iter().enumerate() {
        folds[j % n_folds].push(i);
    }
    for f in &mut folds {
        f.sort_unstable();
    }
    folds
}

/// Majority vote; ties go to the direction favoured by the sign of the mean
/// p-value difference (negative: `x -> y`), then in the order `x -> y`,
/// `y -> x`, confounded.
pub fn aggregate(fold_verdicts: Vec<Verdict>) -> EnsembleVerdict {
    let mut votes = VoteCounts::default();
    for v in &fold_verdicts {
        votes.bump(v.direction);
    }
    let mean_p_difference = if fold_verdicts.is_empty() {
        0.0
    } else {
        fold_verdicts.iter().map(Verdict::p_difference).sum::<f64>() / fold_verdicts.len() as f64
    };
    let top = Direction::ALL.iter().map(|&d| votes.get(d)).max().unwrap_or(0);
    let tied: Vec<Direction> = Direction::ALL.iter().copied().filter(|&d| votes.get(d) == top).collect();
    let preferred = if mean_p_difference < 0.0 {
        Some(Direction::CauseToEffect)
    } else if mean_p_difference > 0.0 {
        Some(Direction::EffectToCause)
    } else {
        None
    };
    let majority = match preferred {
        Some(p) if tied.contains(&p) => p,
        _ => tied[0],
    };
    debug_assert!(Direction::ALL.iter().all(|d| d.slot() < 3));
    EnsembleVerdict { fold_verdicts, majority, vote_counts: votes, mean_p_difference }
}

/// Runs the configured decision on each fold of a seeded random partition.
pub fn ensemble_infer(d: &DataPair, cfg: &Config, rng: &RngStream) -> Result<EnsembleVerdict> {
    let needed = cfg.n_folds * MIN_FOLD_SIZE;
    if d.len() < needed {
        return Err(Error::TooFewSamples { needed, got: d.len() });
    }
    if cfg.n_folds == 1 {
        return Ok(aggregate(alloc::vec![decide(d, cfg, &rng.derive(FOLD_STREAM_BASE))?]));
    }
    let folds = partition_folds(d.len(), cfg.n_folds, rng);
    let mut verdicts = Vec::with_capacity(cfg.n_folds);
    for (f, idx) in folds.iter().enumerate() {
        let sub = d.subset(idx)?;
        verdicts.push(decide(&sub, cfg, &rng.derive(FOLD_STREAM_BASE + f as u64))?);
    }
    Ok(aggregate(verdicts))
}
