//! Latent instrument construction.
//!
//! Four candidates are built from cluster centers: the instrument of `x` from
//! `x` alone, of `x` from the joint `(x, y)` clustering, and the two mirror
//! images for `y`. One shared 2-D clustering supplies both joint candidates.
//! The side whose marginal and joint candidates lie closer keeps its
//! marginal instrument; the other side takes the joint one.

use alloc::vec::Vec;

use crate::clustering::{assigned_center_coordinate, distinct_count, kmeans};
use crate::config::{Config, DistanceKind};
use crate::data::{is_constant, standardize, DataPair};
use crate::error::{Error, Result};
use crate::rng::RngStream;

/// Stream index used by both 1-D clusterings, so that exchanging `x` and `y`
/// reproduces the same draws.
const MARGINAL_STREAM: u64 = 1;
const JOINT_STREAM: u64 = 2;

#[derive(Debug, Clone, PartialEq)]
pub struct Candidates {
    /// Working copy of `x` (standardized when configured).
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub i_xx: Vec<f64>,
    pub i_xxy: Vec<f64>,
    pub i_yy: Vec<f64>,
    pub i_yyx: Vec<f64>,
    /// Cluster counts actually used; smaller than configured when the data
    /// has fewer distinct values.
    pub k_x: usize,
    pub k_y: usize,
    pub k_joint: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Branch {
    /// `I_x` from `x` alone, `I_y` from the joint clustering.
    MarginalX,
    /// `I_y` from `y` alone, `I_x` from the joint clustering.
    MarginalY,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InstrumentSet {
    pub candidates: Candidates,
    pub selected_ix: Vec<f64>,
    pub selected_iy: Vec<f64>,
    pub dist_x: f64,
    pub dist_y: f64,
    pub branch: Branch,
}

fn centers_1d(v: &[f64], k_max: usize, rng: &RngStream, cfg: &Config) -> Result<(Vec<f64>, usize)> {
    let pts: Vec<[f64; 1]> = v.iter().map(|&a| [a]).collect();
    let k = k_max.min(distinct_count(&pts));
    let c = kmeans(&pts, k, rng, cfg.kmeans_max_iter, cfg.kmeans_restarts)?;
    Ok((assigned_center_coordinate(&c, 0), k))
}

pub fn build_candidates(d: &DataPair, cfg: &Config, rng: &RngStream) -> Result<Candidates> {
    if is_constant(d.x()) || is_constant(d.y()) {
        return Err(Error::DegenerateData("constant variable"));
    }
    let (x, y) = if cfg.standardize {
        (standardize(d.x())?, standardize(d.y())?)
    } else {
        (d.x().to_vec(), d.y().to_vec())
    };
    let marginal = rng.derive(MARGINAL_STREAM);
    let (i_xx, k_x) = centers_1d(&x, cfg.k_clusters, &marginal, cfg)?;
    let (i_yy, k_y) = centers_1d(&y, cfg.k_clusters, &marginal, cfg)?;
    let joint: Vec<[f64; 2]> = x.iter().zip(&y).map(|(&a, &b)| [a, b]).collect();
    let k_joint = cfg.k_clusters.min(distinct_count(&joint));
    let c = kmeans(&joint, k_joint, &rng.derive(JOINT_STREAM), cfg.kmeans_max_iter, cfg.kmeans_restarts)?;
    let i_xxy = assigned_center_coordinate(&c, 0);
    let i_yyx = assigned_center_coordinate(&c, 1);
    Ok(Candidates { x, y, i_xx, i_xxy, i_yy, i_yyx, k_x, k_y, k_joint })
}

fn distance(kind: DistanceKind, a: &[f64], b: &[f64]) -> f64 {
    match kind {
        DistanceKind::Euclidean => libm::sqrt(a.iter().zip(b).map(|(u, v)| (u - v) * (u - v)).sum::<f64>()),
    }
}

/// Picks the instrument pair; `dist_x == dist_y` goes to [`Branch::MarginalX`].
pub fn select_instruments(c: Candidates, cfg: &Config) -> InstrumentSet {
    let dist_x = distance(cfg.distance_kind, &c.i_xx, &c.i_xxy);
    let dist_y = distance(cfg.distance_kind, &c.i_yy, &c.i_yyx);
    let (branch, selected_ix, selected_iy) = if dist_x <= dist_y {
        (Branch::MarginalX, c.i_xx.clone(), c.i_yyx.clone())
    } else {
        (Branch::MarginalY, c.i_xxy.clone(), c.i_yy.clone())
    };
    InstrumentSet { candidates: c, selected_ix, selected_iy, dist_x, dist_y, branch }
}

/// Candidate construction followed by selection.
pub fn build_instruments(d: &DataPair, cfg: &Config, rng: &RngStream) -> Result<InstrumentSet> {
    Ok(select_instruments(build_candidates(d, cfg, rng)?, cfg))
}
