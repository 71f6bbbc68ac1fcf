//! Lloyd k-means over 1-D and 2-D points.
//!
//! Seeding draws each further center with probability proportional to the
//! squared distance to the nearest center chosen so far. Restart `r` uses the
//! stream `rng.derive(r)`; the restart with the lowest inertia wins (first one
//! on ties). Nearest-center ties go to the lowest center index, and a cluster
//! that runs empty is re-seeded with the point farthest from its own center.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::rng::RngStream;

#[derive(Debug, Clone, PartialEq)]
pub struct Clustering<const D: usize> {
    pub centers: Vec<[f64; D]>,
    /// Center index of each input point.
    pub assignment: Vec<usize>,
    /// Sum of squared distances of the points to their centers.
    pub inertia: f64,
}

impl<const D: usize> Clustering<D> {
    pub fn k(&self) -> usize {
        self.centers.len()
    }
}

#[inline]
fn sq_dist<const D: usize>(a: &[f64; D], b: &[f64; D]) -> f64 {
    let mut s = 0.0;
    for d in 0..D {
        let t = a[d] - b[d];
        s += t * t;
    }
    s
}

fn lex_cmp<const D: usize>(a: &[f64; D], b: &[f64; D]) -> Ordering {
    for d in 0..D {
        match a[d].partial_cmp(&b[d]) {
            Some(Ordering::Equal) | None => continue,
            Some(o) => return o,
        }
    }
    Ordering::Equal
}

/// Number of distinct points (coordinates compared with `==`).
pub fn distinct_count<const D: usize>(points: &[[f64; D]]) -> usize {
    let mut sorted = points.to_vec();
    sorted.sort_by(lex_cmp);
    sorted.dedup();
    sorted.len()
}

fn nearest<const D: usize>(p: &[f64; D], centers: &[[f64; D]]) -> (usize, f64) {
    let mut best = 0;
    let mut best_d = sq_dist(p, &centers[0]);
    for (j, c) in centers.iter().enumerate().skip(1) {
        let d = sq_dist(p, c);
        if d < best_d {
            best = j;
            best_d = d;
        }
    }
    (best, best_d)
}

fn seed_centers<const D: usize>(points: &[[f64; D]], k: usize, rng: &mut RngStream) -> Vec<[f64; D]> {
    let n = points.len();
    let mut centers = Vec::with_capacity(k);
    centers.push(points[rng.index(n)]);
    let mut d2: Vec<f64> = points.iter().map(|p| sq_dist(p, &centers[0])).collect();
    while centers.len() < k {
        let total: f64 = d2.iter().sum();
        let target = rng.uniform() * total;
        let mut acc = 0.0;
        let mut pick = None;
        let mut last_positive = 0;
        for (i, &w) in d2.iter().enumerate() {
            if w > 0.0 {
                last_positive = i;
                acc += w;
                if acc > target {
                    pick = Some(i);
                    break;
                }
            }
        }
        let c = points[pick.unwrap_or(last_positive)];
        for (p, w) in points.iter().zip(d2.iter_mut()) {
            let d = sq_dist(p, &c);
            if d < *w {
                *w = d;
            }
        }
        centers.push(c);
    }
    centers
}

fn assign<const D: usize>(points: &[[f64; D]], centers: &[[f64; D]], out: &mut [usize]) {
    for (p, a) in points.iter().zip(out.iter_mut()) {
        *a = nearest(p, centers).0;
    }
}

/// Recomputes the centers as cluster means, re-seeding empty clusters.
fn update<const D: usize>(points: &[[f64; D]], centers: &mut [[f64; D]], assignment: &mut [usize]) {
    let k = centers.len();
    loop {
        let mut sums = vec![[0.0; D]; k];
        let mut counts = vec![0usize; k];
        for (p, &a) in points.iter().zip(assignment.iter()) {
            for d in 0..D {
                sums[a][d] += p[d];
            }
            counts[a] += 1;
        }
        let empty = counts.iter().position(|&c| c == 0);
        for j in 0..k {
            if counts[j] > 0 {
                for d in 0..D {
                    centers[j][d] = sums[j][d] / counts[j] as f64;
                }
            }
        }
        let Some(empty) = empty else { return };
        // farthest point among clusters that can spare one
        let mut far = None;
        let mut far_d = -1.0;
        for (i, p) in points.iter().enumerate() {
            let a = assignment[i];
            if counts[a] > 1 {
                let d = sq_dist(p, &centers[a]);
                if d > far_d {
                    far_d = d;
                    far = Some(i);
                }
            }
        }
        let Some(i) = far else { return };
        assignment[i] = empty;
        centers[empty] = points[i];
    }
}

fn inertia_of<const D: usize>(points: &[[f64; D]], centers: &[[f64; D]], assignment: &[usize]) -> f64 {
    points.iter().zip(assignment).map(|(p, &a)| sq_dist(p, &centers[a])).sum()
}

pub(crate) fn lloyd<const D: usize>(
    points: &[[f64; D]],
    k: usize,
    rng: &mut RngStream,
    max_iter: usize,
    mut trace: Option<&mut Vec<f64>>,
) -> Clustering<D> {
    let mut centers = seed_centers(points, k, rng);
    let mut assignment = vec![0usize; points.len()];
    assign(points, &centers, &mut assignment);
    if let Some(t) = trace.as_deref_mut() {
        t.push(inertia_of(points, &centers, &assignment));
    }
    let mut next = assignment.clone();
    for _ in 0..max_iter {
        update(points, &mut centers, &mut assignment);
        if let Some(t) = trace.as_deref_mut() {
            t.push(inertia_of(points, &centers, &assignment));
        }
        assign(points, &centers, &mut next);
        if next == assignment {
            break;
        }
        core::mem::swap(&mut assignment, &mut next);
        if let Some(t) = trace.as_deref_mut() {
            t.push(inertia_of(points, &centers, &assignment));
        }
    }
    let inertia = inertia_of(points, &centers, &assignment);
    Clustering { centers, assignment, inertia }
}

/// k-means with `n_restarts` seeded restarts; returns the lowest-inertia run.
pub fn kmeans<const D: usize>(
    points: &[[f64; D]],
    k: usize,
    rng: &RngStream,
    max_iter: usize,
    n_restarts: usize,
) -> Result<Clustering<D>> {
    if k == 0 || max_iter == 0 || n_restarts == 0 {
        return Err(Error::InvalidConfig("k, max_iter and n_restarts must be positive"));
    }
    if let Some(index) = points.iter().position(|p| p.iter().any(|c| !c.is_finite())) {
        return Err(Error::NonFinite { index });
    }
    let distinct = distinct_count(points);
    if k > distinct {
        return Err(Error::TooFewDistinctPoints { k, distinct });
    }
    let mut best: Option<Clustering<D>> = None;
    for r in 0..n_restarts {
        let mut stream = rng.derive(r as u64);
        let c = lloyd(points, k, &mut stream, max_iter, None);
        if best.as_ref().is_none_or(|b| c.inertia < b.inertia) {
            best = Some(c);
        }
    }
    Ok(best.expect("at least one restart"))
}

/// Per-sample coordinate `coord` of the assigned center.
pub fn assigned_center_coordinate<const D: usize>(c: &Clustering<D>, coord: usize) -> Vec<f64> {
    assert!(coord < D, "coordinate {coord} out of range for {D}-D clustering");
    c.assignment.iter().map(|&a| c.centers[a][coord]).collect()
}
