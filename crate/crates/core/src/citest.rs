//! Conditional independence tests with a single conditioning variable.
//!
//! Continuous data: exact t-test on the Pearson partial correlation.
//! Categorical data: G-test on the plug-in conditional mutual information,
//! `G² = 2 N MI(X; Y | Z)`, referred to a chi-square with
//! `(|X| - 1)(|Y| - 1)|Z|` degrees of freedom counted from observed levels.

use alloc::vec;
use alloc::vec::Vec;

use crate::config::{Config, TestKind};
use crate::data::{check_finite, is_constant};
use crate::error::{Error, Result};
use crate::special::{chi_square_sf, student_t_two_sided_p};

/// |r| at or above this is the deterministic limit, reported as p = 0.
const DEGENERATE_R: f64 = 1.0 - 1e-12;
const SINGULAR_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CiResult {
    /// t value for the correlation test, G² for the mutual information test.
    pub statistic: f64,
    pub dof: f64,
    pub p_value: f64,
    pub test_kind: TestKind,
}

fn pearson(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len() as f64;
    let ma = a.iter().sum::<f64>() / n;
    let mb = b.iter().sum::<f64>() / n;
    let (mut sab, mut saa, mut sbb) = (0.0, 0.0, 0.0);
    for (&u, &v) in a.iter().zip(b) {
        let du = u - ma;
        let dv = v - mb;
        sab += du * dv;
        saa += du * du;
        sbb += dv * dv;
    }
    (sab / libm::sqrt(saa * sbb)).clamp(-1.0, 1.0)
}

fn check_triple(x: &[f64], y: &[f64], z: &[f64]) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch { left: x.len(), right: y.len() });
    }
    if x.len() != z.len() {
        return Err(Error::LengthMismatch { left: x.len(), right: z.len() });
    }
    if x.len() < 4 {
        return Err(Error::TooFewSamples { needed: 4, got: x.len() });
    }
    check_finite(x)?;
    check_finite(y)?;
    check_finite(z)?;
    if is_constant(x) || is_constant(y) || is_constant(z) {
        return Err(Error::DegenerateData("constant variable in independence test"));
    }
    Ok(())
}

/// First-order partial correlation `r_{xy·z}`, clamped to `[-1, 1]`.
pub fn partial_correlation(x: &[f64], y: &[f64], z: &[f64]) -> Result<f64> {
    check_triple(x, y, z)?;
    let rxy = pearson(x, y);
    let rxz = pearson(x, z);
    let ryz = pearson(y, z);
    let dx = 1.0 - rxz * rxz;
    let dy = 1.0 - ryz * ryz;
    if dx < SINGULAR_EPS {
        return Err(Error::NearSingular(dx));
    }
    if dy < SINGULAR_EPS {
        return Err(Error::NearSingular(dy));
    }
    Ok(((rxy - rxz * ryz) / libm::sqrt(dx * dy)).clamp(-1.0, 1.0))
}

/// Exact t-test of `x ⫫ y | z` on the partial correlation, `n - 3` degrees of freedom.
pub fn ci_test_cor(x: &[f64], y: &[f64], z: &[f64]) -> Result<CiResult> {
    let r = partial_correlation(x, y, z)?;
    let dof = (x.len() - 3) as f64;
    let (statistic, p_value) = if r.abs() >= DEGENERATE_R {
        (libm::copysign(f64::INFINITY, r), 0.0)
    } else {
        let t = r * libm::sqrt(dof / (1.0 - r * r));
        (t, student_t_two_sided_p(t, dof))
    };
    Ok(CiResult { statistic, dof, p_value, test_kind: TestKind::PartialCorrelation })
}

/// Relabels arbitrary level codes to `0..L` in order of first appearance.
fn compact(v: &[u32]) -> (Vec<usize>, usize) {
    let mut map: Vec<(u32, usize)> = Vec::new();
    let mut out = Vec::with_capacity(v.len());
    for &a in v {
        let code = match map.binary_search_by_key(&a, |&(k, _)| k) {
            Ok(i) => map[i].1,
            Err(i) => {
                let c = map.len();
                map.insert(i, (a, c));
                c
            }
        };
        out.push(code);
    }
    (out, map.len())
}

struct Table {
    nx: usize,
    ny: usize,
    nz: usize,
    xyz: Vec<u64>,
    xz: Vec<u64>,
    yz: Vec<u64>,
    z: Vec<u64>,
    n: u64,
}

fn tabulate(x: &[u32], y: &[u32], z: &[u32]) -> Result<Table> {
    if x.len() != y.len() || x.len() != z.len() {
        return Err(Error::LengthMismatch { left: x.len(), right: if x.len() != y.len() { y.len() } else { z.len() } });
    }
    let (xs, nx) = compact(x);
    let (ys, ny) = compact(y);
    let (zs, nz) = compact(z);
    let mut t = Table {
        nx,
        ny,
        nz,
        xyz: vec![0; nx * ny * nz],
        xz: vec![0; nx * nz],
        yz: vec![0; ny * nz],
        z: vec![0; nz],
        n: x.len() as u64,
    };
    for i in 0..x.len() {
        let (a, b, c) = (xs[i], ys[i], zs[i]);
        t.xyz[(a * ny + b) * nz + c] += 1;
        t.xz[a * nz + c] += 1;
        t.yz[b * nz + c] += 1;
        t.z[c] += 1;
    }
    Ok(t)
}

impl Table {
    fn mi(&self) -> f64 {
        let n = self.n as f64;
        let mut mi = 0.0;
        for a in 0..self.nx {
            for b in 0..self.ny {
                for c in 0..self.nz {
                    let nxyz = self.xyz[(a * self.ny + b) * self.nz + c];
                    if nxyz == 0 {
                        continue;
                    }
                    let nxyz = nxyz as f64;
                    // p(x,y,z) p(z) / (p(x,z) p(y,z)) with counts: the N factors cancel
                    let ratio = nxyz * self.z[c] as f64 / (self.xz[a * self.nz + c] as f64 * self.yz[b * self.nz + c] as f64);
                    mi += nxyz / n * libm::log(ratio);
                }
            }
        }
        mi.max(0.0)
    }
}

/// Plug-in conditional mutual information `MI(X; Y | Z)` in nats.
pub fn conditional_mutual_information(x: &[u32], y: &[u32], z: &[u32]) -> Result<f64> {
    if x.is_empty() {
        return Ok(0.0);
    }
    Ok(tabulate(x, y, z)?.mi())
}

/// Asymptotic G-test of `x ⫫ y | z` on categorical data.
pub fn ci_test_mi(x: &[u32], y: &[u32], z: &[u32]) -> Result<CiResult> {
    if x.is_empty() {
        return Err(Error::TooFewSamples { needed: 1, got: 0 });
    }
    let t = tabulate(x, y, z)?;
    let g2 = 2.0 * t.n as f64 * t.mi();
    let dof = ((t.nx - 1) * (t.ny - 1) * t.nz) as f64;
    let p_value = if dof == 0.0 { 1.0 } else { chi_square_sf(g2, dof) };
    Ok(CiResult { statistic: g2, dof, p_value, test_kind: TestKind::ConditionalMutualInformation })
}

/// Maps real values to categorical levels.
///
/// With at most `cap` distinct values each value gets its own level, ordered
/// by value. Otherwise values are split into `cap` equal-frequency bins by
/// rank; tied values share the bin of their lowest rank.
pub fn discretize_for_mi(v: &[f64], cap: usize) -> Vec<u32> {
    let n = v.len();
    if n == 0 {
        return Vec::new();
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| v[a].total_cmp(&v[b]).then(a.cmp(&b)));
    let mut distinct = 1;
    for w in order.windows(2) {
        if v[w[0]] != v[w[1]] {
            distinct += 1;
        }
    }
    let mut out = vec![0u32; n];
    let mut level = 0u32;
    let mut first_rank = 0usize;
    for (rank, &i) in order.iter().enumerate() {
        if rank > 0 && v[i] != v[order[rank - 1]] {
            level += 1;
            first_rank = rank;
        }
        out[i] = if distinct <= cap { level } else { (first_rank * cap / n) as u32 };
    }
    out
}

/// Runs the configured test on real-valued inputs.
pub fn ci_test(x: &[f64], y: &[f64], z: &[f64], cfg: &Config) -> Result<CiResult> {
    match cfg.test_kind {
        TestKind::PartialCorrelation => ci_test_cor(x, y, z),
        TestKind::ConditionalMutualInformation => {
            if x.len() != y.len() || x.len() != z.len() {
                return Err(Error::LengthMismatch { left: x.len(), right: y.len().max(z.len()) });
            }
            check_finite(x)?;
            check_finite(y)?;
            check_finite(z)?;
            let cap = cfg.mi_level_cap;
            ci_test_mi(&discretize_for_mi(x, cap), &discretize_for_mi(y, cap), &discretize_for_mi(z, cap))
        }
    }
}
