//! Seeded generators for the two simulation scenarios.
//!
//! Chain: `I_x -> X -> Y <- I_y`. Confounded: `I_x -> X <- U -> Y <- I_y`.
//! The continuous setting is the linear Gaussian model
//!
//! ```text
//! X = alpha0 + alpha I_x + delta U + e_x
//! Y = beta0 + beta X + gamma U + w I_y + e_y
//! ```
//!
//! with `delta = gamma = 0` in the chain and `beta = 0` in the confounded
//! scenario. `I_y` enters `Y` as an independent parent, so `Y` is a collider
//! between `X` (or `U`) and `I_y`. The discrete setting samples binary
//! variables ancestrally from Bernoulli tables.
//!
//! The generated instruments exist for simulation studies only; inference on
//! observed pairs always constructs its own.

use alloc::vec::Vec;

use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::rng::RngStream;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Scenario {
    /// `X -> Y`.
    Chain,
    /// `X <- U -> Y`.
    Confounded,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Setting {
    DiscreteBinary,
    ContinuousGaussian,
}

impl Scenario {
    pub fn as_str(self) -> &'static str {
        match self {
            Scenario::Chain => "chain",
            Scenario::Confounded => "confounded",
        }
    }
}

impl Setting {
    pub fn as_str(self) -> &'static str {
        match self {
            Setting::DiscreteBinary => "discrete",
            Setting::ContinuousGaussian => "continuous",
        }
    }
}

/// Bernoulli tables. Each entry is `P(child = 1 | parents)`; two-parent tables
/// are indexed `[first parent][second parent]`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Cpts {
    pub p_ix: f64,
    pub p_iy: f64,
    pub p_u: f64,
    /// Chain: `P(X = 1 | I_x)`.
    pub x_given_ix: [f64; 2],
    /// Chain: `P(Y = 1 | X, I_y)`.
    pub y_given_x_iy: [[f64; 2]; 2],
    /// Confounded: `P(X = 1 | I_x, U)`.
    pub x_given_ix_u: [[f64; 2]; 2],
    /// Confounded: `P(Y = 1 | U, I_y)`.
    pub y_given_u_iy: [[f64; 2]; 2],
}

impl Default for Cpts {
    fn default() -> Self {
        // Averaged over a fair I_y the two-parent table for Y reduces to
        // P(Y = 1 | X = 0) = 0.2 and P(Y = 1 | X = 1) = 0.8.
        let two = [[0.05, 0.35], [0.65, 0.95]];
        Self {
            p_ix: 0.5,
            p_iy: 0.5,
            p_u: 0.5,
            x_given_ix: [0.2, 0.8],
            y_given_x_iy: two,
            x_given_ix_u: two,
            y_given_u_iy: two,
        }
    }
}

impl Cpts {
    pub fn validate(&self) -> Result<()> {
        let ok = |p: f64| (0.0..=1.0).contains(&p);
        let singles = [self.p_ix, self.p_iy, self.p_u, self.x_given_ix[0], self.x_given_ix[1]];
        let tables = [self.y_given_x_iy, self.x_given_ix_u, self.y_given_u_iy];
        if singles.iter().all(|&p| ok(p)) && tables.iter().flatten().flatten().all(|&p| ok(p)) {
            Ok(())
        } else {
            Err(Error::InvalidCpt("probabilities must lie in [0, 1]"))
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ScmParams {
    pub alpha0: f64,
    pub alpha: f64,
    pub beta0: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
    /// Weight of `I_y` in `Y`.
    pub iy_weight: f64,
    pub sigma_x: f64,
    pub sigma_y: f64,
    pub sigma_u: f64,
    pub sigma_i: f64,
    pub cpts: Cpts,
}

impl Default for ScmParams {
    fn default() -> Self {
        Self {
            alpha0: 0.0,
            alpha: 1.0,
            beta0: 0.0,
            beta: 1.0,
            gamma: 1.0,
            delta: 1.0,
            iy_weight: 1.0,
            sigma_x: 1.0,
            sigma_y: 1.0,
            sigma_u: 1.0,
            sigma_i: 1.0,
            cpts: Cpts::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticSample {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub i_x: Vec<f64>,
    pub i_y: Vec<f64>,
    /// Present only in the confounded scenario.
    pub u: Option<Vec<f64>>,
    pub scenario: Scenario,
    pub setting: Setting,
}

impl SyntheticSample {
    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }
}

fn normal(rng: &mut RngStream, sd: f64) -> f64 {
    let z: f64 = StandardNormal.sample(rng);
    sd * z
}

fn bernoulli(rng: &mut RngStream, p: f64) -> usize {
    (rng.uniform() < p) as usize
}

fn with_capacity(n: usize) -> [Vec<f64>; 5] {
    core::array::from_fn(|_| Vec::with_capacity(n))
}

pub fn generate_chain_continuous(n: usize, p: &ScmParams, rng: &RngStream) -> SyntheticSample {
    let mut rng = rng.clone();
    let [mut x, mut y, mut i_x, mut i_y, _] = with_capacity(n);
    for _ in 0..n {
        let ix = normal(&mut rng, p.sigma_i);
        let xv = p.alpha0 + p.alpha * ix + normal(&mut rng, p.sigma_x);
        let iy = normal(&mut rng, p.sigma_i);
        let yv = p.beta0 + p.beta * xv + p.iy_weight * iy + normal(&mut rng, p.sigma_y);
        i_x.push(ix);
        x.push(xv);
        i_y.push(iy);
        y.push(yv);
    }
    SyntheticSample { x, y, i_x, i_y, u: None, scenario: Scenario::Chain, setting: Setting::ContinuousGaussian }
}

pub fn generate_confounded_continuous(n: usize, p: &ScmParams, rng: &RngStream) -> SyntheticSample {
    let mut rng = rng.clone();
    let [mut x, mut y, mut i_x, mut i_y, mut u] = with_capacity(n);
    for _ in 0..n {
        let ix = normal(&mut rng, p.sigma_i);
        let uv = normal(&mut rng, p.sigma_u);
        let xv = p.alpha0 + p.alpha * ix + p.delta * uv + normal(&mut rng, p.sigma_x);
        let iy = normal(&mut rng, p.sigma_i);
        let yv = p.beta0 + p.gamma * uv + p.iy_weight * iy + normal(&mut rng, p.sigma_y);
        i_x.push(ix);
        u.push(uv);
        x.push(xv);
        i_y.push(iy);
        y.push(yv);
    }
    SyntheticSample { x, y, i_x, i_y, u: Some(u), scenario: Scenario::Confounded, setting: Setting::ContinuousGaussian }
}

pub fn generate_chain_discrete(n: usize, p: &ScmParams, rng: &RngStream) -> Result<SyntheticSample> {
    let t = &p.cpts;
    t.validate()?;
    let mut rng = rng.clone();
    let [mut x, mut y, mut i_x, mut i_y, _] = with_capacity(n);
    for _ in 0..n {
        let ix = bernoulli(&mut rng, t.p_ix);
        let xv = bernoulli(&mut rng, t.x_given_ix[ix]);
        let iy = bernoulli(&mut rng, t.p_iy);
        let yv = bernoulli(&mut rng, t.y_given_x_iy[xv][iy]);
        i_x.push(ix as f64);
        x.push(xv as f64);
        i_y.push(iy as f64);
        y.push(yv as f64);
    }
    Ok(SyntheticSample { x, y, i_x, i_y, u: None, scenario: Scenario::Chain, setting: Setting::DiscreteBinary })
}

pub fn generate_confounded_discrete(n: usize, p: &ScmParams, rng: &RngStream) -> Result<SyntheticSample> {
    let t = &p.cpts;
    t.validate()?;
    let mut rng = rng.clone();
    let [mut x, mut y, mut i_x, mut i_y, mut u] = with_capacity(n);
    for _ in 0..n {
        let ix = bernoulli(&mut rng, t.p_ix);
        let uv = bernoulli(&mut rng, t.p_u);
        let xv = bernoulli(&mut rng, t.x_given_ix_u[ix][uv]);
        let iy = bernoulli(&mut rng, t.p_iy);
        let yv = bernoulli(&mut rng, t.y_given_u_iy[uv][iy]);
        i_x.push(ix as f64);
        u.push(uv as f64);
        x.push(xv as f64);
        i_y.push(iy as f64);
        y.push(yv as f64);
    }
    Ok(SyntheticSample { x, y, i_x, i_y, u: Some(u), scenario: Scenario::Confounded, setting: Setting::DiscreteBinary })
}

pub fn generate(scenario: Scenario, setting: Setting, n: usize, p: &ScmParams, rng: &RngStream) -> Result<SyntheticSample> {
    match (scenario, setting) {
        (Scenario::Chain, Setting::ContinuousGaussian) => Ok(generate_chain_continuous(n, p, rng)),
        (Scenario::Confounded, Setting::ContinuousGaussian) => Ok(generate_confounded_continuous(n, p, rng)),
        (Scenario::Chain, Setting::DiscreteBinary) => generate_chain_discrete(n, p, rng),
        (Scenario::Confounded, Setting::DiscreteBinary) => generate_confounded_discrete(n, p, rng),
    }
}
